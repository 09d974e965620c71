#pragma once

#include <string>

#include "json.hpp"

#include "equation_set.hpp"
#include "partitions.hpp"
#include "polynomial.hpp"
#include "version.hpp"

namespace orbitforge {

using Json = nlohmann::ordered_json;

/// [[coefficient, [[i, j, exponent], ...]], ...] in canonical term order;
/// t is written as [0, 0, exponent].
inline Json to_json(const Polynomial& p) {
  Json terms = Json::array();
  for (const auto& t : p.terms()) {
    Json factors = Json::array();
    for (auto f : t.monomial.factors()) {
      if (f.var == kChartVar) factors.push_back({0, 0, f.exp});
      else factors.push_back({var_row(f.var), var_col(f.var), f.exp});
    }
    terms.push_back({t.coeff.str(), std::move(factors)});
  }
  return terms;
}

namespace detail {

[[noreturn]] inline void malformed(const std::string& what) { throw DomainError("malformed JSON input: " + what); }

inline const Json& field(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) malformed(std::string("missing field '") + key + "'");
  return obj.at(key);
}

inline int int_field(const Json& obj, const char* key) {
  const Json& v = field(obj, key);
  if (!v.is_number_integer()) malformed(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

inline Json indices_json(IndexMask mask) { return to_indices(mask); }

inline IndexMask mask_field(const Json& obj, const char* key) {
  const Json& v = field(obj, key);
  if (!v.is_array()) malformed(std::string("field '") + key + "' must be an index list");
  IndexSet indices;
  for (const auto& i : v) {
    if (!i.is_number_integer()) malformed(std::string("field '") + key + "' must hold integers");
    indices.push_back(i.get<int>());
  }
  return to_mask(indices);
}

}  // namespace detail

inline Polynomial polynomial_from_json(const Json& j) {
  if (!j.is_array()) detail::malformed("polynomial must be a list of terms");
  std::vector<Term> terms;
  for (const auto& term : j) {
    if (!term.is_array() || term.size() != 2 || !term[0].is_string() || !term[1].is_array())
      detail::malformed("term must be [coefficient string, factor list]");
    Integer coeff;
    try {
      coeff = Integer(term[0].get<std::string>());
    } catch (const std::exception&) {
      detail::malformed("bad coefficient '" + term[0].get<std::string>() + "'");
    }
    std::vector<VarPower> factors;
    for (const auto& f : term[1]) {
      if (!f.is_array() || f.size() != 3 || !f[0].is_number_integer() || !f[1].is_number_integer() ||
          !f[2].is_number_integer())
        detail::malformed("factor must be [i, j, exponent]");
      const int i = f[0].get<int>(), c = f[1].get<int>(), e = f[2].get<int>();
      if (e < 1 || e > 0xFFFF) detail::malformed("exponent out of range");
      if (i == 0 && c == 0) factors.push_back({kChartVar, static_cast<std::uint16_t>(e)});
      else if (i >= 1 && i <= kMaxDim && c >= 1 && c <= kMaxDim)
        factors.push_back({matrix_var(i, c), static_cast<std::uint16_t>(e)});
      else detail::malformed("variable index out of range");
    }
    terms.push_back({Monomial::from_factors(std::move(factors)), std::move(coeff)});
  }
  return Polynomial::from_terms(std::move(terms));
}

inline Json to_json(const Provenance& source) {
  struct Visitor {
    Json operator()(const MinorSource& m) const {
      return {{"type", "minor"}, {"k", m.k}, {"rows", detail::indices_json(m.rows)}, {"cols", detail::indices_json(m.cols)}};
    }
    Json operator()(const WeymanSource& w) const {
      return {{"type", "weyman"}, {"i", w.i}, {"p", w.p}, {"P", detail::indices_json(w.rows)}, {"Q", detail::indices_json(w.cols)}};
    }
    Json operator()(const SymplecticSource& s) const {
      return {{"type", "symplectic"}, {"family", s.family}, {"r", s.r}, {"s", s.s}};
    }
    Json operator()(const ChartSource& c) const {
      return {{"type", "chart"}, {"j", c.j}, {"k", c.k}, {"rows", detail::indices_json(c.rows)}, {"cols", detail::indices_json(c.cols)}};
    }
  };
  return std::visit(Visitor{}, source);
}

inline Provenance provenance_from_json(const Json& j) {
  const Json& type = detail::field(j, "type");
  if (!type.is_string()) detail::malformed("provenance type must be a string");
  const std::string t = type.get<std::string>();
  if (t == "minor") return MinorSource{detail::int_field(j, "k"), detail::mask_field(j, "rows"), detail::mask_field(j, "cols")};
  if (t == "weyman")
    return WeymanSource{detail::int_field(j, "i"), detail::int_field(j, "p"), detail::mask_field(j, "P"), detail::mask_field(j, "Q")};
  if (t == "symplectic") {
    const Json& family = detail::field(j, "family");
    if (!family.is_string()) detail::malformed("symplectic family must be a string");
    return SymplecticSource{family.get<std::string>(), detail::int_field(j, "r"), detail::int_field(j, "s")};
  }
  if (t == "chart") return ChartSource{detail::int_field(j, "j"), detail::int_field(j, "k"), detail::mask_field(j, "rows"), detail::mask_field(j, "cols")};
  detail::malformed("unknown provenance type '" + t + "'");
}

inline Json lambda_json(const std::optional<Partition>& lambda) {
  if (!lambda) return nullptr;
  return lambda->parts();
}

inline std::optional<Partition> lambda_from_json(const Json& j) {
  if (j.is_null()) return std::nullopt;
  if (!j.is_array()) detail::malformed("lambda must be a list of parts or null");
  std::vector<int> parts;
  for (const auto& p : j) {
    if (!p.is_number_integer()) detail::malformed("lambda parts must be integers");
    parts.push_back(p.get<int>());
  }
  return Partition(std::move(parts));
}

inline Json to_json(const EquationSet& eqs) {
  Json out;
  out["schema"] = kSchema;
  out["kind"] = "equation_set";
  out["algebra"] = eqs.algebra();
  out["n"] = eqs.n();
  out["lambda"] = lambda_json(eqs.lambda());
  out["monomial_order"] = kMonomialOrder;
  out["metadata"] = Json::object();
  for (const auto& [key, value] : eqs.metadata()) out["metadata"][key] = value;
  out["equation_count"] = eqs.size();
  out["count_before_dedup"] = eqs.count_before_dedup();
  out["dropped_zero"] = eqs.dropped_zero();
  Json list = Json::array();
  for (const auto& eq : eqs.equations()) {
    Json provenance = Json::array();
    for (const auto& source : eq.provenance) provenance.push_back(to_json(source));
    list.push_back({{"text", eq.poly.to_string()}, {"polynomial", to_json(eq.poly)}, {"provenance", std::move(provenance)}});
  }
  out["equations"] = std::move(list);
  return out;
}

inline void check_document(const Json& j, const char* kind) {
  if (!j.is_object()) detail::malformed("document must be an object");
  const Json& schema = detail::field(j, "schema");
  if (!schema.is_string() || schema.get<std::string>() != kSchema)
    detail::malformed(std::string("schema must be \"") + kSchema + "\"");
  const Json& k = detail::field(j, "kind");
  if (!k.is_string() || k.get<std::string>() != kind) detail::malformed(std::string("expected kind \"") + kind + "\"");
}

inline EquationSet equation_set_from_json(const Json& j) {
  check_document(j, "equation_set");
  const Json& algebra = detail::field(j, "algebra");
  if (!algebra.is_string()) detail::malformed("algebra must be a string");
  EquationSet out(algebra.get<std::string>(), detail::int_field(j, "n"), lambda_from_json(detail::field(j, "lambda")));
  if (j.contains("metadata")) {
    for (const auto& [key, value] : j.at("metadata").items()) {
      if (!value.is_string()) detail::malformed("metadata values must be strings");
      out.set_metadata(key, value.get<std::string>());
    }
  }
  const Json& list = detail::field(j, "equations");
  if (!list.is_array()) detail::malformed("equations must be a list");
  for (const auto& eq : list) {
    const Polynomial poly = polynomial_from_json(detail::field(eq, "polynomial"));
    const Json& provenance = detail::field(eq, "provenance");
    if (!provenance.is_array() || provenance.empty()) detail::malformed("provenance must be a non-empty list");
    for (const auto& source : provenance) out.add(poly, provenance_from_json(source));
  }
  if (j.contains("count_before_dedup") && j.contains("dropped_zero"))
    out.set_counters(j.at("count_before_dedup").get<std::size_t>(), j.at("dropped_zero").get<std::size_t>());
  return out;
}

inline Json to_json(const ChartAtlas& atlas) {
  Json out;
  out["schema"] = kSchema;
  out["kind"] = "chart_atlas";
  out["algebra"] = atlas.base->algebra();
  out["n"] = atlas.base->n();
  out["lambda"] = lambda_json(atlas.base->lambda());
  out["monomial_order"] = kMonomialOrder;
  out["chart_count"] = atlas.charts.size();
  if (atlas.warning) out["warning"] = *atlas.warning;
  out["base"] = to_json(*atlas.base);
  Json charts = Json::array();
  for (const auto& c : atlas.charts)
    charts.push_back({{"j", c.j},
                      {"k", c.k},
                      {"rows", detail::indices_json(c.rows)},
                      {"cols", detail::indices_json(c.cols)},
                      {"inverted_minor", to_json(c.inverted_minor)},
                      {"chart_relation", to_json(c.chart_relation)}});
  out["charts"] = std::move(charts);
  return out;
}

inline ChartAtlas chart_atlas_from_json(const Json& j) {
  check_document(j, "chart_atlas");
  ChartAtlas atlas;
  atlas.base = std::make_shared<const EquationSet>(equation_set_from_json(detail::field(j, "base")));
  if (j.contains("warning")) atlas.warning = j.at("warning").get<std::string>();
  const Json& charts = detail::field(j, "charts");
  if (!charts.is_array()) detail::malformed("charts must be a list");
  for (const auto& c : charts)
    atlas.charts.push_back({atlas.base, polynomial_from_json(detail::field(c, "inverted_minor")),
                            polynomial_from_json(detail::field(c, "chart_relation")), detail::int_field(c, "j"),
                            detail::int_field(c, "k"), detail::mask_field(c, "rows"), detail::mask_field(c, "cols")});
  return atlas;
}

/// Parses text and rethrows syntax errors as domain errors.
inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw DomainError(std::string("malformed JSON input: ") + e.what());
  }
}

}  // namespace orbitforge
