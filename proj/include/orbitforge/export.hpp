#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "equation_set.hpp"
#include "polynomial.hpp"
#include "version.hpp"

namespace orbitforge {

namespace detail {

inline std::string join_provenance(const std::vector<Provenance>& sources) {
  std::string out;
  for (const auto& s : sources) {
    if (!out.empty()) out += "; ";
    out += describe(s);
  }
  return out;
}

inline std::string set_header(const EquationSet& eqs) {
  std::string out = eqs.algebra() + " n=" + std::to_string(eqs.n());
  if (eqs.lambda()) out += " lambda=" + eqs.lambda()->to_string();
  return out;
}

inline void write_metadata(std::ostream& os, const EquationSet& eqs, const char* comment) {
  for (const auto& [key, value] : eqs.metadata()) os << comment << ' ' << key << ": " << value << '\n';
}

}  // namespace detail

/// One "poly = 0" line per equation, provenance as a trailing comment.
inline std::string to_text(const EquationSet& eqs) {
  std::ostringstream os;
  os << "# " << detail::set_header(eqs) << ": " << eqs.size() << (eqs.size() == 1 ? " equation (" : " equations (") << eqs.count_before_dedup()
     << " before dedup), order " << kMonomialOrder << '\n';
  detail::write_metadata(os, eqs, "#");
  for (const auto& eq : eqs.equations())
    os << eq.poly.to_string() << " = 0    # " << detail::join_provenance(eq.provenance) << '\n';
  return os.str();
}

inline std::string to_text(const ChartAtlas& atlas) {
  std::ostringstream os;
  os << to_text(*atlas.base);
  os << "# " << atlas.charts.size() << " charts, each the equations above plus one relation\n";
  if (atlas.warning) os << "# warning: " << *atlas.warning << '\n';
  for (const auto& c : atlas.charts)
    os << c.chart_relation.to_string() << " = 0    # " << describe(ChartSource{c.j, c.k, c.rows, c.cols}) << '\n';
  return os.str();
}

enum class CasDialect { sage, macaulay2 };

inline CasDialect parse_cas_dialect(const std::string& text) {
  if (text == "sage") return CasDialect::sage;
  if (text == "macaulay2" || text == "m2") return CasDialect::macaulay2;
  throw DomainError("unsupported CAS dialect '" + text + "' (expected sage or macaulay2)");
}

namespace detail {

/// Ring variables from largest to smallest: t (if used), x_n_n, ..., x_1_1,
/// so the CAS's degree-lexicographic order coincides with ours.
inline std::vector<VarId> ring_variables(int n, bool with_t) {
  std::vector<VarId> vars;
  if (with_t) vars.push_back(kChartVar);
  for (int i = n; i >= 1; --i)
    for (int j = n; j >= 1; --j) vars.push_back(matrix_var(i, j));
  return vars;
}

class CasWriter {
 public:
  CasWriter(CasDialect dialect, std::ostream& os) : dialect_(dialect), os_(os) {}

  std::string name(VarId v) const {
    if (v == kChartVar) return "t";
    if (dialect_ == CasDialect::macaulay2) return "x_(" + std::to_string(var_row(v)) + "," + std::to_string(var_col(v)) + ")";
    return var_name(v);
  }

  std::string poly(const Polynomial& p) const {
    return p.format([this](VarId v) { return name(v); });
  }

  void comment(const std::string& text) { os_ << (dialect_ == CasDialect::sage ? "# " : "-- ") << text << '\n'; }

  void ring(const std::vector<VarId>& vars) {
    if (dialect_ == CasDialect::sage) {
      os_ << "R = PolynomialRing(QQ, [";
      for (std::size_t i = 0; i < vars.size(); ++i) os_ << (i ? ", " : "") << '\'' << name(vars[i]) << '\'';
      os_ << "], order='deglex')\nR.inject_variables(verbose=False)\n";
    } else {
      os_ << "R = QQ[";
      for (std::size_t i = 0; i < vars.size(); ++i) os_ << (i ? ", " : "") << name(vars[i]);
      os_ << ", MonomialOrder => GLex];\n";
    }
  }

  void ideal(const std::string& id, const std::vector<const Polynomial*>& gens) {
    if (dialect_ == CasDialect::sage) {
      if (gens.empty()) {
        os_ << id << " = R.ideal([R(0)])\n";
        return;
      }
      os_ << id << " = R.ideal([\n";
      for (const auto* g : gens) os_ << "    " << poly(*g) << ",\n";
      os_ << "])\n";
    } else {
      if (gens.empty()) {
        os_ << id << " = ideal(0_R);\n";
        return;
      }
      os_ << id << " = ideal(\n";
      for (std::size_t i = 0; i < gens.size(); ++i) os_ << "    " << poly(*gens[i]) << (i + 1 < gens.size() ? ",\n" : "\n");
      os_ << ");\n";
    }
  }

  void suggestions(const std::string& id) {
    comment("Suggested checks:");
    if (dialect_ == CasDialect::sage) {
      comment("G = " + id + ".groebner_basis()");
      comment("J = R.ideal([...])   # another generating set, e.g. from `orbitforge weyman`");
      comment(id + ".radical() == J.radical()   # same zero set");
      comment(id + " == J                       # same ideal");
    } else {
      comment("G = gens gb " + id);
      comment("J = ideal(...)   -- another generating set, e.g. from `orbitforge weyman`");
      comment("radical " + id + " == radical J   -- same zero set");
      comment(id + " == J                       -- same ideal");
    }
  }

 private:
  CasDialect dialect_;
  std::ostream& os_;
};

inline bool uses_chart_variable(const EquationSet& eqs) {
  for (const auto& eq : eqs.equations())
    if (eq.poly.contains(kChartVar)) return true;
  return false;
}

}  // namespace detail

/// Ring declaration over QQ with all n^2 matrix variables (plus t when
/// used) and the ideal generated by the set.
inline std::string cas_script(const EquationSet& eqs, CasDialect dialect) {
  std::ostringstream os;
  detail::CasWriter w(dialect, os);
  w.comment("orbitforge " + std::string(kVersion) + ": " + detail::set_header(eqs) + ", " +
            std::to_string(eqs.size()) + " generators");
  w.ring(detail::ring_variables(eqs.n(), detail::uses_chart_variable(eqs)));
  std::vector<const Polynomial*> gens;
  for (const auto& eq : eqs.equations()) gens.push_back(&eq.poly);
  w.ideal("I", gens);
  w.suggestions("I");
  return os.str();
}

/// One ideal per chart, I1, I2, ..., over a ring that includes t.
inline std::string cas_script(const ChartAtlas& atlas, CasDialect dialect) {
  std::ostringstream os;
  detail::CasWriter w(dialect, os);
  const EquationSet& base = *atlas.base;
  w.comment("orbitforge " + std::string(kVersion) + ": charts of " + detail::set_header(base) + ", " +
            std::to_string(atlas.charts.size()) + " charts");
  if (atlas.warning) w.comment("warning: " + *atlas.warning);
  w.ring(detail::ring_variables(base.n(), true));
  std::vector<const Polynomial*> gens;
  for (const auto& eq : base.equations()) gens.push_back(&eq.poly);
  std::size_t index = 0;
  for (const auto& c : atlas.charts) {
    w.comment(describe(ChartSource{c.j, c.k, c.rows, c.cols}));
    auto chart_gens = gens;
    chart_gens.push_back(&c.chart_relation);
    w.ideal("I" + std::to_string(++index), chart_gens);
  }
  if (atlas.charts.empty()) w.ideal("I", gens);
  w.suggestions(atlas.charts.empty() ? "I" : "I1");
  return os.str();
}

}  // namespace orbitforge
