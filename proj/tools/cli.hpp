#pragma once

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cache.hpp"
#include "orbitforge/orbitforge.hpp"

namespace orbitforge::cli {

/// Bad flag combinations; exit status 2 like parse errors.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string algebra = "gl";
  std::optional<int> n;
  std::optional<int> m;
  std::string lambda;
  std::string format;  // empty: json for artifacts, text for oracle/verify
  std::string dialect = "sage";
  std::string sp_mode = "lie";
  bool full_k_range = false;
  unsigned threads = 0;
  std::string cache_dir;
  std::string convention = "literal";
  bool compare = false;
  int samples = 20;
  std::uint64_t seed = 1;
  int max_n = 0;  // 0: 5 for oracle, 4 for verify
  int modp_points = 100;
  std::string prime;
  std::string input = "-";
};

namespace detail {

inline KRange k_range(const Options& o) { return o.full_k_range ? KRange::full : KRange::pruned; }

inline Partition resolve_partition(const Options& o) {
  const bool sp = o.algebra == "sp";
  if (sp && o.n) throw UsageError("--n applies to --algebra gl; use --m for sp");
  if (!sp && o.m) throw UsageError("--m applies to --algebra sp; use --n for gl");
  const Partition lambda = Partition::parse(o.lambda);
  if (sp) {
    if (o.m && lambda.size() != 2 * *o.m)
      throw DomainError("lambda " + lambda.to_string() + " partitions " + std::to_string(lambda.size()) +
                        ", expected 2m = " + std::to_string(2 * *o.m));
  } else if (o.n && lambda.size() != *o.n) {
    throw DomainError("lambda " + lambda.to_string() + " partitions " + std::to_string(lambda.size()) +
                      ", expected n = " + std::to_string(*o.n));
  }
  if (lambda.size() > 20) throw DomainError("n must be at most 20");
  return lambda;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline std::string read_input(const std::string& path) {
  std::stringstream buffer;
  if (path == "-") {
    buffer << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot read input file '" + path + "'");
    buffer << in.rdbuf();
  }
  return buffer.str();
}

/// Runs compute() unless the cache already holds the payload for config.
inline Json cached(const Options& o, const Json& config, const std::function<Json()>& compute) {
  if (o.cache_dir.empty()) return compute();
  ResultCache cache(o.cache_dir);
  const std::string key = ResultCache::key_for(config);
  if (auto hit = cache.load(key)) return *hit;
  Json payload = compute();
  cache.store(key, config, payload);
  return payload;
}

inline Json artifact_config(const char* command, const Options& o, const Partition& lambda) {
  Json config;
  config["command"] = command;
  config["algebra"] = o.algebra;
  config["lambda"] = lambda.parts();
  config["k_range"] = to_string(k_range(o));
  if (o.algebra == "sp") config["sp_mode"] = o.sp_mode;
  return config;
}

inline std::string render_equation_set(const Json& payload, const Options& o) {
  if (o.format == "json") return dump(payload);
  const EquationSet eqs = equation_set_from_json(payload);
  if (o.format == "text") return to_text(eqs);
  return cas_script(eqs, parse_cas_dialect(o.dialect));
}

inline std::string render_atlas(const Json& payload, const Options& o) {
  if (o.format == "json") return dump(payload);
  const ChartAtlas atlas = chart_atlas_from_json(payload);
  if (o.format == "text") return to_text(atlas);
  return cas_script(atlas, parse_cas_dialect(o.dialect));
}

inline Json integer_json(const Integer& v) {
  if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(v);
  return v.str();
}

// --- commands -------------------------------------------------------------

inline std::string cmd_closure(const Options& o) {
  const Partition lambda = resolve_partition(o);
  const Json payload = cached(o, artifact_config("closure", o, lambda), [&] {
    if (o.algebra == "sp") return to_json(sp_closure_equations(lambda, parse_sp_mode(o.sp_mode), k_range(o)));
    return to_json(closure_equations(lambda, k_range(o)));
  });
  return render_equation_set(payload, o);
}

inline std::string cmd_charts(const Options& o, std::ostream& err) {
  const Partition lambda = resolve_partition(o);
  const Json payload = cached(o, artifact_config("charts", o, lambda), [&] {
    if (o.algebra == "sp") return to_json(sp_orbit_charts(lambda, parse_sp_mode(o.sp_mode), k_range(o)));
    return to_json(localization_charts(lambda, k_range(o)));
  });
  if (payload.contains("warning")) err << "warning: " << payload.at("warning").get<std::string>() << '\n';
  return render_atlas(payload, o);
}

inline std::string vip_label(int i, int p) { return "V_{" + std::to_string(i) + "," + std::to_string(p) + "}"; }

inline Json comparison_json(const GeneratorComparison& cmp) {
  Json cells = Json::array();
  for (const auto& c : cmp.cells)
    cells.push_back({{"mu", c.mu.parts()},
                     {"expected", c.expected},
                     {"samples", c.samples},
                     {"closure_vanishes", c.closure_vanishes},
                     {"weyman_vanishes", c.weyman_vanishes},
                     {"agreements", c.agreements}});
  Json common = Json::array();
  for (const auto& p : cmp.common) common.push_back(p.to_string());
  return {{"closure_count", cmp.closure_count},
          {"closure_count_before_dedup", cmp.closure_count_before_dedup},
          {"weyman_count", cmp.weyman_count},
          {"weyman_count_before_dedup", cmp.weyman_count_before_dedup},
          {"sets_agree", cmp.sets_agree()},
          {"matches_dominance", cmp.matches_dominance()},
          {"cells", std::move(cells)},
          {"common", std::move(common)}};
}

inline std::string comparison_text(const GeneratorComparison& cmp) {
  std::ostringstream os;
  os << "# comparison with the closure equations (" << to_string(cmp.convention) << " convention)\n";
  os << "closure equations: " << cmp.closure_count << " (" << cmp.closure_count_before_dedup << " before dedup)\n";
  os << "weyman generators: " << cmp.weyman_count << " (" << cmp.weyman_count_before_dedup << " before dedup)\n";
  os << "common polynomials: " << cmp.common.size() << '\n';
  for (const auto& c : cmp.cells)
    os << "  mu=" << c.mu.to_string() << (c.expected ? " (in closure)" : " (outside)") << ": closure vanishes "
       << c.closure_vanishes << "/" << c.samples << ", weyman vanishes " << c.weyman_vanishes << "/" << c.samples
       << ", agree " << c.agreements << "/" << c.samples << '\n';
  os << "sets agree on all samples: " << (cmp.sets_agree() ? "yes" : "no") << '\n';
  return os.str();
}

inline std::string cmd_weyman(const Options& o) {
  if (o.algebra != "gl") throw UsageError("weyman generators are defined for --algebra gl only");
  const Partition lambda = resolve_partition(o);
  const VipConvention convention = parse_vip_convention(o.convention);
  const JLambdaPresentation presentation = j_lambda_generators(lambda, convention);
  std::optional<GeneratorComparison> cmp;
  if (o.compare) cmp = compare_generator_sets(lambda, o.samples, o.seed, convention);

  if (o.format == "cas") return cas_script(presentation.generators, parse_cas_dialect(o.dialect));
  if (o.format == "text") {
    std::ostringstream os;
    os << "# weyman n=" << lambda.size() << " lambda=" << lambda.to_string() << " convention=" << to_string(convention)
       << ": " << presentation.count_before_dedup() << " spanning polynomials, " << presentation.generators.size()
       << " distinct\n";
    for (const auto& set : presentation.sets) {
      os << vip_label(set.i, set.p) << ": ";
      if (set.trivial()) {
        os << "trivial\n";
        continue;
      }
      os << set.spanning.size() << (set.spanning.size() == 1 ? " polynomial\n" : " polynomials\n");
      for (const auto& s : set.spanning)
        os << "  " << s.poly.to_string() << "    # P=" << format_indices(s.rows) << " Q=" << format_indices(s.cols) << '\n';
    }
    if (cmp) os << comparison_text(*cmp);
    return os.str();
  }
  Json out;
  out["schema"] = kSchema;
  out["kind"] = "weyman";
  out["n"] = lambda.size();
  out["lambda"] = lambda.parts();
  out["vip_convention"] = to_string(convention);
  out["monomial_order"] = kMonomialOrder;
  Json labels = Json::array();
  for (const auto& set : presentation.sets) {
    Json polys = Json::array();
    for (const auto& s : set.spanning)
      polys.push_back({{"P", to_indices(s.rows)}, {"Q", to_indices(s.cols)}, {"text", s.poly.to_string()},
                       {"polynomial", to_json(s.poly)}});
    labels.push_back({{"label", vip_label(set.i, set.p)},
                      {"i", set.i},
                      {"p", set.p},
                      {"trivial", set.trivial()},
                      {"polynomials", std::move(polys)}});
  }
  out["labels"] = std::move(labels);
  out["spanning_count"] = presentation.count_before_dedup();
  out["generators"] = to_json(presentation.generators);
  if (cmp) out["comparison"] = comparison_json(*cmp);
  return dump(out);
}

inline std::string cmd_constraints(const Options& o) {
  if (!o.m) throw UsageError("symplectic constraints needs --m");
  const SpMode mode = parse_sp_mode(o.sp_mode);
  const SymplecticConstraints constraints = symplectic_constraints(*o.m, mode);
  EquationSet eqs = constraints.equations();
  eqs.set_metadata("sp_mode", to_string(mode));
  eqs.set_metadata("omega_sign_pattern", kOmegaSignPattern);
  eqs.set_metadata("monomial_order", kMonomialOrder);
  if (mode == SpMode::paper) eqs.set_metadata("condition", "group condition");
  return render_equation_set(to_json(eqs), o);
}

inline std::string cmd_bound(const Options& o) {
  if (o.algebra != "gl") throw UsageError("bound is defined for --algebra gl only");
  const Partition lambda = resolve_partition(o);
  const CoefficientReport report = coefficient_report(lambda);
  if (o.format == "text") {
    std::ostringstream os;
    os << "lambda " << lambda.to_string() << '\n'
       << "bound max{r_k}!: " << report.paper_bound << '\n'
       << "smallest admissible prime: " << report.prime << '\n'
       << "max |coefficient| over F: " << report.max_coeff_F << '\n'
       << "max |coefficient| over H: " << report.max_coeff_H << '\n'
       << "max over F within bound: " << (report.within_bound() ? "yes" : "no") << '\n'
       << "max over F exceeds max over H: " << (report.f_exceeds_h() ? "yes" : "no") << '\n';
    return os.str();
  }
  auto sets_json = [](const std::vector<LabeledCoefficients>& sets) {
    Json out = Json::array();
    for (const auto& s : sets) {
      Json values = Json::array();
      for (const auto& v : s.values) values.push_back(v.str());
      out.push_back({{"label", s.label}, {"coefficients", std::move(values)}});
    }
    return out;
  };
  Json out;
  out["schema"] = kSchema;
  out["kind"] = "bound";
  out["n"] = lambda.size();
  out["lambda"] = lambda.parts();
  out["paper_bound"] = integer_json(report.paper_bound);
  out["prime"] = integer_json(report.prime);
  out["max_coeff_F"] = integer_json(report.max_coeff_F);
  out["max_coeff_H"] = integer_json(report.max_coeff_H);
  out["within_bound"] = report.within_bound();
  out["f_exceeds_h"] = report.f_exceeds_h();
  out["closure_coefficients"] = sets_json(report.closure_sets);
  out["nonvanishing_coefficients"] = sets_json(report.nonvanishing_sets);
  return dump(out);
}

inline Integer parse_prime(const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw DomainError("modulus must be a positive integer, got '" + text + "'");
  return Integer(text);
}

inline std::string cmd_reduce(const Options& o) {
  const Integer p = parse_prime(o.prime);
  const EquationSet eqs = equation_set_from_json(parse_json(read_input(o.input)));
  return render_equation_set(to_json(reduce_mod_p(eqs, p)), o);
}

inline std::string cmd_export(const Options& o) {
  const Json doc = parse_json(read_input(o.input));
  if (doc.is_object() && doc.value("kind", "") == "chart_atlas") return render_atlas(to_json(chart_atlas_from_json(doc)), o);
  return render_equation_set(to_json(equation_set_from_json(doc)), o);
}

inline std::string cmd_oracle(const Options& o, bool& all_agree) {
  if (o.max_n < 1 || o.max_n > 6) throw DomainError("oracle needs 1 <= max-n <= 6");
  if (o.samples < 1) throw DomainError("oracle needs at least one sample");
  const bool sp = o.algebra == "sp";
  std::vector<StratificationReport> reports;
  if (sp) {
    for (int m = 1; 2 * m <= o.max_n; ++m) reports.push_back(sp_stratification_oracle(m, o.samples, o.seed));
  } else {
    for (int n = 1; n <= o.max_n; ++n) reports.push_back(stratification_oracle(n, o.samples, o.seed, k_range(o)));
  }
  all_agree = true;
  for (const auto& r : reports) all_agree = all_agree && r.all_agree();
  if (o.format == "text") {
    std::ostringstream os;
    os << "oracle algebra=" << o.algebra << " max-n=" << o.max_n << " samples=" << o.samples << " seed=" << o.seed << '\n';
    for (const auto& r : reports) {
      os << "n=" << r.n << ": " << r.total_agreements() << "/" << r.total_samples() << " samples agree";
      for (const auto& s : r.skipped) os << " (skipped lambda=" << s.to_string() << ")";
      os << '\n';
      for (const auto& c : r.cells)
        if (c.agreements != c.samples)
          os << "  mismatch mu=" << c.mu.to_string() << " lambda=" << c.lambda.to_string() << ": " << c.agreements
             << "/" << c.samples << '\n';
    }
    os << (all_agree ? "result: PASS\n" : "result: FAIL\n");
    return os.str();
  }
  Json out;
  out["schema"] = kSchema;
  out["kind"] = "oracle";
  out["algebra"] = o.algebra;
  out["max_n"] = o.max_n;
  out["samples"] = o.samples;
  out["seed"] = o.seed;
  out["k_range"] = to_string(k_range(o));
  Json list = Json::array();
  for (const auto& r : reports) {
    Json cells = Json::array();
    for (const auto& c : r.cells)
      cells.push_back({{"mu", c.mu.parts()},
                       {"lambda", c.lambda.parts()},
                       {"expected", c.expected},
                       {"samples", c.samples},
                       {"agreements", c.agreements}});
    Json skipped = Json::array();
    for (const auto& s : r.skipped) skipped.push_back(s.parts());
    list.push_back({{"n", r.n},
                    {"total_samples", r.total_samples()},
                    {"total_agreements", r.total_agreements()},
                    {"all_agree", r.all_agree()},
                    {"skipped", std::move(skipped)},
                    {"cells", std::move(cells)}});
  }
  out["reports"] = std::move(list);
  out["all_agree"] = all_agree;
  return dump(out);
}

inline std::string cmd_verify(const Options& o, bool& passed) {
  VerifyOptions v;
  v.max_n = o.max_n;
  v.samples = o.samples;
  v.seed = o.seed;
  v.modp_points = o.modp_points;
  v.range = k_range(o);
  const auto results = run_verify(v);
  passed = verify_passed(results);
  if (o.format == "json") return dump(verify_json(results, v));
  return verify_table(results, v);
}

}  // namespace detail

/// Runs one command line (without the program name). Output goes to out,
/// diagnostics to err. Returns 0 on success, 1 on a domain error or a failed
/// check, 2 on a usage error.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Defining equations of nilpotent orbit closures in gl_n and sp_2m", "orbitforge"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);
  Options o;
  if (const char* env = std::getenv("ORBITFORGE_CACHE_DIR")) o.cache_dir = env;
  app.add_option("--threads", o.threads, "Worker threads (0 = all hardware threads)");
  app.add_option("--cache-dir", o.cache_dir, "Directory for cached results (env ORBITFORGE_CACHE_DIR)");

  const auto formats = CLI::IsMember({"json", "text", "cas"});
  auto add_lambda_options = [&](CLI::App* sub, bool with_sp) {
    sub->add_option("--lambda", o.lambda, "Partition, e.g. \"[2,1]\"")->required();
    sub->add_option("--n", o.n, "Matrix size for gl_n");
    if (with_sp) {
      sub->add_option("--algebra", o.algebra, "gl or sp")->check(CLI::IsMember({"gl", "sp"}));
      sub->add_option("--m", o.m, "Half the matrix size for sp_2m");
      sub->add_option("--sp-mode", o.sp_mode, "Symplectic constraints: lie or paper")->check(CLI::IsMember({"lie", "paper"}));
    }
  };
  auto add_format = [&](CLI::App* sub, bool cas) {
    if (cas) {
      sub->add_option("--format", o.format, "json, text or cas")->check(formats);
      sub->add_option("--dialect", o.dialect, "CAS dialect: sage or macaulay2")
          ->check(CLI::IsMember({"sage", "macaulay2", "m2"}));
    } else {
      sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    }
  };

  auto* closure = app.add_subcommand("closure", "Closure equations F_lambda");
  add_lambda_options(closure, true);
  add_format(closure, true);
  closure->add_flag("--full-k-range", o.full_k_range, "Loop k = 1..n instead of stopping at the first zero rank");

  auto* charts = app.add_subcommand("charts", "Localization charts of O_lambda");
  add_lambda_options(charts, true);
  add_format(charts, true);
  charts->add_flag("--full-k-range", o.full_k_range, "Loop k = 1..n for the base equations");

  auto* weyman = app.add_subcommand("weyman", "Generators V_{0,p}, V_{i,lambda(i)} of J_lambda");
  add_lambda_options(weyman, false);
  add_format(weyman, true);
  weyman->add_option("--convention", o.convention, "literal or cofactor")->check(CLI::IsMember({"literal", "cofactor"}));
  weyman->add_flag("--compare", o.compare, "Compare with the closure equations on sampled points");
  weyman->add_option("--samples", o.samples, "Samples per orbit for --compare");
  weyman->add_option("--seed", o.seed, "Master seed for --compare");

  auto* symplectic = app.add_subcommand("symplectic", "Symplectic helpers");
  symplectic->require_subcommand(1);
  auto* constraints = symplectic->add_subcommand("constraints", "Equations cutting sp_2m out of gl_2m");
  constraints->add_option("--m", o.m, "Half the matrix size")->required();
  constraints->add_option("--sp-mode", o.sp_mode, "lie or paper")->check(CLI::IsMember({"lie", "paper"}));
  add_format(constraints, true);

  auto* bound = app.add_subcommand("bound", "Coefficient bound max{r_k}! and admissible prime");
  add_lambda_options(bound, false);
  add_format(bound, false);

  auto* reduce = app.add_subcommand("reduce", "Reduce an equation-set JSON modulo a prime");
  reduce->add_option("--p", o.prime, "Prime modulus")->required();
  reduce->add_option("--input", o.input, "Equation-set JSON file (- for stdin)");
  add_format(reduce, true);

  auto* oracle = app.add_subcommand("oracle", "Sampled-point stratification check");
  oracle->add_option("--algebra", o.algebra, "gl or sp")->check(CLI::IsMember({"gl", "sp"}));
  oracle->add_option("--max-n", o.max_n, "Largest matrix size");
  oracle->add_option("--samples", o.samples, "Samples per orbit");
  oracle->add_option("--seed", o.seed, "Master seed");
  oracle->add_flag("--full-k-range", o.full_k_range, "Use the full power loop");
  add_format(oracle, false);

  auto* verify = app.add_subcommand("verify", "Run every property suite");
  verify->add_option("--max-n", o.max_n, "Largest matrix size");
  verify->add_option("--samples", o.samples, "Samples per orbit");
  verify->add_option("--seed", o.seed, "Master seed");
  verify->add_option("--modp-points", o.modp_points, "Random points per partition and prime");
  verify->add_flag("--full-k-range", o.full_k_range, "Use the full power loop");
  add_format(verify, false);

  auto* export_cmd = app.add_subcommand("export", "Re-render an equation-set or chart JSON");
  export_cmd->add_option("--input", o.input, "JSON file (- for stdin)");
  add_format(export_cmd, true);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == static_cast<int>(CLI::ExitCodes::Success) ? 0 : 2;
  }

  const bool report = *oracle || *verify;
  if (o.format.empty()) o.format = report ? "text" : "json";
  if (o.max_n == 0) o.max_n = *oracle ? 5 : 4;

  try {
    set_thread_count(o.threads);
    std::string output;
    int status = 0;
    if (*closure) {
      output = detail::cmd_closure(o);
    } else if (*charts) {
      output = detail::cmd_charts(o, err);
    } else if (*weyman) {
      output = detail::cmd_weyman(o);
    } else if (*symplectic) {
      output = detail::cmd_constraints(o);
    } else if (*bound) {
      output = detail::cmd_bound(o);
    } else if (*reduce) {
      output = detail::cmd_reduce(o);
    } else if (*oracle) {
      bool agree = false;
      output = detail::cmd_oracle(o, agree);
      status = agree ? 0 : 1;
    } else if (*verify) {
      bool passed = false;
      output = detail::cmd_verify(o, passed);
      status = passed ? 0 : 1;
    } else if (*export_cmd) {
      output = detail::cmd_export(o);
    }
    out << output;
    out.flush();
    return status;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed JSON input: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace orbitforge::cli
