#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "vexp/cli.hpp"
#include "vexp/config.hpp"
#include "vexp/invariants.hpp"

namespace vexp {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config;
  std::string which;
  std::string out;
  std::string eps;
  std::string suite;
  std::optional<std::uint64_t> seed;
  std::optional<int> count;
  std::optional<double> rel_tol;
  std::optional<int> workers;
};

// Rows share one column layout; CSV or JSON lines chosen by the output path.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
};

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_number()) return fmt::format("{:.17g}", v.get<double>());
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

Json finite_or_string(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

void write_table(const Table& t, bool csv, std::ostream& os) {
  if (csv) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& r : t.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
      os << "\n";
    }
    return;
  }
  for (const auto& r : t.rows) {
    Json line = Json::object();
    for (std::size_t i = 0; i < r.size(); ++i) line[t.columns[i]] = r[i];
    os << line.dump() << "\n";
  }
}

void emit(const Table& t, const Options& o, bool csv_default, std::ostream& out) {
  if (o.out.empty()) {
    write_table(t, csv_default, out);
    return;
  }
  auto ends = [&](const std::string& ext) {
    return o.out.size() >= ext.size() && o.out.compare(o.out.size() - ext.size(), ext.size(), ext) == 0;
  };
  bool csv;
  if (ends(".csv"))
    csv = true;
  else if (ends(".json") || ends(".jsonl"))
    csv = false;
  else
    throw UsageError("--out must end in .csv, .json or .jsonl");
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + o.out + "'");
  write_table(t, csv, f);
}

std::vector<double> parse_eps(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--eps: cannot parse '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("--eps is empty");
  return out;
}

struct Context {
  ExperimentConfig cfg;
  BoundConfig bounds;
  ScanSettings scan;
  std::uint64_t seed = 42;
  int count = 100;
  int workers = 1;
};

Context load(const Options& o) {
  Context c;
  c.cfg = load_config(o.config);
  if (o.rel_tol) {
    if (!(*o.rel_tol > 0.0)) throw UsageError("--rel-tol must be positive");
    c.cfg.settings.rel_tol = *o.rel_tol;
  }
  c.bounds = build_bound_config(c.cfg);
  c.scan = build_scan(c.cfg);
  c.seed = o.seed.value_or(c.cfg.settings.seed);
  c.count = o.count.value_or(c.cfg.settings.N);
  if (c.count < 1) throw UsageError("--n must be positive");
  c.workers = o.workers.value_or(c.cfg.settings.workers);
  if (c.workers < 1) throw UsageError("--workers must be positive");
  return c;
}

std::optional<ConstantId> requested_constant(const Options& o, const ExperimentConfig& cfg) {
  std::string w = !o.which.empty() ? o.which : cfg.constant.value_or("");
  if (w.empty() || w == "all") return std::nullopt;
  try {
    return parse_constant_id(w);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void report_coupling(const BoundConfig& b, ConstantId id, std::ostream& err) {
  const Coupling c = coupling_for(id);
  try {
    const DerivedParams d = derive(b, c);
    err << fmt::format(
        "{}: coupling {} q(0)={:.17g} q_inf={:.17g} gamma={:.17g} alpha(0)={:.17g} "
        "alpha_inf={:.17g} lambda={:.17g} p={:.17g}\n",
        to_string(id), to_string(c), d.q.at_zero(), d.q.at_infinity(), d.gamma,
        d.alpha.at_zero(), d.alpha.at_infinity(), d.lambda, d.p);
  } catch (const std::exception& e) {
    err << to_string(id) << ": coupling " << to_string(c) << " not available: " << e.what() << "\n";
  }
}

int cmd_norm(const Options& o, std::ostream& out) {
  const Context c = load(o);
  if (!c.cfg.space) throw ConfigError("norm needs a 'space' entry");
  if (c.cfg.functions.empty()) throw ConfigError("norm needs at least one entry in 'functions'");
  const SpaceSpec sp = c.cfg.space->build(c.cfg.n);
  Table t{{"space", "index", "norm", "truncation_suspect", "argmax", "sup_suspect"}, {}};
  for (std::size_t i = 0; i < c.cfg.functions.size(); ++i) {
    const NormReport r = space_norm(c.cfg.functions[i].build(), sp, c.scan);
    t.rows.push_back({to_string(sp.kind), static_cast<int>(i), finite_or_string(r.value),
                      r.truncation_suspect, r.argmax ? Json(*r.argmax) : Json(nullptr),
                      r.sup_suspect});
  }
  emit(t, o, false, out);
  return 0;
}

int cmd_apply(const Options& o, std::ostream& out) {
  const Context c = load(o);
  if (static_cast<int>(c.cfg.functions.size()) != c.cfg.m)
    throw ConfigError("apply needs exactly m entries in 'functions'");
  std::vector<RadialFunction> fs;
  for (const auto& f : c.cfg.functions) fs.emplace_back(f.build());
  const GridImage g = apply_on_grid(c.bounds.op, fs, c.cfg.settings.apply_grid, c.scan.quad);
  std::optional<double> ratio;
  if (!c.cfg.sources.empty() && c.cfg.target) {
    std::vector<SpaceSpec> src;
    for (const auto& s : c.cfg.sources) src.push_back(s.build(c.cfg.n));
    ratio = operator_ratio(c.bounds.op, fs, src, c.cfg.target->build(c.cfg.n), c.scan);
  }
  Table t{{"x", "value", "exact_coeff", "exact_exponent", "ratio"}, {}};
  for (std::size_t i = 0; i < g.radii.size(); ++i) {
    Json coeff = nullptr, expo = nullptr;
    if (g.exact) {
      const auto p = g.exact->single_power();
      if (p) {
        coeff = finite_or_string(p->coeff);
        expo = p->exponent;
      }
    }
    t.rows.push_back({g.radii[i], finite_or_string(g.values[i]), coeff, expo,
                      ratio ? finite_or_string(*ratio) : Json(nullptr)});
  }
  emit(t, o, false, out);
  return 0;
}

int cmd_constants(const Options& o, std::ostream& out, std::ostream& err) {
  const Context c = load(o);
  const auto one = requested_constant(o, c.cfg);
  const std::vector<ConstantId> ids = one ? std::vector<ConstantId>{*one} : all_constant_ids();
  Table t{{"id", "value", "finite", "breakdown", "notes", "error"}, {}};
  int status = 0;
  for (ConstantId id : ids) {
    report_coupling(c.bounds, id, err);
    try {
      const BoundResult r = evaluate_constant(c.bounds, id, c.scan.quad);
      Json bd = Json::object();
      for (const auto& [k, v] : r.breakdown) bd[k] = finite_or_string(v);
      Json notes = Json::array();
      for (const auto& n : r.notes) notes.push_back(n);
      t.rows.push_back({to_string(id), finite_or_string(r.value), r.finite, bd, notes, nullptr});
    } catch (const HypothesisError& e) {
      t.rows.push_back({to_string(id), nullptr, false, Json::object(), Json::array(), e.what()});
      if (one) status = 1;
    }
  }
  emit(t, o, false, out);
  return status;
}

ExtremalKind requested_kind(const ExperimentConfig& cfg) {
  return parse_extremal_kind(cfg.extremal.value_or("lebesgue_eps"));
}

Table sweep_table(const SweepResult& s) {
  Table t{{"epsilon", "ratio", "constant", "ratio_over_constant"}, {}};
  for (const auto& r : s.rows)
    t.rows.push_back({r.eps, finite_or_string(r.ratio), finite_or_string(r.constant),
                      finite_or_string(r.ratio_over_constant)});
  return t;
}

SweepResult run_sweep(const Options& o, const Context& c) {
  const std::vector<double> eps = o.eps.empty() ? c.cfg.settings.eps_list : parse_eps(o.eps);
  HarnessOptions h{c.scan, c.workers};
  try {
    return sharpness_sweep(c.bounds, requested_kind(c.cfg), eps, requested_constant(o, c.cfg), h);
  } catch (const HypothesisError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  const Context c = load(o);
  const SweepResult s = run_sweep(o, c);
  report_coupling(c.bounds, s.id, err);
  emit(sweep_table(s), o, true, out);
  return 0;
}

int verify_invariants(const Options& o, std::ostream& out) {
  const Context c = load(o);
  const auto rows = run_invariants(c.bounds, c.scan, c.seed);
  Table t{{"check", "status", "value", "detail"}, {}};
  int status = 0;
  for (const auto& r : rows) {
    t.rows.push_back({r.name, to_string(r.status), finite_or_string(r.value), r.detail});
    if (r.status == CheckStatus::Fail) status = 1;
  }
  emit(t, o, true, out);
  return status;
}

int verify_upper(const Options& o, std::ostream& out, std::ostream& err) {
  const Context c = load(o);
  const auto id = requested_constant(o, c.cfg);
  if (!id) throw UsageError("upper suite needs --which or a 'constant' entry");
  report_coupling(c.bounds, *id, err);
  UpperBoundResult r;
  try {
    r = upper_bound_suite(c.bounds, *id, c.count, c.seed, HarnessOptions{c.scan, c.workers});
  } catch (const std::domain_error& e) {
    err << e.what() << "\n";
    out << "constant not finite\n";
    return 1;
  }
  Table t{{"seed", "index", "ratio"}, {}};
  for (const auto& row : r.rows) t.rows.push_back({row.seed, row.index, finite_or_string(row.ratio)});
  emit(t, o, true, out);
  err << fmt::format("{}: constant={:.17g} exact={} max_ratio={:.17g} max_ratio/constant={:.17g} violations={}\n",
                     to_string(*id), r.constant, r.exact, r.max_ratio, r.max_ratio_over_constant,
                     r.violations);
  return r.violations == 0 ? 0 : 1;
}

int verify_sharpness(const Options& o, std::ostream& out, std::ostream& err) {
  const Context c = load(o);
  const SweepResult s = run_sweep(o, c);
  report_coupling(c.bounds, s.id, err);
  emit(sweep_table(s), o, true, out);
  const double last = s.rows.back().ratio_over_constant;
  bool ok = last >= 0.9;
  if (s.exact && !s.monotone) ok = false;
  err << fmt::format("{}: final ratio/constant={:.17g} monotone={} exact={} -> {}\n", to_string(s.id),
                     last, s.monotone, s.exact, ok ? "pass" : "fail");
  return ok ? 0 : 1;
}

int dispatch(const std::string& cmd, const Options& o, std::ostream& out, std::ostream& err) {
  if (cmd == "norm") return cmd_norm(o, out);
  if (cmd == "apply") return cmd_apply(o, out);
  if (cmd == "constants") return cmd_constants(o, out, err);
  if (cmd == "sweep") return cmd_sweep(o, out, err);
  if (o.suite == "invariants") return verify_invariants(o, out);
  if (o.suite == "upper") return verify_upper(o, out, err);
  if (o.suite == "sharpness") return verify_sharpness(o, out, err);
  throw UsageError("--suite must be invariants, upper or sharpness");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Norms, Hausdorff operators and bound constants in variable-exponent spaces"};
  app.require_subcommand(1);
  Options o;
  std::uint64_t seed = 42;
  int count = 0, workers = 0;
  double rel_tol = 0.0;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"norm", "Space norms of the configured functions"},
      {"apply", "Apply the operator on a radius grid"},
      {"constants", "Evaluate bound constants"},
      {"sweep", "Sharpness sweep over epsilon"},
      {"verify", "Run a verification suite"}};
  std::vector<CLI::App*> subs;
  std::vector<CLI::Option*> seed_opts, count_opts, workers_opts, tol_opts;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", o.config, "Experiment config (JSON)")->required();
    sub->add_option("--which", o.which, "Constant id, e.g. C9 or C2*");
    sub->add_option("--out", o.out, "Output file (.csv, .json or .jsonl)");
    seed_opts.push_back(sub->add_option("--seed", seed, "Random seed"));
    sub->add_option("--eps", o.eps, "Comma separated epsilon list");
    count_opts.push_back(sub->add_option("--n", count, "Suite size"));
    tol_opts.push_back(sub->add_option("--rel-tol", rel_tol, "Quadrature relative tolerance"));
    workers_opts.push_back(sub->add_option("--workers", workers, "Worker threads"));
    if (name == "verify")
      sub->add_option("--suite", o.suite, "invariants | upper | sharpness")->required();
    subs.push_back(sub);
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  auto any = [](const std::vector<CLI::Option*>& v) {
    return std::any_of(v.begin(), v.end(), [](CLI::Option* p) { return p->count() > 0; });
  };
  if (any(seed_opts)) o.seed = seed;
  if (any(count_opts)) o.count = count;
  if (any(workers_opts)) o.workers = workers;
  if (any(tol_opts)) o.rel_tol = rel_tol;
  std::string cmd;
  for (auto* s : subs)
    if (s->parsed()) cmd = s->get_name();

  try {
    return dispatch(cmd, o, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const HypothesisError& e) {
    err << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace vexp
