#include "vexp/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "vexp/harness.hpp"

namespace vexp {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items())
    if (!ok.count(k)) throw ConfigError(where + ": unknown key '" + k + "'");
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("field '") + key + "': " + e.what());
  }
}

const json& require_key(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + ": missing '" + key + "'");
  return j.at(key);
}

ExponentSpec exponent_from(const json& j, const std::string& where) {
  if (j.is_number()) return ExponentSpec::constant(j.get<double>());
  check_keys(j, where, {"type", "value", "p0", "p_inf", "breaks", "values"});
  ExponentSpec e;
  e.type = get_or<std::string>(j, "type", "constant");
  if (e.type == "constant") {
    e.value = require_key(j, "value", where).get<double>();
  } else if (e.type == "log_interp") {
    e.value = 0.0;
    e.p0 = require_key(j, "p0", where).get<double>();
    e.p_inf = require_key(j, "p_inf", where).get<double>();
  } else if (e.type == "piecewise") {
    e.value = 0.0;
    e.breaks = require_key(j, "breaks", where).get<std::vector<double>>();
    e.values = require_key(j, "values", where).get<std::vector<double>>();
  } else {
    throw ConfigError(where + ": unknown exponent type '" + e.type + "'");
  }
  return e;
}

json exponent_to(const ExponentSpec& e) {
  if (e.type == "constant") return e.value;
  if (e.type == "log_interp") return {{"type", e.type}, {"p0", e.p0}, {"p_inf", e.p_inf}};
  return {{"type", e.type}, {"breaks", e.breaks}, {"values", e.values}};
}

PowerMapSpec map_from(const json& j, const std::string& where) {
  check_keys(j, where, {"c", "a"});
  return PowerMapSpec{get_or(j, "c", 1.0), get_or(j, "a", 1.0)};
}

json map_to(const PowerMapSpec& m) { return {{"c", m.c}, {"a", m.a}}; }

SpaceConfig space_from(const json& j, const std::string& where) {
  check_keys(j, where, {"kind", "q", "gamma", "alpha", "lambda", "p"});
  SpaceConfig s;
  s.kind = get_or<std::string>(j, "kind", "lebesgue");
  parse_space_kind(s.kind);
  if (j.contains("q")) s.q = exponent_from(j["q"], where + ".q");
  s.gamma = get_or(j, "gamma", 0.0);
  if (j.contains("alpha")) s.alpha = exponent_from(j["alpha"], where + ".alpha");
  s.lambda = get_or(j, "lambda", 0.0);
  s.p = get_or(j, "p", 1.0);
  return s;
}

json space_to(const SpaceConfig& s) {
  json j = {{"kind", s.kind}, {"q", exponent_to(s.q)}, {"gamma", s.gamma},
            {"lambda", s.lambda}, {"p", s.p}};
  if (s.alpha) j["alpha"] = exponent_to(*s.alpha);
  return j;
}

ExprSpec expr_from(const json& j, const std::string& where) {
  ExprSpec e;
  if (j.is_number()) {
    e.a0 = j.get<double>();
    return e;
  }
  check_keys(j, where, {"a0", "a1", "q", "a2", "alpha"});
  e.a0 = get_or(j, "a0", 0.0);
  e.a1 = get_or(j, "a1", 0.0);
  e.a2 = get_or(j, "a2", 0.0);
  if (j.contains("q")) e.q = exponent_from(j["q"], where + ".q");
  if (j.contains("alpha")) e.alpha = exponent_from(j["alpha"], where + ".alpha");
  return e;
}

json expr_to(const ExprSpec& e) {
  if (e.a1 == 0.0 && e.a2 == 0.0 && !e.q && !e.alpha) return e.a0;
  json j = {{"a0", e.a0}, {"a1", e.a1}, {"a2", e.a2}};
  if (e.q) j["q"] = exponent_to(*e.q);
  if (e.alpha) j["alpha"] = exponent_to(*e.alpha);
  return j;
}

std::array<int, 2> range_from(const json& j, const char* key, std::array<int, 2> fallback) {
  if (!j.contains(key)) return fallback;
  const auto v = j.at(key).get<std::vector<int>>();
  if (v.size() != 2 || v[0] > v[1]) throw ConfigError(std::string(key) + ": expected [lo, hi]");
  return {v[0], v[1]};
}

ExperimentConfig config_from(const json& j) {
  check_keys(j, "config",
             {"n", "m", "kernel", "families", "slots", "zeta", "space", "sources", "target",
              "functions", "extremal", "constant", "settings"});
  ExperimentConfig c;
  c.n = get_or(j, "n", 1);
  if (j.contains("kernel")) {
    const json& k = j["kernel"];
    check_keys(k, "kernel", {"phi", "r_lo", "r_hi", "one_sided"});
    if (k.contains("phi")) c.kernel.phi = map_from(k["phi"], "kernel.phi");
    c.kernel.r_lo = get_or(k, "r_lo", 0.0);
    c.kernel.r_hi = get_or(k, "r_hi", 1.0);
    c.kernel.one_sided = get_or(k, "one_sided", false);
  }
  for (const json& f : require_key(j, "families", "config")) {
    check_keys(f, "family", {"type", "s", "signs", "q_matrix"});
    FamilySpec fs;
    fs.type = get_or<std::string>(f, "type", "scalar_dilation");
    if (f.contains("s")) fs.s = map_from(f["s"], "family.s");
    fs.signs = get_or(f, "signs", std::vector<int>{});
    fs.q_matrix = get_or(f, "q_matrix", std::vector<std::vector<double>>{});
    c.families.push_back(fs);
  }
  if (j.contains("slots")) {
    for (const json& s : j["slots"]) {
      check_keys(s, "slot", {"q", "gamma", "alpha", "lambda", "p"});
      SlotSpec sl;
      if (s.contains("q")) sl.q = exponent_from(s["q"], "slot.q");
      sl.gamma = get_or(s, "gamma", 0.0);
      if (s.contains("alpha")) sl.alpha = exponent_from(s["alpha"], "slot.alpha");
      sl.lambda = get_or(s, "lambda", 0.0);
      sl.p = get_or(s, "p", 2.0);
      c.slots.push_back(sl);
    }
  } else {
    c.slots.resize(c.families.size());
  }
  c.m = get_or(j, "m", static_cast<int>(c.families.size()));
  c.zeta = get_or(j, "zeta", 1.0);
  if (j.contains("space")) c.space = space_from(j["space"], "space");
  if (j.contains("sources"))
    for (const json& s : j["sources"]) c.sources.push_back(space_from(s, "sources"));
  if (j.contains("target")) c.target = space_from(j["target"], "target");
  if (j.contains("functions")) {
    for (const json& f : j["functions"]) {
      check_keys(f, "function", {"segments"});
      FunctionSpec fs;
      for (const json& s : require_key(f, "segments", "function")) {
        check_keys(s, "segment", {"r_lo", "r_hi", "coeff", "exponent"});
        SegmentSpec seg;
        seg.r_lo = get_or(s, "r_lo", 0.0);
        if (s.contains("r_hi") && !s["r_hi"].is_null()) seg.r_hi = s["r_hi"].get<double>();
        seg.coeff = get_or(s, "coeff", 1.0);
        if (s.contains("exponent")) seg.exponent = expr_from(s["exponent"], "segment.exponent");
        fs.segments.push_back(seg);
      }
      c.functions.push_back(fs);
    }
  }
  if (j.contains("extremal")) c.extremal = j["extremal"].get<std::string>();
  if (j.contains("constant")) c.constant = j["constant"].get<std::string>();
  if (j.contains("settings")) {
    const json& s = j["settings"];
    check_keys(s, "settings",
               {"rel_tol", "k_range", "k0_range", "r_grid_range", "r_grid_subdivisions", "eps_list",
                "seed", "N", "workers", "apply_grid"});
    Settings& st = c.settings;
    st.rel_tol = get_or(s, "rel_tol", st.rel_tol);
    st.k_range = range_from(s, "k_range", st.k_range);
    st.k0_range = range_from(s, "k0_range", st.k0_range);
    st.r_grid_range = range_from(s, "r_grid_range", st.r_grid_range);
    st.r_grid_subdivisions = get_or(s, "r_grid_subdivisions", st.r_grid_subdivisions);
    st.eps_list = get_or(s, "eps_list", st.eps_list);
    st.seed = get_or(s, "seed", st.seed);
    st.N = get_or(s, "N", st.N);
    st.workers = get_or(s, "workers", st.workers);
    st.apply_grid = get_or(s, "apply_grid", st.apply_grid);
  }
  return c;
}

void validate(const ExperimentConfig& c) {
  if (c.n < 1) throw ConfigError("n must be positive");
  if (c.m < 1) throw ConfigError("m must be positive");
  if (static_cast<int>(c.families.size()) != c.m) throw ConfigError("need exactly m families");
  if (static_cast<int>(c.slots.size()) != c.m) throw ConfigError("need exactly m slots");
  if (!c.sources.empty() && static_cast<int>(c.sources.size()) != c.m)
    throw ConfigError("need exactly m source spaces");
  if (c.settings.rel_tol <= 0.0) throw ConfigError("rel_tol must be positive");
  if (c.settings.N < 1) throw ConfigError("N must be positive");
  if (c.settings.r_grid_subdivisions < 1) throw ConfigError("r_grid_subdivisions must be positive");
  if (c.extremal) parse_extremal_kind(*c.extremal);
  if (c.constant) parse_constant_id(*c.constant);
  build_bound_config(c);
  if (c.space) c.space->build(c.n);
  for (const auto& s : c.sources) s.build(c.n);
  if (c.target) c.target->build(c.n);
  for (const auto& f : c.functions) f.build();
}

}  // namespace

ExponentSpec ExponentSpec::constant(double v) {
  ExponentSpec e;
  e.value = v;
  return e;
}

SignedExponent ExponentSpec::signed_exponent() const {
  if (type == "constant") return SignedExponent::constant(value);
  if (type == "log_interp") return SignedExponent::log_interp(p0, p_inf);
  return SignedExponent::piecewise(breaks, values);
}

ExponentFunction ExponentSpec::exponent() const {
  if (type == "constant") return ExponentFunction::constant(value);
  if (type == "log_interp") return ExponentFunction::log_interp(p0, p_inf);
  return ExponentFunction::piecewise(breaks, values);
}

MatrixFamily FamilySpec::build(int n) const {
  const PowerMap map{s.c, s.a};
  if (type == "scalar_dilation") return MatrixFamily::scalar_dilation(n, map);
  if (type == "diag_equal") {
    if (static_cast<int>(signs.size()) != n) throw ConfigError("diag_equal needs n signs");
    return MatrixFamily::diag_equal(map, signs);
  }
  if (type == "orth_scalar") {
    if (static_cast<int>(q_matrix.size()) != n) throw ConfigError("q_matrix must be n x n");
    Eigen::MatrixXd q(n, n);
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(q_matrix[i].size()) != n) throw ConfigError("q_matrix must be n x n");
      for (int k = 0; k < n; ++k) q(i, k) = q_matrix[i][k];
    }
    return MatrixFamily::orth_scalar(q, map);
  }
  throw ConfigError("unknown family type '" + type + "'");
}

SpaceSpec SpaceConfig::build(int n) const {
  SpaceSpec s;
  s.kind = parse_space_kind(kind);
  s.q = q.exponent();
  s.weight = PowerWeight{gamma, n};
  s.lambda = lambda;
  s.p = p;
  if (alpha)
    s.alpha = alpha->signed_exponent();
  else if (s.kind == SpaceKind::CentralMorrey)
    s.alpha = SignedExponent::constant(gamma / s.q.at_infinity());
  return s;
}

PiecewisePowerFunction FunctionSpec::build() const {
  std::vector<PowerSegment> segs;
  for (const auto& s : segments) {
    PowerSegment p;
    p.r_lo = s.r_lo;
    p.r_hi = s.r_hi.value_or(kInf);
    p.coeff = s.coeff;
    p.exponent.a0 = s.exponent.a0;
    p.exponent.a1 = s.exponent.a1;
    p.exponent.a2 = s.exponent.a2;
    if (s.exponent.q) p.exponent.q = s.exponent.q->exponent();
    if (s.exponent.alpha) p.exponent.alpha = s.exponent.alpha->signed_exponent();
    segs.push_back(p);
  }
  return PiecewisePowerFunction(std::move(segs));
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  ExperimentConfig c;
  try {
    c = config_from(j);
    validate(c);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ExperimentConfig& c) {
  json j;
  j["n"] = c.n;
  j["m"] = c.m;
  j["kernel"] = {{"phi", map_to(c.kernel.phi)},
                 {"r_lo", c.kernel.r_lo},
                 {"r_hi", c.kernel.r_hi},
                 {"one_sided", c.kernel.one_sided}};
  j["families"] = json::array();
  for (const auto& f : c.families) {
    json fj = {{"type", f.type}, {"s", map_to(f.s)}};
    if (!f.signs.empty()) fj["signs"] = f.signs;
    if (!f.q_matrix.empty()) fj["q_matrix"] = f.q_matrix;
    j["families"].push_back(fj);
  }
  j["slots"] = json::array();
  for (const auto& s : c.slots)
    j["slots"].push_back({{"q", exponent_to(s.q)},
                          {"gamma", s.gamma},
                          {"alpha", exponent_to(s.alpha)},
                          {"lambda", s.lambda},
                          {"p", s.p}});
  j["zeta"] = c.zeta;
  if (c.space) j["space"] = space_to(*c.space);
  if (!c.sources.empty()) {
    j["sources"] = json::array();
    for (const auto& s : c.sources) j["sources"].push_back(space_to(s));
  }
  if (c.target) j["target"] = space_to(*c.target);
  if (!c.functions.empty()) {
    j["functions"] = json::array();
    for (const auto& f : c.functions) {
      json segs = json::array();
      for (const auto& s : f.segments) {
        json sj = {{"r_lo", s.r_lo}, {"coeff", s.coeff}, {"exponent", expr_to(s.exponent)}};
        sj["r_hi"] = s.r_hi ? json(*s.r_hi) : json(nullptr);
        segs.push_back(sj);
      }
      j["functions"].push_back({{"segments", segs}});
    }
  }
  if (c.extremal) j["extremal"] = *c.extremal;
  if (c.constant) j["constant"] = *c.constant;
  const Settings& s = c.settings;
  j["settings"] = {{"rel_tol", s.rel_tol},
                   {"k_range", s.k_range},
                   {"k0_range", s.k0_range},
                   {"r_grid_range", s.r_grid_range},
                   {"r_grid_subdivisions", s.r_grid_subdivisions},
                   {"eps_list", s.eps_list},
                   {"seed", s.seed},
                   {"N", s.N},
                   {"workers", s.workers},
                   {"apply_grid", s.apply_grid}};
  return j.dump(2);
}

OperatorSpec build_operator(const ExperimentConfig& c) {
  OperatorSpec op;
  op.n = c.n;
  op.m = c.m;
  op.kernel = RadialKernel{PowerMap{c.kernel.phi.c, c.kernel.phi.a}, c.kernel.r_lo, c.kernel.r_hi,
                           c.kernel.one_sided};
  for (const auto& f : c.families) op.families.push_back(f.build(c.n));
  op.validate();
  return op;
}

BoundConfig build_bound_config(const ExperimentConfig& c) {
  BoundConfig b;
  b.op = build_operator(c);
  b.zeta = c.zeta;
  for (const auto& s : c.slots) {
    SlotParams p;
    p.q = s.q.exponent();
    p.gamma = s.gamma;
    p.alpha = s.alpha.signed_exponent();
    p.lambda = s.lambda;
    p.p = s.p;
    b.slots.push_back(p);
  }
  return b;
}

ScanSettings build_scan(const ExperimentConfig& c) {
  ScanSettings s;
  s.k_min = c.settings.k_range[0];
  s.k_max = c.settings.k_range[1];
  s.k0_min = c.settings.k0_range[0];
  s.k0_max = c.settings.k0_range[1];
  s.j_min = c.settings.r_grid_range[0];
  s.j_max = c.settings.r_grid_range[1];
  s.j_subdivisions = c.settings.r_grid_subdivisions;
  s.quad.rel_tol = c.settings.rel_tol;
  return s;
}

}  // namespace vexp
