#include "leafchar/driver/driver.hpp"

#include <cstdlib>
#include <random>
#include <sstream>

#include "leafchar/cech/chern.hpp"
#include "leafchar/cech/cochain.hpp"
#include "leafchar/cech/probe.hpp"
#include "leafchar/cech/site.hpp"
#include "leafchar/error.hpp"
#include "leafchar/gk/gelfand_kazhdan.hpp"
#include "leafchar/jets/extension.hpp"
#include "leafchar/jets/jet.hpp"
#include "leafchar/linalg/rank.hpp"
#include "leafchar/parse/ast.hpp"
#include "leafchar/reeb/presentation.hpp"
#include "leafchar/wn/complex.hpp"

namespace leafchar {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

/// Thrown for configuration problems; becomes exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Config {
 public:
  explicit Config(const json& in) : in_(in) {
    if (!in_.is_object()) throw UsageError("config must be a JSON object");
  }

  long integer(const std::string& key, long fallback, long lo, long hi) {
    long v = fallback;
    if (in_.contains(key)) {
      if (!in_[key].is_number_integer()) throw UsageError(key + " must be an integer");
      v = in_[key].get<long>();
    }
    if (v < lo || v > hi)
      throw UsageError(key + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    echo_[key] = v;
    return v;
  }

  bool boolean(const std::string& key, bool fallback) {
    bool v = fallback;
    if (in_.contains(key)) {
      if (!in_[key].is_boolean()) throw UsageError(key + " must be a boolean");
      v = in_[key].get<bool>();
    }
    echo_[key] = v;
    return v;
  }

  std::string text(const std::string& key, const std::string& fallback, const std::vector<std::string>& allowed = {}) {
    std::string v = fallback;
    if (in_.contains(key)) {
      if (!in_[key].is_string()) throw UsageError(key + " must be a string");
      v = in_[key].get<std::string>();
    }
    if (!allowed.empty() && std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      throw UsageError(key + " must be one of: " + list);
    }
    echo_[key] = v;
    return v;
  }

  const json* raw(const std::string& key) {
    if (!in_.contains(key)) return nullptr;
    echo_[key] = in_[key];
    return &in_[key];
  }

  /// Rejects keys that no handler read.
  void finish() const {
    for (const auto& [key, value] : in_.items())
      if (!echo_.contains(key)) throw UsageError("unknown config key " + key);
  }

  const ojson& echo() const { return echo_; }

 private:
  const json& in_;
  ojson echo_ = ojson::object();
};

struct Checks {
  ojson list = ojson::array();
  bool all = true;

  ojson& add(const std::string& name, bool passed, ojson details = ojson::object()) {
    ojson rec = ojson::object();
    rec["name"] = name;
    rec["passed"] = passed;
    for (auto& [k, v] : details.items()) rec[k] = v;
    if (!passed) all = false;
    list.push_back(std::move(rec));
    return list.back();
  }
  /// Recorded but not counted toward the exit code.
  void note(const std::string& name, bool holds, ojson details) {
    ojson rec = ojson::object();
    rec["name"] = name;
    rec["passed"] = holds;
    rec["informational"] = true;
    for (auto& [k, v] : details.items()) rec[k] = v;
    list.push_back(std::move(rec));
  }
};

struct Outcome {
  Checks checks;
  ojson result = ojson::object();
  std::string csv;
};

std::string real_text(const Real& x) { return format_real(x, 30); }

unsigned precision_from(Config& cfg) {
  long def = static_cast<long>(default_precision_bits());
  return static_cast<unsigned>(cfg.integer("precision", def, 64, 1 << 16));
}

ReebProfile profile_from(Config& cfg) {
  std::string spec = cfg.text("profile", "default");
  if (spec == "default") return default_profile();
  if (spec.rfind("expr:", 0) == 0) return profile_from_expression(spec.substr(5));
  throw UsageError("profile must be 'default' or 'expr:<text>'");
}

// ---------------------------------------------------------------- jet

Jet<Rational> random_jet(std::mt19937_64& rng, unsigned order, bool based) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  std::vector<Rational> e(order + 1);
  for (auto& x : e) {
    x = Rational(num(rng), den(rng));
    x.canonicalize();
  }
  if (based) e[0] = 0;
  if (e[1] == 0) e[1] = 1;
  return Jet<Rational>(e);
}

std::vector<std::string> jet_text(const Jet<Rational>& j) {
  std::vector<std::string> out;
  for (const auto& x : j.entries()) out.push_back(x.get_str());
  return out;
}

Jet<Rational> jet_from(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() < 2) throw UsageError(what + " must be an array of at least two rationals");
  std::vector<Rational> e;
  for (const auto& x : j) {
    if (!x.is_string() && !x.is_number_integer()) throw UsageError(what + " entries must be strings or integers");
    Rational q;
    try {
      q = x.is_string() ? Rational(x.get<std::string>()) : Rational(x.get<long>());
    } catch (const std::invalid_argument&) {
      throw UsageError(what + " has a malformed rational");
    }
    q.canonicalize();
    e.push_back(q);
  }
  return Jet<Rational>(e);
}

Outcome run_jet(Config& cfg) {
  Outcome out;
  unsigned order = static_cast<unsigned>(cfg.integer("order", 6, 1, 12));
  auto seed = static_cast<std::uint64_t>(cfg.integer("seed", 1, 0, 1L << 62));
  unsigned samples = static_cast<unsigned>(cfg.integer("samples", 5, 1, 100));
  unsigned ext_order = static_cast<unsigned>(cfg.integer("extension_order", std::min(order, 6u), 2, 8));
  const json* compose = cfg.raw("compose");
  const json* invert = cfg.raw("invert");

  std::mt19937_64 rng(seed);
  Jet<Rational> id = Jet<Rational>::identity(order);
  bool assoc = true, inverse = true;
  ojson witness;
  for (unsigned s = 0; s < samples; ++s) {
    auto f = random_jet(rng, order, true), g = random_jet(rng, order, true), h = random_jet(rng, order, false);
    if (jet_compose(h, jet_compose(g, f)).entries() != jet_compose(jet_compose(h, g), f).entries() && assoc) {
      assoc = false;
      witness = {{"f", jet_text(f)}, {"g", jet_text(g)}, {"h", jet_text(h)}};
    }
    auto fi = jet_invert(f);
    if ((jet_compose(fi, f).entries() != id.entries() || jet_compose(f, fi).entries() != id.entries()) && inverse) {
      inverse = false;
      witness = {{"f", jet_text(f)}};
    }
  }
  out.checks.add("associativity", assoc, assoc ? ojson::object() : ojson{{"witness", witness}});
  out.checks.add("two-sided inverse", inverse, inverse ? ojson::object() : ojson{{"witness", witness}});

  JetMapExpr ext = extend_morphism("f", ext_order);
  ojson comps = ojson::object();
  comps["beta0"] = ext.beta0.to_string();
  bool closed = true;
  ojson bad;
  for (unsigned n = 2; n <= ext_order; ++n) {
    comps["beta" + std::to_string(n)] = ext.component(n).to_string();
    if (!expr_equal(ext.component(n), extension_closed_form(ext.context, "f", ext.source, n)) && closed) {
      closed = false;
      bad = {{"witness", "beta" + std::to_string(n)}};
    }
  }
  out.checks.add("extension matches closed form", closed, bad.is_null() ? ojson::object() : bad);
  out.result["extension"] = comps;

  if (compose) {
    if (!compose->is_object() || !compose->contains("g") || !compose->contains("f"))
      throw UsageError("compose needs members g and f");
    out.result["composition"] = jet_text(jet_compose(jet_from((*compose)["g"], "compose.g"), jet_from((*compose)["f"], "compose.f")));
  }
  if (invert) out.result["inverse"] = jet_text(jet_invert(jet_from(*invert, "invert")));
  return out;
}

// ---------------------------------------------------------------- wn

Outcome run_wn(Config& cfg) {
  Outcome out;
  unsigned n = static_cast<unsigned>(cfg.integer("n", 1, 1, 3));
  int weight = static_cast<int>(cfg.integer("weight", 0, -1, 6));
  unsigned max_degree = static_cast<unsigned>(cfg.integer("max_degree", 5, 0, 12));
  bool relative = cfg.boolean("relative", false);
  auto budget = static_cast<std::size_t>(cfg.integer("budget", static_cast<long>(kDefaultBasisBudget), 1, 1000000));
  int d2_weight = static_cast<int>(cfg.integer("d2_max_weight", 3, -1, 4));

  // d^2 on generators
  bool d2 = true;
  std::string witness;
  std::size_t count = 0;
  for (const auto& g : enumerate_generators(n, d2_weight)) {
    ++count;
    if (!differential(differential(g, n), n).is_zero()) {
      d2 = false;
      witness = g.to_string();
      break;
    }
  }
  ojson d2rec = {{"generators", count}};
  if (!d2) d2rec["witness"] = witness;
  out.checks.add("d^2 = 0 on generators of weight <= " + std::to_string(d2_weight), d2, d2rec);

  for (unsigned p = 1; p <= n; ++p) {
    WCochain psi = chern_cocycle(p, n);
    out.checks.add("Psi_" + std::to_string(p) + " is a cocycle", differential(psi, n).is_zero());
    out.checks.add("Psi_" + std::to_string(p) + " is relative", is_relative(psi, n));
    if (relative && weight == 0 && 2 * p <= max_degree)
      out.checks.add("Psi_" + std::to_string(p) + " is not a relative coboundary", !is_coboundary(psi, n, true, budget));
  }

  CohomologyTable table = cohomology_ranks(n, weight, max_degree, relative, budget);
  out.checks.add("exact and modular ranks agree", table.modular_agrees(),
                 {{"primes", {std::to_string(kRankPrimes[0]), std::to_string(kRankPrimes[1])}}});
  long chi_c = 0, chi_b = 0;
  std::ostringstream csv;
  csv << "degree,dim,rank,betti,rank_mod_p1,rank_mod_p2\n";
  ojson rows = ojson::array();
  for (const auto& r : table.rows) {
    long s = (r.degree % 2) ? -1 : 1;
    chi_c += s * static_cast<long>(r.dim);
    chi_b += s * static_cast<long>(r.betti);
    rows.push_back({{"degree", r.degree},
                    {"dim", r.dim},
                    {"rank", r.rank},
                    {"betti", r.betti},
                    {"rank_mod", {r.rank_mod[0], r.rank_mod[1]}}});
    csv << r.degree << ',' << r.dim << ',' << r.rank << ',' << r.betti << ',' << r.rank_mod[0] << ','
        << r.rank_mod[1] << '\n';
  }
  long top = table.rows.empty() ? 0 : static_cast<long>(table.rows.back().rank);
  long expected = chi_b + ((max_degree % 2) ? -top : top);
  out.checks.add("Euler characteristic", chi_c == expected,
                 {{"chi_cochains", chi_c}, {"chi_cohomology_plus_top_rank", expected}});
  if (weight == 0 && !table.rows.empty()) out.checks.add("b^0 = 1", table.rows[0].betti == 1);
  out.result["table"] = rows;
  out.csv = csv.str();
  return out;
}

// ---------------------------------------------------------------- gk

std::vector<WGenerator> w1_generators(unsigned max_r) {
  std::vector<WGenerator> out;
  for (unsigned r = 0; r <= max_r; ++r) out.emplace_back(1, std::vector<unsigned>(r, 1));
  return out;
}

Outcome run_gk(Config& cfg) {
  Outcome out;
  unsigned order = static_cast<unsigned>(cfg.integer("order", 6, 2, 9));
  std::string check = cfg.text("check", "all", {"all", "forms", "chain-map", "chern-weil", "reduce"});
  bool all = check == "all";
  GKChart chart = gk_chart(order);

  if (all || check == "forms") {
    ojson forms = ojson::array();
    for (std::size_t p = 0; p < chart.omega.size(); ++p)
      forms.push_back({{"component", p}, {"form", chart.omega[p].to_string()}});
    out.result["omega"] = forms;
  }
  if (all || check == "chain-map") {
    unsigned max_r = std::min(3u, order >= 2 ? order - 2 : 0u);
    ojson per = ojson::array();
    bool ok = true;
    for (const auto& g : w1_generators(max_r)) {
      WCochain c = WCochain::generator(g);
      bool holds = alpha(differential(c, 1), chart).equals(exterior_derivative(alpha(c, chart)));
      per.push_back({{"generator", g.to_string()}, {"passed", holds}});
      ok = ok && holds;
    }
    out.checks.add("alpha commutes with d", ok, {{"generators", per}});
  }
  if (all || check == "chern-weil") {
    if (order < 3) throw UsageError("chern-weil needs order >= 3");
    ConnectionCurvature cc = connection_and_curvature(chart);
    Form ap = alpha(chern_cocycle(1, 1), chart);
    out.checks.add("beta ^ beta = 0", wedge(cc.beta, cc.beta).is_zero());
    out.checks.add("R = d beta", cc.curvature.equals(exterior_derivative(cc.beta)));
    int sign = cc.curvature.equals(ap) ? 1 : (cc.curvature.equals(-ap) ? -1 : 0);
    out.checks.add("tr R = -alpha(Psi_1)", sign == -1, {{"observed_sign", sign}});
    out.result["beta"] = cc.beta.to_string();
    out.result["curvature"] = cc.curvature.to_string();
  }
  if (all || check == "reduce") {
    if (order < 4) throw UsageError("reduce needs order >= 4");
    Form red = reduce_to_quotient(alpha(chern_cocycle(1, 1), chart), chart);
    Form ref = wedge(Form::differential(chart.y, "y2"), Form::differential(chart.y, "y0"));
    int c = red.equals(ref) ? 1 : (red.equals(-ref) ? -1 : 0);
    out.checks.add("reduce(alpha(Psi_1)) = c dy2 ^ dy0", c != 0, {{"c", c}, {"reduced", red.to_string()}});
  }
  return out;
}

// ---------------------------------------------------------------- reeb

ojson profile_checks(const ProfileReport& r, Checks& checks) {
  ojson out = ojson::array();
  for (const auto& c : r.checks) checks.add(c.name, c.passed, {{"detail", c.detail}});
  return out;
}

Outcome run_reeb(Config& cfg) {
  Outcome out;
  ReebProfile f = profile_from(cfg);
  unsigned n_max = static_cast<unsigned>(cfg.integer("orders", 5, 2, 12));
  unsigned k_max = static_cast<unsigned>(cfg.integer("grid", 4, 1, 8));
  unsigned bits = precision_from(cfg);
  bool conditions = cfg.boolean("conditions", true);

  out.result["profile"] = f.description;
  if (conditions) {
    std::vector<Rational> grid = {0, Rational(1, 4), Rational(1, 2), Rational(3, 4)};
    profile_checks(check_profile_conditions(f, grid, std::min(n_max, 6u), bits), out.checks);
  }
  LimitReport r = check_limit_conditions(f, n_max, k_max, bits);
  ojson series = ojson::array();
  std::ostringstream csv;
  csv << "k,t,n,ratio,ratio_derivative,second_over_first,precision_bits\n";
  for (const auto& s : r.ratios) {
    ojson samples = ojson::array();
    for (const auto& x : s.samples) {
      samples.push_back({{"k", x.k}, {"t", tail_point(x.k).get_str()}, {"ratio", real_text(x.ratio)},
                         {"ratio_derivative", real_text(x.ratio_derivative)}});
      csv << x.k << ',' << tail_point(x.k).get_str() << ',' << s.n << ',' << real_text(x.ratio) << ','
          << real_text(x.ratio_derivative) << ',' << real_text(r.second_over_first[x.k - 1]) << ',' << r.precision
          << '\n';
    }
    series.push_back({{"n", s.n}, {"samples", samples}});
    ojson d = {{"n", s.n}};
    if (!s.decreasing) {
      for (std::size_t i = 1; i < s.samples.size(); ++i)
        if (!(abs(s.samples[i].ratio) < abs(s.samples[i - 1].ratio))) {
          d["witness_k"] = s.samples[i].k;
          break;
        }
    }
    out.checks.add("|f^(n)/f'^n| decreasing, n = " + std::to_string(s.n), s.decreasing, d);
    if (s.below_threshold)
      out.checks.add("|f^(n)/f'^n|(t_kmax) below threshold, n = " + std::to_string(s.n), *s.below_threshold,
                     {{"value", real_text(abs(s.samples.back().ratio))}, {"threshold", real_text(*s.threshold)}});
  }
  ojson sof = ojson::array();
  for (const auto& v : r.second_over_first) sof.push_back(real_text(v));
  out.checks.add("f''/f' increasing", r.increasing);
  if (r.exceeds_threshold)
    out.checks.add("f''/f'(t_kmax) above threshold", *r.exceeds_threshold,
                   {{"value", real_text(r.second_over_first.back())}, {"threshold", real_text(*r.divergence_threshold)}});
  out.result["precision_bits"] = r.precision;
  out.result["ratios"] = series;
  out.result["second_over_first"] = sof;
  out.csv = csv.str();
  return out;
}

// ---------------------------------------------------------------- presentations

std::vector<std::string> string_list(const json& j, const std::string& what) {
  std::vector<std::string> out;
  if (j.is_null()) return out;
  if (!j.is_array()) throw UsageError(what + " must be an array of strings");
  for (const auto& x : j) {
    if (!x.is_string()) throw UsageError(what + " must be an array of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

const json& member(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw UsageError(where + " needs member " + key);
  return j[key];
}

std::string member_text(const json& j, const std::string& key, const std::string& where) {
  const json& v = member(j, key, where);
  if (!v.is_string()) throw UsageError(where + "." + key + " must be a string");
  return v.get<std::string>();
}

AtlasPresentation presentation_from_json(const json& spec) {
  AtlasPresentation p;
  p.description = spec.value("description", std::string("custom presentation"));
  const json& charts = member(spec, "charts", "presentation");
  if (!charts.is_array() || charts.empty()) throw UsageError("presentation.charts must be a nonempty array");
  for (const auto& c : charts) {
    ContextBuilder b;
    std::string name = member_text(c, "name", "chart");
    for (const auto& v : string_list(member(c, "variables", "chart " + name), "chart variables")) b.variable(v);
    if (c.contains("chains")) {
      if (!c["chains"].is_array()) throw UsageError("chart chains must be an array");
      for (const auto& ch : c["chains"]) {
        const json& ord = member(ch, "order", "chain");
        if (!ord.is_number_integer() || ord.get<long>() < 0 || ord.get<long>() > 32)
          throw UsageError("chain order must be an integer in [0, 32]");
        b.chain(member_text(ch, "name", "chain"), member_text(ch, "base", "chain"), ord.get<unsigned>());
      }
    }
    for (const auto& k : string_list(c.value("constants", json()), "chart constants")) b.constant(k);
    p.charts.push_back(Chart{name, b.build(), c.value("domain", std::string())});
  }
  if (spec.contains("generators")) {
    for (const auto& g : spec["generators"]) {
      std::string name = member_text(g, "name", "generator");
      std::size_t s = p.chart_index(member_text(g, "source", "generator " + name));
      std::size_t t = p.chart_index(member_text(g, "target", "generator " + name));
      ChartMap m{p.charts[s].context, p.charts[t].context,
                 std::vector<std::optional<Expr>>(p.charts[t].context->size())};
      const json& comps = member(g, "components", "generator " + name);
      if (!comps.is_object()) throw UsageError("generator components must be an object");
      for (const auto& [var, text] : comps.items()) {
        if (!text.is_string()) throw UsageError("component " + var + " must be an expression string");
        m.set(var, to_expr(*parse_expression(text.get<std::string>()), p.charts[s].context));
      }
      m.match_names();
      p.generators.push_back(Generator{name, s, t, std::move(m)});
    }
  }
  if (spec.contains("relations")) {
    for (const auto& r : spec["relations"]) {
      Relation rel;
      for (const auto& g : string_list(member(r, "lhs", "relation"), "relation lhs")) rel.lhs.push_back(p.generator_index(g));
      for (const auto& g : string_list(r.value("rhs", json::array()), "relation rhs")) rel.rhs.push_back(p.generator_index(g));
      p.relations.push_back(std::move(rel));
    }
  }
  p.validate();
  return p;
}

AtlasPresentation presentation_from(Config& cfg, unsigned order, bool& is_reeb) {
  const json* spec = cfg.raw("presentation");
  is_reeb = !spec || (spec->is_string() && spec->get<std::string>() == "reeb");
  if (is_reeb) {
    if (!spec) cfg.text("presentation", "reeb");
    return reeb_presentation(default_profile(), order);
  }
  if (!spec->is_object()) throw UsageError("presentation must be \"reeb\" or an object");
  return presentation_from_json(*spec);
}

// ---------------------------------------------------------------- cech

Outcome run_cech(Config& cfg) {
  Outcome out;
  unsigned order = static_cast<unsigned>(cfg.integer("order", 3, 2, 6));
  unsigned max_k = static_cast<unsigned>(cfg.integer("max_k", 2, 0, 3));
  unsigned bound = static_cast<unsigned>(cfg.integer("word_bound", 2, 1, 4));
  auto seed = static_cast<std::uint64_t>(cfg.integer("seed", 1, 0, 1L << 62));
  unsigned cochains = static_cast<unsigned>(cfg.integer("cochains", 9, 0, 1000));
  bool is_reeb = false;
  AtlasPresentation p = presentation_from(cfg, order, is_reeb);
  out.result["presentation"] = p.description;

  ojson counts = ojson::array();
  for (unsigned k = 0; k <= max_k + 1; ++k)
    counts.push_back({{"k", k}, {"strings", composable_strings(p, k, bound).size()}});
  out.result["string_counts"] = counts;
  ojson ones = ojson::array();
  for (const auto& s : composable_strings(p, 1, 1)) ones.push_back(to_string(s, p));
  out.result["strings_k1_bound1"] = ones;

  std::size_t max_l = 0;
  for (const auto& c : p.charts) max_l = std::max(max_l, c.context->variables().size());
  bool delta_ok = true, total_ok = true;
  ojson delta_w, total_w;
  for (unsigned i = 0; i < cochains; ++i) {
    unsigned k = i % (max_k + 1);
    unsigned l = static_cast<unsigned>((i / (max_k + 1)) % (max_l + 1));
    std::uint64_t s = seed * 1000003 + i;
    CechCochain w = random_cochain(p, k, l, s);
    CechCochain dd = cech_delta(lazy_cech_delta(w, p), p, bound);
    if (auto bad = first_nonzero(dd); bad && delta_ok) {
      delta_ok = false;
      delta_w = {{"cochain", i}, {"k", k}, {"l", l}, {"string", to_string(*bad, p)}};
    }
    TotalCochain t{{{k, l}, w}};
    TotalCochain tt = total_differential(lazy_total_differential(t, p), p, bound);
    for (const auto& [key, c] : tt)
      if (auto bad = first_nonzero(c); bad && total_ok) {
        total_ok = false;
        total_w = {{"cochain", i}, {"k", k}, {"l", l}, {"bidegree", {key.first, key.second}}, {"string", to_string(*bad, p)}};
      }
  }
  out.checks.add("delta^2 = 0", delta_ok, delta_ok ? ojson{{"cochains", cochains}} : ojson{{"witness", delta_w}});
  out.checks.add("D^2 = 0", total_ok, total_ok ? ojson{{"cochains", cochains}} : ojson{{"witness", total_w}});

  if (is_reeb && order >= 3) {
    PullbackIdentityReport r = verify_pullback_identity(p, order);
    ojson d = {{"pulled_back", r.pulled.to_string()}, {"expected", r.expected.to_string()}, {"sign", r.sign}};
    out.checks.add("phi^*(dalpha2 ^ dalpha0) = dt2 ^ dt0", r.consistent_holds, d);
    out.checks.note("phi^*(dalpha0 ^ dalpha2) = dt2 ^ dt0", r.literal_holds, d);
    auto parts = total_differential(chern_representative(p, true), p, bound);
    bool closed = !first_nonzero(parts.delta) && !first_nonzero(parts.d);
    out.checks.add("Chern representative is D-closed", closed);
  }
  return out;
}

// ---------------------------------------------------------------- site

Outcome run_site(Config& cfg) {
  Outcome out;
  unsigned period = static_cast<unsigned>(cfg.integer("period", 3, 1, 12));
  unsigned mutation = static_cast<unsigned>(cfg.integer("mutation", 0, 0, 3));
  FiniteSite site;
  const json* spec = cfg.raw("presentation");
  if (!spec || (spec->is_string() && spec->get<std::string>() == "reeb")) {
    if (!spec) cfg.text("presentation", "reeb");
    site = induced_site(with_finite_period(reeb_presentation(default_profile(), 2), period));
  } else if (spec->is_string() && spec->get<std::string>() == "trivial") {
    site = trivial_site();
  } else if (spec->is_object()) {
    site = induced_site(presentation_from_json(*spec));
  } else {
    throw UsageError("presentation must be \"reeb\", \"trivial\" or an object");
  }
  if (mutation) {
    if (site.objects.size() < 2) throw UsageError("mutations need a site with two objects");
    site = mutate_site(site, mutation, 0, 1);
  }
  ojson morphisms = ojson::array();
  for (const auto& m : site.morphisms)
    morphisms.push_back({{"name", m.name}, {"source", site.objects[m.source]}, {"target", site.objects[m.target]}});
  ojson covers = ojson::object();
  for (std::size_t a = 0; a < site.objects.size(); ++a) {
    ojson list = ojson::array();
    for (const auto& s : site.covers[a]) list.push_back(to_string(site, s));
    covers[site.objects[a]] = list;
  }
  out.result["objects"] = site.objects;
  out.result["morphisms"] = morphisms;
  out.result["covers"] = covers;
  SiteReport r = verify_site_axioms(site);
  for (const auto& a : r.axioms) {
    ojson d = {{"statement", a.statement}};
    if (!a.passed) d["witness"] = a.witness;
    out.checks.add("axiom " + std::to_string(a.axiom), a.passed, d);
  }
  return out;
}

// ---------------------------------------------------------------- probe

Outcome run_probe(Config& cfg) {
  Outcome out;
  ProbeCandidate cand;
  const json* spec = cfg.raw("candidate");
  std::string cval = cfg.text("c", "3/2");
  Rational c;
  try {
    c = Rational(cval);
    c.canonicalize();
  } catch (const std::invalid_argument&) {
    throw UsageError("c must be a rational such as 3/2");
  }
  if (!spec) {
    cfg.text("candidate", "zero");
    cand = preset_candidate("zero");
  } else if (spec->is_string()) {
    auto names = preset_candidate_names();
    if (std::find(names.begin(), names.end(), spec->get<std::string>()) == names.end())
      throw UsageError("unknown candidate " + spec->get<std::string>());
    cand = preset_candidate(spec->get<std::string>(), c);
  } else if (spec->is_object()) {
    cand.description = spec->value("description", std::string("custom candidate"));
    const json& comps = member(*spec, "components", "candidate");
    if (!comps.is_object()) throw UsageError("candidate components must be an object");
    for (const auto& [key, text] : comps.items()) {
      if (!text.is_string()) throw UsageError("candidate component " + key + " must be a string");
      unsigned n = 0;
      try {
        std::size_t used = 0;
        n = static_cast<unsigned>(std::stoul(key, &used));
        if (used != key.size() || n == 1 || n > 12) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw UsageError("candidate component index must be 0 or 2..12");
      }
      cand.components[n] = text.get<std::string>();
    }
  } else {
    throw UsageError("candidate must be a preset name or an object");
  }
  ReebProfile f = profile_from(cfg);
  ProbeOptions opts;
  opts.k_max = static_cast<unsigned>(cfg.integer("grid", 4, 2, 6));
  opts.bits = precision_from(cfg);
  opts.tau_multiple = cfg.integer("tau_multiple", 1, -8, 8);
  if (opts.tau_multiple == 0) throw UsageError("tau_multiple must be nonzero");

  ProbeReport r = nontriviality_probe(cand, f, opts);
  out.result["candidate"] = r.candidate;
  out.result["profile"] = r.profile;
  out.result["order"] = r.order;
  out.result["lambda"] = r.lambda.to_string();
  out.result["a0"] = r.a0.to_string();
  out.result["evidence_only"] = ProbeReport::evidence_only;
  ojson grid = ojson::array();
  for (std::size_t i = 0; i < r.grid.size(); ++i)
    grid.push_back({{"y0", r.grid[i].get_str()}, {"precision_bits", r.precision[i]}});
  out.result["grid"] = grid;
  std::ostringstream csv;
  csv << "k,y0,precision_bits,term,value\n";
  auto term_json = [&](const ProbeTerm& t) {
    ojson vals = ojson::array();
    for (std::size_t i = 0; i < t.values.size(); ++i) {
      vals.push_back(real_text(t.values[i]));
      csv << i + 1 << ',' << r.grid[i].get_str() << ',' << r.precision[i] << ",\"" << t.name << "\","
          << real_text(t.values[i]) << '\n';
    }
    return ojson{{"name", t.name}, {"expression", t.symbolic.to_string()}, {"values", vals}, {"bounded", t.bounded}};
  };
  out.result["main"] = term_json(r.main);
  ojson corr = ojson::array();
  for (const auto& t : r.corrections) corr.push_back(term_json(t));
  out.result["corrections"] = corr;
  out.result["contradiction"] = r.contradiction;

  out.checks.add("d lambda = 0", r.closed);
  out.checks.add("lambda is T-periodic", r.periodic);
  out.checks.add("A_0 decomposition", r.decomposition_matches);
  out.checks.add("f''/f' term diverges", r.main_diverges);
  ojson unbounded = ojson::array();
  for (const auto& t : r.corrections)
    if (!t.bounded) unbounded.push_back(t.name);
  out.checks.add("correction terms bounded", r.corrections_bounded,
                 r.corrections_bounded ? ojson::object() : ojson{{"witness", unbounded}});
  out.csv = csv.str();
  return out;
}

bool is_usage(ErrorCode c) {
  return c == ErrorCode::InvalidArgument || c == ErrorCode::ParseError || c == ErrorCode::UnknownSymbol ||
         c == ErrorCode::MissingComponent || c == ErrorCode::ContextMismatch;
}

ojson base_report(std::string_view subcommand) {
  ojson r = ojson::object();
  r["schema_version"] = kSchemaVersion;
  r["tool_version"] = kToolVersion;
  r["subcommand"] = std::string(subcommand);
  return r;
}

}  // namespace

unsigned default_precision_bits() {
  const char* env = std::getenv("LEAFCHAR_PRECISION");
  if (!env || !*env) return 256;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 64 || v > (1 << 16))
    throw Error(ErrorCode::InvalidArgument, "LEAFCHAR_PRECISION must be an integer in [64, 65536]");
  return static_cast<unsigned>(v);
}

RunOutput run(std::string_view subcommand, const nlohmann::json& config) {
  RunOutput out;
  out.report = base_report(subcommand);
  try {
    Config cfg(config);
    Outcome o;
    if (subcommand == "jet") o = run_jet(cfg);
    else if (subcommand == "wn") o = run_wn(cfg);
    else if (subcommand == "gk") o = run_gk(cfg);
    else if (subcommand == "reeb") o = run_reeb(cfg);
    else if (subcommand == "cech") o = run_cech(cfg);
    else if (subcommand == "site") o = run_site(cfg);
    else if (subcommand == "probe") o = run_probe(cfg);
    else throw UsageError("unknown subcommand " + std::string(subcommand));
    cfg.finish();
    out.report["config"] = cfg.echo();
    out.report["checks"] = o.checks.list;
    out.report["result"] = o.result;
    out.report["passed"] = o.checks.all;
    out.csv = o.csv;
    out.exit_code = o.checks.all ? 0 : 1;
  } catch (const UsageError& e) {
    out.report["error"] = {{"code", "UsageError"}, {"message", e.what()}};
    out.report["passed"] = false;
    out.exit_code = 2;
  } catch (const Error& e) {
    out.report["error"] = {{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}};
    out.report["passed"] = false;
    out.exit_code = is_usage(e.code()) ? 2 : 1;
  } catch (const nlohmann::json::exception& e) {
    out.report["error"] = {{"code", "UsageError"}, {"message", e.what()}};
    out.report["passed"] = false;
    out.exit_code = 2;
  }
  return out;
}

std::string render_text(const nlohmann::ordered_json& report) {
  std::ostringstream os;
  os << report.value("subcommand", std::string("?")) << ": ";
  if (report.contains("error")) {
    os << "error: " << report["error"].value("message", std::string()) << '\n';
    return os.str();
  }
  os << (report.value("passed", false) ? "PASS" : "FAIL") << '\n';
  for (const auto& c : report["checks"]) {
    os << "  [" << (c.value("passed", false) ? "ok" : (c.value("informational", false) ? "--" : "FAIL")) << "] "
       << c.value("name", std::string());
    if (c.contains("witness")) os << "  witness: " << c["witness"].dump();
    os << '\n';
  }
  return os.str();
}

}  // namespace leafchar
