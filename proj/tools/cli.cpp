#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "asygeo/asymptotics.hpp"
#include "asygeo/capacity.hpp"
#include "asygeo/errors.hpp"
#include "asygeo/examples.hpp"
#include "asygeo/manifold.hpp"
#include "asygeo/spectrum.hpp"
#include "asygeo/sweep.hpp"

namespace asygeo::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kCapacityGrid = "geom:10:1e4:12";
constexpr const char* kEigenGrid = "geom:2:200:12";

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// 12 significant digits; non-finite values become null.
Json jnum(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::strtod(num(x).c_str(), nullptr);
}

Json jopt(const std::optional<double>& x) { return x ? jnum(*x) : Json(nullptr); }

Json checks_json(const std::vector<Check>& checks) {
  Json a = Json::array();
  for (const auto& c : checks) a.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return a;
}

bool all_pass(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

struct Context {
  const RunConfig& cfg;
  QuadratureSpec q;
  WarpedManifold m;
};

QuadratureSpec quadrature_from(const RunConfig& cfg) {
  QuadratureSpec q;
  q.rel_tol = cfg.rel_tol;
  q.max_depth = cfg.max_depth;
  return q;
}

WarpedManifold manifold_from(const RunConfig& cfg) {
  WarpedManifold m = load_manifold(cfg.manifold);
  return cfg.scale == 1.0 ? m : m.rescaled(cfg.scale);
}

SolverConfig solver_from(const RunConfig& cfg, const QuadratureSpec& q) {
  SolverConfig s;
  s.nodes = cfg.nodes;
  s.quadrature = q;
  return s;
}

PGrid grid_or(const RunConfig& cfg, const char* fallback) {
  return PGrid::parse(cfg.p_grid.empty() ? fallback : cfg.p_grid);
}

Json sweep_json(const SweepReport& rep) {
  Json j;
  j["limit"] = jopt(rep.limit_estimate);
  j["limsup"] = jnum(rep.limsup_estimate);
  j["liminf"] = jnum(rep.liminf_estimate);
  j["monotone"] = rep.monotone;
  j["oscillating"] = rep.oscillating;
  j["fit"] = {{"a", jnum(rep.fit_a)}, {"b", jnum(rep.fit_b)}, {"residual", jnum(rep.fit_residual)}};
  Json subs = Json::array();
  for (const auto& s : rep.subsequence_limits) subs.push_back({{"label", s.label}, {"limit", jnum(s.limit)}});
  j["subsequence_limits"] = subs;
  j["diagnostics"] = rep.diagnostics;
  return j;
}

// Table output: header plus rows, either as CSV or as a JSON array of objects.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void csv(std::ostream& os) const {
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << '\n';
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << num(r[i]);
      os << '\n';
    }
  }
  Json json() const {
    Json a = Json::array();
    for (const auto& r : rows) {
      Json o;
      for (std::size_t i = 0; i < r.size(); ++i) o[columns[i]] = jnum(r[i]);
      a.push_back(o);
    }
    return a;
  }
};

Json header(const Context& c, const char* command) {
  Json j;
  j["command"] = command;
  j["manifold"] = c.m.label();
  j["scale"] = jnum(c.cfg.scale);
  return j;
}

int emit(const Context& c, const Table& t, Json doc, std::ostream& os) {
  if (c.cfg.format == Format::kCsv) {
    t.csv(os);
  } else {
    doc["rows"] = t.json();
    os << doc.dump(2) << '\n';
  }
  return 0;
}

double cap_error(const CapacityResult& r) {
  if (r.parabolic) return 0.0;
  return r.scaled() * std::exp(r.error_log - r.log_cap) / r.p;
}

int cmd_cap(const Context& c, std::ostream& os) {
  const double p = *c.cfg.p;
  const CapacityResult r = log_cap_ball(c.m, c.cfg.r, p, c.q);
  Json doc = header(c, "cap");
  doc["r"] = jnum(c.cfg.r);
  doc["parabolic"] = r.parabolic;
  return emit(c, {{"p", "log_cap", "scaled", "err"}, {{p, r.log_cap, r.scaled(), cap_error(r)}}}, doc, os);
}

int cmd_cap_sweep(const Context& c, std::ostream& os) {
  const SweepReport rep = infinity_capacity_sweep(c.m, c.cfg.r, grid_or(c.cfg, kCapacityGrid), c.q);
  Table t{{"p", "log_cap", "scaled", "err"}, {}};
  for (const auto& s : rep.samples) {
    const double lc = s.value > 0.0 ? s.p * std::log(s.value / s.p) : -INFINITY;
    t.rows.push_back({s.p, lc, s.value, s.error});
  }
  Json doc = header(c, "cap-sweep");
  doc["r"] = jnum(c.cfg.r);
  doc["sweep"] = sweep_json(rep);
  return emit(c, t, doc, os);
}

int cmd_condenser(const Context& c, std::ostream& os) {
  const double p = *c.cfg.p;
  const CapacityResult r = log_cap_condenser(c.m, c.cfg.r1, c.cfg.r2, p, c.q);
  const double root = std::exp(r.log_cap / p);
  const double err = r.parabolic ? 0.0 : root * std::exp(r.error_log - r.log_cap) / p;
  Json doc = header(c, "condenser");
  doc["r1"] = jnum(c.cfg.r1);
  doc["r2"] = jnum(c.cfg.r2);
  doc["distance"] = jnum(c.cfg.r2 - c.cfg.r1);
  return emit(c, {{"p", "log_cap", "cap_root", "err"}, {{p, r.log_cap, root, err}}}, doc, os);
}

int cmd_eigen(const Context& c, std::ostream& os) {
  const double p = *c.cfg.p;
  const SolverConfig s = solver_from(c.cfg, c.q);
  const EigenResult e = c.cfg.R ? lambda_1p_ball(c.m, *c.cfg.R, p, s) : lambda_1p_manifold(c.m, p, {}, s);
  Json doc = header(c, "eigen");
  doc["domain"] = c.cfg.R ? "ball" : "manifold";
  doc["R"] = jnum(e.R);
  doc["log_lambda"] = jnum(e.log_lambda);
  doc["error_bound"] = jnum(e.error_bound);
  doc["iterations"] = e.iterations;
  doc["stabilized"] = e.stabilized;
  return emit(c, {{"p", "lambda", "scaled", "residual"}, {{p, e.lambda(), e.scaled(), e.residual}}}, doc, os);
}

int cmd_mazya(const Context& c, std::ostream& os) {
  const double p = *c.cfg.p;
  const MazyaResult r = mazya_mp(c.m, p, {}, c.q);
  Json doc = header(c, "mazya");
  doc["attained_at_infinity"] = r.attained_at_infinity;
  doc["log_tail_limit"] = jnum(r.log_tail_limit);
  return emit(c, {{"p", "log_mp", "argmin_r", "scaled"}, {{p, r.log_mp, r.argmin_r, r.scaled()}}}, doc, os);
}

int cmd_lambda_sweep(const Context& c, std::ostream& os) {
  const SweepReport rep =
      infinity_eigenvalue_sweep(c.m, grid_or(c.cfg, kEigenGrid), {}, solver_from(c.cfg, c.q));
  Table t{{"p", "lambda", "scaled", "residual"}, {}};
  for (const auto& s : rep.samples) {
    const double lambda = s.value > 0.0 ? std::exp(s.p * std::log(s.value / s.p)) : 0.0;
    t.rows.push_back({s.p, lambda, s.value, s.error});
  }
  Json doc = header(c, "lambda-sweep");
  doc["sweep"] = sweep_json(rep);
  return emit(c, t, doc, os);
}

int cmd_entropy(const Context& c, std::ostream& os) {
  const EntropyReport e = volume_entropy(c.m, default_entropy_grid(c.m), c.q);
  Table t{{"R", "log_volume_over_R", "area_over_volume"}, {}};
  for (std::size_t i = 0; i < e.ratio_tail.size(); ++i) {
    const double sv = i < e.sv_ratio_tail.size() ? e.sv_ratio_tail[i].second : NAN;
    t.rows.push_back({e.ratio_tail[i].first, e.ratio_tail[i].second, sv});
  }
  Json doc = header(c, "entropy");
  doc["entropy"] = jnum(e.entropy);
  doc["condition_1_2"] = e.condition_1_2;
  doc["growth_consistent"] = e.growth_consistent;
  doc["fit"] = {{"a", jnum(e.fit_a)}, {"b", jnum(e.fit_b)}, {"c", jnum(e.fit_c)},
                {"residual", jnum(e.fit_residual)}, {"used", e.fit_used}};
  doc["diagnostics"] = e.diagnostics;
  return emit(c, t, doc, os);
}

ChainConfig chain_config(const Context& c) {
  ChainConfig cc;
  cc.r = c.cfg.r;
  cc.solver = solver_from(c.cfg, c.q);
  cc.quadrature = c.q;
  return cc;
}

Json verdict_json(const Context& c, const ChainVerdict& v, const ChainConfig& cc) {
  Json doc = header(c, "verify-chain");
  doc["entropy"] = jopt(v.entropy);
  doc["C"] = jopt(v.capacity);
  doc["C_liminf"] = jopt(v.capacity_liminf);
  doc["Lambda"] = jopt(v.lambda);
  doc["Mazya"] = jopt(v.mazya);
  doc["verdicts"] = checks_json(v.checks);
  doc["strict_gap"] = v.strict_gap;
  doc["failed_legs"] = v.failed_legs;
  doc["all_pass"] = v.all_pass();
  doc["tolerances"] = {{"eps_rel", jnum(cc.eps_rel)}, {"eps_abs", jnum(cc.eps_abs)}, {"epsilon", jnum(v.epsilon)}};
  return doc;
}

int cmd_verify_chain(const Context& c, std::ostream& os) {
  const ChainConfig cc = chain_config(c);
  const ChainVerdict v = verify_chain(c.m, grid_or(c.cfg, kEigenGrid), cc);
  if (c.cfg.format == Format::kCsv) {
    os << "entropy,C,Lambda,Mazya,all_pass\n";
    auto o = [](const std::optional<double>& x) { return x ? num(*x) : std::string("nan"); };
    os << o(v.entropy) << ',' << o(v.capacity) << ',' << o(v.lambda) << ',' << o(v.mazya) << ','
       << (v.all_pass() ? 1 : 0) << '\n';
  } else {
    os << verdict_json(c, v, cc).dump(2) << '\n';
  }
  return v.all_pass() ? 0 : 1;
}

Json example31_json(const RunConfig& cfg, const QuadratureSpec& q, bool& pass) {
  const double p = cfg.p.value_or(3.0);
  const PlateauCapacityBound b = example31_capacity(p, cfg.terms);
  const auto bracket = example31_entropy(std::max(cfg.terms, 3));
  const PlateauSequence seq = plateau_sequence(std::max(cfg.terms, 3));

  Json doc;
  doc["command"] = "example31";
  doc["p"] = jnum(p);
  doc["terms"] = cfg.terms;
  Json xs = Json::array();
  for (int k = 0; k < seq.size(); ++k)
    xs.push_back({{"k", k}, {"x", jnum(seq.xs[k])}, {"log_x", jnum(seq.log_xs[k])}, {"exact", bool(seq.exact[k])}});
  doc["plateaus"] = xs;
  doc["capacity_bound"] = {{"log_bound", jnum(b.log_bound)},
                           {"terms_used", b.terms_used},
                           {"truncated", b.truncated},
                           {"log_last_term", jnum(b.log_last_term)}};
  Json br = Json::array();
  for (const auto& e : bracket)
    br.push_back({{"k", e.k}, {"R", jnum(e.R)}, {"lower", jnum(e.lower)}, {"upper", jnum(e.upper)}});
  doc["entropy_bracket"] = br;

  const WarpedManifold m = make_example31(2);
  const CapacityResult cap = log_cap_ball(m, 1.0, p, q);
  const EntropyReport ent = volume_entropy(m, default_entropy_grid(m), q);
  doc["numeric"] = {{"capacity_parabolic", cap.parabolic}, {"log_cap", jnum(cap.log_cap)}, {"entropy", jnum(ent.entropy)}};

  std::vector<Check> checks;
  checks.push_back({"capacity bound below e^-40", b.log_bound < -40.0, "ln bound = " + num(b.log_bound)});
  const double last_lower = bracket.back().lower;
  checks.push_back({"entropy lower ratio above 0.9999", last_lower > 0.9999, "ratio = " + num(last_lower)});
  bool ordered = true;
  for (const auto& e : bracket) ordered = ordered && e.lower <= e.upper;
  checks.push_back({"lower <= upper on every plateau", ordered, ""});
  checks.push_back({"last plateau term grows", b.log_last_term > 0.0, "ln term = " + num(b.log_last_term)});
  checks.push_back({"numeric capacity vanishes", cap.parabolic || cap.log_cap < -40.0, "log_cap = " + num(cap.log_cap)});
  checks.push_back({"numeric entropy is 1", std::abs(ent.entropy - 1.0) < 0.03, "entropy = " + num(ent.entropy)});
  doc["assertions"] = checks_json(checks);
  doc["conclusion"] = {{"C", 0}, {"V", 1}, {"strict_gap", true}};
  pass = all_pass(checks);
  return doc;
}

int cmd_example31(const Context& c, std::ostream& os) {
  bool pass = false;
  os << example31_json(c.cfg, c.q, pass).dump(2) << '\n';
  return pass ? 0 : 1;
}

Json example32_json(const RunConfig& cfg, const QuadratureSpec& q, bool& pass) {
  const OscillationAnalysis a = example32_bound_chain(q);
  const SweepReport rep = example32_capacity_oscillation(cfg.k_list, q);

  Json doc;
  doc["command"] = "example32";
  doc["I1"] = jnum(a.I1);
  doc["I2"] = jnum(a.I2);
  doc["gap"] = jnum(a.gap);
  doc["separation"] = jnum(a.separation);
  doc["A"] = jnum(a.A);
  doc["B"] = jnum(a.B);
  doc["log_abs_C"] = jnum(a.log_abs_C);
  doc["sign_C"] = a.sign_C;
  doc["series_tail_direct"] = jnum(a.series_tail_direct);
  doc["bounds"] = {{"A", jnum(a.A_bound)},
                   {"B", jnum(a.B_bound)},
                   {"log_C", jnum(a.log_C_bound)},
                   {"series_tail", jnum(a.series_tail_bound)}};
  doc["bound_sum"] = jnum(a.bound_sum);
  doc["bound_sum_closed"] = jnum(a.bound_sum_closed);

  std::vector<Check> checks = a.checks;
  checks.push_back({"I2 - I1 < -1e-3", a.gap < -1e-3, "gap = " + num(a.gap)});
  const double spread = rep.limsup_estimate - rep.liminf_estimate;
  checks.push_back({"limsup - liminf >= separation - 1e-3", spread >= std::abs(a.separation) - 1e-3,
                    "spread = " + num(spread) + ", separation = " + num(std::abs(a.separation))});
  checks.push_back({"sweep oscillates", rep.oscillating, ""});
  doc["assertions"] = checks_json(checks);
  doc["notes"] = a.notes;

  Json samples = Json::array();
  for (const auto& s : rep.samples) samples.push_back({{"p", jnum(s.p)}, {"value", jnum(s.value)}});
  Json osc = sweep_json(rep);
  osc["k_list"] = cfg.k_list;
  osc["samples"] = samples;
  doc["oscillation"] = osc;
  pass = all_pass(checks);
  return doc;
}

int cmd_example32(const Context& c, std::ostream& os) {
  bool pass = false;
  os << example32_json(c.cfg, c.q, pass).dump(2) << '\n';
  return pass ? 0 : 1;
}

int cmd_reproduce(const Context& c, std::ostream& os, std::ostream& err) {
  const char* models[] = {"hyperbolic:2", "euclidean:2", "example31:2", "example32:2"};
  Json rows = Json::array();
  bool pass = true;
  for (const char* name : models) {
    err << "verify-chain " << name << '\n';
    RunConfig sub = c.cfg;
    sub.manifold = name;
    const Context sc{sub, c.q, manifold_from(sub)};
    const ChainConfig cc = chain_config(sc);
    const ChainVerdict v = verify_chain(sc.m, PGrid::parse(kEigenGrid), cc);
    pass = pass && v.all_pass();
    Json row = verdict_json(sc, v, cc);
    row.erase("command");
    rows.push_back(row);
  }
  bool p31 = false;
  bool p32 = false;
  err << "example31\n";
  Json e31 = example31_json(c.cfg, c.q, p31);
  err << "example32\n";
  Json e32 = example32_json(c.cfg, c.q, p32);
  pass = pass && p31 && p32;

  if (c.cfg.format == Format::kCsv) {
    os << "model,entropy,C,C_liminf,Lambda,Mazya,chain\n";
    for (const auto& r : rows) {
      os << r["manifold"].get<std::string>();
      for (const char* k : {"entropy", "C", "C_liminf", "Lambda", "Mazya"})
        os << ',' << (r[k].is_null() ? std::string("nan") : num(r[k].get<double>()));
      os << ',' << (r["all_pass"].get<bool>() ? "pass" : "fail") << '\n';
    }
  } else {
    Json doc;
    doc["command"] = "reproduce";
    doc["chains"] = rows;
    doc["example31"] = e31;
    doc["example32"] = e32;
    doc["all_pass"] = pass;
    os << doc.dump(2) << '\n';
  }
  return pass ? 0 : 1;
}

bool default_csv(Command c) {
  switch (c) {
    case Command::kCap:
    case Command::kCapSweep:
    case Command::kCondenser:
    case Command::kEigen:
    case Command::kMazya:
    case Command::kLambdaSweep:
      return true;
    default:
      return false;
  }
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"asygeo: infinity capacity, eigenvalue and volume entropy of rotationally symmetric manifolds"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string format;
  app.add_option("--manifold", cfg.manifold, "builtin kind:n (hyperbolic:2, euclidean:2, example31:2, example32:2) or JSON file");
  app.add_option("--scale", cfg.scale, "metric rescale g -> scale^2 g");
  app.add_option("--rel-tol", cfg.rel_tol, "quadrature relative tolerance");
  app.add_option("--max-depth", cfg.max_depth, "quadrature refinement depth");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", cfg.out, "output file (default stdout)");

  struct Sub {
    const char* name;
    Command command;
    const char* help;
  };
  const Sub subs[] = {
      {"cap", Command::kCap, "p-capacity of the ball B(o, r)"},
      {"cap-sweep", Command::kCapSweep, "p Cap_p^{1/p} over a p-grid"},
      {"condenser", Command::kCondenser, "condenser capacity Cap_p(B_r1, B_r2)"},
      {"eigen", Command::kEigen, "first Dirichlet eigenvalue on B(o, R) or on M"},
      {"mazya", Command::kMazya, "Maz'ya constant m_p"},
      {"lambda-sweep", Command::kLambdaSweep, "p lambda^{1/p} over a p-grid"},
      {"entropy", Command::kEntropy, "volume entropy"},
      {"verify-chain", Command::kVerifyChain, "V >= C >= Lambda = M"},
      {"example31", Command::kExample31, "plateau manifold analysis"},
      {"example32", Command::kExample32, "oscillating manifold analysis"},
      {"reproduce", Command::kReproduce, "run every model and example"},
  };
  std::vector<std::pair<CLI::App*, Command>> handles;
  for (const auto& s : subs) {
    CLI::App* sc = app.add_subcommand(s.name, s.help);
    handles.emplace_back(sc, s.command);
    switch (s.command) {
      case Command::kCap:
        sc->add_option("--r", cfg.r, "ball radius");
        sc->add_option("--p", cfg.p, "exponent")->required();
        break;
      case Command::kCapSweep:
        sc->add_option("--r", cfg.r, "ball radius");
        sc->add_option("--p-grid", cfg.p_grid, "geom:pmin:pmax:count or comma list");
        break;
      case Command::kCondenser:
        sc->add_option("--r1", cfg.r1, "inner radius");
        sc->add_option("--r2", cfg.r2, "outer radius");
        sc->add_option("--p", cfg.p, "exponent")->required();
        break;
      case Command::kEigen:
        sc->add_option("--R", cfg.R, "ball radius (omit for the whole manifold)");
        sc->add_option("--p", cfg.p, "exponent")->required();
        sc->add_option("--nodes", cfg.nodes, "finite-element segments");
        break;
      case Command::kMazya:
        sc->add_option("--p", cfg.p, "exponent")->required();
        break;
      case Command::kLambdaSweep:
        sc->add_option("--p-grid", cfg.p_grid, "geom:pmin:pmax:count or comma list");
        sc->add_option("--nodes", cfg.nodes, "finite-element segments");
        break;
      case Command::kEntropy:
        break;
      case Command::kVerifyChain:
        sc->add_option("--r", cfg.r, "radius of the ball");
        sc->add_option("--p-grid", cfg.p_grid, "eigenvalue p-grid");
        sc->add_option("--nodes", cfg.nodes, "finite-element segments");
        break;
      case Command::kExample31:
        sc->add_option("--p", cfg.p, "exponent (default 3)");
        sc->add_option("--terms", cfg.terms, "plateau terms K");
        break;
      case Command::kExample32:
        sc->add_option("--k-list", cfg.k_list, "subsequence indices")->delimiter(',');
        break;
      case Command::kReproduce:
        break;
    }
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    throw UsageError(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  for (const auto& [sc, cmd] : handles)
    if (sc->parsed()) cfg.command = cmd;

  if (cfg.p && !(*cfg.p > 1.0)) throw UsageError("--p: p must exceed 1");
  if (!(cfg.r > 0.0)) throw UsageError("--r: radius must be positive");
  if (!(cfg.r1 > 0.0)) throw UsageError("--r1: radius must be positive");
  if (!(cfg.r1 < cfg.r2)) throw UsageError("--r2: r1 must be less than r2");
  if (cfg.R && !(*cfg.R > 0.0)) throw UsageError("--R: radius must be positive");
  if (cfg.nodes < 8) throw UsageError("--nodes: at least 8 segments required");
  if (!(cfg.rel_tol > 0.0 && cfg.rel_tol < 1.0)) throw UsageError("--rel-tol: must lie in (0, 1)");
  if (cfg.max_depth < 10) throw UsageError("--max-depth: must be at least 10");
  if (!(cfg.scale > 0.0)) throw UsageError("--scale: must be positive");
  if (cfg.terms < 2) throw UsageError("--terms: at least 2 terms required");
  if (cfg.command == Command::kExample31 && cfg.p && !(*cfg.p > 2.0))
    throw UsageError("--p: the plateau bound requires p > 2");
  for (int k : cfg.k_list)
    if (k < 1 || k > 112) throw UsageError("--k-list: entries must lie in [1, 112]");
  if (!cfg.p_grid.empty()) {
    try {
      PGrid::parse(cfg.p_grid);
    } catch (const Error& e) {
      throw UsageError(std::string("--p-grid: ") + e.what());
    }
  }
  try {
    load_manifold(cfg.manifold);
  } catch (const Error& e) {
    throw UsageError(std::string("--manifold: ") + e.what());
  }
  cfg.format = format.empty() ? (default_csv(cfg.command) ? Format::kCsv : Format::kJson)
                              : (format == "csv" ? Format::kCsv : Format::kJson);
  return cfg;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  if (!cfg.out.empty()) {
    file.open(cfg.out);
    if (!file) throw UsageError("--out: cannot open '" + cfg.out + "'");
  }
  std::ostream& os = cfg.out.empty() ? out : file;
  const QuadratureSpec q = quadrature_from(cfg);
  const Context c{cfg, q, manifold_from(cfg)};
  switch (cfg.command) {
    case Command::kCap: return cmd_cap(c, os);
    case Command::kCapSweep: return cmd_cap_sweep(c, os);
    case Command::kCondenser: return cmd_condenser(c, os);
    case Command::kEigen: return cmd_eigen(c, os);
    case Command::kMazya: return cmd_mazya(c, os);
    case Command::kLambdaSweep: return cmd_lambda_sweep(c, os);
    case Command::kEntropy: return cmd_entropy(c, os);
    case Command::kVerifyChain: return cmd_verify_chain(c, os);
    case Command::kExample31: return cmd_example31(c, os);
    case Command::kExample32: return cmd_example32(c, os);
    case Command::kReproduce: return cmd_reproduce(c, os, err);
  }
  return 2;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_args(std::vector<std::string>(argv + 1, argv + argc));
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return 2;
  }
  try {
    return run(cfg, out, err);
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return 2;
  } catch (const ToleranceError& e) {
    err << "tolerance not met: " << e.what() << " (best estimate " << num(e.best_estimate()) << ")\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace asygeo::cli
