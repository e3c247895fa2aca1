#include "confhor/report.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <sstream>

namespace confhor {

namespace {
double ms_count(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}
}  // namespace

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void AnalysisConfig::validate() const {
  if (horizon_grid < 4 || quad_nodes < 4)
    throw Error(Err::ConfigError, "grid resolutions must be >= 4 per axis");
  if (!(root_tol > 0.0) || !(dtol > 0.0) || !(quad_tol > 0.0))
    throw Error(Err::ConfigError, "tolerances must be positive");
  if (refine_depth < 1 || refine_depth > 60)
    throw Error(Err::ConfigError, "refinement depth out of range");
  for (const auto& s : stages) {
    if (s != "mass" && s != "horizon" && s != "naked" && s != "conditions" && s != "stay" &&
        s != "penrose")
      throw Error(Err::ConfigError, "unknown stage: " + s);
  }
  if (metric == "schwarzschild" || metric == "kerr") {
    if (!(M > 0.0)) throw Error(Err::ConfigError, "need M > 0");
  }
  if (metric == "rn") {
    if (!(M > 0.0) || Q == 0.0) throw Error(Err::ConfigError, "need M > 0 and Q != 0");
  }
  if (metric == "kerr" && !(a != 0.0 && std::abs(a) < M))
    throw Error(Err::ConfigError, "need 0 < |a| < M");
  if (metric == "roberts" && !(1.0 + 2.0 * sigma > 0.0))
    throw Error(Err::ConfigError, "need 1 + 2 sigma > 0");
}

CatalogEntry AnalysisConfig::make_entry() const {
  if (metric == "schwarzschild") return make_schwarzschild(M);
  if (metric == "rn") return make_reissner_nordstrom(M, Q);
  if (metric == "roberts") return make_roberts(sigma);
  if (metric == "kerr") return make_kerr(M, a);
  if (metric == "synthetic") return make_synthetic_collapse();
  throw Error(Err::ConfigError, "unknown metric id: " + metric);
}

ordered_json provenance_block() {
  ordered_json p;
  p["pipeline_version"] = "confhor 1.0";
  p["mass_convention"] = "m = G(dw0/w0, dw0/w0), G = ((w1)^2 g)^{-1}; b-basis (h_b^{-1})^{00}";
  p["tau_convention"] =
      "tau = sqrt|gbar|/Omega; dm/du closed form "
      "(2/w1^2)[trK/sqrt|gbar| + (u/w1^2)(gbar^{ij} - u sqrt|gbar| K^{ij}) W_i W_j]; "
      "calibration constant vs finite differences = 1";
  p["schwarzschild_mass_factor"] =
      "m_closed/m_generic = exp(tan w1) w1^2 (1 - exp(-tan w1))^2 / (1 + tan^2 w1); "
      "positive and w0-independent";
  p["jacobian_power"] = "det(dz/dx) = Delta*/Omega^{n+1} (numeric check, n = 3)";
  p["kerr_horizon_rhs"] = "positive on the whole chart Delta - a^2 sin^2 theta > 0";
  p["closure_scan"] =
      "scaled slope c = |dm/du|/|u| at horizon roots of the catalog-normalized mass; "
      "power-law fit over geometric edge ladders; two-compactifier confirmation";
  return p;
}

namespace {

ordered_json entry_params(const AnalysisConfig& cfg) {
  ordered_json j;
  j["metric"] = cfg.metric;
  j["M"] = cfg.M;
  j["Q"] = cfg.Q;
  j["a"] = cfg.a;
  j["sigma"] = cfg.sigma;
  j["horizon_grid"] = cfg.horizon_grid;
  j["quad_nodes"] = cfg.quad_nodes;
  j["refine_depth"] = cfg.refine_depth;
  j["root_tol"] = cfg.root_tol;
  j["dtol"] = cfg.dtol;
  j["quad_tol"] = cfg.quad_tol;
  ordered_json st = ordered_json::array();
  for (const auto& s : cfg.stages) st.push_back(s);
  j["stages"] = st;
  return j;
}

double stage_theta(const CatalogEntry& e) {
  return e.id == "kerr" ? M_PI / 3.0 : M_PI / 2.0;
}

}  // namespace

ordered_json run_analysis(const AnalysisConfig& cfg, bool* warned) {
  cfg.validate();
  CatalogEntry e = cfg.make_entry();
  ordered_json rep;
  rep["config"] = entry_params(cfg);
  ordered_json stages;
  ordered_json clocks;
  if (warned) *warned = false;

  auto stage_on = [&](const std::string& s) {
    return std::find(cfg.stages.begin(), cfg.stages.end(), s) != cfg.stages.end();
  };
  auto now = [] { return std::chrono::steady_clock::now(); };

  double theta = stage_theta(e);
  if (stage_on("mass")) {
    auto t0 = now();
    ordered_json rows = ordered_json::array();
    int n = std::max(4, cfg.horizon_grid / 8);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        UPt p;
        p.w1 = std::max(e.udomain.lo[1], 1e-3 * e.udomain.hi[1]) +
               (0.97 * e.udomain.hi[1] - std::max(e.udomain.lo[1], 1e-3 * e.udomain.hi[1])) *
                   (i + 0.5) / n;
        p.ang = {theta, 0.0};
        p.u = -3.0 * (j + 0.5) / n;
        if (!e.chart_ok(p)) continue;
        MassSample s = mass_generic(e, p);
        ordered_json row;
        row["omega0"] = format_double(std::exp(p.u));
        row["omega1"] = format_double(p.w1);
        row["m"] = format_double(s.m);
        row["dm_du"] = format_double(s.dm_du);
        row["tolerance"] = format_double(cfg.root_tol);
        rows.push_back(row);
      }
    }
    stages["mass"] = ordered_json{{"samples", rows}};
    clocks["mass_ms"] = ms_count(t0, now());
  }

  if (stage_on("horizon")) {
    auto t0 = now();
    std::vector<double> grid;
    double glo = std::max(e.udomain.lo[1], 0.0);
    for (int j = 0; j < cfg.horizon_grid; ++j)
      grid.push_back(glo + (e.udomain.hi[1] - glo) * (j + 0.5) / cfg.horizon_grid);
    HorizonProfile prof = horizon_profile(e, grid, theta);
    ordered_json rows = ordered_json::array();
    for (const auto& nn : prof.nodes) {
      ordered_json row;
      row["omega1"] = format_double(nn.w1);
      row["status"] = static_cast<int>(nn.status);
      row["omega0"] = format_double(nn.X);
      row["u_root"] = format_double(nn.u_root);
      row["dm_du"] = format_double(nn.dm_du);
      row["null_residual"] = format_double(nn.null_residual);
      row["m_resid"] = format_double(nn.m_resid);
      rows.push_back(row);
    }
    stages["horizon"] = ordered_json{{"nodes", rows}, {"n_ok", prof.n_ok},
                                     {"root_tol", format_double(cfg.root_tol)}};
    clocks["horizon_ms"] = ms_count(t0, now());
  }

  if (stage_on("naked")) {
    auto t0 = now();
    ClosureConfig cc;
    cc.max_depth = cfg.refine_depth;
    NakedVerdict v = apparent_closure(e, cc);
    ordered_json jv;
    jv["verdict"] = v.verdict == Verdict::Naked ? "Naked" : "NotNaked";
    ordered_json pts = ordered_json::array();
    for (const auto& lp : v.limit_points)
      pts.push_back(ordered_json{{"omega1", format_double(lp.w1)},
                                 {"theta", format_double(lp.theta)}});
    jv["limit_points"] = pts;
    ordered_json scans = ordered_json::array();
    for (const auto& s : v.scans) {
      ordered_json js;
      js["edge"] = s.edge;
      js["n_valid"] = s.n_valid;
      js["p_fit"] = format_double(s.p_fit);
      js["decayed"] = s.decayed;
      js["inconclusive"] = s.inconclusive;
      scans.push_back(js);
    }
    jv["scans"] = scans;
    jv["inconclusive"] = v.any_inconclusive;
    if (v.any_inconclusive && warned) *warned = true;
    stages["naked"] = jv;
    clocks["naked_ms"] = ms_count(t0, now());
  }

  if (stage_on("conditions")) {
    auto t0 = now();
    if (!e.tg) throw Error(Err::NotTemporalGauge, "conditions stage needs a temporal-gauge metric");
    std::vector<UPt> samples;
    for (int i = 0; i < 10; ++i) {
      for (int j = 0; j < 10; ++j) {
        UPt p;
        p.w1 = e.udomain.lo[1] + (e.udomain.hi[1] - e.udomain.lo[1]) * (i + 0.5) / 10.0;
        p.ang = {theta, 0.0};
        p.u = -2.5 * (j + 0.5) / 10.0;
        samples.push_back(p);
      }
    }
    ConditionReport r = curvature_conditions(e, samples);
    stages["conditions"] = ordered_json{{"n_samples", samples.size()},
                                        {"frac_pair", format_double(r.frac_pair)},
                                        {"frac_monotone", format_double(r.frac_monotone)}};
    clocks["conditions_ms"] = ms_count(t0, now());
  }

  if (stage_on("stay")) {
    auto t0 = now();
    double w1 = 0.5 * (e.udomain.lo[1] + e.udomain.hi[1]);
    HorizonNode n = horizon_root(e, w1, theta);
    if (n.status != NodeStatus::Ok && n.status != NodeStatus::Degenerate)
      throw Error(Err::HypothesisViolated, "no horizon above the stay start");
    ZField Z = [](const Pt&) { return std::array<double, 4>{1.0, 0.0, 0.0, 0.0}; };
    StayResult r = stay_criterion(e, {0.25 * n.X, w1, theta, 0.0}, Z, 10.0);
    stages["stay"] = ordered_json{{"stays", r.stays},
                                  {"exit_s", format_double(r.exit_s)},
                                  {"expected_exit", format_double(n.X - 0.25 * n.X)}};
    clocks["stay_ms"] = ms_count(t0, now());
  }

  if (stage_on("penrose")) {
    auto t0 = now();
    BoundOpts opt;
    opt.n1 = cfg.quad_nodes;
    opt.nang = cfg.quad_nodes;
    BoundReport r = penrose_bound(e, opt);
    ordered_json jb;
    jb["M_sq"] = format_double(r.M_sq);
    jb["J_at_Tstar"] = format_double(r.J_at_Tstar);
    jb["rhs_bound"] = format_double(r.rhs_bound);
    jb["area_A"] = format_double(r.area_A);
    jb["lambda"] = format_double(r.lambda);
    jb["lambda_denominator"] = format_double(r.lambda_denominator);
    jb["euler_residual_max"] = format_double(r.euler_residual_max);
    jb["conserved_drift"] = format_double(r.conserved_drift);
    jb["isoperimetric_gap"] = format_double(r.isoperimetric_gap);
    jb["second_variation_ok"] = r.second_variation_ok;
    jb["inequality"] = r.inequality;
    jb["eps1"] = format_double(r.eps1_used);
    jb["quad_nodes"] = r.n1;
    stages["penrose"] = jb;
    clocks["penrose_ms"] = ms_count(t0, now());
  }

  rep["stages"] = stages;
  rep["provenance"] = provenance_block();
  rep["wall_clock"] = clocks;
  return rep;
}

std::string diagram_csv(const AnalysisConfig& cfg) {
  cfg.validate();
  if (cfg.horizon_grid < 4) throw Error(Err::ConfigError, "empty grid");
  CatalogEntry e = cfg.make_entry();
  double theta = stage_theta(e);
  std::vector<double> grid;
  double glo = std::max(e.udomain.lo[1], 0.0);
  for (int j = 0; j < cfg.horizon_grid; ++j)
    grid.push_back(glo + (e.udomain.hi[1] - glo) * (j + 0.5) / cfg.horizon_grid);
  HorizonProfile prof = horizon_profile(e, grid, theta);

  std::ostringstream os;
  os << "omega1,omega0_horizon,dm_dt,region_above,region_below,is_apparent_candidate,"
        "chart_excluded\n";
  for (const auto& n : prof.nodes) {
    bool excluded = n.status == NodeStatus::ChartInvalid;
    if (n.status != NodeStatus::Ok && n.status != NodeStatus::Degenerate) {
      os << format_double(n.w1) << ",,,,,," << (excluded ? 1 : 0) << "\n";
      continue;
    }
    UPt p;
    p.w1 = n.w1;
    p.ang = {n.theta, 0.0};
    double above = (n.X + 1e-3 < 1.0) ? n.X + 1e-3 : 0.5 * (1.0 + n.X);
    p.u = std::log(above);
    const char* ra = classify(e, p) == RegionTag::Exterior ? "Exterior" : "Interior";
    double below = (n.X > 1.001e-3) ? n.X - 1e-3 : 0.5 * n.X;
    p.u = std::log(below);
    const char* rb = classify(e, p) == RegionTag::Exterior ? "Exterior" : "Interior";
    std::string dmdt = std::isfinite(n.dm_dt) ? format_double(n.dm_dt) : std::string();
    os << format_double(n.w1) << "," << format_double(n.X) << "," << dmdt
       << "," << ra << "," << rb << "," << (n.status == NodeStatus::Degenerate ? 1 : 0) << ","
       << 0 << "\n";
  }
  return os.str();
}

}  // namespace confhor
