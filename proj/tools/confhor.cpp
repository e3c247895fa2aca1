#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "confhor/report.hpp"
#include "confhor/verify.hpp"

using namespace confhor;

namespace {

struct CommonFlags {
  std::string config_path;
};

void add_common(CLI::App* cmd, AnalysisConfig& cfg, CommonFlags& fl) {
  cmd->add_option("--metric", cfg.metric, "catalog id: schwarzschild | rn | roberts | kerr | synthetic");
  cmd->add_option("--M", cfg.M, "mass parameter");
  cmd->add_option("--Q", cfg.Q, "charge (rn)");
  cmd->add_option("--a", cfg.a, "spin (kerr)");
  cmd->add_option("--sigma", cfg.sigma, "roberts sigma");
  cmd->add_option("--grid", cfg.horizon_grid, "horizon grid nodes");
  cmd->add_option("--quad", cfg.quad_nodes, "quadrature nodes per axis");
  cmd->add_option("--depth", cfg.refine_depth, "boundary refinement depth (<= 40)");
  cmd->add_option("--tol", cfg.root_tol, "root tolerance");
  cmd->add_option("--out", cfg.out_path, "output path (default stdout)");
  cmd->add_option("--config", fl.config_path, "key = value config file; flags win");
}

// plain key = value lines; '#' comments; explicit flags keep precedence
void apply_config(CLI::App* cmd, const std::string& path, AnalysisConfig& cfg,
                  std::string* stages_csv) {
  std::ifstream f(path);
  if (!f) throw Error(Err::ConfigError, "cannot read config file " + path);
  std::string line;
  int lineno = 0;
  auto flag_given = [&](const char* name) { return cmd->count(name) > 0; };
  while (std::getline(f, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (eq == std::string::npos)
      throw Error(Err::ConfigError, path + ":" + std::to_string(lineno) + ": expected key = value");
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r");
      size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    auto as_num = [&](const char* what) {
      try {
        size_t used = 0;
        double v = std::stod(val, &used);
        if (used != val.size()) throw std::invalid_argument(val);
        return v;
      } catch (const std::exception&) {
        throw Error(Err::ConfigError, path + ":" + std::to_string(lineno) + ": bad value for " +
                                          std::string(what));
      }
    };
    if (key == "metric") { if (!flag_given("--metric")) cfg.metric = val; }
    else if (key == "M") { if (!flag_given("--M")) cfg.M = as_num("M"); }
    else if (key == "Q") { if (!flag_given("--Q")) cfg.Q = as_num("Q"); }
    else if (key == "a") { if (!flag_given("--a")) cfg.a = as_num("a"); }
    else if (key == "sigma") { if (!flag_given("--sigma")) cfg.sigma = as_num("sigma"); }
    else if (key == "grid") { if (!flag_given("--grid")) cfg.horizon_grid = static_cast<int>(as_num("grid")); }
    else if (key == "quad") { if (!flag_given("--quad")) cfg.quad_nodes = static_cast<int>(as_num("quad")); }
    else if (key == "depth") { if (!flag_given("--depth")) cfg.refine_depth = static_cast<int>(as_num("depth")); }
    else if (key == "tol") { if (!flag_given("--tol")) cfg.root_tol = as_num("tol"); }
    else if (key == "out") { if (!flag_given("--out")) cfg.out_path = val; }
    else if (key == "stages") { if (stages_csv && !flag_given("--stages")) *stages_csv = val; }
    else throw Error(Err::ConfigError, path + ":" + std::to_string(lineno) + ": unknown key " + key);
  }
}

int write_out(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::fputs(payload.c_str(), stdout);
    return kOk;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::fprintf(stderr, "cannot open %s\n", path.c_str());
    return kStageError;
  }
  f << payload;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conformal-scale spacetime analysis"};
  app.require_subcommand(1);

  AnalysisConfig cfg;
  std::string stages_csv = "mass,horizon,naked";
  std::string suite = "all";

  CommonFlags afl, dfl;
  CLI::App* analyze = app.add_subcommand("analyze", "run analysis stages, emit a JSON report");
  add_common(analyze, cfg, afl);
  analyze->add_option("--stages", stages_csv, "comma list: mass,horizon,naked,conditions,stay,penrose");

  AnalysisConfig dcfg;
  CLI::App* diagram = app.add_subcommand("diagram", "emit Penrose-diagram CSV data");
  add_common(diagram, dcfg, dfl);

  CLI::App* verify = app.add_subcommand("verify", "run an acceptance suite");
  verify->add_option("suite", suite,
                     "remark33 | horizons | verdicts | gradients | penrose | determinism | all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    return app.exit(err) ? kConfigError : kOk;
  }

  try {
    if (analyze->parsed()) {
      if (!afl.config_path.empty()) apply_config(analyze, afl.config_path, cfg, &stages_csv);
      cfg.stages.clear();
      std::stringstream ss(stages_csv);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (!item.empty()) cfg.stages.push_back(item);
      }
      bool warned = false;
      ordered_json rep = run_analysis(cfg, &warned);
      int rc = write_out(cfg.out_path, rep.dump(2) + "\n");
      if (warned) std::fprintf(stderr, "warning: inconclusive refinement reported\n");
      return rc;
    }
    if (diagram->parsed()) {
      if (!dfl.config_path.empty()) apply_config(diagram, dfl.config_path, dcfg, nullptr);
      return write_out(dcfg.out_path, diagram_csv(dcfg));
    }
    if (verify->parsed()) {
      auto results = verify_suite(suite);
      size_t passed = 0;
      for (const auto& r : results) {
        print_check(r);
        if (r.pass) ++passed;
      }
      std::printf("%zu/%zu checks passed\n", passed, results.size());
      return passed == results.size() ? 0 : 1;
    }
  } catch (const Error& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    switch (err.code()) {
      case Err::ConfigError:
      case Err::BranchMismatch:
      case Err::InvalidSigma:
        return kConfigError;
      case Err::NonConvergent:
      case Err::InconclusiveRefinement:
        return kConvergenceError;
      default:
        return kStageError;
    }
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kStageError;
  }
  return kOk;
}
