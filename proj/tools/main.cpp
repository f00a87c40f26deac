// lpmult: command line front end for the multiplier toolkit.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>

#include "lpmult/experiment.hpp"
#include "lpmult/report.hpp"

using namespace lpmult;

namespace {

constexpr const char* kOutputDirEnv = "LPMULT_OUTPUT_DIR";

std::filesystem::path output_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return ".";
}

json read_json_arg(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw std::runtime_error("cannot open " + arg.substr(1));
    return json::parse(in);
  }
  return json::parse(arg);
}

double parse_p(const std::string& s) {
  if (s == "inf" || s == "infinity") return kInfNorm;
  double p = 0.0;
  if (const auto slash = s.find('/'); slash != std::string::npos)
    p = std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
  else
    p = std::stod(s);
  if (!(p >= 1.0)) throw std::invalid_argument("p must be >= 1, got " + s);
  return p;
}

struct SetArgs {
  std::string generator;
  int K = 0;
  std::vector<double> angles;
  std::vector<double> accumulation;
  std::string file;

  void add(CLI::App* app) {
    app->add_option("--generator", generator, "dyadic_gap or superlacunary")
        ->check(CLI::IsMember({"dyadic_gap", "superlacunary"}));
    app->add_option("--K", K, "generator depth");
    app->add_option("--angles", angles, "explicit angles in radians")->delimiter(',');
    app->add_option("--accumulation", accumulation, "flagged accumulation angles")->delimiter(',');
    app->add_option("--set", file, "set as JSON text or @file");
  }

  ClosedCircleSet resolve() const {
    if (!file.empty()) return set_from_json(read_json_arg(file));
    if (!generator.empty()) {
      SetSpec s;
      s.generator = generator;
      s.K = K;
      return resolve_set(s);
    }
    if (!angles.empty()) return ClosedCircleSet::from_angles(angles, accumulation);
    throw std::invalid_argument("no set given: use --generator/--K, --angles or --set");
  }
};

AnalyticModel resolve_model(const std::string& arg, const SetArgs* set) {
  if (arg.empty() || arg == "auto") {
    if (!set) throw std::invalid_argument("--model is required");
    return auto_pole_model(set->resolve(), AutoPoles{});
  }
  return model_from_json(read_json_arg(arg));
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated multiplier norms, star domains and Littlewood-Paley partitions"};
  app.require_subcommand(1);

  // domain build
  auto* domain = app.add_subcommand("domain", "star domain tools");
  domain->require_subcommand(1);
  auto* domain_build = domain->add_subcommand("build", "build the star domain over a closed set");
  SetArgs domain_set;
  domain_set.add(domain_build);
  double theta0 = kPi / 6;
  bool no_inscribed = false;
  domain_build->add_option("--theta0", theta0, "triangle angle parameter in (0, pi/2)");
  domain_build->add_flag("--no-inscribed", no_inscribed, "skip the inscribed constant");

  // set gen / set check-ratio
  auto* setcmd = app.add_subcommand("set", "closed set tools");
  setcmd->require_subcommand(1);
  auto* set_gen = setcmd->add_subcommand("gen", "generate a lacunary closed set");
  SetArgs gen_set;
  gen_set.add(set_gen);
  auto* set_ratio = setcmd->add_subcommand("check-ratio", "arc length ratio report");
  SetArgs ratio_set;
  ratio_set.add(set_ratio);
  double beta = 0.5;
  std::size_t tail_start = kAnchorArcs;
  set_ratio->add_option("--beta", beta, "ratio threshold in (0, 1)");
  set_ratio->add_option("--tail-start", tail_start, "first ratio index of the tail");

  // taylor
  auto* taylor = app.add_subcommand("taylor", "Taylor coefficients of a model");
  std::string taylor_model;
  std::size_t taylor_N = 64;
  std::string taylor_method = "auto";
  double taylor_rho = 0.0;
  std::size_t taylor_M = 0;
  taylor->add_option("--model", taylor_model, "model as JSON text or @file")->required();
  taylor->add_option("--N", taylor_N, "number of coefficients");
  taylor->add_option("--method", taylor_method)->check(CLI::IsMember({"auto", "exact", "dft"}));
  taylor->add_option("--rho", taylor_rho, "DFT radius (dft method)");
  taylor->add_option("--M", taylor_M, "DFT grid size, power of two (dft method)");

  // norm
  auto* norm = app.add_subcommand("norm", "bracket the truncated multiplier norm");
  std::string norm_model;
  std::string norm_p = "2";
  std::vector<std::size_t> norm_N{64};
  std::uint64_t seed = 1;
  norm->add_option("--model", norm_model, "model as JSON text or @file")->required();
  norm->add_option("--p", norm_p, "exponent, e.g. 4/3, 3 or inf");
  norm->add_option("--N", norm_N, "truncation sizes (ascending)")->delimiter(',');
  norm->add_option("--seed", seed, "Boyd seed");

  // mikhlin
  auto* mikhlin = app.add_subcommand("mikhlin", "boundary derivative bound on a star domain");
  SetArgs mikhlin_set;
  mikhlin_set.add(mikhlin);
  std::string mikhlin_model = "auto";
  double mikhlin_theta0 = kPi / 6;
  std::size_t mikhlin_grid = 20000;
  mikhlin->add_option("--model", mikhlin_model, "model JSON, @file or 'auto' for poles at flagged points");
  mikhlin->add_option("--theta0", mikhlin_theta0);
  mikhlin->add_option("--grid", mikhlin_grid, "boundary grid size (>= 1024)");

  // lp-constants
  auto* lpc = app.add_subcommand("lp-constants", "empirical Littlewood-Paley constants");
  SetArgs lpc_set;
  lpc_set.add(lpc);
  std::size_t lpc_N = 1024;
  std::string lpc_p = "4";
  std::size_t lpc_trials = 100;
  lpc->add_option("--N", lpc_N, "grid size, power of two >= 8");
  lpc->add_option("--p", lpc_p, "exponent in (1, inf)");
  lpc->add_option("--trials", lpc_trials, "random trials (>= 100)");
  lpc->add_option("--seed", seed, "random seed");

  // experiment run
  auto* experiment = app.add_subcommand("experiment", "config driven experiments");
  experiment->require_subcommand(1);
  auto* exp_run = experiment->add_subcommand("run", "run a config file");
  std::string config_path;
  std::string out_flag;
  std::string stem;
  std::vector<std::string> formats{"csv", "json", "svg"};
  std::optional<std::uint64_t> seed_override;
  exp_run->add_option("config", config_path, "config file (JSON)")->required();
  exp_run->add_option("--out-dir", out_flag,
                      std::string("output directory (default: $") + kOutputDirEnv + " or .)");
  exp_run->add_option("--stem", stem, "output file stem (default: config file stem)");
  exp_run->add_option("--format", formats, "csv, json, svg")->delimiter(',');
  exp_run->add_option("--seed", seed_override, "override the config seed");

  // report convert
  auto* report = app.add_subcommand("report", "report tools");
  report->require_subcommand(1);
  auto* convert = report->add_subcommand("convert", "convert a JSON report");
  std::string report_in;
  std::string report_to = "csv";
  convert->add_option("input", report_in, "JSON report")->required();
  convert->add_option("--to", report_to, "csv, json or svg");
  convert->add_option("--out-dir", out_flag, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (domain_build->parsed()) {
      const StarDomain d = build_star_domain(domain_set.resolve(), theta0);
      print(domain_to_json(d, !no_inscribed));
    } else if (set_gen->parsed()) {
      print(set_to_json(gen_set.resolve()));
    } else if (set_ratio->parsed()) {
      const RatioReport r = ratio_report(ratio_set.resolve(), tail_start);
      json j = ratio_report_to_json(r);
      j["beta"] = beta;
      j["holds"] = check_ratio_condition(r, beta);
      print(j);
    } else if (taylor->parsed()) {
      const AnalyticModel m = resolve_model(taylor_model, nullptr);
      CoefficientSequence seq;
      if (taylor_method == "exact") {
        seq = taylor_exact(m, taylor_N);
      } else if (taylor_method == "dft") {
        DftParameters dp = choose_dft_parameters(m, taylor_N);
        seq = taylor_dft(m, taylor_N, taylor_rho > 0 ? taylor_rho : dp.rho,
                         taylor_M > 0 ? taylor_M : dp.grid);
      } else {
        seq = taylor_auto(m, taylor_N);
      }
      print(coefficients_to_json(seq));
    } else if (norm->parsed()) {
      const AnalyticModel m = resolve_model(norm_model, nullptr);
      EstimateOptions opts;
      opts.seed = seed;
      json out = json::array();
      for (const auto& e : multiplier_norm_curve(m, parse_p(norm_p), norm_N, opts))
        out.push_back(norm_estimate_to_json(e));
      print(out);
    } else if (mikhlin->parsed()) {
      const AnalyticModel m = resolve_model(mikhlin_model, &mikhlin_set);
      const StarDomain d = build_star_domain(mikhlin_set.resolve(), mikhlin_theta0);
      MikhlinOptions mo;
      mo.grid = mikhlin_grid;
      print(mikhlin_to_json(mikhlin_constant(m, d, mo)));
    } else if (lpc->parsed()) {
      const auto part = partition_from_set(lpc_set.resolve(), lpc_N);
      print(lp_constants_to_json(lp_constants_estimate(part, parse_p(lpc_p), lpc_trials, seed)));
    } else if (exp_run->parsed()) {
      ExperimentConfig cfg = load_config(config_path);
      if (seed_override) cfg.seed = *seed_override;
      std::vector<OutputFormat> fmts;
      for (const auto& f : formats) fmts.push_back(parse_format(f));
      const auto dir = output_dir(out_flag);
      if (stem.empty()) stem = std::filesystem::path(config_path).stem().string();

      std::mutex mu;
      std::vector<CellTiming> timings;
      RunHooks hooks;
      hooks.on_cell = [&](const CellTiming& t) {
        std::lock_guard lock(mu);
        std::cerr << t.kind << " p=" << t.p << " N=" << t.N << " " << t.seconds << " s\n";
        timings.push_back(t);
      };
      const Report rep = run(cfg, hooks);
      for (const auto f : fmts) std::cout << emit(rep, f, dir, stem).string() << "\n";
      std::cout << emit_timings(timings, dir, stem).string() << "\n";
      std::cerr << rep.summary.dump(2) << "\n";
    } else if (convert->parsed()) {
      std::ifstream in(report_in);
      if (!in) throw std::runtime_error("cannot open " + report_in);
      const Report rep = report_from_json(json::parse(in));
      const auto dir = output_dir(out_flag);
      std::cout << emit(rep, parse_format(report_to), dir,
                        std::filesystem::path(report_in).stem().string())
                       .string()
                << "\n";
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
