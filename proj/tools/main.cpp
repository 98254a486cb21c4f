// gmacwt: command-line front end for the delta-secret rate region toolkit.
// Exit codes: 0 success, 1 usage/config error, 2 infeasible request,
// 3 size-cap refusal.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gmacwt/errors.hpp"
#include "gmacwt/io.hpp"
#include "gmacwt/region.hpp"
#include "gmacwt/rng.hpp"
#include "gmacwt/simulator.hpp"
#include "gmacwt/split.hpp"
#include "gmacwt/tdma.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string iso_timestamp() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buffer[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buffer, sizeof(buffer), "%FT%TZ", &tm);
  return buffer;
}

std::vector<double> parse_double_list(const std::string& text,
                                      const char* what) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    try {
      values.push_back(std::stod(token));
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(what) + ": bad number \"" +
                                  token + "\"");
    }
  }
  if (values.empty())
    throw std::invalid_argument(std::string(what) + ": empty list");
  return values;
}

std::string delta_token(double delta) {
  std::string token = gmacwt::format_sig9(delta);
  for (char& c : token)
    if (c == '.') c = 'p';
  return token;
}

struct ManifestWriter {
  gmacwt::RunManifest manifest;
  fs::path out_dir;

  ManifestWriter(int argc, char** argv, const std::string& config,
                 std::uint64_t seed, const std::string& out) {
    std::ostringstream cmd;
    for (int i = 0; i < argc; ++i) cmd << (i ? " " : "") << argv[i];
    manifest.command = cmd.str();
    manifest.config_path = config;
    manifest.seed = seed;
    manifest.tool_version = gmacwt::kToolVersion;
    manifest.timestamp = iso_timestamp();
    out_dir = out;
    fs::create_directories(out_dir);
  }

  std::string emit(const std::string& name, const std::string& contents) {
    const fs::path path = out_dir / name;
    gmacwt::write_text_file(path.string(), contents);
    manifest.outputs.push_back(path.string());
    return path.string();
  }

  void finish() {
    const fs::path path = out_dir / "manifest.json";
    gmacwt::write_text_file(
        path.string(), gmacwt::manifest_to_json(manifest).dump(2) + "\n");
  }
};

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
};

int run_region(int argc, char** argv, const CommonArgs& common,
               const std::string& delta_list, std::uint64_t seed) {
  const gmacwt::ChannelConfig cfg =
      gmacwt::load_channel_config(common.config_path);
  ManifestWriter writer(argc, argv, common.config_path, seed, common.out_dir);
  bool vertices_refused = false;
  std::string refusal;
  for (double delta : parse_double_list(delta_list, "--delta")) {
    const gmacwt::RateRegion region = gmacwt::build_gaussian_region(cfg, delta);
    const std::string token = delta_token(delta);
    writer.emit("region_delta" + token + ".json",
                gmacwt::region_to_json(region).dump(2) + "\n");
    try {
      const std::vector<gmacwt::RatePoint> vertices =
          gmacwt::enumerate_vertices(region);
      writer.emit("vertices_delta" + token + ".csv",
                  gmacwt::vertices_to_csv(vertices, cfg.num_users));
    } catch (const gmacwt::SizeCapError& e) {
      vertices_refused = true;
      refusal = e.what();
    }
  }
  writer.finish();
  if (vertices_refused) {
    std::cerr << "size cap: " << refusal
              << " (halfspace files were still written)\n";
    return 3;
  }
  return 0;
}

int run_sum_sweep(int argc, char** argv, const CommonArgs& common,
                  double delta, const std::string& grid_list,
                  std::uint64_t seed) {
  gmacwt::ChannelConfig cfg = gmacwt::load_channel_config(common.config_path);
  const std::vector<double> grid =
      parse_double_list(grid_list, "--sigma2-grid");
  ManifestWriter writer(argc, argv, common.config_path, seed, common.out_dir);
  std::ostringstream csv;
  csv << "sigma2_ratio,c_sum,asymptote\n";
  for (double sigma2 : grid) {
    if (sigma2 < 0.0)
      throw std::invalid_argument("--sigma2-grid: values must be >= 0");
    gmacwt::ChannelConfig swept = cfg;
    swept.sigma2_sq = sigma2;
    const double ratio = sigma2 / cfg.sigma1_sq;
    csv << gmacwt::format_sig9(ratio) << ','
        << gmacwt::format_sig9(gmacwt::sum_capacity(swept, delta)) << ','
        << gmacwt::format_sig9(0.5 * std::log2(1.0 + ratio)) << '\n';
  }
  writer.emit("sum_sweep.csv", csv.str());
  writer.finish();
  return 0;
}

int run_tdma(int argc, char** argv, const CommonArgs& common, double delta,
             int samples, int grid, std::uint64_t seed) {
  const gmacwt::ChannelConfig cfg =
      gmacwt::load_channel_config(common.config_path);
  ManifestWriter writer(argc, argv, common.config_path, seed, common.out_dir);
  const gmacwt::TdmaOptimum opt = gmacwt::tdma_sum_optimize(cfg, delta, grid);
  ordered_json j;
  j["delta"] = delta;
  j["alpha"] = opt.alpha.alpha;
  j["sum_rate"] = opt.sum_rate;
  j["sum_capacity"] = gmacwt::sum_capacity(cfg, delta);
  writer.emit("tdma_optimum.json", j.dump(2) + "\n");
  if (cfg.num_users == 2) {
    writer.emit("tdma_boundary.csv",
                gmacwt::tdma_boundary_csv(cfg, delta, samples));
  } else {
    std::cerr << "note: boundary sampling is defined for K = 2 only; "
                 "optimum written\n";
  }
  writer.finish();
  return 0;
}

int run_split(int argc, char** argv, const CommonArgs& common, double delta,
              const std::string& point_list, double margin, long n,
              std::uint64_t seed) {
  const gmacwt::ChannelConfig cfg =
      gmacwt::load_channel_config(common.config_path);
  const gmacwt::RatePoint point(parse_double_list(point_list, "--point"));
  gmacwt::SplitPlan plan = gmacwt::solve_split(cfg, delta, point, margin);
  if (n > 0) plan = gmacwt::integerize(plan, n);
  ManifestWriter writer(argc, argv, common.config_path, seed, common.out_dir);
  writer.emit("plan.json", gmacwt::split_plan_to_json(plan).dump(2) + "\n");
  writer.finish();
  return 0;
}

int run_simulate(int argc, char** argv, const CommonArgs& common, double delta,
                 const std::string& point_list, const std::string& plan_path,
                 long n, long trials, double margin, std::uint64_t cap,
                 std::uint64_t seed) {
  const gmacwt::ChannelConfig cfg =
      gmacwt::load_channel_config(common.config_path);
  gmacwt::SplitPlan plan;
  if (!plan_path.empty()) {
    plan = gmacwt::load_split_plan(plan_path);
  } else {
    const gmacwt::RatePoint point(parse_double_list(point_list, "--point"));
    plan = gmacwt::solve_split(cfg, delta, point, margin);
  }
  if (plan.n != n) plan = gmacwt::integerize(plan, n);
  const gmacwt::PowerSplit split = gmacwt::default_power_split(plan);

  gmacwt::SimParams params;
  params.n = n;
  params.trials = trials;
  params.seed = gmacwt::derive_seed(seed, 0x51Dull);
  params.candidate_cap = cap;
  const gmacwt::SimReport report =
      gmacwt::run_trials(cfg, plan, split, params);

  ManifestWriter writer(argc, argv, common.config_path, seed, common.out_dir);
  writer.emit("plan.json", gmacwt::split_plan_to_json(plan).dump(2) + "\n");
  writer.emit("sim_report.json",
              gmacwt::sim_report_to_json(report).dump(2) + "\n");
  writer.finish();
  std::cout << "trials " << report.trials << ", receiver errors "
            << report.receiver_block_errors << ", eve errors "
            << report.eve_aggregate_errors << "\n";
  return 0;
}

int run_oracle(int argc, char** argv, const std::string& spec_path,
               double delta, const std::string& out_dir, std::uint64_t seed) {
  const gmacwt::DiscreteWiretapSpec spec = gmacwt::load_wiretap_spec(spec_path);
  const gmacwt::EquivocationReport report = gmacwt::exact_equivocation(spec);
  ManifestWriter writer(argc, argv, spec_path, seed, out_dir);
  ordered_json j = gmacwt::equivocation_report_to_json(report, spec.num_users);
  j["required_delta"] = delta;
  j["achieves_delta"] = report.min_delta >= delta - 1e-12;
  writer.emit("equivocation.json", j.dump(2) + "\n");
  writer.finish();
  std::cout << "min delta " << report.min_delta << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "compute, optimize and stress-test delta-secret rate regions of the "
      "Gaussian multiple-access wiretap channel"};
  app.set_version_flag("--version", gmacwt::kToolVersion);
  app.require_subcommand(1);

  std::uint64_t seed = 12345;
  app.add_option("--seed", seed,
                 "global seed; subcommands derive their own substreams");

  CommonArgs region_args;
  std::string region_deltas = "1";
  CLI::App* region_cmd =
      app.add_subcommand("region", "emit region halfspaces and vertices");
  region_cmd->add_option("--config", region_args.config_path, "channel config JSON")
      ->required();
  region_cmd->add_option("--delta", region_deltas,
                         "comma-separated secrecy levels");
  region_cmd->add_option("--out", region_args.out_dir, "output directory");

  CommonArgs sweep_args;
  double sweep_delta = 1.0;
  std::string sweep_grid;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sum-sweep", "sum capacity vs. eavesdropper noise ratio");
  sweep_cmd->add_option("--config", sweep_args.config_path)->required();
  sweep_cmd->add_option("--delta", sweep_delta);
  sweep_cmd->add_option("--sigma2-grid", sweep_grid,
                        "comma-separated sigma2^2 values")
      ->required();
  sweep_cmd->add_option("--out", sweep_args.out_dir);

  CommonArgs tdma_args;
  double tdma_delta = 1.0;
  int tdma_samples = 201;
  int tdma_grid = 256;
  CLI::App* tdma_cmd = app.add_subcommand(
      "tdma", "time-division boundary samples and optimal share");
  tdma_cmd->add_option("--config", tdma_args.config_path)->required();
  tdma_cmd->add_option("--delta", tdma_delta);
  tdma_cmd->add_option("--samples", tdma_samples);
  tdma_cmd->add_option("--grid", tdma_grid, "initial grid resolution");
  tdma_cmd->add_option("--out", tdma_args.out_dir);

  CommonArgs split_args;
  double split_delta = 1.0;
  std::string split_point;
  double split_margin = 0.0;
  long split_n = 0;
  CLI::App* split_cmd = app.add_subcommand(
      "split", "solve the secret/open/randomization rate split");
  split_cmd->add_option("--config", split_args.config_path)->required();
  split_cmd->add_option("--delta", split_delta);
  split_cmd->add_option("--point", split_point, "rate point R1,R2,...")
      ->required();
  split_cmd->add_option("--margin", split_margin, "wiretap margin in bits");
  split_cmd->add_option("--n", split_n, "integerize at this blocklength");
  split_cmd->add_option("--out", split_args.out_dir);

  CommonArgs sim_args;
  double sim_delta = 1.0;
  std::string sim_point, sim_plan;
  long sim_n = 0, sim_trials = 200;
  double sim_margin = 0.15;
  std::uint64_t sim_cap = 1ull << 20;
  CLI::App* sim_cmd =
      app.add_subcommand("simulate", "Monte Carlo decodability trials");
  sim_cmd->add_option("--config", sim_args.config_path)->required();
  sim_cmd->add_option("--delta", sim_delta);
  sim_cmd->add_option("--point", sim_point, "rate point R1,R2,...");
  sim_cmd->add_option("--plan", sim_plan, "split plan JSON (overrides --point)");
  sim_cmd->add_option("--n", sim_n, "blocklength")->required();
  sim_cmd->add_option("--trials", sim_trials);
  sim_cmd->add_option("--margin", sim_margin, "wiretap margin in bits");
  sim_cmd->add_option("--cap", sim_cap, "joint candidate cap");
  sim_cmd->add_option("--out", sim_args.out_dir);

  std::string oracle_spec, oracle_out = ".";
  double oracle_delta = 1.0;
  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle", "exact equivocation of a discrete wiretap spec");
  oracle_cmd->add_option("--spec", oracle_spec, "wiretap spec JSON")
      ->required();
  oracle_cmd->add_option("--delta", oracle_delta);
  oracle_cmd->add_option("--out", oracle_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (region_cmd->parsed())
      return run_region(argc, argv, region_args, region_deltas, seed);
    if (sweep_cmd->parsed())
      return run_sum_sweep(argc, argv, sweep_args, sweep_delta, sweep_grid,
                           seed);
    if (tdma_cmd->parsed())
      return run_tdma(argc, argv, tdma_args, tdma_delta, tdma_samples,
                      tdma_grid, seed);
    if (split_cmd->parsed())
      return run_split(argc, argv, split_args, split_delta, split_point,
                       split_margin, split_n, seed);
    if (sim_cmd->parsed()) {
      if (sim_plan.empty() && sim_point.empty())
        throw std::invalid_argument("simulate: provide --point or --plan");
      return run_simulate(argc, argv, sim_args, sim_delta, sim_point, sim_plan,
                          sim_n, sim_trials, sim_margin, sim_cap, seed);
    }
    if (oracle_cmd->parsed())
      return run_oracle(argc, argv, oracle_spec, oracle_delta, oracle_out,
                        seed);
  } catch (const gmacwt::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 2;
  } catch (const gmacwt::SizeCapError& e) {
    std::cerr << "size cap: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
