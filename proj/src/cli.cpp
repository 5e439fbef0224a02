#include "windings/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "windings/config.hpp"
#include "windings/experiments.hpp"
#include "windings/format.hpp"
#include "windings/levy_angular.hpp"
#include "windings/report.hpp"
#include "windings/stable_process.hpp"

namespace windings {
namespace {

namespace fs = std::filesystem;

fs::path output_dir(const CliCommand& cmd, const ExperimentConfig& config) {
  if (!cmd.out_dir.empty()) return cmd.out_dir;
  return resolve_output_dir(config);
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open " + path.string());
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

std::string alpha_tag(const std::vector<double>& alphas) {
  std::string s;
  for (std::size_t i = 0; i < alphas.size(); ++i) s += (i ? "-" : "") + format_double(alphas[i]);
  return s;
}

int run_constants(const CliCommand& cmd, std::ostream& out) {
  ExperimentConfig config;
  const auto alphas = cmd.alphas.empty() ? std::vector<double>{0.5, 1.0, 1.5} : cmd.alphas;
  const std::string csv = constants_csv(alphas);
  write_file(output_dir(cmd, config) / ("constants_a" + alpha_tag(alphas) + ".csv"), csv);
  out << csv;
  return kExitOk;
}

int run_simulate(const CliCommand& cmd, std::ostream& out) {
  ExperimentConfig config;
  if (!cmd.config_path.empty()) config = parse_config(cmd.config_path);
  const double alpha = cmd.alphas.empty() ? (config.alphas.empty() ? 1.0 : config.alphas.front()) : cmd.alphas.front();
  const std::uint64_t seed = cmd.seed.value_or(config.seed);
  PathConfig pc;
  pc.horizon = cmd.horizon;
  pc.base_step = cmd.base_step;
  pc.angle_cap = cmd.angle_cap.value_or(config.angle_cap);
  pc.min_step = std::min(config.min_step, pc.base_step);
  pc.max_points = config.max_points;
  auto rng = derive_substream(RngSeed{seed, 0}, 0);
  const auto path = generate_path(StableIndex(alpha), pc, rng);
  std::ostringstream csv;
  write_path_csv(csv, path);
  const fs::path file = output_dir(cmd, config) / ("path_a" + format_double(alpha) + "_s" + std::to_string(seed) + ".csv");
  write_file(file, csv.str());
  out << "wrote " << path.size() << " nodes to " << file.string() << "\n";
  return kExitOk;
}

int run_experiment(const CliCommand& cmd, std::ostream& out, std::ostream& err) {
  ExperimentConfig config;
  if (!cmd.config_path.empty()) config = parse_config(cmd.config_path);
  if (!cmd.alphas.empty()) config.alphas = cmd.alphas;
  if (cmd.seed) config.seed = *cmd.seed;
  if (cmd.replicas) config.replicas = *cmd.replicas;
  if (cmd.workers) config.workers = *cmd.workers;
  config.validate();

  const auto report = run_suite(cmd.suite, config);
  const fs::path dir = output_dir(cmd, config);
  const std::string stem = report_stem(cmd.suite, suite_alphas(cmd.suite, config), config.seed);
  write_file(dir / (stem + ".json"), report_to_json(report));
  write_file(dir / (stem + ".csv"), report_to_csv(report));
  out << format_report(report);
  for (const auto& c : report.checks) {
    err << "timing " << c.id << " alpha=" << format_double(c.alpha) << " " << format_significant(c.runtime_seconds, 4)
        << "s\n";
  }
  out << "reports: " << (dir / stem).string() << ".{json,csv}\n";
  return report.passed() ? kExitOk : kExitChecksFailed;
}

int run_report(const CliCommand& cmd, std::ostream& out) {
  const auto report = report_from_json(read_file(cmd.report_path));
  out << format_report(report);
  return report.passed() ? kExitOk : kExitChecksFailed;
}

}  // namespace

std::string constants_csv(const std::vector<double>& alphas) {
  std::ostringstream csv;
  csv << "alpha,C_nu,K,I,k,r,L_tilde\n";
  for (double a : alphas) {
    const auto t = compute_constants(a);
    csv << format_significant(t.alpha, 12) << ',' << format_significant(t.C_nu, 12) << ','
        << format_significant(t.K, 12) << ',' << format_significant(t.I, 12) << ','
        << format_significant(t.k, 12) << ',' << format_significant(t.r, 12) << ','
        << format_significant(t.L_tilde, 12) << '\n';
  }
  return csv.str();
}

std::optional<CliCommand> parse_command_line(int argc, const char* const* argv, std::ostream& out,
                                             std::ostream& err, int& status) {
  CliCommand cmd;
  CLI::App app{"Windings of planar isotropic stable processes: constants, paths and limit-theorem suites",
               "windings"};
  app.require_subcommand(1, 1);

  auto* constants = app.add_subcommand("constants", "Print and store the constants table (CSV)");
  constants->add_option("--alpha", cmd.alphas, "Stable index in (0, 2); repeatable")->check(CLI::Range(0.0, 2.0));
  constants->add_option("--out", cmd.out_dir, "Output directory");

  auto* simulate = app.add_subcommand("simulate", "Generate one path and write it as CSV");
  simulate->add_option("--alpha", cmd.alphas, "Stable index in (0, 2]; 2 is planar Brownian motion")
      ->check(CLI::Range(0.0, 2.0));
  simulate->add_option("--config", cmd.config_path, "JSON config file")->check(CLI::ExistingFile);
  simulate->add_option("--seed", cmd.seed, "Root seed");
  simulate->add_option("--out", cmd.out_dir, "Output directory");
  simulate->add_option("--horizon", cmd.horizon, "Time horizon")->check(CLI::NonNegativeNumber);
  simulate->add_option("--base-step", cmd.base_step, "Largest step")->check(CLI::PositiveNumber);
  simulate->add_option("--angle-cap", cmd.angle_cap, "Per-step angle target")->check(CLI::Range(1e-6, 3.14159));

  auto* experiment = app.add_subcommand("experiment", "Run a verification suite and write its reports");
  experiment->add_option("--suite", cmd.suite, "Suite name")
      ->required()
      ->check(CLI::IsMember(suite_names()));
  experiment->add_option("--config", cmd.config_path, "JSON config file")->check(CLI::ExistingFile);
  experiment->add_option("--alpha", cmd.alphas, "Override the alpha list; repeatable");
  experiment->add_option("--seed", cmd.seed, "Override the root seed");
  experiment->add_option("--replicas", cmd.replicas, "Override the replica count")->check(CLI::PositiveNumber);
  experiment->add_option("--workers", cmd.workers, "Worker threads (0 = all cores)");
  experiment->add_option("--out", cmd.out_dir, "Output directory");

  auto* report = app.add_subcommand("report", "Pretty-print a stored JSON report");
  report->add_option("file", cmd.report_path, "Report JSON")->required()->check(CLI::ExistingFile);

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    status = kExitOk;
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    status = kExitUsage;
    return std::nullopt;
  }
  for (const auto* sub : {constants, simulate, experiment, report}) {
    if (sub->parsed()) cmd.name = sub->get_name();
  }
  status = kExitOk;
  return cmd;
}

int dispatch(const CliCommand& cmd, std::ostream& out, std::ostream& err) {
  try {
    if (cmd.name == "constants") return run_constants(cmd, out);
    if (cmd.name == "simulate") return run_simulate(cmd, out);
    if (cmd.name == "experiment") return run_experiment(cmd, out, err);
    if (cmd.name == "report") return run_report(cmd, out);
    err << "error: unknown command '" << cmd.name << "'\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitChecksFailed;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  int status = kExitOk;
  const auto cmd = parse_command_line(argc, argv, out, err, status);
  if (!cmd) return status;
  return dispatch(*cmd, out, err);
}

}  // namespace windings
