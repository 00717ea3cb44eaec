// tlo: optimize, evaluate, plot and cross-check wire arrangements.
//
// Exit codes: 0 ok, 1 runtime or I/O failure, 2 usage or config error.

#include "tlo/config.hpp"
#include "tlo/oracle.hpp"
#include "tlo/report.hpp"
#include "tlo/svg.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Config, design or report problems; the message already names the file.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

[[noreturn]] void rethrow_in(const std::string& path, const std::exception& e) {
  throw UsageError(fmt::format("{}: {}", path, e.what()));
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot open {} for writing", path.string()));
  out << content;
  if (!out.flush()) throw IoError(fmt::format("write to {} failed", path.string()));
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError(fmt::format("cannot create directory {}", dir.string()));
}

tlo::ScenarioConfig load(const std::string& path) {
  std::string text;
  try {
    text = tlo::read_text_file(path);
  } catch (const std::exception& e) {
    throw IoError(e.what());
  }
  try {
    return tlo::parse_config(text);
  } catch (const tlo::ConfigError& e) {
    rethrow_in(path, e);
  }
}

struct OptimizeArgs {
  std::string config, out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> budget;
  std::optional<int> population;
  bool progress = false;
};

int cmd_optimize(const OptimizeArgs& a) {
  tlo::ScenarioConfig config = load(a.config);
  if (a.seed) config.optimizer.seed = *a.seed;
  if (a.budget) config.optimizer.budget = *a.budget;
  if (a.population) config.optimizer.population = *a.population;
  const auto& opt = config.optimizer;
  if (opt.population < 2 || opt.population % 2 != 0)
    throw UsageError("population must be even and at least 2");
  if (opt.budget < static_cast<std::size_t>(opt.population))
    throw UsageError("budget must be at least the population size");
  ensure_dir(a.out);

  tlo::NsgaOptions options;
  options.population = opt.population;
  options.budget = opt.budget;
  options.seed = opt.seed;
  tlo::ProgressCallback progress;
  if (a.progress) progress = [](const tlo::GenerationRecord& r) { std::cout << tlo::progress_json(r).dump() << '\n' << std::flush; };

  const auto start = std::chrono::steady_clock::now();
  const tlo::ParetoArchive archive = tlo::evolve(config.scenario(), config.layout(), options, progress);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::ostringstream csv;
  tlo::write_samples_csv(csv, archive);
  write_file(fs::path(a.out) / "samples.csv", csv.str());
  write_file(fs::path(a.out) / "pareto.json", tlo::pareto_json(archive, config).dump(2) + "\n");

  const json meta = {{"schema_version", tlo::kSchemaVersion},
                     {"seed", opt.seed},
                     {"budget", opt.budget},
                     {"population", opt.population},
                     {"evaluations", archive.evaluations},
                     {"front_size", archive.front.size()},
                     {"threads", tlo::default_threads()},
                     {"timings", {{"optimize_seconds", seconds}}},
                     {"config", tlo::config_to_json(config)}};
  write_file(fs::path(a.out) / "run_meta.json", meta.dump(2) + "\n");
  std::cerr << fmt::format("{} evaluations, front of {}, {:.2f} s -> {}\n", archive.evaluations, archive.front.size(),
                           seconds, a.out);
  return 0;
}

struct EvaluateArgs {
  std::string config, design, out;
  int rays = 64;
};

int cmd_evaluate(const EvaluateArgs& a) {
  const tlo::ScenarioConfig config = load(a.config);
  std::string text;
  try {
    text = tlo::read_text_file(a.design);
  } catch (const std::exception& e) {
    throw IoError(e.what());
  }
  tlo::WireArrangement design;
  try {
    design = tlo::parse_design(text, config);
  } catch (const tlo::ConfigError& e) {
    rethrow_in(a.design, e);
  }
  const json report = tlo::evaluation_report(config, design, {.n_rays = a.rays});
  const std::string body = report.dump(2) + "\n";
  if (a.out.empty())
    std::cout << body;
  else
    write_file(a.out, body);
  return 0;
}

struct PlotArgs {
  std::string report, out;
};

int cmd_plot(const PlotArgs& a) {
  std::string text;
  try {
    text = tlo::read_text_file(a.report);
  } catch (const std::exception& e) {
    throw IoError(e.what());
  }
  const json report = json::parse(text, nullptr, false);
  if (report.is_discarded()) throw UsageError(fmt::format("{}: not valid JSON", a.report));
  std::vector<tlo::SvgFile> files;
  try {
    files = tlo::render_report(report);
  } catch (const std::exception& e) {
    rethrow_in(a.report, e);
  }
  ensure_dir(a.out);
  for (const auto& f : files) write_file(fs::path(a.out) / f.name, f.content);
  std::cerr << fmt::format("wrote {} SVG files to {}\n", files.size(), a.out);
  return 0;
}

struct OracleArgs {
  std::string config;
  int trials = 100;
  std::uint64_t seed = 1;
  double tol = 1e-6;
};

int cmd_oracle(const OracleArgs& a) {
  const tlo::ScenarioConfig config = load(a.config);
  if (config.mode.kind != tlo::ArrangementKind::Constant)
    throw UsageError(fmt::format("{}: oracle requires a constant-mode config", a.config));
  const auto r = tlo::oracle::cross_check(config.scenario(), config.mode.wires, a.trials, a.seed, a.tol);
  const bool pass = r.failures == 0;
  fmt::print("trials: {}\ncomparisons: {}\npruned: {}\nmax |dh|: {:.3e}\nfailures: {} (tol {:g})\n{}\n", r.trials,
             r.comparisons, r.pruned, r.max_diff, r.failures, a.tol, pass ? "PASS" : "FAIL");
  return pass ? 0 : kExitRuntime;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wire arrangement optimizer for planar tendon-driven arms"};
  app.require_subcommand(1);

  OptimizeArgs opt;
  auto* optimize = app.add_subcommand("optimize", "run NSGA-II and write samples.csv, pareto.json, run_meta.json");
  optimize->add_option("--config", opt.config, "scenario config (JSON)")->required();
  optimize->add_option("--out", opt.out, "output directory")->required();
  optimize->add_option("--seed", opt.seed, "RNG seed (overrides config)");
  optimize->add_option("--budget", opt.budget, "evaluation budget (overrides config)");
  optimize->add_option("--population", opt.population, "population size, even (overrides config)");
  optimize->add_flag("--progress", opt.progress, "print one JSON line per generation to stdout");

  EvaluateArgs ev;
  auto* evaluate = app.add_subcommand("evaluate", "score one design and write a report JSON");
  evaluate->add_option("--config", ev.config, "scenario config (JSON)")->required();
  evaluate->add_option("--design", ev.design, "design document (JSON)")->required();
  evaluate->add_option("--out", ev.out, "report path (default: stdout)");
  evaluate->add_option("--rays", ev.rays, "rays per traced polygon")->check(CLI::Range(8, 100000));

  PlotArgs pl;
  auto* plot = app.add_subcommand("plot", "render a report as SVG files");
  plot->add_option("--report", pl.report, "report JSON from `evaluate`")->required();
  plot->add_option("--out", pl.out, "output directory")->required();

  OracleArgs orc;
  auto* oracle = app.add_subcommand("oracle", "cross-check LP h values against exact geometry");
  oracle->add_option("--config", orc.config, "constant-mode scenario config")->required();
  oracle->add_option("--trials", orc.trials, "random designs")->check(CLI::NonNegativeNumber);
  oracle->add_option("--seed", orc.seed, "RNG seed");
  oracle->add_option("--tol", orc.tol, "failure threshold on |dh|")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*optimize) return cmd_optimize(opt);
    if (*evaluate) return cmd_evaluate(ev);
    if (*plot) return cmd_plot(pl);
    if (*oracle) return cmd_oracle(orc);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const tlo::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
