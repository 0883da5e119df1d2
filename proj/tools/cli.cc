#include "cli.h"

#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nashzero/catalog.h"
#include "nashzero/experiment.h"

namespace nashzero {

namespace {

std::string Joined(const std::vector<std::string>& items) {
  std::string out;
  for (const std::string& item : items) {
    if (!out.empty()) out += ", ";
    out += item;
  }
  return out;
}

// Reads `key = value` files whose bare keys belong to the run subcommand.
class RunConfig : public CLI::ConfigBase {
 public:
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    std::vector<CLI::ConfigItem> items = CLI::ConfigBase::from_config(input);
    for (CLI::ConfigItem& item : items) {
      if (item.parents.empty()) item.parents = {"run"};
    }
    return items;
  }
};

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Zeroth-order Nash equilibrium learning with Gaussian "
               "one-point and two-point payoff estimators."};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.config_formatter(std::make_shared<RunConfig>());
  app.set_config("--config", "",
                 "Read run options from a key = value file (a .meta sidecar "
                 "works)");
  app.allow_config_extras(CLI::config_extras_mode::ignore);

  // run
  ExperimentConfig run_config;
  std::string run_mode = "one-point";
  std::optional<std::size_t> run_threads;
  CLI::App* run = app.add_subcommand(
      "run", "Simulate an ensemble of learning runs and write a CSV of "
             "squared distances to the equilibrium.");
  run->fallthrough();
  run->add_option("--game", run_config.game, "Catalog game")
      ->check(CLI::IsMember(CatalogNames()))
      ->capture_default_str();
  run->add_option("--mode", run_mode, "one-point or two-point")
      ->check(CLI::IsMember({"one-point", "two-point", "1", "2"}))
      ->capture_default_str();
  run->add_option("--c", run_config.c, "Step size gamma_t = c / t")
      ->capture_default_str();
  run->add_option("--a", run_config.a, "Exploration radius scale")
      ->capture_default_str();
  run->add_option("--s", run_config.s,
                  "Two-point radius exponent, sigma_t = a / t^s (s >= 1)")
      ->capture_default_str();
  run->add_option("--iterations,-T", run_config.iterations, "Horizon T")
      ->capture_default_str();
  run->add_option("--runs,-R", run_config.num_runs, "Independent runs")
      ->capture_default_str();
  run->add_option("--seed", run_config.seed, "Root seed")
      ->capture_default_str();
  run->add_option("--checkpoints", run_config.checkpoints,
                  "Geometric checkpoints per run (0: ~100 per decade)")
      ->capture_default_str();
  run->add_option("--threads", run_threads,
                  "Worker threads (default: NASHZERO_THREADS, else all "
                  "cores)");
  run->add_option("--out,-o", run_config.output_path, "Output CSV path")
      ->capture_default_str();

  // rate
  std::string rate_input;
  double rate_window = 0.5;
  std::optional<std::string> rate_report;
  CLI::App* rate = app.add_subcommand(
      "rate", "Fit the log-log convergence slope of a run CSV.");
  rate->add_option("--in,-i", rate_input, "Run CSV")->required();
  rate->add_option("--window", rate_window,
                   "Fit over t in [window * T, T]")
      ->capture_default_str();
  rate->add_option("--out,-o", rate_report,
                   "Report path (default: <input>.rate)");

  // verify
  std::string verify_game = "example1_wide";
  std::string verify_suite;
  VerifyOptions verify_options;
  std::vector<double> verify_state;
  CLI::App* verify = app.add_subcommand(
      "verify", "Run property checks on a catalog game.");
  verify->add_option("--game", verify_game, "Catalog game")
      ->check(CLI::IsMember(CatalogNames()))
      ->capture_default_str();
  verify->add_option("--suite", verify_suite, "Check suite")
      ->check(CLI::IsMember(VerifySuiteNames()))
      ->required();
  verify->add_option("--samples", verify_options.samples,
                     "Monte-Carlo draws per estimate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--seed", verify_options.seed, "Root seed")
      ->capture_default_str();
  verify->add_option("--state", verify_state,
                     "Comma-separated joint state for the lemma2 suite")
      ->delimiter(',');

  CLI::App* list =
      app.add_subcommand("list", "List catalog games and verify suites.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*run) {
    run_config.mode = *ParseFeedbackMode(run_mode);
    try {
      run_config.threads = ResolveThreads(run_threads);
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << '\n';
      return kExitUsage;
    }
    return CmdRun(run_config, out, err);
  }
  if (*rate) {
    return CmdRate(rate_input, rate_window, rate_report, out, err);
  }
  if (*verify) {
    if (!verify_state.empty()) {
      const CatalogEntry entry = MakeCatalogEntry(verify_game);
      if (verify_state.size() != entry.game.joint_dim()) {
        err << "error: --state needs " << entry.game.joint_dim()
            << " values\n";
        return kExitUsage;
      }
      verify_options.state = entry.game.MakePoint(verify_state);
    }
    return CmdVerify(verify_game, verify_suite, verify_options, out, err);
  }
  if (*list) {
    out << "games: " << Joined(CatalogNames()) << '\n';
    out << "suites: " << Joined(VerifySuiteNames()) << '\n';
    return kExitOk;
  }
  return kExitUsage;
}

}  // namespace nashzero
