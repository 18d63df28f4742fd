#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "lochardy/generators.hpp"
#include "lochardy/space_io.hpp"
#include "lochardy/verify.hpp"

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

int gen_space(const std::string& family, std::size_t n, std::uint64_t seed, const std::string& out) {
  if (n == 0) throw lochardy::Error("--n must be at least 1");
  const std::string doc = lochardy::space_to_json(lochardy::generate_space(family, n, seed));
  if (out.empty() || out == "-") {
    std::cout << doc << '\n';
    return 0;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw lochardy::Error("cannot write '" + out + "'");
  f << doc << '\n';
  return 0;
}

int run(const lochardy::ExperimentConfig& cfg) {
  const lochardy::Report rep = lochardy::run_checks(cfg);
  if (cfg.out.empty() || cfg.out == "-") {
    std::cout << lochardy::report_csv(rep);
  } else {
    lochardy::write_report(rep);
  }
  const std::size_t bad = rep.violations();
  std::cerr << rep.rows.size() << " rows, " << bad << " exact violations\n";
  return bad ? kExitViolation : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-space checks for local Hardy and bmo inequalities"};
  app.require_subcommand(1);

  std::string family = "cycle", out;
  std::size_t n = 6;
  std::uint64_t seed = 1;
  auto* gen = app.add_subcommand("gen-space", "Write a generated space as JSON");
  gen->add_option("--family", family, "cycle | path | random-geometric | grid")
      ->check(CLI::IsMember({"cycle", "path", "random-geometric", "grid"}));
  gen->add_option("--n", n, "Number of points")->required();
  gen->add_option("--seed", seed, "Seed (random-geometric only)");
  gen->add_option("--out", out, "Output path; stdout when omitted");

  lochardy::ExperimentConfig cfg;
  std::string config_path, run_family, space_path;
  std::vector<std::size_t> sizes;
  std::vector<std::string> checks;
  auto* run_cmd = app.add_subcommand("run", "Run named checks and emit a CSV report with a JSON sidecar");
  auto* config_opt = run_cmd->add_option("--config", config_path, "JSON experiment config");
  auto* check_opt = run_cmd->add_option("--check", checks, "Check name (repeatable); 'all' selects every check");
  run_cmd->add_option("--space", space_path, "Space file")->check(CLI::ExistingFile);
  run_cmd->add_option("--family", run_family, "Generated family instead of a space file")
      ->check(CLI::IsMember({"cycle", "path", "random-geometric", "grid"}));
  run_cmd->add_option("--n", sizes, "Sizes for --family (repeatable)");
  run_cmd->add_option("--trials", cfg.trials, "Trials per size");
  run_cmd->add_option("--seed", cfg.seed, "Base seed");
  run_cmd->add_option("--out", cfg.out, "CSV path (sidecar at <out>.json); stdout when omitted");
  run_cmd->add_option("--threads", cfg.threads, "Worker threads; 0 uses every core");
  run_cmd->add_flag("--random-masses", cfg.random_masses, "Draw masses in [0.5, 2] per trial");
  run_cmd->add_flag("--timing", cfg.timing, "Add a runtime-ms column");
  config_opt->excludes(check_opt);
  run_cmd->add_flag_callback("--list", [] {
    for (const auto& name : lochardy::check_names()) std::cout << name << '\n';
    std::exit(0);
  }, "List check names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*gen) return gen_space(family, n, seed, out);

    if (!config_path.empty()) {
      lochardy::ExperimentConfig file_cfg = lochardy::load_config(config_path);
      // command-line output and timing settings override the file
      if (!cfg.out.empty()) file_cfg.out = cfg.out;
      file_cfg.timing = file_cfg.timing || cfg.timing;
      if (cfg.threads) file_cfg.threads = cfg.threads;
      return run(file_cfg);
    }
    if (checks.empty()) {
      std::cerr << "run: give --config or --check\n";
      return kExitUsage;
    }
    if (checks.size() == 1 && checks[0] == "all") checks = lochardy::check_names();
    for (const auto& c : checks) {
      if (!lochardy::is_check_name(c)) {
        std::cerr << "unknown check '" << c << "'; use run --list\n";
        return kExitUsage;
      }
    }
    cfg.checks = checks;
    if (!space_path.empty() && !run_family.empty()) {
      std::cerr << "run: --space and --family are exclusive\n";
      return kExitUsage;
    }
    if (!space_path.empty()) {
      cfg.family = "file";
      cfg.space_file = space_path;
    } else if (!run_family.empty()) {
      cfg.family = run_family;
    } else {
      std::cerr << "run: give --space or --family\n";
      return kExitUsage;
    }
    if (!sizes.empty()) cfg.sizes = sizes;
    return run(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
