// Command-line front end: steering and classification experiments, property
// verification suites and approximation ladders, all driven by JSON configs.

#include <CLI11.hpp>

#include "enscon/cli_commands.hpp"
#include "enscon/flow.hpp"
#include "enscon/version.hpp"

namespace {

enscon::Json load_config(const std::string& path) {
  return enscon::Json::parse(enscon::read_file(path));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ensemble-control experiments"};
  app.set_version_flag("--version", enscon::kVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed_override = 0;
  bool seed_set = false;
  int threads = 1;
  app.add_option("--out", out_dir, "artifact output directory")->capture_default_str();
  app.add_option("--threads", threads, "worker threads for per-member maps")
      ->capture_default_str();
  auto* seed_opt = app.add_option("--seed", seed_override, "override the config seed");

  auto* steer = app.add_subcommand("steer", "optimize an ensemble-steering problem");
  steer->add_option("--config", config_path, "scenario JSON")->required();
  auto* train = app.add_subcommand("train", "classification via the product construction");
  train->add_option("--config", config_path, "scenario JSON")->required();
  auto* approx = app.add_subcommand("approx", "approximation ladders");
  approx->add_option("--config", config_path, "ladder JSON")->required();
  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run a property suite");
  verify->add_option("suite", suite, "geometry|fields|approximation|dynamics|all")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : enscon::kExitUsage;
  }
  seed_set = seed_opt->count() > 0;
  enscon::thread_count() = std::max(1, threads);

  try {
    if (verify->parsed()) return enscon::cmd_verify(suite, out_dir);

    enscon::Json config = load_config(config_path);
    if (seed_set) config["seed"] = seed_override;
    if (steer->parsed()) return enscon::cmd_steer(config, out_dir);
    if (train->parsed()) return enscon::cmd_train(config, out_dir);
    if (approx->parsed()) return enscon::cmd_approx(config, out_dir);
  } catch (const enscon::Json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return enscon::kExitUsage;
  } catch (const enscon::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return enscon::kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return enscon::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return enscon::kExitNoConverge;
  }
  return enscon::kExitUsage;
}
