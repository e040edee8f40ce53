#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "qdf/runner.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  bool seed_set = false;
  double budget = 0.0;
  bool budget_set = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "JSON config file")
      ->envname("QDF_CONFIG");
  cmd->add_option("--out-dir", opts.out_dir, "output directory")
      ->envname("QDF_OUT_DIR");
  cmd->add_option("--seed", opts.seed, "seed override")
      ->envname("QDF_SEED")
      ->each([&](const std::string&) { opts.seed_set = true; });
  cmd->add_option("--budget", opts.budget, "optimizer budget multiplier")
      ->envname("QDF_BUDGET")
      ->each([&](const std::string&) { opts.budget_set = true; });
}

int run(const std::string& name, const CommonOpts& opts) {
  nlohmann::json config = nlohmann::json::object();
  if (!opts.config_path.empty()) {
    std::ifstream in(opts.config_path);
    if (!in) {
      std::cerr << "cannot open config file: " << opts.config_path << "\n";
      return qdf::kConfigError;
    }
    try {
      in >> config;
    } catch (const nlohmann::json::exception& e) {
      std::cerr << "config parse error: " << e.what() << "\n";
      return qdf::kConfigError;
    }
  }
  if (opts.seed_set) config["seed"] = opts.seed;
  if (opts.budget_set) config["budget"] = opts.budget;

  const qdf::RunReport rep = qdf::run_command(name, config);
  qdf::write_report(rep, opts.out_dir, name);
  if (!rep.error.empty()) std::cerr << name << ": " << rep.error << "\n";
  std::cout << name << ": " << rep.checks_passed << " passed, " << rep.checks_failed
            << " failed (" << rep.wall_seconds << " s), reports in " << opts.out_dir
            << "\n";
  return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"de Finetti / mean-field verification harness"};
  app.require_subcommand(1);

  CommonOpts info_opts, definetti_opts, meanfield_opts;
  auto* info = app.add_subcommand("verify-info", "entropic property suite");
  add_common(info, info_opts);
  auto* definetti = app.add_subcommand("verify-definetti", "de Finetti bound checks");
  add_common(definetti, definetti_opts);
  auto* meanfield = app.add_subcommand("meanfield", "lattice mean-field harness");
  add_common(meanfield, meanfield_opts);

  CLI11_PARSE(app, argc, argv);

  if (info->parsed()) return run("verify-info", info_opts);
  if (definetti->parsed()) return run("verify-definetti", definetti_opts);
  return run("meanfield", meanfield_opts);
}
