#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "clipflow/driver.hpp"

int main(int argc, char** argv) {
  CLI::App app{"clipflow: clipped-arc-field Lenia engine and numerical verifier"};
  app.require_subcommand(1);

  std::string sim_config_path;
  auto* simulate = app.add_subcommand("simulate", "run a configured model, writing frames and metrics");
  simulate->add_option("--config", sim_config_path, "config file (key = value)")->required();

  std::string verify_suite;
  std::string verify_config_path;
  std::uint64_t verify_seed = 0;
  auto* verify = app.add_subcommand("verify", "run a verification suite, printing CHECK lines");
  verify->add_option("suite", verify_suite, "clip, e1, e2, speed, support, monotone, gol_equiv, all")
      ->required();
  verify->add_option("--config", verify_config_path, "config file for system-dependent suites");
  verify->add_option("--seed", verify_seed, "seed for randomized checks");

  std::string conv_config_path;
  int conv_levels = 8;
  auto* converge = app.add_subcommand("converge", "Euler-curve refinement and tangency study");
  converge->add_option("--config", conv_config_path, "config file")->required();
  converge->add_option("--levels", conv_levels, "refine up to 2^levels compositions")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      return clipflow::cmd_simulate(clipflow::parse_config(sim_config_path), std::cout);
    }
    if (verify->parsed()) {
      std::optional<clipflow::SimConfig> cfg;
      if (!verify_config_path.empty()) cfg = clipflow::parse_config(verify_config_path);
      return clipflow::cmd_verify(verify_suite, cfg, verify_seed, std::cout);
    }
    if (converge->parsed()) {
      return clipflow::cmd_converge(clipflow::parse_config(conv_config_path), conv_levels,
                                    std::cout);
    }
  } catch (const clipflow::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return clipflow::kExitIo;
  } catch (const clipflow::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return clipflow::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return clipflow::kExitUsage;
  }
  return clipflow::kExitUsage;
}
