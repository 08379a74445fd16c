// finphase: sweeps dimensions and states through the library and writes the
// resulting tables as CSV or JSON.
//
// Exit status: 0 on success, 2 for invalid usage or configuration,
// 3 for a numerical failure, 4 for an output error.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "finphase/cli/run.hpp"
#include "json.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitOutput = 4;

struct FlagSpec {
  const char* key;
  const char* help;
};

const FlagSpec kFlags[] = {
    {"n", "dimension range start[:stop[:step]] of odd n >= 3"},
    {"state", "vacuum | coherent:k,t | basis-u:a | basis-v:b | mixed | random"},
    {"seed", "seed for --state random"},
    {"hbar", "reduced Planck constant (default 1)"},
    {"delta", "scaling exponent in [0, 2] (default 1)"},
    {"preset", "planck-d0 | planck-d1 | planck-d2 | scaled"},
    {"scale-s", "q0 = s L_P for the scaled preset"},
    {"out", "output path (default: standard output)"},
    {"format", "csv | json"},
    {"family", "bound family: rs-qp | massar-spindel | sincos | gup"},
    {"t", "evolution time"},
    {"t0", "initial time"},
    {"mode", "propagator: exact | series:<k>"},
    {"order", "GUP truncation order: 2 | 4"},
    {"method", "Wigner route: auto | closed | trace"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete phase-space toolkit: kernels, Wigner functions, dynamics and "
               "uncertainty bounds on odd-dimensional Hilbert spaces."};
  std::string command;
  std::string config_path;
  app.add_option("command", command,
                 "kernel | wigner | marginals | evolve | bound | table1 | fig1 | fig2 | "
                 "figA1 | figB1")
      ->required();
  app.add_option("--config", config_path, "JSON file of options; flags override it");
  std::vector<std::string> values(std::size(kFlags));
  std::vector<CLI::Option*> options;
  for (std::size_t i = 0; i < std::size(kFlags); ++i) {
    options.push_back(app.add_option(std::string("--") + kFlags[i].key, values[i], kFlags[i].help));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  finphase::cli::RunConfig config;
  try {
    finphase::cli::OptionMap opts;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw finphase::ValidationError("--config: cannot read '" + config_path + "'");
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(in);
      } catch (const nlohmann::json::parse_error& e) {
        throw finphase::ValidationError("--config: " + std::string(e.what()));
      }
      opts = finphase::cli::options_from_json(j);
    }
    for (std::size_t i = 0; i < options.size(); ++i) {
      if (options[i]->count() > 0) opts[kFlags[i].key] = values[i];
    }
    opts["command"] = command;
    config = finphase::cli::make_config(opts);
  } catch (const std::invalid_argument& e) {
    std::cerr << "finphase: " << e.what() << "\n" << "run 'finphase --help' for usage\n";
    return kExitUsage;
  }

  try {
    const finphase::cli::ResultTable table = finphase::cli::run(config);
    if (config.out_path.empty()) {
      finphase::cli::write_table(table, config.format, std::cout);
    } else {
      finphase::cli::export_table(table, config.format, config.out_path);
    }
  } catch (const finphase::cli::ExportError& e) {
    std::cerr << "finphase: output error: " << e.what() << "\n";
    return kExitOutput;
  } catch (const finphase::NumericalError& e) {
    std::cerr << "finphase: numerical failure in module '" << e.module() << "': " << e.what()
              << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "finphase: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "finphase: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
