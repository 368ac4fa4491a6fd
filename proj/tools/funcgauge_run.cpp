#include <CLI11.hpp>

#include "funcgauge/cli/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Scenario runner for the gauged functional Schrodinger system"};
  std::string command, config;
  std::vector<std::string> sets;
  std::string out;
  app.add_option("command", command, "stationary | evolve | ir-scan | gauge-check | variational | superposition | "
                                     "microcausality | invariants")
      ->required();
  app.add_option("--config", config, "INI scenario file")->required();
  app.add_option("--set", sets, "override, section.key=value (repeatable)");
  app.add_option("--out", out, "output directory (default: output.directory, then $FUNCGAUGE_OUT)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  return funcgauge::cli::run_scenario(command, config, sets,
                                      out.empty() ? std::nullopt : std::optional<std::string>(out));
}
