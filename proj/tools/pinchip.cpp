#include <iostream>

#include <CLI11.hpp>

#include "pinchip/app.hpp"

int main(int argc, char** argv) {
  namespace app = pinchip::app;
  app::Options opt;
  CLI::App cli{"Interconnect design calculator for flip-chip qubit arrays"};
  cli.set_version_flag("--version", std::string(pinchip::version));
  cli.require_subcommand(1, 1);

  auto common = [&](CLI::App* sub, bool config_required) {
    auto* c = sub->add_option("-c,--config", opt.config_path, "design config (JSON)");
    if (config_required) c->required()->check(CLI::ExistingFile);
    else c->check(CLI::ExistingFile);
    sub->add_option("-o,--out", opt.out_dir, "directory for artifacts and the run report");
    sub->add_option("--materials", opt.materials_path,
                    std::string("materials catalog (JSON); overrides $") + app::materials_env_var);
    sub->add_flag("--report", opt.print_report, "print the run report JSON instead of the summary");
  };

  auto* scale = cli.add_subcommand("scale", "qubit and wire counts per architecture");
  common(scale, true);
  auto* impedance = cli.add_subcommand("impedance", "coax and CPW line impedances");
  common(impedance, true);
  auto* rf = cli.add_subcommand("rf", "S-parameters of the signal path");
  common(rf, true);
  auto* layout = cli.add_subcommand("layout", "interposer geometry, design-rule check, process checklist");
  common(layout, true);
  layout->add_option("-f,--format", opt.format, "layout export format")->check(CLI::IsMember({"svg", "json"}));
  layout->add_option("--bond-mode", opt.bond_mode, "pin-to-pad bonding mode")
      ->check(CLI::IsMember({"spherical", "conical"}));
  auto* budget = cli.add_subcommand("budget", "per-stage heat load and cooling budget");
  common(budget, true);
  auto* sweep = cli.add_subcommand("sweep", "run declared parameter sweeps");
  common(sweep, true);
  sweep->add_option("-s,--sweep", opt.sweep, "name of the sweep to run (default: all)");
  auto* check = cli.add_subcommand("paper-check", "recompute the reference design figures");
  common(check, false);
  check->add_option("--seed", opt.seed, "seed for randomized spot checks");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? 0 : app::exit_validation;
  }
  opt.command = cli.get_subcommands().front()->get_name();
  return app::run(opt, std::cout, std::cerr);
}
