// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <exception>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "langevin1d/commands.hpp"

int main(int argc, char **argv)
{
  using namespace langevin1d;
  CLI::App app{"1D modified Langevin noise toolkit: Purcell sweeps, identity checks, oracles"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  std::string config_path, case_name, out_path;
  auto add = [&](const std::string &name, const std::string &help, bool sweep_options)
  {
    CLI::App *sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "configuration file")->required();
    if (sweep_options)
    {
      sub->add_option("--case", case_name, "case preset")
          ->check(CLI::IsMember({"1A", "1B", "2A", "2B", "vacuum"}));
      sub->add_option("--out", out_path, "output CSV path");
    }
    return sub;
  };
  CLI::App *sweep_cmd = add("sweep", "Purcell factor sweep", true);
  CLI::App *ident_cmd = add("check-identities", "Green-operator identity checks", false);
  CLI::App *oracle_cmd = add("oracle-compare", "FEM against the transfer-matrix oracle", false);
  CLI::App *modes_cmd = add("modes", "closed-box eigenmode decomposition", true);

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  RunConfig config;
  try
  {
    config = load_config(config_path, case_name);
    if (!out_path.empty())
    {
      config.output.path = out_path;
    }
  }
  catch (const std::exception &e)
  {
    std::cerr << e.what() << '\n';
    return kExitConfig;
  }

  std::function<int(const RunConfig &, std::ostream &)> command;
  if (sweep_cmd->parsed()) command = cmd_sweep;
  else if (ident_cmd->parsed()) command = cmd_check_identities;
  else if (oracle_cmd->parsed()) command = cmd_oracle_compare;
  else if (modes_cmd->parsed()) command = cmd_modes;

  try
  {
    return command(config, std::cout);
  }
  catch (const ConfigError &e)
  {
    std::cerr << e.what() << '\n';
    return kExitConfig;
  }
  catch (const std::exception &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}
