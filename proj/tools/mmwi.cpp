/*
   Copyright 2026 The mmwi Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

#include "mmwi/app.hpp"

int main(int argc, char** argv) {
    CLI::App cli{"mmwi: aggregate interference and service probability for mmW array networks"};
    cli.set_version_flag("--version", mmwi::kVersion);
    cli.require_subcommand(1);

    std::string config_path, out_path;
    std::uint64_t seed = 0;
    bool plot = false;
    for (const auto& name : mmwi::subcommands()) {
        CLI::App* sub = cli.add_subcommand(name);
        sub->add_option("-c,--config", config_path, "config file")->required()->check(CLI::ExistingFile);
        sub->add_option("--seed", seed, "overrides montecarlo.seed");
        sub->add_option("-o,--out", out_path, "CSV path (default stdout)");
        sub->add_flag("--plot", plot, "emit a plotting script next to the CSV");
    }

    try {
        cli.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return cli.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return cli.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n' << mmwi::usage();
        return mmwi::kExitInvalid;
    }

    const std::string subcommand = cli.get_subcommands().front()->get_name();
    mmwi::RunConfig config;
    try {
        config = mmwi::load_config(config_path);
    } catch (const mmwi::ConfigError& e) {
        for (const auto& msg : e.errors()) std::cerr << config_path << ": " << msg << '\n';
        return mmwi::kExitInvalid;
    }
    if (cli.get_subcommands().front()->count("--seed")) config.scenario.seed = seed;
    if (!out_path.empty()) config.output = out_path;
    if (plot) config.plot_script = true;
    return mmwi::run(subcommand, config, std::cout, std::cerr);
}
