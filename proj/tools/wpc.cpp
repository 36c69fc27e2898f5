// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tools/wpc.cpp
//! Command-line front end: link budgets, ranges, exposure, scavenging,
//! beam maps and network coverage.
//---------------------------------------------------------------------------//
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "wpc/cli/commands.hpp"

namespace
{
struct GlobalOptions
{
    std::string scenario_path;
    std::optional<std::uint64_t> seed;
    std::string format{"csv"};
    std::string out_path;
    unsigned threads{1};
};

void emit(wpc::cli::ResultTable const& table,
          GlobalOptions const& opts,
          wpc::cli::Scenario const& scenario)
{
    std::ostringstream text;
    if (opts.format == "json")
    {
        wpc::cli::TableMeta const meta{wpc::cli::tool_version,
                                       scenario.network.scenario.seed,
                                       scenario.hash};
        text << table.to_json(meta).dump(2) << '\n';
    }
    else
    {
        table.write_csv(text);
    }

    if (opts.out_path.empty())
    {
        std::cout << text.str();
        return;
    }
    std::ofstream out(opts.out_path, std::ios::binary);
    if (!out)
    {
        throw std::runtime_error(opts.out_path + ": cannot open for writing");
    }
    out << text.str();
}
}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Microwave power transfer and wirelessly powered network toolkit",
                 "wpc"};
    app.fallthrough();
    app.require_subcommand(1);
    app.set_version_flag("--version", wpc::cli::tool_version);

    GlobalOptions opts;
    app.add_option("--scenario", opts.scenario_path, "Scenario YAML file")
        ->check(CLI::ExistingFile);
    app.add_option("--seed", opts.seed, "Override the network RNG seed");
    app.add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", opts.out_path, "Write output here instead of stdout");
    app.add_option("--threads", opts.threads, "Worker threads for sampling")
        ->check(CLI::Range(1u, 1024u));

    double link_distance = 0;
    std::string link_device = "smartphone";
    auto* link = app.add_subcommand("link", "Link budget at one distance");
    link->add_option("--distance", link_distance, "Distance [m]")->required();
    link->add_option("--device", link_device, "Device name");

    std::vector<double> powers{5, 10, 20, 50};
    auto* fig4 = app.add_subcommand("fig4", "Power-transfer range per device");
    fig4->add_option("--powers", powers, "Radiated powers [W]")->delimiter(',');

    std::vector<double> duty_distances;
    auto* ubid = app.add_subcommand("ubid", "Unsafe beam-interception distances");
    ubid->add_option("--duty-distance", duty_distances, "Distances [m] for duty caps")
        ->delimiter(',');

    double area = 0.01;
    auto* scavenge = app.add_subcommand("scavenge", "Ambient RF scavenging");
    scavenge->add_option("--area", area, "Harvesting area [m^2]");

    auto* beam = app.add_subcommand("beam", "Coordinated-beacon power map");
    auto* coverage = app.add_subcommand("coverage", "Monte Carlo network coverage");
    auto* tradeoff = app.add_subcommand("tradeoff", "BS/PB density frontier");

    CLI11_PARSE(app, argc, argv);

    try
    {
        auto scenario = opts.scenario_path.empty()
                            ? wpc::cli::Scenario::builtin()
                            : wpc::cli::load_scenario(opts.scenario_path);
        if (opts.seed)
        {
            scenario.network.scenario.seed = *opts.seed;
        }

        std::optional<wpc::cli::ResultTable> table;
        if (*link)
            table = wpc::cli::cmd_link(scenario, link_distance, link_device);
        else if (*fig4)
            table = wpc::cli::cmd_fig4(scenario, powers);
        else if (*ubid)
        {
            auto& d = scenario.safety.duty_distances;
            d.insert(d.end(), duty_distances.begin(), duty_distances.end());
            table = wpc::cli::cmd_ubid(scenario);
        }
        else if (*scavenge)
            table = wpc::cli::cmd_scavenge(scenario, area);
        else if (*beam)
            table = wpc::cli::cmd_beam(scenario, opts.threads);
        else if (*coverage)
            table = wpc::cli::cmd_coverage(scenario, opts.threads);
        else if (*tradeoff)
            table = wpc::cli::cmd_tradeoff(scenario, opts.threads);

        emit(*table, opts, scenario);
    }
    catch (std::exception const& e)
    {
        std::cerr << "wpc: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
