// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file wpc/cli/commands.hpp
//! Subcommand bodies; each turns a scenario into a result table.
//---------------------------------------------------------------------------//
#pragma once

#include <string>
#include <vector>

#include "result_table.hpp"
#include "scenario.hpp"

namespace wpc::cli
{
inline constexpr char const tool_version[] = "0.1.0";

// Link budget of one device at one distance
ResultTable cmd_link(Scenario const& scenario,
                     double distance,
                     std::string const& device_name);

// Power-transfer range of every scenario device at each radiated power
ResultTable cmd_fig4(Scenario const& scenario, std::vector<double> const& powers);

// Exposure distances and duty-cycle caps for the safety cases
ResultTable cmd_ubid(Scenario const& scenario);

// Ambient incident power for a harvesting area
ResultTable cmd_scavenge(Scenario const& scenario, double area);

// Coordinated-beacon power map around the mobile
ResultTable cmd_beam(Scenario const& scenario, unsigned threads);

// Monte Carlo power/information/joint coverage
ResultTable cmd_coverage(Scenario const& scenario, unsigned threads);

// BS/PB density frontier for the joint-coverage target
ResultTable cmd_tradeoff(Scenario const& scenario, unsigned threads);

}  // namespace wpc::cli
