// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file wpc/cli/scenario.hpp
//! Scenario files: a YAML tree with unit-suffixed keys.
//!
//! Top-level sections are carrier, transmitter, devices, ambient, safety,
//! beam and network; every section is optional and falls back to the
//! reference configuration. Unknown keys are rejected with file:line:column
//! diagnostics.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wpc/beamsim.hpp"
#include "wpc/devices.hpp"
#include "wpc/netcov.hpp"
#include "wpc/safety.hpp"

namespace wpc::cli
{
//! Malformed scenario input; the message names the file and key.
class ScenarioError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct SafetyCase
{
    double radiated_power{};  //!< [W]
    ExposureMode mode{ExposureMode::omnidirectional};
};

struct SafetySection
{
    ExposureLimit limit;
    double aperture_area{3.0};  //!< [m^2] for beamed cases
    std::vector<SafetyCase> cases;
    std::vector<double> duty_distances;  //!< [m]
};

struct BeamSection
{
    int beacon_count{4};
    double ring_radius{5.0};  //!< [m]
    int rows{8};
    int cols{8};
    std::optional<double> spacing;  //!< [m]; half wavelength when absent
    Point3 mobile{0, 0, 0};
    bool synchronized{true};
    double per_beacon_power{10.0};  //!< [W]
    double map_half_width{1.0};  //!< [m]
    double map_step{0.05};  //!< [m]
};

struct NetworkSection
{
    NetworkScenario scenario;
    std::string device_name{"smartphone"};
    double target_joint_coverage{0.9};
    std::vector<double> bs_density_grid;
    std::vector<double> pb_density_grid;
};

struct Scenario
{
    std::string source{"<builtin>"};
    std::string hash{"builtin"};  //!< SHA-256 of the file bytes
    CarrierSpec carrier{CarrierSpec::from_frequency(2.5e9)};
    TransmitterSpec transmitter{TransmitterSpec::reference_beacon(50.0)};
    std::vector<DeviceProfile> devices{builtin_catalog()};
    std::vector<AmbientSource> ambient{builtin_ambient_table()};
    SafetySection safety;
    BeamSection beam;
    NetworkSection network;

    // Reference configuration: 50 W beacon with a 3 m radius disk at
    // 2.5 GHz, the four catalog devices, and the three exposure cases
    static Scenario builtin();
};

Scenario load_scenario(std::string const& path);
Scenario parse_scenario(std::string const& text, std::string const& source);

std::string sha256_hex(std::string const& bytes);

}  // namespace wpc::cli
