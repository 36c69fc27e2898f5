// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file wpc/devices.hpp
//! Mobile device classes, power-transfer ranges, SWIPT budgets and ambient
//! RF scavenging.
//---------------------------------------------------------------------------//
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "linkphys.hpp"

namespace wpc
{
//! Typical energy-harvester sensitivity, -10 dBm
inline constexpr double default_harvester_sensitivity = 1e-4;

//---------------------------------------------------------------------------//
/*!
 * A mobile device class as seen by a power beacon.
 *
 * The receive aperture is the geometric disk of the antenna radius.
 * \c consumption_low / \c consumption_high carry the catalog's typical
 * consumption span when known; range solving only uses \c consumption.
 */
struct DeviceProfile
{
    std::string name;
    double consumption{};  //!< [W]
    double antenna_radius{};  //!< [m]
    double harvester_sensitivity{default_harvester_sensitivity};  //!< [W]
    double rf_to_dc{0.7};
    std::optional<double> consumption_low;
    std::optional<double> consumption_high;

    Aperture aperture() const { return Aperture::from_radius(antenna_radius); }

    // Throw DomainError if any field is out of range
    void validate() const;
};

struct TransmitterSpec
{
    double radiated_power{};  //!< [W]
    Aperture aperture;
    CarrierSpec carrier;
    double dc_to_rf{0.8};

    void validate() const;

    //! 3 m radius disk at 2.5 GHz radiating the given power
    static TransmitterSpec reference_beacon(double radiated_power);
};

struct AmbientSource
{
    std::string spectrum_label;
    std::string environment_label;
    double density_low{};  //!< [W/m^2]
    double density_high{};  //!< [W/m^2]
};

enum class SwiptTopology
{
    integrated,
    closed_loop,
    decoupled
};

char const* to_string(SwiptTopology topology);

/*!
 * Outcome of one SWIPT link evaluation.
 *
 * \c required_power is what the device must harvest to run: its consumption
 * plus, for closed-loop operation, the uplink transmit power drawn from the
 * harvested energy.
 */
struct SwiptBudget
{
    SwiptTopology topology{SwiptTopology::integrated};
    double harvested_power{};  //!< [W]
    double required_power{};  //!< [W]
    double it_received_power{};  //!< [W] at the information receiver
    std::optional<double> snr_db;
    bool feasible{false};
};

enum class RangeLimit
{
    consumption,  //!< harvested power falls below consumption
    sensitivity,  //!< incident RF power falls below the harvester floor
    infeasible  //!< device cannot be powered at any distance
};

struct PowerTransferRange
{
    double distance{0};  //!< [m]; zero when infeasible
    RangeLimit limit{RangeLimit::infeasible};

    bool feasible() const { return limit != RangeLimit::infeasible; }
};

struct IncidentPower
{
    double low{};  //!< [W]
    double high{};  //!< [W]
};

//---------------------------------------------------------------------------//
// RF power incident on the device's aperture at distance d
double received_rf_power(TransmitterSpec const& tx,
                         DeviceProfile const& dev,
                         double distance);

// DC power after the device's rectenna
double harvested_power(TransmitterSpec const& tx,
                       DeviceProfile const& dev,
                       double distance);

// Largest distance at which the device is fully powered
PowerTransferRange pt_range(TransmitterSpec const& tx, DeviceProfile const& dev);

// ZigBee, smartphone, tablet and laptop reference profiles
std::vector<DeviceProfile> builtin_catalog();

// Look up a catalog (or custom) profile by case-insensitive name
DeviceProfile const* find_device(std::vector<DeviceProfile> const& devices,
                                 std::string const& name);

SwiptBudget integrated_swipt(TransmitterSpec const& tx,
                             DeviceProfile const& dev,
                             double distance,
                             double noise_power,
                             std::optional<double> snr_threshold_db = {});

SwiptBudget closed_loop_swipt(TransmitterSpec const& tx,
                              DeviceProfile const& dev,
                              double distance,
                              double uplink_fraction,
                              double noise_power,
                              std::optional<double> snr_threshold_db = {});

SwiptBudget decoupled_swipt(TransmitterSpec const& beacon,
                            DeviceProfile const& dev,
                            double beacon_distance,
                            double it_received_power,
                            double noise_power,
                            std::optional<double> snr_threshold_db = {});

// Incident power bounds for an ambient source over the given area
IncidentPower scavenged_power(AmbientSource const& source, double device_area);

// Measured ambient RF power densities, converted to W/m^2
std::vector<AmbientSource> builtin_ambient_table();

}  // namespace wpc
