// SPDX-License-Identifier: Apache-2.0
#include "wpc/devices.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "wpc/errors.hpp"
#include "wpc/units.hpp"

namespace wpc
{
void DeviceProfile::validate() const
{
    detail::require_positive(consumption, "device consumption");
    detail::require_positive(antenna_radius, "device antenna radius");
    detail::require_positive(harvester_sensitivity, "harvester sensitivity");
    detail::require_fraction(rf_to_dc, "device RF-to-DC efficiency");
}

void TransmitterSpec::validate() const
{
    detail::require_positive(radiated_power, "radiated power");
    detail::require_fraction(dc_to_rf, "transmitter DC-to-RF efficiency");
}

TransmitterSpec TransmitterSpec::reference_beacon(double radiated_power)
{
    TransmitterSpec tx{radiated_power,
                       Aperture::from_radius(3.0),
                       CarrierSpec::from_frequency(2.5e9)};
    tx.validate();
    return tx;
}

char const* to_string(SwiptTopology topology)
{
    switch (topology)
    {
        case SwiptTopology::integrated:
            return "integrated";
        case SwiptTopology::closed_loop:
            return "closed_loop";
        case SwiptTopology::decoupled:
            return "decoupled";
    }
    return "unknown";
}

double received_rf_power(TransmitterSpec const& tx,
                         DeviceProfile const& dev,
                         double distance)
{
    tx.validate();
    dev.validate();
    LinkGeometry geom{tx.aperture, dev.aperture(), distance};
    return tx.radiated_power * beam_efficiency(beta(geom, tx.carrier));
}

double harvested_power(TransmitterSpec const& tx,
                       DeviceProfile const& dev,
                       double distance)
{
    return dev.rf_to_dc * received_rf_power(tx, dev, distance);
}

//---------------------------------------------------------------------------//
/*!
 * Largest distance at which the device is fully powered.
 *
 * Two constraints apply: the rectified power must cover the consumption and
 * the incident RF power must exceed the harvester sensitivity. Both are
 * thresholds on the beam efficiency, which is monotone in distance, so each
 * inverts in closed form and the binding one is the shorter distance.
 */
PowerTransferRange pt_range(TransmitterSpec const& tx, DeviceProfile const& dev)
{
    tx.validate();
    dev.validate();

    double const consumption_eff
        = dev.consumption / (dev.rf_to_dc * tx.radiated_power);
    double const sensitivity_eff = dev.harvester_sensitivity / tx.radiated_power;
    if (consumption_eff >= 1.0 || sensitivity_eff >= 1.0)
    {
        return {};
    }

    auto const solve = [&](double efficiency) {
        return distance_for_beta(tx.aperture,
                                 dev.aperture(),
                                 tx.carrier,
                                 beta_for_efficiency(efficiency));
    };

    double const d_power = solve(consumption_eff);
    double const d_sense = solve(sensitivity_eff);
    if (d_sense < d_power)
    {
        return {d_sense, RangeLimit::sensitivity};
    }
    return {d_power, RangeLimit::consumption};
}

std::vector<DeviceProfile> builtin_catalog()
{
    constexpr double sens = default_harvester_sensitivity;
    return {
        {"zigbee", 50e-3, 0.01, sens, 0.7, 1e-3, 100e-3},
        {"smartphone", 0.5, 0.03, sens, 0.7, 19e-3, 1.3},
        {"tablet", 5.0, 0.09, sens, 0.7, 1.0, 11.0},
        {"laptop", 25.0, 0.11, sens, 0.7, 19.0, 52.0},
    };
}

DeviceProfile const* find_device(std::vector<DeviceProfile> const& devices,
                                 std::string const& name)
{
    auto const lower = [](std::string s) {
        std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
            return static_cast<char>(std::tolower(c));
        });
        return s;
    };
    auto const key = lower(name);
    auto it = std::find_if(devices.begin(), devices.end(), [&](auto const& d) {
        return lower(d.name) == key;
    });
    return it == devices.end() ? nullptr : &*it;
}

namespace
{
void check_noise(double noise_power)
{
    detail::require_positive(noise_power, "noise power");
}

void finish_budget(SwiptBudget& budget,
                   double noise_power,
                   std::optional<double> snr_threshold_db)
{
    budget.snr_db = ratio_to_db(budget.it_received_power / noise_power);
    bool const pt_ok = budget.harvested_power >= budget.required_power;
    bool const it_ok = !snr_threshold_db || *budget.snr_db >= *snr_threshold_db;
    budget.feasible = pt_ok && it_ok;
}
}  // namespace

//---------------------------------------------------------------------------//
/*!
 * Power and information carried by the same downlink signal.
 */
SwiptBudget integrated_swipt(TransmitterSpec const& tx,
                             DeviceProfile const& dev,
                             double distance,
                             double noise_power,
                             std::optional<double> snr_threshold_db)
{
    check_noise(noise_power);
    double const rf = received_rf_power(tx, dev, distance);

    SwiptBudget budget;
    budget.topology = SwiptTopology::integrated;
    budget.harvested_power = dev.rf_to_dc * rf;
    budget.required_power = dev.consumption;
    budget.it_received_power = rf;
    finish_budget(budget, noise_power, snr_threshold_db);
    return budget;
}

//---------------------------------------------------------------------------//
/*!
 * Downlink power transfer followed by an uplink powered from the harvest.
 *
 * The uplink radiates \c uplink_fraction of the harvested power back over
 * the same free-space link, so the information receiver sees the beam
 * efficiency twice. The uplink power is drawn from the harvested energy and
 * therefore adds to what the device must harvest.
 */
SwiptBudget closed_loop_swipt(TransmitterSpec const& tx,
                              DeviceProfile const& dev,
                              double distance,
                              double uplink_fraction,
                              double noise_power,
                              std::optional<double> snr_threshold_db)
{
    check_noise(noise_power);
    detail::require_fraction(uplink_fraction, "uplink fraction");

    LinkGeometry geom{tx.aperture, dev.aperture(), distance};
    double const eta = beam_efficiency(beta(geom, tx.carrier));
    double const harvested = dev.rf_to_dc * (tx.radiated_power * eta);
    double const uplink = uplink_fraction * harvested;

    SwiptBudget budget;
    budget.topology = SwiptTopology::closed_loop;
    budget.harvested_power = harvested;
    budget.required_power = dev.consumption + uplink;
    budget.it_received_power = uplink * eta;
    finish_budget(budget, noise_power, snr_threshold_db);
    return budget;
}

//---------------------------------------------------------------------------//
/*!
 * Power from a dedicated beacon, information from a separate base station.
 *
 * The two legs are orthogonal, so the information leg is summarized by its
 * received power.
 */
SwiptBudget decoupled_swipt(TransmitterSpec const& beacon,
                            DeviceProfile const& dev,
                            double beacon_distance,
                            double it_received_power,
                            double noise_power,
                            std::optional<double> snr_threshold_db)
{
    check_noise(noise_power);
    detail::require_positive(it_received_power, "IT received power");

    SwiptBudget budget;
    budget.topology = SwiptTopology::decoupled;
    budget.harvested_power = harvested_power(beacon, dev, beacon_distance);
    budget.required_power = dev.consumption;
    budget.it_received_power = it_received_power;
    finish_budget(budget, noise_power, snr_threshold_db);
    return budget;
}

IncidentPower scavenged_power(AmbientSource const& source, double device_area)
{
    if (!(device_area >= 0.0))
    {
        throw DomainError("device area must be non-negative");
    }
    return {source.density_low * device_area,
            source.density_high * device_area};
}

std::vector<AmbientSource> builtin_ambient_table()
{
    // Measured densities, mW/m^2 scaled to W/m^2
    return {
        {"GSM 935-960 MHz", "inner city, outdoor, on ground", 1e-6, 1e-4},
        {"GSM 935-960 MHz", "inner city, indoor, close to window", 1e-5, 1e-4},
        {"GSM 1805-1880 MHz", "50 m from base stations", 5e-6, 5e-3},
        {"GSM 1805-1880 MHz", "200 m from base stations", 1e-6, 5e-4},
        {"GSM 1805-1880 MHz", "500 m from base stations", 5e-7, 5e-5},
        {"WiFi", "within 8 m from access points", 1e-6, 5e-5},
        {"WiFi", "12 m from access points", 1e-7, 5e-7},
    };
}

}  // namespace wpc
