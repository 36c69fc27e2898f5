// SPDX-License-Identifier: Apache-2.0
#include "wpc/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wpc/errors.hpp"
#include "wpc/units.hpp"

namespace wpc::cli
{
namespace
{
using Kind = ColumnKind;

TableValue opt_number(std::optional<double> v)
{
    return v ? TableValue{*v} : TableValue{};
}

TableValue count(std::size_t n)
{
    return static_cast<std::int64_t>(n);
}

char const* limit_name(RangeLimit limit)
{
    switch (limit)
    {
        case RangeLimit::consumption:
            return "consumption";
        case RangeLimit::sensitivity:
            return "sensitivity";
        case RangeLimit::infeasible:
            return "infeasible";
    }
    return "unknown";
}

// Network-section failures are reported against the scenario file
template<class F>
auto in_network_section(Scenario const& s, F&& f)
{
    try
    {
        return f();
    }
    catch (DomainError const& e)
    {
        throw ScenarioError(s.source + ": section 'network': " + e.what());
    }
}

double closed_form(double density, double radius)
{
    if (density == 0 || radius == 0)
    {
        return 0;
    }
    return nearest_neighbor_coverage(density, radius);
}
}  // namespace

ResultTable cmd_link(Scenario const& scenario,
                     double distance,
                     std::string const& device_name)
{
    if (!(distance > 0))
    {
        throw DomainError("link distance must be positive");
    }
    auto const* dev = find_device(scenario.devices, device_name);
    if (!dev)
    {
        throw ScenarioError(scenario.source + ": no device named '"
                            + device_name + "'");
    }
    auto const& tx = scenario.transmitter;
    double const b = beta({tx.aperture, dev->aperture(), distance}, tx.carrier);
    EfficiencyChain const chain(tx.dc_to_rf, dev->rf_to_dc);
    double const rf = received_rf_power(tx, *dev, distance);
    double const harvested = dev->rf_to_dc * rf;

    ResultTable table({{"device", Kind::text, ""},
                       {"distance_m", Kind::number, "m"},
                       {"radiated_power_w", Kind::number, "W"},
                       {"beta", Kind::number, ""},
                       {"beam_efficiency", Kind::number, ""},
                       {"friis_efficiency", Kind::number, ""},
                       {"end_to_end_efficiency", Kind::number, ""},
                       {"received_rf_w", Kind::number, "W"},
                       {"harvested_w", Kind::number, "W"},
                       {"consumption_w", Kind::number, "W"},
                       {"powered", Kind::boolean, ""}});
    table.add_row({dev->name,
                   distance,
                   tx.radiated_power,
                   b,
                   beam_efficiency(b),
                   friis_efficiency(b),
                   end_to_end_efficiency(b, chain),
                   rf,
                   harvested,
                   dev->consumption,
                   harvested >= dev->consumption
                       && rf >= dev->harvester_sensitivity});
    return table;
}

//---------------------------------------------------------------------------//
/*!
 * Range per device per power, with the ratio to the laptop range.
 *
 * Infeasible cells carry a null range and the "infeasible" limit tag.
 */
ResultTable cmd_fig4(Scenario const& scenario, std::vector<double> const& powers)
{
    if (powers.empty())
    {
        throw std::invalid_argument("need at least one radiated power");
    }
    ResultTable table({{"radiated_power_w", Kind::number, "W"},
                       {"device", Kind::text, ""},
                       {"consumption_w", Kind::number, "W"},
                       {"antenna_radius_m", Kind::number, "m"},
                       {"range_m", Kind::number, "m"},
                       {"limit", Kind::text, ""},
                       {"ratio_to_laptop", Kind::number, ""}});
    auto const* laptop = find_device(scenario.devices, "laptop");
    for (double p : powers)
    {
        TransmitterSpec tx = scenario.transmitter;
        tx.radiated_power = p;
        std::optional<double> laptop_range;
        if (laptop)
        {
            auto const r = pt_range(tx, *laptop);
            if (r.feasible())
                laptop_range = r.distance;
        }
        for (auto const& dev : scenario.devices)
        {
            auto const r = pt_range(tx, dev);
            std::optional<double> range;
            std::optional<double> ratio;
            if (r.feasible())
            {
                range = r.distance;
                if (laptop_range)
                    ratio = r.distance / *laptop_range;
            }
            table.add_row({p,
                           dev.name,
                           dev.consumption,
                           dev.antenna_radius,
                           opt_number(range),
                           std::string(limit_name(r.limit)),
                           opt_number(ratio)});
        }
    }
    return table;
}

ResultTable cmd_ubid(Scenario const& scenario)
{
    auto const& safety = scenario.safety;
    Aperture const aperture = Aperture::from_area(safety.aperture_area);
    ResultTable table({{"radiated_power_w", Kind::number, "W"},
                       {"mode", Kind::text, ""},
                       {"aperture_area_m2", Kind::number, "m^2"},
                       {"frequency_hz", Kind::number, "Hz"},
                       {"exposure_limit_w_per_m2", Kind::number, "W/m^2"},
                       {"ubid_m", Kind::number, "m"},
                       {"distance_m", Kind::number, "m"},
                       {"density_w_per_m2", Kind::number, "W/m^2"},
                       {"duty_cycle", Kind::number, ""}});
    for (auto const& c : safety.cases)
    {
        Emitter const emitter
            = c.mode == ExposureMode::beamed
                  ? Emitter::beamed(c.radiated_power, aperture, scenario.carrier)
                  : Emitter::omni(c.radiated_power);
        auto const report = ubid(emitter, safety.limit);
        TableValue const area = report.aperture ? TableValue{report.aperture->area()}
                                                : TableValue{};
        TableValue const freq = report.aperture
                                    ? TableValue{scenario.carrier.frequency()}
                                    : TableValue{};
        auto row = [&](TableValue d, TableValue density, TableValue duty) {
            table.add_row({c.radiated_power,
                           std::string(to_string(c.mode)),
                           area,
                           freq,
                           safety.limit.max_avg_density,
                           report.ubid,
                           std::move(d),
                           std::move(density),
                           std::move(duty)});
        };
        if (safety.duty_distances.empty())
        {
            row({}, {}, {});
        }
        for (double d : safety.duty_distances)
        {
            row(d,
                instantaneous_density(emitter, d),
                max_duty_cycle(emitter, d, safety.limit));
        }
    }
    return table;
}

ResultTable cmd_scavenge(Scenario const& scenario, double area)
{
    if (!(area >= 0))
    {
        throw DomainError("harvesting area must be non-negative");
    }
    ResultTable table({{"spectrum", Kind::text, ""},
                       {"environment", Kind::text, ""},
                       {"density_low_w_per_m2", Kind::number, "W/m^2"},
                       {"density_high_w_per_m2", Kind::number, "W/m^2"},
                       {"area_m2", Kind::number, "m^2"},
                       {"incident_low_w", Kind::number, "W"},
                       {"incident_high_w", Kind::number, "W"}});
    for (auto const& src : scenario.ambient)
    {
        auto const p = scavenged_power(src, area);
        table.add_row({src.spectrum_label,
                       src.environment_label,
                       src.density_low,
                       src.density_high,
                       area,
                       p.low,
                       p.high});
    }
    return table;
}

//---------------------------------------------------------------------------//
/*!
 * Power map of a ring of coordinated beacons focused on the mobile.
 *
 * Values are normalized to the on-target power, so the target cell reads 1.
 */
ResultTable cmd_beam(Scenario const& scenario, unsigned threads)
{
    auto const& b = scenario.beam;
    double const spacing = b.spacing.value_or(0.5 * scenario.carrier.wavelength());
    auto const prototype
        = ArrayLayout::uniform_planar(b.rows, b.cols, spacing, scenario.carrier);
    auto const ring = beacon_ring(b.beacon_count, b.ring_radius, b.mobile, prototype);
    auto const beacons
        = coordinated_beacons(ring, b.mobile, b.synchronized, b.per_beacon_power);
    double const on_target = beacons.field_map.power_at(b.mobile);

    auto const cells = sample_grid(
        [&](Point3 const& p) { return beacons.field_map.power_at(p); },
        {b.mobile, b.map_half_width, b.map_step},
        threads);

    ResultTable table({{"x_m", Kind::number, "m"},
                       {"y_m", Kind::number, "m"},
                       {"z_m", Kind::number, "m"},
                       {"relative_power", Kind::number, ""}});
    for (auto const& cell : cells)
    {
        table.add_row(
            {cell.point.x, cell.point.y, cell.point.z, cell.power / on_target});
    }
    return table;
}

ResultTable cmd_coverage(Scenario const& scenario, unsigned threads)
{
    auto const& ns = scenario.network.scenario;
    auto const result
        = in_network_section(scenario, [&] { return simulate_coverage(ns, threads); });

    std::optional<double> pt_closed;
    if (!ns.accumulate_beacons)
    {
        double const density = ns.pb_density + (ns.bs_swipt ? ns.bs_density : 0.0);
        pt_closed = closed_form(density, beacon_range(ns));
    }
    double const it_closed = closed_form(ns.bs_density, it_range(ns));
    std::optional<double> joint_closed;
    if (pt_closed && !ns.bs_swipt)
    {
        joint_closed = *pt_closed * it_closed;
    }

    ResultTable table({{"service", Kind::text, ""},
                       {"coverage", Kind::number, ""},
                       {"half_width", Kind::number, ""},
                       {"closed_form", Kind::number, ""},
                       {"replications", Kind::integer, ""},
                       {"samples_per_replication", Kind::integer, ""}});
    auto add = [&](char const* name, Estimate const& e, std::optional<double> cf) {
        table.add_row({std::string(name),
                       e.mean,
                       opt_number(e.half_width),
                       opt_number(cf),
                       count(result.replications_used),
                       count(ns.samples_per_replication)});
    };
    add("power", result.pt, pt_closed);
    add("information", result.it, it_closed);
    add("joint", result.joint, joint_closed);
    return table;
}

ResultTable cmd_tradeoff(Scenario const& scenario, unsigned threads)
{
    auto const& net = scenario.network;
    auto const frontier = in_network_section(scenario, [&] {
        return density_tradeoff(net.scenario,
                                net.target_joint_coverage,
                                net.bs_density_grid,
                                net.pb_density_grid,
                                threads);
    });
    ResultTable table({{"bs_density_per_m2", Kind::number, "1/m^2"},
                       {"min_pb_density_per_m2", Kind::number, "1/m^2"},
                       {"joint_coverage", Kind::number, ""}});
    for (auto const& p : frontier)
    {
        table.add_row({p.bs_density, opt_number(p.min_pb_density), p.joint_coverage});
    }
    return table;
}

}  // namespace wpc::cli
