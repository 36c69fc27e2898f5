// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file wpc/netcov.hpp
//! Monte Carlo coverage of a wirelessly powered network.
//!
//! Base stations (information transfer) and power beacons (power transfer)
//! are homogeneous Poisson point processes on a square window. A typical
//! mobile is covered for power if the beacon link delivers its consumption,
//! and for information if the nearest base station's SNR meets the
//! threshold.
//---------------------------------------------------------------------------//
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "devices.hpp"

namespace wpc
{
using NetworkRng = std::mt19937_64;

struct Point2
{
    double x{0};
    double y{0};

    friend bool operator==(Point2 const&, Point2 const&) = default;
};

/*!
 * Inputs to a coverage simulation.
 *
 * Information transfer uses power-law path loss
 * P_bs * min(1, (d / d_ref)^-alpha) and is noise limited. Power transfer
 * uses the free-space beam-efficiency link to the nearest beacon (or the
 * sum over all beacons when \c accumulate_beacons is set). With
 * \c bs_swipt, base stations also transfer power using the beacon
 * transmitter model.
 */
struct NetworkScenario
{
    double pb_density{1e-3};  //!< [1/m^2]
    double bs_density{1e-5};  //!< [1/m^2]
    double region_side{1000};  //!< [m]
    DeviceProfile device;
    TransmitterSpec transmitter{TransmitterSpec::reference_beacon(50.0)};
    double it_snr_threshold_db{10.0};
    double it_pathloss_exponent{4.0};
    double it_reference_distance{1.0};  //!< [m]
    double bs_tx_power{1.0};  //!< [W]
    double noise_power{1e-15};  //!< [W], -120 dBm
    std::uint64_t seed{1};
    std::size_t replications{100};
    //! Mobiles per replication; 1 evaluates only the window centre
    std::size_t samples_per_replication{1};
    bool bs_swipt{false};
    bool accumulate_beacons{false};
    //! Extra uplink power a transmitting mobile must harvest [W]
    double uplink_extra_consumption{0};

    void validate() const;
};

struct Estimate
{
    double mean{0};
    //! 95% normal-approximation half width; absent with one replication
    std::optional<double> half_width;
};

struct CoverageResult
{
    Estimate pt;
    Estimate it;
    Estimate joint;
    std::size_t replications_used{0};
};

struct FrontierPoint
{
    double bs_density{0};
    std::optional<double> min_pb_density;  //!< absent when unreachable
    double joint_coverage{0};  //!< at min_pb_density, or best on the grid
};

//---------------------------------------------------------------------------//
// Homogeneous PPP on [0, side]^2
std::vector<Point2> sample_ppp(double density, double side, NetworkRng& rng);

// Independent stream for one replication
NetworkRng replication_rng(std::uint64_t seed, std::uint64_t replication);

// 95% half width 1.96 s / sqrt(n) over replication-level estimates
double confidence(std::span<double const> replication_estimates);

// Nearest-neighbour coverage 1 - exp(-density pi r^2)
double nearest_neighbor_coverage(double density, double radius);

// Largest distance at which the base-station SNR meets the threshold
double it_range(NetworkScenario const& scenario);

// Largest distance at which one beacon powers the device (0 if infeasible)
double beacon_range(NetworkScenario const& scenario);

// Power, information and joint coverage from the same realizations
CoverageResult simulate_coverage(NetworkScenario const& scenario,
                                 unsigned threads = 1);

Estimate pt_coverage(NetworkScenario const& scenario, unsigned threads = 1);
Estimate it_coverage(NetworkScenario const& scenario, unsigned threads = 1);

/*!
 * Smallest beacon density reaching a joint-coverage target, per BS density.
 *
 * All grid cells are evaluated on coupled realizations: each replication
 * samples both processes at the largest grid density and thins them with
 * uniform marks, so estimated coverage is monotone in both densities.
 */
std::vector<FrontierPoint> density_tradeoff(NetworkScenario const& scenario,
                                            double target_joint_coverage,
                                            std::span<double const> bs_densities,
                                            std::span<double const> pb_densities,
                                            unsigned threads = 1);

}  // namespace wpc
