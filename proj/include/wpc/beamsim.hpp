// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file wpc/beamsim.hpp
//! Phasor-domain simulation of retrodirective power beamforming.
//!
//! Elements are isotropic point radiators. The free-space gain between two
//! points a distance d apart is (lambda / 4 pi d) exp(-j 2 pi d / lambda),
//! evaluated with exact per-element distances so near-field focusing is
//! captured.
//---------------------------------------------------------------------------//
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "linkphys.hpp"

namespace wpc
{
using Phasor = std::complex<double>;

struct Point3
{
    double x{0};
    double y{0};
    double z{0};

    friend Point3 operator+(Point3 a, Point3 b)
    {
        return {a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend Point3 operator-(Point3 a, Point3 b)
    {
        return {a.x - b.x, a.y - b.y, a.z - b.z};
    }
    friend Point3 operator*(double s, Point3 a)
    {
        return {s * a.x, s * a.y, s * a.z};
    }
    friend bool operator==(Point3 const&, Point3 const&) = default;
};

double distance(Point3 const& a, Point3 const& b);

// Free-space gain between two points; throws GeometryError if they coincide
Phasor free_space_gain(Point3 const& from,
                       Point3 const& to,
                       CarrierSpec const& carrier);

//---------------------------------------------------------------------------//
/*!
 * Element positions of a phased array.
 *
 * The largest nearest-neighbour spacing is recorded at construction. The
 * uniform-grid constructors warn when it exceeds half a wavelength, since
 * such arrays form grating lobes.
 */
class ArrayLayout
{
  public:
    ArrayLayout(std::vector<Point3> positions, CarrierSpec carrier);

    // rows x cols grid in the local y-z plane, centred on the origin,
    // boresight along +x
    static ArrayLayout
    uniform_planar(int rows, int cols, double spacing, CarrierSpec carrier);

    // count elements along the y axis, centred on the origin
    static ArrayLayout
    uniform_linear(int count, double spacing, CarrierSpec carrier);

    ArrayLayout translated(Point3 offset) const;
    ArrayLayout rotated_z(double angle_rad) const;

    std::span<Point3 const> positions() const { return positions_; }
    CarrierSpec const& carrier() const { return carrier_; }
    std::size_t size() const { return positions_.size(); }
    Point3 centroid() const;

    double max_neighbor_spacing() const { return max_neighbor_spacing_; }
    bool exceeds_half_wavelength() const;

  private:
    std::vector<Point3> positions_;
    CarrierSpec carrier_;
    double max_neighbor_spacing_{0};
};

//---------------------------------------------------------------------------//
/*!
 * Per-element complex gains between an array and one point.
 */
class PhasorChannel
{
  public:
    explicit PhasorChannel(std::vector<Phasor> gains);

    // Exact spherical-wave channel from each element to the point
    static PhasorChannel free_space(ArrayLayout const& layout, Point3 point);

    // Channel with the flagged elements zeroed (beam intercepted there)
    PhasorChannel obstructed(std::vector<bool> const& blocked) const;

    std::span<Phasor const> gains() const { return gains_; }
    std::size_t size() const { return gains_.size(); }
    Phasor operator[](std::size_t i) const { return gains_[i]; }
    double norm_squared() const;

  private:
    std::vector<Phasor> gains_;
};

//! Element excitations with their total radiated power.
class BeamWeights
{
  public:
    // Scale the direction so that sum |w_n|^2 == total_power
    static BeamWeights normalized(std::vector<Phasor> direction,
                                  double total_power);
    static BeamWeights zero(std::size_t count);

    std::span<Phasor const> values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double total_power() const { return total_power_; }

  private:
    BeamWeights(std::vector<Phasor> w, double p)
        : values_(std::move(w)), total_power_(p)
    {
    }

    std::vector<Phasor> values_;
    double total_power_{0};
};

//---------------------------------------------------------------------------//
// Conjugate the measured pilot phases and scale to the transmit power
BeamWeights retrodirective_weights(PhasorChannel const& pilot_channel,
                                   double total_power);

// Power delivered through a channel: |sum w_n h_n|^2
double received_power(PhasorChannel const& channel, BeamWeights const& weights);

// Coherent superposition of all elements at a point
Phasor field_at(ArrayLayout const& layout,
                BeamWeights const& weights,
                Point3 const& point);

//---------------------------------------------------------------------------//
/*!
 * Total radiated power of isotropic elements with the given excitation.
 *
 * Exact: sum_mn w_m conj(w_n) sinc(k r_mn). Equals the weight power only
 * when the elements are mutually uncoupled (e.g. a half-wavelength line).
 */
double radiated_power(ArrayLayout const& layout, BeamWeights const& weights);

// Monte Carlo estimate of the same quantity: mean far-field array-factor
// power over uniformly random directions
double sampled_radiated_power(ArrayLayout const& layout,
                              BeamWeights const& weights,
                              std::size_t directions,
                              std::uint64_t seed);

//---------------------------------------------------------------------------//
/*!
 * Received powers when several mobiles answer the same pilot.
 *
 * Mobile 0 is the intended one. With a shared pilot the array measures the
 * superposed channel and conjugates that; with orthogonal pilots it
 * conjugates mobile 0's channel alone.
 */
struct ContaminationResult
{
    std::vector<double> received_power;  //!< [W-equivalent] per mobile
    //! Received power relative to one element radiating the full power
    //! through the mobile's mean per-element channel
    std::vector<double> array_gain;
    std::vector<double> share;  //!< fraction of the summed received power
    double total_power{0};
    double radiated_power{0};  //!< exact far-field total
    double remainder{0};  //!< radiated but not captured by any mobile
};

ContaminationResult contamination_split(std::span<PhasorChannel const> channels,
                                        bool shared_pilot,
                                        double total_power);

ContaminationResult contamination_split(ArrayLayout const& layout,
                                        std::span<Point3 const> mobiles,
                                        bool shared_pilot,
                                        double total_power);

//---------------------------------------------------------------------------//
/*!
 * Field of several retrodirective beacons focused on one mobile.
 *
 * Phase-synchronized beacons add in amplitude; unsynchronized beacons have
 * independent uniform phase offsets, and the map reports the expected power
 * over those offsets (the incoherent sum).
 */
class BeaconFieldMap
{
  public:
    BeaconFieldMap(std::vector<ArrayLayout> beacons,
                   std::vector<BeamWeights> weights,
                   bool synchronized);

    double power_at(Point3 const& point) const;
    bool synchronized() const { return synchronized_; }
    std::size_t beacon_count() const { return beacons_.size(); }

  private:
    std::vector<ArrayLayout> beacons_;
    std::vector<BeamWeights> weights_;
    bool synchronized_;
};

struct CoordinatedBeacons
{
    double power_at_mobile{0};
    std::vector<double> amplitudes;  //!< per-beacon on-target amplitude
    BeaconFieldMap field_map;
};

CoordinatedBeacons coordinated_beacons(std::vector<ArrayLayout> const& beacons,
                                       Point3 const& mobile,
                                       bool phase_synchronized,
                                       double per_beacon_power);

// Identical planar arrays evenly spaced on a horizontal circle, each facing
// the centre
std::vector<ArrayLayout> beacon_ring(int count,
                                     double radius,
                                     Point3 const& center,
                                     ArrayLayout const& prototype);

//---------------------------------------------------------------------------//
struct GridSpec
{
    Point3 center;
    double half_width{1.0};  //!< [m]
    double step{0.1};  //!< [m]
};

struct GridCell
{
    Point3 point;
    double power{0};
};

// Evaluate a power map over a square grid in the horizontal plane through
// the centre. Cells are ordered by y then x and do not depend on the number
// of worker threads.
std::vector<GridCell> sample_grid(std::function<double(Point3 const&)> const& power,
                                  GridSpec const& grid,
                                  unsigned threads = 1);

}  // namespace wpc
