// SPDX-License-Identifier: Apache-2.0
#include "wpc/beamsim.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "wpc/diagnostics.hpp"
#include "wpc/errors.hpp"
#include "wpc/units.hpp"

namespace wpc
{
double distance(Point3 const& a, Point3 const& b)
{
    Point3 const d = a - b;
    return std::sqrt(d.x * d.x + d.y * d.y + d.z * d.z);
}

Phasor free_space_gain(Point3 const& from,
                       Point3 const& to,
                       CarrierSpec const& carrier)
{
    double const lambda = carrier.wavelength();
    double const d = distance(from, to);
    if (d <= 1e-9 * lambda)
    {
        throw GeometryError("field point coincides with a radiating element");
    }
    double const amplitude = lambda / (4.0 * pi * d);
    return std::polar(amplitude, -2.0 * pi * d / lambda);
}

//---------------------------------------------------------------------------//
// ArrayLayout
//---------------------------------------------------------------------------//
ArrayLayout::ArrayLayout(std::vector<Point3> positions, CarrierSpec carrier)
    : positions_(std::move(positions)), carrier_(carrier)
{
    if (positions_.empty())
    {
        throw std::invalid_argument("array layout needs at least one element");
    }
    for (auto const& p : positions_)
    {
        if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
        {
            throw std::invalid_argument("array element position is not finite");
        }
    }
    // O(N^2) scan; arrays here are at most a few thousand elements
    for (std::size_t i = 0; i < positions_.size(); ++i)
    {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < positions_.size(); ++j)
        {
            if (i != j)
            {
                nearest = std::min(nearest, distance(positions_[i], positions_[j]));
            }
        }
        if (std::isfinite(nearest))
        {
            max_neighbor_spacing_ = std::max(max_neighbor_spacing_, nearest);
        }
    }
}

namespace
{
void warn_if_sparse(ArrayLayout const& layout)
{
    if (layout.exceeds_half_wavelength())
    {
        std::ostringstream os;
        os << "element spacing " << layout.max_neighbor_spacing()
           << " m exceeds half a wavelength ("
           << 0.5 * layout.carrier().wavelength()
           << " m); expect grating lobes";
        warn(os.str());
    }
}
}  // namespace

ArrayLayout ArrayLayout::uniform_planar(int rows,
                                        int cols,
                                        double spacing,
                                        CarrierSpec carrier)
{
    if (rows < 1 || cols < 1)
    {
        throw std::invalid_argument("planar array needs positive dimensions");
    }
    detail::require_positive(spacing, "element spacing");
    std::vector<Point3> pos;
    pos.reserve(static_cast<std::size_t>(rows) * cols);
    double const y0 = -0.5 * (cols - 1) * spacing;
    double const z0 = -0.5 * (rows - 1) * spacing;
    for (int r = 0; r < rows; ++r)
    {
        for (int c = 0; c < cols; ++c)
        {
            pos.push_back({0.0, y0 + c * spacing, z0 + r * spacing});
        }
    }
    ArrayLayout result(std::move(pos), carrier);
    warn_if_sparse(result);
    return result;
}

ArrayLayout
ArrayLayout::uniform_linear(int count, double spacing, CarrierSpec carrier)
{
    return uniform_planar(1, count, spacing, carrier);
}

ArrayLayout ArrayLayout::translated(Point3 offset) const
{
    std::vector<Point3> pos(positions_.begin(), positions_.end());
    for (auto& p : pos)
    {
        p = p + offset;
    }
    return {std::move(pos), carrier_};
}

ArrayLayout ArrayLayout::rotated_z(double angle_rad) const
{
    double const c = std::cos(angle_rad);
    double const s = std::sin(angle_rad);
    std::vector<Point3> pos(positions_.begin(), positions_.end());
    for (auto& p : pos)
    {
        p = {c * p.x - s * p.y, s * p.x + c * p.y, p.z};
    }
    return {std::move(pos), carrier_};
}

Point3 ArrayLayout::centroid() const
{
    Point3 sum;
    for (auto const& p : positions_)
    {
        sum = sum + p;
    }
    return (1.0 / static_cast<double>(positions_.size())) * sum;
}

bool ArrayLayout::exceeds_half_wavelength() const
{
    // Small slack so a grid built at exactly lambda/2 is not flagged
    return max_neighbor_spacing_ > 0.5 * carrier_.wavelength() * (1 + 1e-12);
}

//---------------------------------------------------------------------------//
// Channels and weights
//---------------------------------------------------------------------------//
PhasorChannel::PhasorChannel(std::vector<Phasor> gains)
    : gains_(std::move(gains))
{
    for (auto const& h : gains_)
    {
        if (!std::isfinite(h.real()) || !std::isfinite(h.imag()))
        {
            throw std::invalid_argument("channel gain is not finite");
        }
    }
}

PhasorChannel PhasorChannel::free_space(ArrayLayout const& layout, Point3 point)
{
    std::vector<Phasor> gains;
    gains.reserve(layout.size());
    for (auto const& p : layout.positions())
    {
        gains.push_back(free_space_gain(p, point, layout.carrier()));
    }
    return PhasorChannel(std::move(gains));
}

PhasorChannel PhasorChannel::obstructed(std::vector<bool> const& blocked) const
{
    if (blocked.size() != gains_.size())
    {
        throw std::invalid_argument("obstruction mask size mismatch");
    }
    std::vector<Phasor> gains(gains_);
    for (std::size_t i = 0; i < gains.size(); ++i)
    {
        if (blocked[i])
        {
            gains[i] = {0.0, 0.0};
        }
    }
    return PhasorChannel(std::move(gains));
}

double PhasorChannel::norm_squared() const
{
    double sum = 0;
    for (auto const& h : gains_)
    {
        sum += std::norm(h);
    }
    return sum;
}

BeamWeights BeamWeights::normalized(std::vector<Phasor> direction,
                                    double total_power)
{
    detail::require_positive(total_power, "total transmit power");
    double norm2 = 0;
    for (auto const& w : direction)
    {
        norm2 += std::norm(w);
    }
    if (!(norm2 > 0))
    {
        throw DegenerateChannelError("beam direction has zero energy");
    }
    double const scale = std::sqrt(total_power / norm2);
    for (auto& w : direction)
    {
        w *= scale;
    }
    return {std::move(direction), total_power};
}

BeamWeights BeamWeights::zero(std::size_t count)
{
    return {std::vector<Phasor>(count), 0.0};
}

//---------------------------------------------------------------------------//
/*!
 * Retrodirective excitation from a received pilot.
 *
 * The pilot channel stands in for the per-element phase measured against a
 * local reference. Conjugating it and scaling to the transmit power gives
 * the matched filter, which maximizes power delivered back to the pilot
 * source: P * sum |h_n|^2.
 */
BeamWeights retrodirective_weights(PhasorChannel const& pilot_channel,
                                   double total_power)
{
    if (!(pilot_channel.norm_squared() > 0))
    {
        throw DegenerateChannelError("pilot channel is identically zero");
    }
    std::vector<Phasor> w;
    w.reserve(pilot_channel.size());
    for (auto const& h : pilot_channel.gains())
    {
        w.push_back(std::conj(h));
    }
    return BeamWeights::normalized(std::move(w), total_power);
}

double received_power(PhasorChannel const& channel, BeamWeights const& weights)
{
    if (channel.size() != weights.size())
    {
        throw std::invalid_argument("channel and weight sizes differ");
    }
    Phasor y{0, 0};
    auto const h = channel.gains();
    auto const w = weights.values();
    for (std::size_t i = 0; i < h.size(); ++i)
    {
        y += w[i] * h[i];
    }
    return std::norm(y);
}

Phasor field_at(ArrayLayout const& layout,
                BeamWeights const& weights,
                Point3 const& point)
{
    if (layout.size() != weights.size())
    {
        throw std::invalid_argument("layout and weight sizes differ");
    }
    Phasor y{0, 0};
    auto const pos = layout.positions();
    auto const w = weights.values();
    for (std::size_t i = 0; i < pos.size(); ++i)
    {
        y += w[i] * free_space_gain(pos[i], point, layout.carrier());
    }
    return y;
}

double radiated_power(ArrayLayout const& layout, BeamWeights const& weights)
{
    if (layout.size() != weights.size())
    {
        throw std::invalid_argument("layout and weight sizes differ");
    }
    double const k = 2.0 * pi / layout.carrier().wavelength();
    auto const pos = layout.positions();
    auto const w = weights.values();
    double total = 0;
    for (std::size_t m = 0; m < pos.size(); ++m)
    {
        total += std::norm(w[m]);
        for (std::size_t n = m + 1; n < pos.size(); ++n)
        {
            double const kr = k * distance(pos[m], pos[n]);
            double const coupling = std::sin(kr) / kr;
            total += 2.0 * (w[m] * std::conj(w[n])).real() * coupling;
        }
    }
    return total;
}

double sampled_radiated_power(ArrayLayout const& layout,
                              BeamWeights const& weights,
                              std::size_t directions,
                              std::uint64_t seed)
{
    if (directions == 0)
    {
        throw std::invalid_argument("need at least one sample direction");
    }
    double const k = 2.0 * pi / layout.carrier().wavelength();
    auto const pos = layout.positions();
    auto const w = weights.values();

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double sum = 0;
    for (std::size_t s = 0; s < directions; ++s)
    {
        // Uniform on the sphere via (cos theta, phi)
        double const cos_t = 2.0 * unit(rng) - 1.0;
        double const sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
        double const phi = 2.0 * pi * unit(rng);
        Point3 const u{sin_t * std::cos(phi), sin_t * std::sin(phi), cos_t};
        Phasor af{0, 0};
        for (std::size_t n = 0; n < pos.size(); ++n)
        {
            double const proj = u.x * pos[n].x + u.y * pos[n].y + u.z * pos[n].z;
            af += w[n] * std::polar(1.0, k * proj);
        }
        sum += std::norm(af);
    }
    return sum / static_cast<double>(directions);
}

//---------------------------------------------------------------------------//
// Pilot contamination
//---------------------------------------------------------------------------//
namespace
{
// With a shared pilot the array cannot separate the mobiles: it measures
// the superposition of their channels
PhasorChannel measured_pilot(std::span<PhasorChannel const> channels,
                             bool shared_pilot)
{
    if (!shared_pilot)
    {
        return channels.front();
    }
    std::vector<Phasor> sum(channels.front().size());
    for (auto const& h : channels)
    {
        for (std::size_t i = 0; i < sum.size(); ++i)
        {
            sum[i] += h[i];
        }
    }
    return PhasorChannel(std::move(sum));
}

double captured_power(ContaminationResult const& result)
{
    double captured = 0;
    for (double p : result.received_power)
    {
        captured += p;
    }
    return captured;
}

ContaminationResult
split_with_weights(std::span<PhasorChannel const> channels,
                   BeamWeights const& weights,
                   double total_power)
{
    ContaminationResult result;
    result.total_power = total_power;
    double captured = 0;
    for (auto const& h : channels)
    {
        double const p = received_power(h, weights);
        double const mean_element = h.norm_squared()
                                    / static_cast<double>(h.size());
        result.received_power.push_back(p);
        result.array_gain.push_back(
            mean_element > 0 ? p / (total_power * mean_element) : 0.0);
        captured += p;
    }
    for (double p : result.received_power)
    {
        result.share.push_back(captured > 0 ? p / captured : 0.0);
    }
    return result;
}
}  // namespace

ContaminationResult contamination_split(std::span<PhasorChannel const> channels,
                                        bool shared_pilot,
                                        double total_power)
{
    if (channels.size() < 2)
    {
        throw std::invalid_argument("contamination needs at least two mobiles");
    }
    std::size_t const n = channels.front().size();
    for (auto const& h : channels)
    {
        if (h.size() != n)
        {
            throw std::invalid_argument("mobile channels differ in size");
        }
    }

    auto const weights = retrodirective_weights(
        measured_pilot(channels, shared_pilot), total_power);
    auto result = split_with_weights(channels, weights, total_power);
    // Without geometry, treat elements as uncoupled
    result.radiated_power = total_power;
    result.remainder = result.radiated_power - captured_power(result);
    return result;
}

ContaminationResult contamination_split(ArrayLayout const& layout,
                                        std::span<Point3 const> mobiles,
                                        bool shared_pilot,
                                        double total_power)
{
    std::vector<PhasorChannel> channels;
    channels.reserve(mobiles.size());
    for (auto const& m : mobiles)
    {
        channels.push_back(PhasorChannel::free_space(layout, m));
    }
    auto result = contamination_split(channels, shared_pilot, total_power);

    // Far-field total including element coupling
    auto const weights = retrodirective_weights(
        measured_pilot(channels, shared_pilot), total_power);
    result.radiated_power = radiated_power(layout, weights);
    result.remainder = result.radiated_power - captured_power(result);
    return result;
}

//---------------------------------------------------------------------------//
// Coordinated beacons
//---------------------------------------------------------------------------//
BeaconFieldMap::BeaconFieldMap(std::vector<ArrayLayout> beacons,
                               std::vector<BeamWeights> weights,
                               bool synchronized)
    : beacons_(std::move(beacons))
    , weights_(std::move(weights))
    , synchronized_(synchronized)
{
    if (beacons_.size() != weights_.size())
    {
        throw std::invalid_argument("one weight vector per beacon required");
    }
}

double BeaconFieldMap::power_at(Point3 const& point) const
{
    if (synchronized_)
    {
        Phasor total{0, 0};
        for (std::size_t k = 0; k < beacons_.size(); ++k)
        {
            total += field_at(beacons_[k], weights_[k], point);
        }
        return std::norm(total);
    }
    double total = 0;
    for (std::size_t k = 0; k < beacons_.size(); ++k)
    {
        total += std::norm(field_at(beacons_[k], weights_[k], point));
    }
    return total;
}

CoordinatedBeacons coordinated_beacons(std::vector<ArrayLayout> const& beacons,
                                       Point3 const& mobile,
                                       bool phase_synchronized,
                                       double per_beacon_power)
{
    if (beacons.size() < 2)
    {
        throw std::invalid_argument("coordination needs at least two beacons");
    }
    std::vector<BeamWeights> weights;
    std::vector<double> amplitudes;
    for (auto const& layout : beacons)
    {
        auto const h = PhasorChannel::free_space(layout, mobile);
        weights.push_back(retrodirective_weights(h, per_beacon_power));
        // Matched filter: the on-target field is real, sqrt(P) * ||h||
        amplitudes.push_back(std::sqrt(per_beacon_power * h.norm_squared()));
    }

    double power = 0;
    if (phase_synchronized)
    {
        double sum = 0;
        for (double a : amplitudes)
        {
            sum += a;
        }
        power = sum * sum;
    }
    else
    {
        for (double a : amplitudes)
        {
            power += a * a;
        }
    }
    return {power,
            std::move(amplitudes),
            BeaconFieldMap(beacons, std::move(weights), phase_synchronized)};
}

std::vector<ArrayLayout> beacon_ring(int count,
                                     double radius,
                                     Point3 const& center,
                                     ArrayLayout const& prototype)
{
    if (count < 1)
    {
        throw std::invalid_argument("beacon ring needs at least one beacon");
    }
    detail::require_positive(radius, "beacon ring radius");
    std::vector<ArrayLayout> ring;
    for (int k = 0; k < count; ++k)
    {
        double const angle = 2.0 * pi * k / count;
        Point3 const where{center.x + radius * std::cos(angle),
                           center.y + radius * std::sin(angle),
                           center.z};
        ring.push_back(prototype.rotated_z(angle).translated(where));
    }
    return ring;
}

//---------------------------------------------------------------------------//
std::vector<GridCell> sample_grid(std::function<double(Point3 const&)> const& power,
                                  GridSpec const& grid,
                                  unsigned threads)
{
    detail::require_positive(grid.step, "grid step");
    if (!(grid.half_width >= 0))
    {
        throw DomainError("grid half width must be non-negative");
    }
    auto const half = static_cast<long>(std::llround(grid.half_width / grid.step));
    auto const side = static_cast<std::size_t>(2 * half + 1);

    std::vector<GridCell> cells(side * side);
    for (std::size_t j = 0; j < side; ++j)
    {
        for (std::size_t i = 0; i < side; ++i)
        {
            auto const di = static_cast<double>(static_cast<long>(i) - half);
            auto const dj = static_cast<double>(static_cast<long>(j) - half);
            cells[j * side + i].point = {grid.center.x + di * grid.step,
                                         grid.center.y + dj * grid.step,
                                         grid.center.z};
        }
    }

    threads = std::max(1u, threads);
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto const work = [&](std::size_t begin, std::size_t end) {
        try
        {
            for (std::size_t c = begin; c < end; ++c)
            {
                cells[c].power = power(cells[c].point);
            }
        }
        catch (...)
        {
            std::lock_guard lock(failure_mutex);
            if (!failure)
            {
                failure = std::current_exception();
            }
        }
    };

    if (threads == 1)
    {
        work(0, cells.size());
    }
    else
    {
        std::vector<std::jthread> pool;
        std::size_t const chunk = (cells.size() + threads - 1) / threads;
        for (std::size_t begin = 0; begin < cells.size(); begin += chunk)
        {
            pool.emplace_back(work, begin, std::min(cells.size(), begin + chunk));
        }
    }
    if (failure)
    {
        std::rethrow_exception(failure);
    }
    return cells;
}

}  // namespace wpc
