// SPDX-License-Identifier: Apache-2.0
#include "wpc/netcov.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "wpc/diagnostics.hpp"
#include "wpc/errors.hpp"
#include "wpc/units.hpp"

namespace wpc
{
namespace
{
constexpr double inf = std::numeric_limits<double>::infinity();

//! Effective device: transmitting mobiles must also harvest uplink power
DeviceProfile loaded_device(NetworkScenario const& s)
{
    DeviceProfile dev = s.device;
    dev.consumption += s.uplink_extra_consumption;
    return dev;
}
}  // namespace

void NetworkScenario::validate() const
{
    if (!(pb_density >= 0) || !(bs_density >= 0))
    {
        throw DomainError("node densities must be non-negative");
    }
    detail::require_positive(region_side, "region side");
    device.validate();
    transmitter.validate();
    if (!(it_pathloss_exponent > 2))
    {
        throw DomainError("IT path-loss exponent must exceed 2");
    }
    detail::require_positive(it_reference_distance, "IT reference distance");
    detail::require_positive(bs_tx_power, "BS transmit power");
    detail::require_positive(noise_power, "noise power");
    if (replications < 1 || samples_per_replication < 1)
    {
        throw DomainError("need at least one replication and one sample");
    }
    if (!(uplink_extra_consumption >= 0))
    {
        throw DomainError("uplink extra consumption must be non-negative");
    }
    double const r = beacon_range(*this);
    if (region_side < 10.0 * r)
    {
        std::ostringstream os;
        os << "region side " << region_side
           << " m is under 10x the power-transfer range (" << r << " m)";
        throw DomainError(os.str());
    }
}

std::vector<Point2> sample_ppp(double density, double side, NetworkRng& rng)
{
    if (!(density >= 0))
    {
        throw DomainError("PPP density must be non-negative");
    }
    detail::require_positive(side, "PPP window side");
    double const mean = density * side * side;
    if (mean == 0)
    {
        return {};
    }
    auto const count = std::poisson_distribution<long long>(mean)(rng);
    std::uniform_real_distribution<double> coord(0.0, side);
    std::vector<Point2> points(static_cast<std::size_t>(count));
    for (auto& p : points)
    {
        p.x = coord(rng);
        p.y = coord(rng);
    }
    return points;
}

NetworkRng replication_rng(std::uint64_t seed, std::uint64_t replication)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(replication),
                      static_cast<std::uint32_t>(replication >> 32)};
    return NetworkRng(seq);
}

double confidence(std::span<double const> replication_estimates)
{
    auto const n = replication_estimates.size();
    if (n < 2)
    {
        throw UndefinedVarianceError(
            "confidence needs at least two replications");
    }
    // Welford keeps constant inputs at exactly zero spread
    double mean = 0;
    double ss = 0;
    double k = 0;
    for (double v : replication_estimates)
    {
        k += 1;
        double const delta = v - mean;
        mean += delta / k;
        ss += delta * (v - mean);
    }
    double const sd = std::sqrt(ss / static_cast<double>(n - 1));
    return 1.96 * sd / std::sqrt(static_cast<double>(n));
}

double nearest_neighbor_coverage(double density, double radius)
{
    if (!(density >= 0) || !(radius >= 0))
    {
        throw DomainError("density and radius must be non-negative");
    }
    return -std::expm1(-density * pi * radius * radius);
}

double it_range(NetworkScenario const& s)
{
    double const snr_min = db_to_ratio(s.it_snr_threshold_db);
    if (snr_min <= 0)
    {
        return inf;
    }
    double const gain_min = snr_min * s.noise_power / s.bs_tx_power;
    if (gain_min >= 1)
    {
        // Clamped path gain: only reachable inside the reference distance
        return gain_min == 1 ? s.it_reference_distance : 0.0;
    }
    return s.it_reference_distance
           * std::pow(gain_min, -1.0 / s.it_pathloss_exponent);
}

double beacon_range(NetworkScenario const& s)
{
    auto const range = pt_range(s.transmitter, loaded_device(s));
    return range.feasible() ? range.distance : 0.0;
}

//---------------------------------------------------------------------------//
// Replication engine
//---------------------------------------------------------------------------//
namespace
{
struct MarkedPoint
{
    Point2 where;
    double mark;
};

struct Cell
{
    double bs_density;
    double pb_density;
};

//! Per-replication coverage fractions: power, information, joint
using CellCoverage = std::array<double, 3>;

std::vector<MarkedPoint>
sample_marked(double density, double side, NetworkRng& rng)
{
    auto points = sample_ppp(density, side, rng);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<MarkedPoint> marked;
    marked.reserve(points.size());
    for (auto const& p : points)
    {
        marked.push_back({p, unit(rng)});
    }
    return marked;
}

double planar_distance(Point2 a, Point2 b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

class MobileEvaluator
{
  public:
    explicit MobileEvaluator(NetworkScenario const& s)
        : s_(s)
        , device_(loaded_device(s))
        , receive_(device_.aperture())
        , snr_min_(db_to_ratio(s.it_snr_threshold_db))
    {
    }

    double harvested(double d) const
    {
        if (!(d < inf))
        {
            return 0;
        }
        double eta = 1.0;
        if (d > 0)
        {
            LinkGeometry geom{s_.transmitter.aperture, receive_, d};
            eta = beam_efficiency(beta(geom, s_.transmitter.carrier));
        }
        return device_.rf_to_dc * s_.transmitter.radiated_power * eta;
    }

    bool it_covered(double d_bs) const
    {
        if (!(d_bs < inf))
        {
            return false;
        }
        double gain = 1.0;
        if (d_bs > s_.it_reference_distance)
        {
            gain = std::pow(d_bs / s_.it_reference_distance,
                            -s_.it_pathloss_exponent);
        }
        return s_.bs_tx_power * gain / s_.noise_power >= snr_min_;
    }

    //! Nearest distance and summed harvest at each thinning level
    struct Levels
    {
        std::vector<double> nearest;
        std::vector<double> accumulated;
    };

    /*!
     * Scan a marked process once for every keep threshold.
     *
     * A point with mark m survives at every level whose threshold exceeds m,
     * so it is recorded at the first such level and folded into the rest by
     * a running minimum (and running sum).
     */
    Levels scan(Point2 mobile,
                std::vector<MarkedPoint> const& points,
                std::vector<double> const& keep,
                bool accumulate) const
    {
        Levels out{std::vector<double>(keep.size(), inf),
                   std::vector<double>(keep.size(), 0.0)};
        for (auto const& p : points)
        {
            auto const j = static_cast<std::size_t>(
                std::upper_bound(keep.begin(), keep.end(), p.mark) - keep.begin());
            if (j == keep.size())
                continue;
            double const d = planar_distance(mobile, p.where);
            out.nearest[j] = std::min(out.nearest[j], d);
            if (accumulate)
                out.accumulated[j] += harvested(d);
        }
        for (std::size_t j = 1; j < keep.size(); ++j)
        {
            out.nearest[j] = std::min(out.nearest[j], out.nearest[j - 1]);
            out.accumulated[j] += out.accumulated[j - 1];
        }
        return out;
    }

    CellCoverage evaluate(Levels const& pb,
                          std::size_t pb_level,
                          Levels const& bs,
                          std::size_t bs_level) const
    {
        double const nearest_pb = pb.nearest[pb_level];
        double const nearest_bs = bs.nearest[bs_level];
        double power = 0;
        if (s_.accumulate_beacons)
        {
            power = pb.accumulated[pb_level]
                    + (s_.bs_swipt ? bs.accumulated[bs_level] : 0.0);
        }
        else
        {
            double const d = s_.bs_swipt ? std::min(nearest_pb, nearest_bs)
                                         : nearest_pb;
            power = harvested(d);
        }
        bool const pt = power >= device_.consumption;
        bool const it = it_covered(nearest_bs);
        return {pt ? 1.0 : 0.0, it ? 1.0 : 0.0, (pt && it) ? 1.0 : 0.0};
    }

  private:
    NetworkScenario const& s_;
    DeviceProfile device_;
    Aperture receive_;
    double snr_min_;
};

double guard_band(NetworkScenario const& s)
{
    double const relevant = std::max(beacon_range(s), it_range(s));
    return std::min(relevant, 0.45 * s.region_side);
}

//! Sorted distinct keep thresholds and each cell's level index
struct KeepLevels
{
    std::vector<double> thresholds;
    std::vector<std::size_t> cell_level;
};

KeepLevels keep_levels(std::vector<double> const& keeps)
{
    KeepLevels out{keeps, {}};
    std::sort(out.thresholds.begin(), out.thresholds.end());
    out.thresholds.erase(
        std::unique(out.thresholds.begin(), out.thresholds.end()),
        out.thresholds.end());
    for (double k : keeps)
    {
        out.cell_level.push_back(static_cast<std::size_t>(
            std::lower_bound(out.thresholds.begin(), out.thresholds.end(), k)
            - out.thresholds.begin()));
    }
    return out;
}

struct ReplicationPlan
{
    double pb_max{0};
    double bs_max{0};
    KeepLevels pb;
    KeepLevels bs;
};

ReplicationPlan plan_cells(std::span<Cell const> cells)
{
    ReplicationPlan plan;
    for (auto const& c : cells)
    {
        plan.pb_max = std::max(plan.pb_max, c.pb_density);
        plan.bs_max = std::max(plan.bs_max, c.bs_density);
    }
    std::vector<double> pb_keep;
    std::vector<double> bs_keep;
    for (auto const& c : cells)
    {
        pb_keep.push_back(plan.pb_max > 0 ? c.pb_density / plan.pb_max : 0);
        bs_keep.push_back(plan.bs_max > 0 ? c.bs_density / plan.bs_max : 0);
    }
    plan.pb = keep_levels(pb_keep);
    plan.bs = keep_levels(bs_keep);
    return plan;
}

std::vector<CellCoverage> run_replication(NetworkScenario const& s,
                                          ReplicationPlan const& plan,
                                          std::uint64_t replication)
{
    auto rng = replication_rng(s.seed, replication);
    auto const beacons = sample_marked(plan.pb_max, s.region_side, rng);
    auto const stations = sample_marked(plan.bs_max, s.region_side, rng);

    std::vector<Point2> mobiles;
    double const side = s.region_side;
    if (s.samples_per_replication == 1)
    {
        mobiles.push_back({0.5 * side, 0.5 * side});
    }
    else
    {
        double const g = guard_band(s);
        std::uniform_real_distribution<double> coord(g, side - g);
        for (std::size_t i = 0; i < s.samples_per_replication; ++i)
        {
            double const x = coord(rng);
            double const y = coord(rng);
            mobiles.push_back({x, y});
        }
    }

    MobileEvaluator const eval(s);
    std::size_t const n_cells = plan.pb.cell_level.size();
    std::vector<CellCoverage> out(n_cells, CellCoverage{0, 0, 0});
    for (auto const& m : mobiles)
    {
        auto const pb = eval.scan(m, beacons, plan.pb.thresholds, s.accumulate_beacons);
        auto const bs = eval.scan(m,
                                  stations,
                                  plan.bs.thresholds,
                                  s.accumulate_beacons && s.bs_swipt);
        for (std::size_t c = 0; c < n_cells; ++c)
        {
            auto const cov = eval.evaluate(
                pb, plan.pb.cell_level[c], bs, plan.bs.cell_level[c]);
            for (int k = 0; k < 3; ++k)
            {
                out[c][k] += cov[k];
            }
        }
    }
    for (auto& cell : out)
    {
        for (auto& v : cell)
        {
            v /= static_cast<double>(mobiles.size());
        }
    }
    return out;
}

/*!
 * Run all replications over a set of density cells.
 *
 * Returns [replication][cell] coverage fractions. Each replication owns its
 * RNG stream, so the result does not depend on the thread count.
 */
std::vector<std::vector<CellCoverage>>
run_cells(NetworkScenario const& s, std::span<Cell const> cells, unsigned threads)
{
    auto const plan = plan_cells(cells);
    std::vector<std::vector<CellCoverage>> results(s.replications);
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto const work = [&](std::size_t begin, std::size_t end) {
        try
        {
            for (std::size_t r = begin; r < end; ++r)
            {
                results[r] = run_replication(s, plan, r);
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

    threads = std::max(1u, threads);
    if (threads == 1)
    {
        work(0, s.replications);
    }
    else
    {
        std::vector<std::jthread> pool;
        std::size_t const chunk = (s.replications + threads - 1) / threads;
        for (std::size_t b = 0; b < s.replications; b += chunk)
        {
            pool.emplace_back(work, b, std::min(s.replications, b + chunk));
        }
    }
    if (failure)
    {
        std::rethrow_exception(failure);
    }
    return results;
}

Estimate summarize(std::vector<double> const& per_replication)
{
    Estimate e;
    for (double v : per_replication)
    {
        e.mean += v;
    }
    e.mean /= static_cast<double>(per_replication.size());
    if (per_replication.size() >= 2)
    {
        e.half_width = confidence(per_replication);
    }
    return e;
}

Estimate summarize_cell(std::vector<std::vector<CellCoverage>> const& runs,
                        std::size_t cell,
                        int service)
{
    std::vector<double> values;
    values.reserve(runs.size());
    for (auto const& rep : runs)
    {
        values.push_back(rep[cell][service]);
    }
    return summarize(values);
}

void warn_if_unpowerable(NetworkScenario const& s)
{
    if (beacon_range(s) == 0 && !s.accumulate_beacons)
    {
        warn("device '" + s.device.name
             + "' cannot be powered by a single beacon; power coverage is 0");
    }
}
}  // namespace

//---------------------------------------------------------------------------//
CoverageResult simulate_coverage(NetworkScenario const& scenario, unsigned threads)
{
    scenario.validate();
    warn_if_unpowerable(scenario);
    std::array<Cell, 1> const cell{
        Cell{scenario.bs_density, scenario.pb_density}};
    auto const runs = run_cells(scenario, cell, threads);

    CoverageResult result;
    result.pt = summarize_cell(runs, 0, 0);
    result.it = summarize_cell(runs, 0, 1);
    result.joint = summarize_cell(runs, 0, 2);
    result.replications_used = scenario.replications;
    return result;
}

Estimate pt_coverage(NetworkScenario const& scenario, unsigned threads)
{
    return simulate_coverage(scenario, threads).pt;
}

Estimate it_coverage(NetworkScenario const& scenario, unsigned threads)
{
    return simulate_coverage(scenario, threads).it;
}

std::vector<FrontierPoint> density_tradeoff(NetworkScenario const& scenario,
                                            double target_joint_coverage,
                                            std::span<double const> bs_densities,
                                            std::span<double const> pb_densities,
                                            unsigned threads)
{
    scenario.validate();
    if (bs_densities.empty() || pb_densities.empty())
    {
        throw std::invalid_argument("density grid must be non-empty");
    }
    for (double d : bs_densities)
    {
        if (!(d >= 0))
            throw DomainError("grid densities must be non-negative");
    }
    std::vector<double> pb_sorted(pb_densities.begin(), pb_densities.end());
    for (double d : pb_sorted)
    {
        if (!(d >= 0))
            throw DomainError("grid densities must be non-negative");
    }
    std::sort(pb_sorted.begin(), pb_sorted.end());
    warn_if_unpowerable(scenario);

    std::vector<Cell> cells;
    for (double bs : bs_densities)
    {
        for (double pb : pb_sorted)
        {
            cells.push_back({bs, pb});
        }
    }
    auto const runs = run_cells(scenario, cells, threads);

    std::vector<FrontierPoint> frontier;
    for (std::size_t i = 0; i < bs_densities.size(); ++i)
    {
        FrontierPoint point{bs_densities[i], std::nullopt, 0.0};
        for (std::size_t j = 0; j < pb_sorted.size(); ++j)
        {
            double const joint
                = summarize_cell(runs, i * pb_sorted.size() + j, 2).mean;
            if (joint >= target_joint_coverage)
            {
                point.min_pb_density = pb_sorted[j];
                point.joint_coverage = joint;
                break;
            }
            point.joint_coverage = std::max(point.joint_coverage, joint);
        }
        frontier.push_back(point);
    }
    return frontier;
}

}  // namespace wpc
