// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "wpc/beamsim.hpp"
#include "wpc/diagnostics.hpp"
#include "wpc/errors.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace wpc;

namespace
{
auto const carrier = CarrierSpec::from_frequency(2.5e9);
double const lambda = carrier.wavelength();

std::vector<Phasor> random_direction(std::size_t n, std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    std::vector<Phasor> v(n);
    for (auto& x : v)
        x = {g(rng), g(rng)};
    return v;
}

double analytic_bound(PhasorChannel const& h, double p)
{
    double s = 0;
    for (auto const& x : h.gains())
        s += std::norm(x);
    return p * s;
}

// Two DFT columns: full support, equal norm, h1 . conj(h2) = 0
std::pair<PhasorChannel, PhasorChannel> orthogonal_pair(std::size_t n, double amp)
{
    std::vector<Phasor> a(n);
    std::vector<Phasor> b(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        double const base = 0.37 * static_cast<double>(i);
        a[i] = std::polar(amp, base);
        b[i] = std::polar(amp, base + 2 * std::numbers::pi * static_cast<double>(i) / n);
    }
    return {PhasorChannel(a), PhasorChannel(b)};
}

class WarningCapture
{
  public:
    WarningCapture()
        : previous_(set_warning_sink(
            [this](std::string_view m) { messages.emplace_back(m); }))
    {
    }
    ~WarningCapture() { set_warning_sink(previous_); }
    std::vector<std::string> messages;

  private:
    WarningSink previous_;
};
}  // namespace

TEST_CASE("free-space gain follows the spherical wave")
{
    Point3 const a{0, 0, 0};
    Point3 const b{3.0, 4.0, 0.0};
    auto const g = free_space_gain(a, b, carrier);
    CHECK_THAT(std::abs(g), WithinRel(lambda / (4 * std::numbers::pi * 5.0), 1e-14));
    double const phase = std::remainder(-2 * std::numbers::pi * 5.0 / lambda,
                                        2 * std::numbers::pi);
    CHECK_THAT(std::arg(g), WithinAbs(phase, 1e-9));
    CHECK(free_space_gain(b, a, carrier) == g);
    CHECK_THROWS_AS(free_space_gain(a, a, carrier), GeometryError);
}

TEST_CASE("single element conjugation")
{
    double const phi = 1.234;
    double const p = 7.0;
    auto const w = retrodirective_weights(PhasorChannel({std::polar(0.3, phi)}), p);
    REQUIRE(w.size() == 1);
    Phasor const expected = std::polar(std::sqrt(p), -phi);
    CHECK_THAT(w.values()[0].real(), WithinAbs(expected.real(), 1e-14));
    CHECK_THAT(w.values()[0].imag(), WithinAbs(expected.imag(), 1e-14));
}

TEST_CASE("weights are normalized to the transmit power")
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i)
    {
        auto const w = BeamWeights::normalized(random_direction(32, rng), 3.5);
        double s = 0;
        for (auto const& x : w.values())
            s += std::norm(x);
        CHECK_THAT(s, WithinRel(3.5, 1e-12));
    }
    CHECK_THROWS(BeamWeights::normalized(std::vector<Phasor>(4), 1.0));
}

TEST_CASE("conjugate weights beat random weights")
{
    std::mt19937_64 rng(2024);
    double const p = 1.0;
    for (int trial = 0; trial < 3; ++trial)
    {
        PhasorChannel const h(random_direction(16, rng));
        double const best = received_power(h, retrodirective_weights(h, p));
        CHECK_THAT(best, WithinRel(analytic_bound(h, p), 1e-9));
        for (int i = 0; i < 20000; ++i)
        {
            auto const w = BeamWeights::normalized(random_direction(16, rng), p);
            CHECK(received_power(h, w) <= best * (1 + 1e-12));
        }
    }
}

TEST_CASE("sixteen coherent elements give sixteen-fold power")
{
    std::vector<Phasor> gains;
    for (int n = 0; n < 16; ++n)
        gains.push_back(std::polar(0.01, 0.5 * n));
    PhasorChannel const h(gains);
    double const p = 2.0;
    double const single = p * std::norm(gains[0]);
    CHECK_THAT(received_power(h, retrodirective_weights(h, p)),
               WithinRel(16 * single, 1e-12));
}

TEST_CASE("global phase rotation leaves received power unchanged")
{
    std::mt19937_64 rng(9);
    PhasorChannel const h(random_direction(24, rng));
    std::vector<Phasor> rotated;
    Phasor const turn = std::polar(1.0, 2.1);
    for (auto const& x : h.gains())
        rotated.push_back(turn * x);
    PhasorChannel const hr(rotated);

    double const a = received_power(h, retrodirective_weights(h, 1.0));
    double const b = received_power(hr, retrodirective_weights(hr, 1.0));
    CHECK_THAT(b, WithinRel(a, 1e-12));

    auto const fixed = BeamWeights::normalized(random_direction(24, rng), 1.0);
    CHECK_THAT(received_power(hr, fixed), WithinRel(received_power(h, fixed), 1e-12));
}

TEST_CASE("all-zero pilot is rejected")
{
    CHECK_THROWS_AS(retrodirective_weights(PhasorChannel(std::vector<Phasor>(8)), 1.0),
                    DegenerateChannelError);
    CHECK_THROWS(PhasorChannel({Phasor{std::nan(""), 0.0}}));
}

TEST_CASE("field of the retrodirective beam peaks at the pilot source")
{
    auto const array = ArrayLayout::uniform_planar(6, 6, lambda / 2, carrier);
    Point3 const mobile{8.0, 1.5, -0.5};
    auto const w = retrodirective_weights(PhasorChannel::free_space(array, mobile), 1.0);
    double const on = std::norm(field_at(array, w, mobile));
    CHECK_THAT(on,
               WithinRel(received_power(PhasorChannel::free_space(array, mobile), w),
                         1e-12));
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> jitter(-1.0, 1.0);
    for (int i = 0; i < 500; ++i)
    {
        Point3 const q{mobile.x + jitter(rng), mobile.y + jitter(rng), mobile.z};
        double const dist_ratio = distance(q, {}) / distance(mobile, {});
        // Allow for the 1/d amplitude gain of points closer to the array
        CHECK(std::norm(field_at(array, w, q)) <= on / (dist_ratio * dist_ratio) * 1.5);
    }
    CHECK(std::norm(field_at(array, BeamWeights::zero(array.size()), mobile)) == 0.0);
    CHECK_THROWS_AS(field_at(array, w, array.positions()[3]), GeometryError);
}

TEST_CASE("two half-wavelength elements double the broadside power")
{
    auto const pair = ArrayLayout::uniform_linear(2, lambda / 2, carrier);
    ArrayLayout const single({{0, 0, 0}}, carrier);
    Point3 const far{200.0, 0.0, 0.0};
    auto const w2 = retrodirective_weights(PhasorChannel::free_space(pair, far), 1.0);
    auto const w1 = retrodirective_weights(PhasorChannel::free_space(single, far), 1.0);
    double const ratio
        = std::norm(field_at(pair, w2, far)) / std::norm(field_at(single, w1, far));
    CHECK_THAT(ratio, WithinRel(2.0, 1e-6));
}

TEST_CASE("link gain is reciprocal")
{
    auto const a = ArrayLayout::uniform_planar(3, 3, lambda / 2, carrier);
    auto const b = a.rotated_z(std::numbers::pi).translated({6.0, 0.5, 0.0});
    std::mt19937_64 rng(4);
    auto const wa = BeamWeights::normalized(random_direction(9, rng), 1.0);
    auto const wb = BeamWeights::normalized(random_direction(9, rng), 1.0);
    // a transmits with wa, b receives with wb, and the reverse
    Phasor forward{0, 0};
    Phasor backward{0, 0};
    for (std::size_t m = 0; m < a.size(); ++m)
    {
        for (std::size_t n = 0; n < b.size(); ++n)
        {
            forward += wa.values()[m] * free_space_gain(a.positions()[m], b.positions()[n], carrier)
                       * wb.values()[n];
            backward += wb.values()[n] * free_space_gain(b.positions()[n], a.positions()[m], carrier)
                        * wa.values()[m];
        }
    }
    CHECK_THAT(std::norm(forward), WithinRel(std::norm(backward), 1e-12));
}

TEST_CASE("shared pilot splits the array gain between orthogonal mobiles")
{
    for (std::size_t n : {4u, 16u, 64u})
    {
        auto const [h1, h2] = orthogonal_pair(n, 0.02);
        std::vector<PhasorChannel> const chans{h1, h2};
        auto const shared = contamination_split(chans, true, 1.0);
        double const half = static_cast<double>(n) / 2;
        CHECK_THAT(shared.array_gain[0], WithinRel(half, 1e-6));
        CHECK_THAT(shared.array_gain[1], WithinRel(half, 1e-6));
        CHECK_THAT(shared.share[0], WithinRel(0.5, 1e-9));

        auto const clean = contamination_split(chans, false, 1.0);
        CHECK_THAT(clean.array_gain[0], WithinRel(static_cast<double>(n), 1e-9));
        CHECK_THAT(clean.array_gain[1], WithinAbs(0.0, 1e-9));
    }
}

TEST_CASE("a stronger contaminating mobile captures more power")
{
    auto const [h1, weak] = orthogonal_pair(16, 0.02);
    auto const [unused, strong] = orthogonal_pair(16, 0.04);
    std::vector<PhasorChannel> const chans{h1, strong};
    auto const r = contamination_split(chans, true, 1.0);
    CHECK(r.received_power[1] >= r.received_power[0]);
    CHECK_THAT(r.received_power[1], WithinRel(16 * r.received_power[0], 1e-9));
    CHECK_THROWS(contamination_split(std::vector<PhasorChannel>{h1}, true, 1.0));
}

TEST_CASE("contamination budget is conserved on the far-field sphere")
{
    auto const array = ArrayLayout::uniform_planar(4, 4, lambda / 2, carrier);
    std::vector<Point3> const mobiles{{6.0, 1.0, 0.0}, {6.0, -2.0, 0.5}};
    for (bool shared : {true, false})
    {
        auto const r = contamination_split(array, mobiles, shared, 1.0);
        double captured = 0;
        for (double p : r.received_power)
            captured += p;
        CHECK_THAT(captured + r.remainder, WithinRel(r.radiated_power, 1e-12));
        CHECK(r.remainder > 0);

        auto const w = retrodirective_weights(
            PhasorChannel::free_space(array, mobiles[0]), 1.0);
        double const exact = radiated_power(array, w);
        double const sampled = sampled_radiated_power(array, w, 20000, 77);
        CHECK(std::fabs(sampled - exact) <= 0.05 * exact);
    }
    // Sparse line: elements uncoupled, radiated power equals weight power
    auto const line = ArrayLayout::uniform_linear(8, lambda / 2, carrier);
    auto const w = retrodirective_weights(PhasorChannel::free_space(line, {5, 1, 0}), 2.0);
    CHECK_THAT(radiated_power(line, w), WithinRel(2.0, 1e-9));
}

TEST_CASE("obstructed elements drop out of the pilot")
{
    std::mt19937_64 rng(8);
    PhasorChannel const h(random_direction(8, rng));
    std::vector<bool> blocked(8, false);
    blocked[2] = blocked[5] = true;
    auto const o = h.obstructed(blocked);
    CHECK(o[2] == Phasor{});
    CHECK(o[5] == Phasor{});
    CHECK(o[0] == h[0]);
    CHECK(o.norm_squared() < h.norm_squared());
    CHECK_THROWS(h.obstructed(std::vector<bool>(3)));
}

TEST_CASE("sparse uniform arrays warn about grating lobes")
{
    WarningCapture capture;
    auto const dense = ArrayLayout::uniform_planar(2, 2, lambda / 2, carrier);
    CHECK_FALSE(dense.exceeds_half_wavelength());
    CHECK(capture.messages.empty());
    auto const sparse = ArrayLayout::uniform_planar(2, 2, lambda, carrier);
    CHECK(sparse.exceeds_half_wavelength());
    CHECK_THAT(sparse.max_neighbor_spacing(), WithinRel(lambda, 1e-12));
    REQUIRE(capture.messages.size() == 1);
    CHECK(capture.messages[0].find("half") != std::string::npos);
}

TEST_CASE("synchronized beacons add in amplitude")
{
    auto const proto = ArrayLayout::uniform_planar(4, 4, lambda / 2, carrier);
    Point3 const mobile{0.0, 0.0, 0.0};
    for (int k : {2, 4, 8})
    {
        auto const ring = beacon_ring(k, 5.0, mobile, proto);
        auto const sync = coordinated_beacons(ring, mobile, true, 1.0);
        auto const async = coordinated_beacons(ring, mobile, false, 1.0);
        double amp = 0;
        double pw = 0;
        for (double a : sync.amplitudes)
        {
            amp += a;
            pw += a * a;
        }
        CHECK_THAT(sync.power_at_mobile, WithinRel(amp * amp, 1e-12));
        CHECK_THAT(async.power_at_mobile, WithinRel(pw, 1e-12));
        CHECK_THAT(sync.power_at_mobile / async.power_at_mobile,
                   WithinRel(static_cast<double>(k), 1e-9));
        CHECK_THAT(sync.field_map.power_at(mobile), WithinRel(sync.power_at_mobile, 1e-9));
    }
    CHECK_THROWS(coordinated_beacons(beacon_ring(1, 5.0, mobile, proto), mobile, true, 1.0));
}

TEST_CASE("coordinated field is low away from the target")
{
    auto const proto = ArrayLayout::uniform_planar(8, 8, lambda / 2, carrier);
    Point3 const mobile{0.0, 0.0, 0.0};
    auto const beacons
        = coordinated_beacons(beacon_ring(4, 5.0, mobile, proto), mobile, true, 10.0);
    double const on = beacons.field_map.power_at(mobile);

    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    std::vector<double> off;
    while (off.size() < 1000)
    {
        Point3 const q{coord(rng), coord(rng), coord(rng) * 0.5};
        if (distance(q, mobile) < lambda)
            continue;
        off.push_back(beacons.field_map.power_at(q));
    }
    std::nth_element(off.begin(), off.begin() + 500, off.end());
    CHECK(off[500] <= 0.1 * on);
}

TEST_CASE("grid sampling is independent of the thread count")
{
    auto const proto = ArrayLayout::uniform_planar(4, 4, lambda / 2, carrier);
    Point3 const mobile{1.0, -1.0, 0.0};
    auto const beacons
        = coordinated_beacons(beacon_ring(4, 4.0, mobile, proto), mobile, true, 1.0);
    auto const fn = [&](Point3 const& p) { return beacons.field_map.power_at(p); };
    GridSpec const grid{mobile, 0.5, 0.05};
    auto const one = sample_grid(fn, grid, 1);
    auto const many = sample_grid(fn, grid, 8);
    REQUIRE(one.size() == 21 * 21);
    REQUIRE(many.size() == one.size());
    for (std::size_t i = 0; i < one.size(); ++i)
    {
        CHECK(one[i].point == many[i].point);
        CHECK(one[i].power == many[i].power);
    }
    auto const top = std::max_element(one.begin(), one.end(), [](auto const& a, auto const& b) {
        return a.power < b.power;
    });
    CHECK(top->point == mobile);
    CHECK(one.front().point.y < one.back().point.y);

    auto const failing = [](Point3 const& p) -> double {
        if (p.x > 0.2)
            throw GeometryError("boom");
        return 0.0;
    };
    CHECK_THROWS_AS(sample_grid(failing, {{0, 0, 0}, 0.5, 0.1}, 4), GeometryError);
}
