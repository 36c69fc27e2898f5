// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "wpc/errors.hpp"
#include "wpc/safety.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace wpc;

namespace
{
auto const rounded = CarrierSpec::from_wavelength(0.12);
auto const area3 = Aperture::from_area(3.0);
}  // namespace

TEST_CASE("omnidirectional density")
{
    CHECK_THAT(omni_density(50.0, 0.6308), WithinRel(10.0, 1e-3));
    CHECK_THAT(omni_density(4 * std::numbers::pi, 1.0), WithinRel(1.0, 1e-15));
    CHECK_THAT(omni_density(7.0, 6.0), WithinRel(omni_density(7.0, 3.0) / 4, 1e-15));
    CHECK_THROWS_AS(omni_density(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(omni_density(1.0, 0.0), DomainError);
}

TEST_CASE("beam peak density reproduces the quoted distances")
{
    CHECK_THAT(beam_peak_density(50.0, area3, rounded, 32.27), WithinRel(10.0, 1e-3));
    CHECK_THAT(beam_peak_density(10.0, area3, rounded, 14.43), WithinRel(10.0, 1e-3));
    CHECK_THROWS_AS(beam_peak_density(10.0, area3, rounded, -1.0), DomainError);
}

TEST_CASE("beam peak density bounds every finite receiver")
{
    // Brute-force maximization of the per-area captured power over A_r
    double const p = 50.0;
    double const lam = rounded.wavelength();
    for (double d : {2.0, 8.0, 20.0, 60.0})
    {
        double const peak = beam_peak_density(p, area3, rounded, d);
        double best = 0;
        for (double ar = 1e-8; ar < 1e4; ar *= 1.01)
        {
            double const b = area3.area() * ar / ((lam * d) * (lam * d));
            double const per_area = p * -std::expm1(-b) / ar;
            CHECK(per_area <= peak * (1 + 1e-12));
            best = std::max(best, per_area);
        }
        CHECK_THAT(best, WithinRel(peak, 1e-6));
    }
}

TEST_CASE("unsafe interception distances")
{
    ExposureLimit const limit;
    CHECK_THAT(ubid(Emitter::omni(50.0), limit).ubid, WithinAbs(0.631, 5e-4));
    CHECK_THAT(ubid(Emitter::beamed(10.0, area3, rounded), limit).ubid,
               WithinAbs(14.43, 5e-3));
    CHECK_THAT(ubid(Emitter::beamed(50.0, area3, rounded), limit).ubid,
               WithinAbs(32.27, 5e-3));

    auto const report = ubid(Emitter::beamed(50.0, area3, rounded), limit);
    CHECK(report.mode == ExposureMode::beamed);
    REQUIRE(report.aperture);
    CHECK(report.aperture->area() == 3.0);
    CHECK_FALSE(ubid(Emitter::omni(1.0)).aperture);
}

TEST_CASE("beamed emitter needs aperture and carrier")
{
    Emitter bare{10.0, ExposureMode::beamed, {}, {}};
    CHECK_THROWS_AS(ubid(bare), std::invalid_argument);
    bare.aperture = area3;
    CHECK_THROWS_AS(ubid(bare), std::invalid_argument);
}

TEST_CASE("density at the interception distance equals the limit")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> power(0.1, 1000.0);
    std::uniform_real_distribution<double> area(0.01, 50.0);
    std::uniform_real_distribution<double> freq(0.5e9, 90e9);
    std::uniform_real_distribution<double> cap(0.1, 100.0);
    for (int i = 0; i < 500; ++i)
    {
        ExposureLimit const limit{cap(rng), 1800.0};
        Emitter const beamed = Emitter::beamed(power(rng),
                                               Aperture::from_area(area(rng)),
                                               CarrierSpec::from_frequency(freq(rng)));
        Emitter const omni = Emitter::omni(beamed.radiated_power);
        for (auto const& e : {beamed, omni})
        {
            double const d = ubid(e, limit).ubid;
            CHECK_THAT(instantaneous_density(e, d),
                       WithinRel(limit.max_avg_density, 1e-9));
        }
    }
}

TEST_CASE("beamed distance scales with power, aperture and wavelength")
{
    auto const base = ubid(Emitter::beamed(10.0, area3, rounded)).ubid;
    CHECK_THAT(ubid(Emitter::beamed(40.0, area3, rounded)).ubid,
               WithinRel(2 * base, 1e-12));
    CHECK_THAT(ubid(Emitter::beamed(10.0, Aperture::from_area(12.0), rounded)).ubid,
               WithinRel(2 * base, 1e-12));
    CHECK(ubid(Emitter::beamed(10.0, area3, CarrierSpec::from_wavelength(0.24))).ubid
          < base);
}

TEST_CASE("array gain above isotropic pushes the distance out")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> power(0.1, 500.0);
    std::uniform_real_distribution<double> lam(0.005, 0.5);
    std::uniform_real_distribution<double> log_area(-4.0, 1.5);
    int tested = 0;
    for (int i = 0; i < 2000; ++i)
    {
        double const l = lam(rng);
        double const a = std::pow(10.0, log_area(rng));
        if (a / (l * l) <= 1 / (4 * std::numbers::pi))
            continue;
        double const p = power(rng);
        auto const beamed = Emitter::beamed(
            p, Aperture::from_area(a), CarrierSpec::from_wavelength(l));
        CHECK(ubid(Emitter::omni(p)).ubid < ubid(beamed).ubid);
        ++tested;
    }
    CHECK(tested > 1000);
}

TEST_CASE("duty cycle under the averaging cap")
{
    ExposureLimit const limit;
    auto const beam = Emitter::beamed(50.0, area3, rounded);
    double const d_safe = ubid(beam, limit).ubid;
    CHECK(max_duty_cycle(beam, d_safe * 1.5, limit) == 1.0);
    CHECK_THAT(max_duty_cycle(beam, 16.13, limit), WithinAbs(0.25, 1e-3));
    CHECK_THAT(max_duty_cycle(beam, d_safe / 2, limit), WithinRel(0.25, 1e-12));
    CHECK_THAT(max_duty_cycle(beam, d_safe / std::sqrt(2.0), limit),
               WithinRel(0.5, 1e-12));
    CHECK(omni_density(50.0, 1.0) < limit.max_avg_density);

    for (double d = 0.5; d < 80.0; d *= 1.07)
    {
        double const duty = max_duty_cycle(beam, d, limit);
        double const avg = duty * instantaneous_density(beam, d);
        CHECK(avg <= limit.max_avg_density * (1 + 1e-12));
        if (d < d_safe)
        {
            CHECK_THAT(avg, WithinRel(limit.max_avg_density, 1e-12));
        }
    }
    CHECK_THROWS_AS(max_duty_cycle(beam, 0.0, limit), DomainError);
}

TEST_CASE("exposure limit validation")
{
    CHECK_THROWS_AS(ubid(Emitter::omni(1.0), ExposureLimit{0.0, 1800.0}), DomainError);
    CHECK_THROWS_AS(ubid(Emitter::omni(1.0), ExposureLimit{10.0, -1.0}), DomainError);
    CHECK(std::string(to_string(ExposureMode::beamed)) == "beamed");
}
