// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>

#include "oracle.hpp"
#include "wpc/errors.hpp"
#include "wpc/linkphys.hpp"
#include "wpc/units.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace wpc;

namespace
{
LinkGeometry square_link(double area, double d)
{
    return {Aperture::from_area(area), Aperture::from_area(area), d};
}
}  // namespace

TEST_CASE("beta of unit apertures at ten metres")
{
    auto const carrier = CarrierSpec::from_wavelength(0.125);
    CHECK_THAT(beta(square_link(1.0, 10.0), carrier), WithinRel(0.64, 1e-12));
}

TEST_CASE("beta falls with inverse square distance")
{
    auto const carrier = CarrierSpec::from_frequency(2.5e9);
    double const near = beta(square_link(2.0, 7.0), carrier);
    double const far = beta(square_link(2.0, 14.0), carrier);
    CHECK_THAT(far, WithinRel(near / 4, 1e-12));
}

TEST_CASE("beta at the smartphone operating point")
{
    auto const carrier = CarrierSpec::from_wavelength(0.12);
    LinkGeometry const geom{
        Aperture::from_radius(3.0), Aperture::from_radius(0.03), 19.64};
    double const expected = oracle::disk(3.0) * oracle::disk(0.03)
                            / std::pow(0.12 * 19.64, 2);
    CHECK_THAT(beta(geom, carrier), WithinRel(expected, 1e-12));
    CHECK_THAT(beta(geom, carrier), WithinRel(0.014389, 1e-3));
}

TEST_CASE("beta rejects non-positive inputs")
{
    auto const carrier = CarrierSpec::from_frequency(1e9);
    CHECK_THROWS_AS(beta(square_link(1.0, 0.0), carrier), DomainError);
    CHECK_THROWS_AS(beta(square_link(1.0, -1.0), carrier), DomainError);
    CHECK_THROWS_AS(Aperture::from_area(0.0), DomainError);
    CHECK_THROWS_AS(Aperture::from_radius(-1.0), DomainError);
    CHECK_THROWS_AS(CarrierSpec::from_frequency(0.0), DomainError);
    CHECK_THROWS_AS(CarrierSpec::from_wavelength(
                        std::numeric_limits<double>::quiet_NaN()),
                    DomainError);
}

TEST_CASE("beta is reciprocal in the two apertures")
{
    auto const carrier = CarrierSpec::from_frequency(5.8e9);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> area(1e-4, 30.0);
    std::uniform_real_distribution<double> dist(0.1, 500.0);
    for (int i = 0; i < 200; ++i)
    {
        auto const a = Aperture::from_area(area(rng));
        auto const b = Aperture::from_area(area(rng));
        double const d = dist(rng);
        CHECK(beta({a, b, d}, carrier) == beta({b, a, d}, carrier));
    }
}

TEST_CASE("beam efficiency examples")
{
    CHECK(beam_efficiency(0.0) == 0.0);
    CHECK_THAT(beam_efficiency(0.64), WithinAbs(0.4727, 5e-5));
    CHECK_THAT(beam_efficiency(0.64), WithinRel(1 - std::exp(-0.64), 1e-14));
    CHECK_THAT(beam_efficiency(0.01), WithinRel(0.00995, 1e-3));
    CHECK(oracle::relative_error(beam_efficiency(0.01), 0.01) < 0.005);
    CHECK_THROWS_AS(beam_efficiency(-1e-3), DomainError);
}

TEST_CASE("beam efficiency is increasing and bounded")
{
    double prev = -1.0;
    for (double b = 1e-8; b < 30.0; b *= 1.05)
    {
        double const eta = beam_efficiency(b);
        CHECK(eta > prev);
        CHECK(eta >= 0.0);
        CHECK(eta < 1.0);
        prev = eta;
    }
    for (double b = 30.0; b < 80.0; b += 0.5)
    {
        double const eta = beam_efficiency(b);
        CHECK(eta >= prev);
        CHECK(eta <= 1.0);
        prev = eta;
    }
    CHECK(beam_efficiency(std::numeric_limits<double>::infinity()) == 1.0);
}

TEST_CASE("Friis agreement in the far field")
{
    CHECK(friis_efficiency(0.01) == 0.01);
    CHECK(friis_efficiency(0.05) == 0.05);
    CHECK(friis_efficiency(5.0) == 1.0);
    CHECK_THAT(beam_efficiency(0.05), WithinAbs(0.04877, 5e-6));
    CHECK_THROWS_AS(friis_efficiency(-0.5), DomainError);

    for (double b = 1e-9; b <= 0.05; b *= 1.1)
    {
        double const gap = std::fabs(beam_efficiency(b) - b) / b;
        CHECK(gap <= 0.025);
    }
}

TEST_CASE("end-to-end efficiency chains the three stages")
{
    CHECK_THAT(end_to_end_efficiency(0.64, EfficiencyChain(1.0, 1.0)),
               WithinRel(beam_efficiency(0.64), 1e-15));
    CHECK_THAT(end_to_end_efficiency(1e6, EfficiencyChain::typical()),
               WithinRel(0.64, 1e-12));
    CHECK_THAT(end_to_end_efficiency(0.014389, EfficiencyChain(1.0, 0.7)),
               WithinAbs(0.0100, 5e-5));
    CHECK_THROWS_AS(EfficiencyChain(0.0, 0.5), DomainError);
    CHECK_THROWS_AS(EfficiencyChain(0.5, 1.5), DomainError);
}

TEST_CASE("frequency scaling of the transfer distance")
{
    CHECK(distance_scaling_factor(2.4e9, 60e9) == 25.0);
    CHECK(distance_scaling_factor(3e9, 3e9) == 1.0);
    CHECK(distance_scaling_factor(2.4e9, 4.8e9) == 2.0);
    CHECK_THROWS_AS(distance_scaling_factor(0.0, 1e9), DomainError);

    double const ab = distance_scaling_factor(1e9, 2.5e9);
    double const bc = distance_scaling_factor(2.5e9, 10e9);
    CHECK_THAT(ab * bc, WithinRel(distance_scaling_factor(1e9, 10e9), 1e-15));
}

TEST_CASE("distance for a target beta round-trips")
{
    auto const carrier = CarrierSpec::from_frequency(2.5e9);
    auto const tx = Aperture::from_radius(3.0);
    auto const rx = Aperture::from_radius(0.05);
    for (double target : {1e-6, 1e-3, 0.05, 0.64, 3.0, 50.0})
    {
        double const d = distance_for_beta(tx, rx, carrier, target);
        CHECK_THAT(beta({tx, rx, d}, carrier), WithinRel(target, 1e-9));
    }
}

TEST_CASE("beta for an efficiency inverts the beam law")
{
    for (double eta : {1e-9, 1e-4, 0.1, 0.5, 0.99})
    {
        CHECK_THAT(beam_efficiency(beta_for_efficiency(eta)), WithinRel(eta, 1e-12));
    }
    CHECK(std::isinf(beta_for_efficiency(1.0)));
}

TEST_CASE("power unit conversions")
{
    CHECK_THAT(dbm_to_watts(-120.0), WithinRel(1e-15, 1e-12));
    CHECK_THAT(dbm_to_watts(-10.0), WithinRel(1e-4, 1e-12));
    CHECK_THAT(watts_to_dbm(1.0), WithinAbs(30.0, 1e-12));
    CHECK_THAT(ratio_to_db(1e6), WithinAbs(60.0, 1e-12));
    CHECK_THAT(CarrierSpec::from_frequency(2.5e9).wavelength(),
               WithinRel(oracle::wavelength(2.5e9), 1e-15));
}
