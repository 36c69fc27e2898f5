// SPDX-License-Identifier: Apache-2.0
#include "wpc/linkphys.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wpc/errors.hpp"
#include "wpc/units.hpp"

namespace wpc
{
CarrierSpec CarrierSpec::from_frequency(double frequency_hz)
{
    detail::require_positive(frequency_hz, "carrier frequency");
    return {frequency_hz, speed_of_light / frequency_hz};
}

CarrierSpec CarrierSpec::from_wavelength(double wavelength_m)
{
    detail::require_positive(wavelength_m, "wavelength");
    return {speed_of_light / wavelength_m, wavelength_m};
}

Aperture Aperture::from_area(double area_m2)
{
    detail::require_positive(area_m2, "aperture area");
    return {area_m2, std::sqrt(area_m2 / pi)};
}

Aperture Aperture::from_radius(double radius_m)
{
    detail::require_positive(radius_m, "aperture radius");
    return {pi * radius_m * radius_m, radius_m};
}

EfficiencyChain::EfficiencyChain(double dc_to_rf, double rf_to_dc)
    : dc_to_rf_(dc_to_rf), rf_to_dc_(rf_to_dc)
{
    detail::require_fraction(dc_to_rf, "DC-to-RF efficiency");
    detail::require_fraction(rf_to_dc, "RF-to-DC efficiency");
}

double beta(LinkGeometry const& geom, CarrierSpec const& carrier)
{
    detail::require_positive(geom.distance, "link distance");
    double const ld = carrier.wavelength() * geom.distance;
    return geom.transmit_aperture.area() * geom.receive_aperture.area()
           / (ld * ld);
}

double beam_efficiency(double beta)
{
    if (!(beta >= 0.0))
    {
        throw DomainError("beta must be non-negative");
    }
    return -std::expm1(-beta);
}

double friis_efficiency(double beta)
{
    if (!(beta >= 0.0))
    {
        throw DomainError("beta must be non-negative");
    }
    return std::min(beta, 1.0);
}

double end_to_end_efficiency(double beta, EfficiencyChain const& chain)
{
    return chain.dc_to_rf() * beam_efficiency(beta) * chain.rf_to_dc();
}

double distance_scaling_factor(double f_old_hz, double f_new_hz)
{
    detail::require_positive(f_old_hz, "original frequency");
    detail::require_positive(f_new_hz, "new frequency");
    return f_new_hz / f_old_hz;
}

double distance_for_beta(Aperture const& transmit,
                         Aperture const& receive,
                         CarrierSpec const& carrier,
                         double target_beta)
{
    detail::require_positive(target_beta, "target beta");
    return std::sqrt(transmit.area() * receive.area() / target_beta)
           / carrier.wavelength();
}

double beta_for_efficiency(double efficiency)
{
    if (!(efficiency >= 0.0 && efficiency <= 1.0))
    {
        throw DomainError("beam efficiency must lie in [0, 1]");
    }
    if (efficiency == 1.0)
    {
        return std::numeric_limits<double>::infinity();
    }
    return -std::log1p(-efficiency);
}

}  // namespace wpc
