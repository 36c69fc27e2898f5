// SPDX-License-Identifier: Apache-2.0
#include "wpc/safety.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wpc/errors.hpp"
#include "wpc/units.hpp"

namespace wpc
{
void ExposureLimit::validate() const
{
    detail::require_positive(max_avg_density, "exposure limit density");
    detail::require_positive(averaging_window, "exposure averaging window");
}

char const* to_string(ExposureMode mode)
{
    return mode == ExposureMode::beamed ? "beamed" : "omnidirectional";
}

Emitter Emitter::omni(double radiated_power)
{
    return {radiated_power, ExposureMode::omnidirectional, {}, {}};
}

Emitter Emitter::beamed(double radiated_power,
                        Aperture const& aperture,
                        CarrierSpec const& carrier)
{
    return {radiated_power, ExposureMode::beamed, aperture, carrier};
}

double omni_density(double radiated_power, double distance)
{
    detail::require_positive(radiated_power, "radiated power");
    detail::require_positive(distance, "distance");
    return radiated_power / (4.0 * pi * distance * distance);
}

double beam_peak_density(double radiated_power,
                         Aperture const& transmit,
                         CarrierSpec const& carrier,
                         double distance)
{
    detail::require_positive(radiated_power, "radiated power");
    detail::require_positive(distance, "distance");
    double const ld = carrier.wavelength() * distance;
    return radiated_power * transmit.area() / (ld * ld);
}

namespace
{
void require_beam_parameters(Emitter const& emitter)
{
    if (emitter.mode == ExposureMode::beamed
        && (!emitter.aperture || !emitter.carrier))
    {
        throw std::invalid_argument(
            "beamed emitter requires a transmit aperture and a carrier");
    }
}
}  // namespace

double instantaneous_density(Emitter const& emitter, double distance)
{
    require_beam_parameters(emitter);
    if (emitter.mode == ExposureMode::omnidirectional)
    {
        return omni_density(emitter.radiated_power, distance);
    }
    return beam_peak_density(
        emitter.radiated_power, *emitter.aperture, *emitter.carrier, distance);
}

SafetyReport ubid(Emitter const& emitter, ExposureLimit const& limit)
{
    require_beam_parameters(emitter);
    detail::require_positive(emitter.radiated_power, "radiated power");
    limit.validate();

    double const s = limit.max_avg_density;
    SafetyReport report;
    report.mode = emitter.mode;
    report.radiated_power = emitter.radiated_power;
    report.limit = limit;
    if (emitter.mode == ExposureMode::omnidirectional)
    {
        report.ubid = std::sqrt(emitter.radiated_power / (4.0 * pi * s));
    }
    else
    {
        report.aperture = emitter.aperture;
        report.ubid = std::sqrt(emitter.radiated_power
                                * emitter.aperture->area() / s)
                      / emitter.carrier->wavelength();
    }
    return report;
}

//---------------------------------------------------------------------------//
/*!
 * Largest on-fraction keeping the window-averaged density under the limit.
 *
 * With full-power on/off keying over the averaging window the average
 * density is duty * instantaneous, so the cap is limit / instantaneous.
 * The same number is the equivalent continuous power back-off factor.
 */
double max_duty_cycle(Emitter const& emitter,
                      double distance,
                      ExposureLimit const& limit)
{
    limit.validate();
    double const density = instantaneous_density(emitter, distance);
    return std::min(1.0, limit.max_avg_density / density);
}

}  // namespace wpc
