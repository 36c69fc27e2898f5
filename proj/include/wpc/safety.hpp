// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file wpc/safety.hpp
//! RF exposure: power densities, unsafe beam-interception distance (UBID)
//! and duty-cycle limits under a time-averaged cap.
//---------------------------------------------------------------------------//
#pragma once

#include <optional>

#include "linkphys.hpp"

namespace wpc
{
//! Average power-density cap over an averaging window.
struct ExposureLimit
{
    double max_avg_density{10.0};  //!< [W/m^2]
    double averaging_window{1800.0};  //!< [s]

    void validate() const;
};

enum class ExposureMode
{
    omnidirectional,
    beamed
};

char const* to_string(ExposureMode mode);

/*!
 * A radiating station as far as exposure is concerned.
 *
 * Beamed emitters must carry the transmit aperture and carrier; construction
 * helpers enforce that.
 */
struct Emitter
{
    double radiated_power{};  //!< [W]
    ExposureMode mode{ExposureMode::omnidirectional};
    std::optional<Aperture> aperture;
    std::optional<CarrierSpec> carrier;

    static Emitter omni(double radiated_power);
    static Emitter beamed(double radiated_power,
                          Aperture const& aperture,
                          CarrierSpec const& carrier);
};

struct SafetyReport
{
    double ubid{};  //!< [m]
    ExposureMode mode{ExposureMode::omnidirectional};
    double radiated_power{};  //!< [W]
    std::optional<Aperture> aperture;
    ExposureLimit limit;
};

// Isotropic power density P / (4 pi d^2)
double omni_density(double radiated_power, double distance);

// On-axis beam density P A_t / (lambda d)^2, the small-receiver limit of
// the beam-efficiency model
double beam_peak_density(double radiated_power,
                         Aperture const& transmit,
                         CarrierSpec const& carrier,
                         double distance);

// Density seen at distance d for the emitter's mode
double instantaneous_density(Emitter const& emitter, double distance);

// Distance inside which the instantaneous density exceeds the limit
SafetyReport ubid(Emitter const& emitter, ExposureLimit const& limit = {});

// Largest on-fraction keeping the window-averaged density under the limit
double max_duty_cycle(Emitter const& emitter,
                      double distance,
                      ExposureLimit const& limit = {});

}  // namespace wpc
