// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file wpc/linkphys.hpp
//! Free-space power-transfer link physics.
//---------------------------------------------------------------------------//
#pragma once

namespace wpc
{
//---------------------------------------------------------------------------//
/*!
 * Carrier frequency and its free-space wavelength.
 */
class CarrierSpec
{
  public:
    static CarrierSpec from_frequency(double frequency_hz);
    static CarrierSpec from_wavelength(double wavelength_m);

    double frequency() const { return frequency_; }
    double wavelength() const { return wavelength_; }

  private:
    CarrierSpec(double f, double lambda) : frequency_(f), wavelength_(lambda)
    {
    }

    double frequency_;
    double wavelength_;
};

//---------------------------------------------------------------------------//
/*!
 * Physical antenna aperture.
 *
 * Apertures are circular disks; when built from an area the equivalent disk
 * radius is recorded.
 */
class Aperture
{
  public:
    static Aperture from_area(double area_m2);
    static Aperture from_radius(double radius_m);

    double area() const { return area_; }
    double radius() const { return radius_; }

  private:
    Aperture(double area, double radius) : area_(area), radius_(radius) {}

    double area_;
    double radius_;
};

struct LinkGeometry
{
    Aperture transmit_aperture;
    Aperture receive_aperture;
    double distance;  //!< [m]
};

//! DC-to-RF and RF-to-DC conversion stages around the beam.
class EfficiencyChain
{
  public:
    EfficiencyChain(double dc_to_rf, double rf_to_dc);

    //! Close-to-one default of 80% for both stages
    static EfficiencyChain typical() { return {0.8, 0.8}; }

    double dc_to_rf() const { return dc_to_rf_; }
    double rf_to_dc() const { return rf_to_dc_; }

  private:
    double dc_to_rf_;
    double rf_to_dc_;
};

//---------------------------------------------------------------------------//
// Aperture-product parameter A_t A_r / (lambda d)^2
double beta(LinkGeometry const& geom, CarrierSpec const& carrier);

// Fraction of radiated power captured by the receive aperture, 1 - exp(-beta)
double beam_efficiency(double beta);

// Far-field linearization of the beam efficiency, clamped to 1
double friis_efficiency(double beta);

// DC-in to DC-out efficiency of the whole link
double end_to_end_efficiency(double beta, EfficiencyChain const& chain);

// Factor by which the distance grows at fixed apertures and fixed beta
double distance_scaling_factor(double f_old_hz, double f_new_hz);

//---------------------------------------------------------------------------//
/*!
 * Distance at which the link reaches a given beta.
 *
 * Inverse of \c beta with respect to distance.
 */
double distance_for_beta(Aperture const& transmit,
                         Aperture const& receive,
                         CarrierSpec const& carrier,
                         double target_beta);

/*!
 * Beta required for a beam efficiency in [0, 1).
 *
 * Inverse of \c beam_efficiency; an efficiency of one is unreachable and
 * returns +infinity.
 */
double beta_for_efficiency(double efficiency);

}  // namespace wpc
