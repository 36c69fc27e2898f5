// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <numbers>

namespace wpc
{
//! Speed of light used throughout (m/s).
inline constexpr double speed_of_light = 2.998e8;

inline constexpr double pi = std::numbers::pi;

inline double dbm_to_watts(double dbm)
{
    return 1e-3 * std::pow(10.0, dbm / 10.0);
}

inline double watts_to_dbm(double watts)
{
    return 10.0 * std::log10(watts / 1e-3);
}

inline double db_to_ratio(double db)
{
    return std::pow(10.0, db / 10.0);
}

inline double ratio_to_db(double ratio)
{
    return 10.0 * std::log10(ratio);
}

}  // namespace wpc
