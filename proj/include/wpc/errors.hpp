// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace wpc
{
//! A physical quantity is outside its admissible range.
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

//! A field point coincides with a radiating element.
class GeometryError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! A pilot channel carries no energy, so it cannot be conjugated.
class DegenerateChannelError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Statistic needs more replications than were supplied.
class UndefinedVarianceError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

namespace detail
{
inline void require_positive(double value, char const* what)
{
    if (!(value > 0.0))
    {
        throw DomainError(std::string(what) + " must be positive, got "
                          + std::to_string(value));
    }
}

inline void require_fraction(double value, char const* what)
{
    if (!(value > 0.0 && value <= 1.0))
    {
        throw DomainError(std::string(what) + " must lie in (0, 1], got "
                          + std::to_string(value));
    }
}
}  // namespace detail

}  // namespace wpc
