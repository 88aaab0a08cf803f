#pragma once

#include <cmath>
#include <string>

#include "errors.hpp"

namespace tailfence {

/// A real number in [0, 1]. Construction validates the range.
class Probability {
public:
    constexpr Probability() = default;

    constexpr Probability(double value) : value_(value) // NOLINT(google-explicit-constructor)
    {
        if (!(value >= 0.0 && value <= 1.0))
            throw DomainError("probability must lie in [0, 1], got " + std::to_string(value));
    }

    constexpr double value() const noexcept { return value_; }
    constexpr operator double() const noexcept { return value_; } // NOLINT(google-explicit-constructor)

private:
    double value_ = 0.0;
};

namespace detail {

inline void require_open_unit(double p, const char* what)
{
    if (!(p > 0.0 && p < 1.0))
        throw DomainError(std::string(what) + ": p must lie in (0, 1), got " + std::to_string(p));
}

inline void require_fence_level(double p, const char* what)
{
    if (!(p > 0.0 && p <= 0.5))
        throw DomainError(std::string(what) + ": p must lie in (0, 0.5], got " + std::to_string(p));
}

// Absorbs last-ulp drift of probability formulas; anything further outside [0, 1]
// indicates a broken formula rather than rounding.
inline double clamp_probability(double v, const char* what)
{
    constexpr double slack = 1e-9;
    if (std::isnan(v) || v < -slack || v > 1.0 + slack)
        throw ConsistencyError(std::string(what) + ": probability evaluated to " + std::to_string(v));
    if (v <= 0.0) // also folds -0
        return 0.0;
    if (v > 1.0)
        return 1.0;
    return v;
}

} // namespace detail
} // namespace tailfence
