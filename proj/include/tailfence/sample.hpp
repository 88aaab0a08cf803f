#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace tailfence {

/// Immutable set of n >= 1 finite observations with cached order statistics.
class Sample {
public:
    explicit Sample(std::vector<double> values) : values_(std::move(values))
    {
        if (values_.empty())
            throw DataError("sample must contain at least one observation");
        for (std::size_t i = 0; i < values_.size(); ++i)
            if (!std::isfinite(values_[i]))
                throw DataError("observation " + std::to_string(i) + " is not finite");
        sorted_ = values_;
        std::sort(sorted_.begin(), sorted_.end());
    }

    std::size_t size() const noexcept { return values_.size(); }

    /// Observations in input order.
    std::span<const double> values() const noexcept { return values_; }

    /// X_{1:n} <= ... <= X_{n:n}.
    std::span<const double> sorted() const noexcept { return sorted_; }

    /// X_{i:n}, 1-based.
    double order_statistic(std::size_t i) const { return sorted_.at(i - 1); }

    std::size_t count_greater(double x) const
    {
        return static_cast<std::size_t>(sorted_.end() -
                                        std::upper_bound(sorted_.begin(), sorted_.end(), x));
    }

    std::size_t count_less(double x) const
    {
        return static_cast<std::size_t>(std::lower_bound(sorted_.begin(), sorted_.end(), x) -
                                        sorted_.begin());
    }

    std::size_t count_distinct() const
    {
        if (sorted_.empty())
            return 0;
        std::size_t k = 1;
        for (std::size_t i = 1; i < sorted_.size(); ++i)
            if (sorted_[i] != sorted_[i - 1])
                ++k;
        return k;
    }

private:
    std::vector<double> values_;
    std::vector<double> sorted_;
};

} // namespace tailfence
