#pragma once

// Plug-in counterparts of the theoretical fences: the step empirical c.d.f.,
// Type-1 empirical quantiles X_{ceil(np):n}, empirical asymmetric fences and
// relative frequencies of observations outside them.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "errors.hpp"
#include "probability.hpp"
#include "sample.hpp"

namespace tailfence {

/// F_n(x) = #{X_i <= x} / n.
inline Probability ecdf(const Sample& s, double x)
{
    const auto n = s.size();
    return static_cast<double>(n - s.count_greater(x)) / static_cast<double>(n);
}

/// 1-based index ceil(n p) for p in (0, 1], clamped to [1, n]. The ceiling
/// ignores relative error of order a few ulp in n*p, so p = i/n entered as a
/// decimal still lands on X_{i:n} (the same convention as R's type 1).
inline std::size_t type1_index(std::size_t n, double p)
{
    const double np = static_cast<double>(n) * p;
    const double fuzz = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, np);
    const double j = std::floor(np + fuzz);
    double idx = (np > j + fuzz) ? j + 1.0 : j;
    if (idx < 1.0)
        idx = 1.0;
    if (idx > static_cast<double>(n))
        idx = static_cast<double>(n);
    return static_cast<std::size_t>(idx);
}

/// F_n^{-1}(p) = X_{ceil(np):n}, with F_n^{-1}(0) = X_{1:n}.
inline double empirical_quantile(const Sample& s, Probability p)
{
    if (p == 0.0)
        return s.order_statistic(1);
    return s.order_statistic(type1_index(s.size(), p));
}

struct EmpiricalFences {
    double p;
    double left;  // L_n^A(p)
    double right; // R_n^A(p)
};

/// R_n^A and L_n^A from Type-1 quantiles.
inline EmpiricalFences empirical_fence_values(const Sample& s, Probability p)
{
    detail::require_fence_level(p, "empirical_fences");
    const double med = empirical_quantile(s, 0.5);
    const double lo = empirical_quantile(s, p);
    const double hi = empirical_quantile(s, 1.0 - p);
    return {p, (1.0 / p) * lo - ((1.0 - p) / p) * med, (1.0 / p) * hi - ((1.0 - p) / p) * med};
}

/// R_n^A(p) together with the number of observations strictly above it.
struct RightTailPlugIn {
    double right_fence;
    std::size_t count;
    std::size_t n;
    double p_hat() const { return static_cast<double>(count) / static_cast<double>(n); }
};

inline RightTailPlugIn right_tail_plug_in(const Sample& s, Probability p)
{
    const auto f = empirical_fence_values(s, p);
    return {f.right, s.count_greater(f.right), s.size()};
}

struct EmpiricalFenceReport {
    double p;
    std::size_t n;
    double left_fence;
    double right_fence;
    Probability p_hat_left;
    Probability p_hat_right;
    std::vector<std::size_t> outside_left_idx;  // X_i < L_n^A, 0-based input positions
    std::vector<std::size_t> outside_right_idx; // X_i > R_n^A
    bool degenerate; // n < 4 or all observations equal
};

/// Empirical fences, outside-value flags, and plug-in frequencies. Observations
/// lying exactly on a fence are not outside values.
inline EmpiricalFenceReport empirical_fences(const Sample& s, Probability p)
{
    const auto f = empirical_fence_values(s, p);
    EmpiricalFenceReport rep;
    rep.p = p;
    rep.n = s.size();
    rep.left_fence = f.left;
    rep.right_fence = f.right;
    const auto values = s.values();
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < f.left)
            rep.outside_left_idx.push_back(i);
        if (values[i] > f.right)
            rep.outside_right_idx.push_back(i);
    }
    const double n = static_cast<double>(rep.n);
    rep.p_hat_left = static_cast<double>(rep.outside_left_idx.size()) / n;
    rep.p_hat_right = static_cast<double>(rep.outside_right_idx.size()) / n;
    rep.degenerate = rep.n < 4 || s.sorted().front() == s.sorted().back();
    return rep;
}

} // namespace tailfence
