#pragma once

// Test-only reference routes, kept independent of the library code paths.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include <boost/math/special_functions/lambert_w.hpp>

namespace oracle {

// Hill-horror c.d.f. in closed form via Lambert W: t e^{t/alpha} = x gives
// t = alpha W0(x / alpha) and F(x) = 1 - e^{-t}.
inline double hill_horror_cdf(double alpha, double x)
{
    if (x <= 0.0)
        return 0.0;
    const double t = alpha * boost::math::lambert_w0(x / alpha);
    return -std::expm1(-t);
}

inline double hill_horror_sf(double alpha, double x)
{
    if (x <= 0.0)
        return 1.0;
    return std::exp(-alpha * boost::math::lambert_w0(x / alpha));
}

// Two-sided Kolmogorov-Smirnov statistic of a sample against a c.d.f.
inline double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf)
{
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    return d;
}

// Type-1 quantile at p = k/m by exact integer comparison: the smallest i with
// i/n >= k/m, i.e. i*m >= k*n.
inline double type1_rational(std::vector<double> xs, std::size_t k, std::size_t m)
{
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    if (k == 0)
        return xs.front();
    for (std::size_t i = 1; i <= n; ++i)
        if (i * m >= k * n)
            return xs[i - 1];
    return xs.back();
}

// Bisection for the sign change of a monotone function on [lo, hi].
template <class F>
double bisect_root(const F& f, double lo, double hi)
{
    double flo = f(lo);
    for (int i = 0; i < 300; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

inline std::vector<double> unit_grid(double lo, double hi, int points)
{
    std::vector<double> g;
    for (int i = 0; i < points; ++i)
        g.push_back(lo + (hi - lo) * i / (points - 1));
    return g;
}

} // namespace oracle
