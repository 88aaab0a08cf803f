#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>

namespace tailfence {

struct Bracket {
    double lo;
    double hi;
};

/// Scans `subdivisions` equal steps of [lo, hi] from the left and returns the
/// first sub-interval on which `f` changes sign (or hits zero exactly).
template <class Function>
std::optional<Bracket> scan_for_sign_change(const Function& f, double lo, double hi,
                                            int subdivisions = 512)
{
    const double step = (hi - lo) / subdivisions;
    double x0 = lo;
    double f0 = f(x0);
    for (int k = 1; k <= subdivisions; ++k) {
        const double x1 = (k == subdivisions) ? hi : lo + step * k;
        const double f1 = f(x1);
        if (f0 == 0.0)
            return Bracket{x0, x0};
        if (f1 == 0.0 || (f0 < 0.0) != (f1 < 0.0))
            return Bracket{x0, x1};
        x0 = x1;
        f0 = f1;
    }
    return std::nullopt;
}

struct Root {
    double x;
    double residual; // |f(x)|
    int iterations;
};

/// Bisection on a sign-changing bracket. Stops once the bracket cannot be
/// halved any further in floating point, or |f| <= ftol.
template <class Function>
Root bisect(const Function& f, Bracket b, double ftol = 0.0, int max_iterations = 400)
{
    double lo = b.lo;
    double hi = b.hi;
    double flo = f(lo);
    if (flo == 0.0)
        return {lo, 0.0, 0};
    double fhi = f(hi);
    if (fhi == 0.0)
        return {hi, 0.0, 0};

    double best = std::abs(flo) < std::abs(fhi) ? lo : hi;
    double best_f = std::min(std::abs(flo), std::abs(fhi));
    int it = 0;
    for (; it < max_iterations; ++it) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi)
            break;
        const double fmid = f(mid);
        if (std::abs(fmid) < best_f) {
            best = mid;
            best_f = std::abs(fmid);
        }
        if (fmid == 0.0 || best_f <= ftol)
            break;
        if ((fmid < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return {best, best_f, it};
}

} // namespace tailfence
