#pragma once

// Theoretical asymmetric p-fences and the probabilities of falling outside them.
//
//   R^A(X, p) = (1/p) F^{-1}(1-p) - ((1-p)/p) F^{-1}(0.5)
//   L^A(X, p) = (1/p) F^{-1}(p)   - ((1-p)/p) F^{-1}(0.5)
//   p_{A,R,p} = P(X > R^A),  p_{A,L,p} = P(X < L^A),   p in (0, 0.5].

#include <cmath>
#include <concepts>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "distributions.hpp"
#include "errors.hpp"
#include "probability.hpp"
#include "root_finding.hpp"

namespace tailfence {

enum class ProbabilityMethod { ClosedForm, NumericInversion, MonteCarlo, PlugIn };

inline constexpr std::string_view method_name(ProbabilityMethod m)
{
    switch (m) {
    case ProbabilityMethod::ClosedForm: return "closed-form";
    case ProbabilityMethod::NumericInversion: return "numeric-inversion";
    case ProbabilityMethod::MonteCarlo: return "monte-carlo";
    case ProbabilityMethod::PlugIn: return "plug-in";
    }
    return "unknown";
}

struct FencePair {
    double p;
    double left;
    double right;
};

struct OutsideProbabilities {
    double p;
    Probability left;
    Probability right;
    ProbabilityMethod method;
};

// ---------------------------------------------------------------------------
// Fences from an arbitrary quantile function. Used directly for transformed
// or reflected laws; the DistributionSpec overloads below go through the
// tail-accurate upper_quantile instead of q(1 - p).

template <class Quantile>
    requires std::invocable<const Quantile&, double>
double right_fence(const Quantile& q, double p)
{
    detail::require_fence_level(p, "right_fence");
    return (1.0 / p) * q(1.0 - p) - ((1.0 - p) / p) * q(0.5);
}

template <class Quantile>
    requires std::invocable<const Quantile&, double>
double left_fence(const Quantile& q, double p)
{
    detail::require_fence_level(p, "left_fence");
    return (1.0 / p) * q(p) - ((1.0 - p) / p) * q(0.5);
}

namespace detail {

template <class D>
double right_fence_of(const D& d, double p)
{
    return (1.0 / p) * d.upper_quantile(p) - ((1.0 - p) / p) * d.quantile(0.5);
}

template <class D>
double left_fence_of(const D& d, double p)
{
    return (1.0 / p) * d.quantile(p) - ((1.0 - p) / p) * d.quantile(0.5);
}

inline constexpr double ln2 = std::numbers::ln2;

// Closed-form Frechet / Negative-Weibull / Log-Logistic alpha thresholds.
inline double frechet_alpha0(double p) { return std::log(ln2 / -std::log(p)) / std::log1p(-p); }
inline double neg_weibull_alpha0(double p)
{
    const double t = -std::log1p(-p);
    return std::log(ln2 / t) / t;
}
inline double log_logistic_alpha0(double p) { return std::log(p) / std::log1p(-p) - 1.0; }
inline double pareto_neg_xi_threshold(double p) { return -std::log1p(-p) / std::log(2.0 * p); }

// Equations whose sign tells whether the left fence lies inside the support:
// > 0 means p_{A,L,p} > 0.
inline double exponential_left_equation(double p) { return std::log1p(-p) + (1.0 - p) * ln2; }
inline double pareto_left_equation(double xi, double p)
{
    return std::pow(1.0 - p, xi + 1.0) * std::pow(2.0, xi) + p * std::pow(1.0 - p, xi) - 1.0;
}
inline double pareto_neg_left_equation(double xi, double p)
{
    return std::pow(1.0 - p, xi) * (std::pow(2.0, xi) * (1.0 - p) + p) - 1.0;
}
inline double exp_frechet_left_equation(double alpha, double lambda, double p)
{
    return -std::expm1(std::log1p(-p) / lambda) -
           std::pow(-std::expm1(-ln2 / lambda), std::pow(1.0 - p, -alpha));
}

struct Evaluated {
    double value;
    ProbabilityMethod method;
};

// --- right tail ------------------------------------------------------------

inline Evaluated right_prob(const family::Exponential&, double p)
{
    // p^{1/p} 2^{(1-p)/p}
    return {std::exp((std::log(p) + (1.0 - p) * ln2) / p), ProbabilityMethod::ClosedForm};
}

inline Evaluated right_prob(const family::ParetoPos& d, double p)
{
    const double xi = d.xi;
    const double r = std::pow(p, -xi - 1.0) - ((1.0 - p) / p) * std::pow(2.0, xi);
    return {std::pow(r, -1.0 / xi), ProbabilityMethod::ClosedForm};
}

inline Evaluated right_prob(const family::ParetoNeg& d, double p)
{
    const double xi = d.xi;
    // Positive only while R^A stays below the upper endpoint -1/xi.
    if (!(std::pow(2.0 * p, -xi) > 1.0 - p))
        return {0.0, ProbabilityMethod::ClosedForm};
    const double base = 1.0 / p - ((1.0 - p) / p) * std::pow(2.0 * p, xi);
    return {p * std::pow(base, -1.0 / xi), ProbabilityMethod::ClosedForm};
}

inline Evaluated right_prob(const family::Frechet& d, double p)
{
    const double r = right_fence_of(d, p);
    return {-std::expm1(-std::pow(r, -d.alpha)), ProbabilityMethod::ClosedForm};
}

inline Evaluated right_prob(const family::NegWeibull& d, double p)
{
    // exp(-(R^A)^alpha): the survival function of F(x) = 1 - exp(-x^alpha).
    const double r = right_fence_of(d, p);
    return {std::exp(-std::pow(r, d.alpha)), ProbabilityMethod::ClosedForm};
}

inline Evaluated right_prob(const family::Gumbel&, double p)
{
    // 1 - 2^{-(-log2(1-p))^{1/p}}
    const double t = -std::log1p(-p) / ln2;
    return {-std::expm1(-ln2 * std::pow(t, 1.0 / p)), ProbabilityMethod::ClosedForm};
}

inline Evaluated right_prob(const family::Logistic&, double p)
{
    return {1.0 / (1.0 + std::pow((1.0 - p) / p, 1.0 / p)), ProbabilityMethod::ClosedForm};
}

inline Evaluated right_prob(const family::LogLogistic& d, double p)
{
    const double r = right_fence_of(d, p);
    return {1.0 / (1.0 + std::pow(r, d.alpha)), ProbabilityMethod::ClosedForm};
}

inline Evaluated right_prob(const family::ExpFrechet& d, double p)
{
    const double r = right_fence_of(d, p);
    return {std::pow(-std::expm1(-std::pow(r, -d.alpha)), d.lambda),
            ProbabilityMethod::ClosedForm};
}

inline Evaluated right_prob(const family::HillHorror& d, double p)
{
    return {d.sf(right_fence_of(d, p)), ProbabilityMethod::NumericInversion};
}

// --- left tail ---------------------------------------------------------------

inline Evaluated left_prob(const family::Exponential&, double p)
{
    const double g = exponential_left_equation(p);
    if (g >= 0.0)
        return {0.0, ProbabilityMethod::ClosedForm};
    // 1 - (1-p)^{1/p} 2^{(1-p)/p}
    return {-std::expm1(g / p), ProbabilityMethod::ClosedForm};
}

inline Evaluated left_prob(const family::ParetoPos& d, double p)
{
    const double xi = d.xi;
    if (pareto_left_equation(xi, p) >= 0.0)
        return {0.0, ProbabilityMethod::ClosedForm};
    const double l = 1.0 / (p * std::pow(1.0 - p, xi)) - ((1.0 - p) / p) * std::pow(2.0, xi);
    if (l <= 1.0)
        return {0.0, ProbabilityMethod::ClosedForm};
    return {-std::expm1(-std::log(l) / xi), ProbabilityMethod::ClosedForm};
}

inline Evaluated left_prob(const family::ParetoNeg& d, double p)
{
    const double xi = d.xi;
    if (pareto_neg_left_equation(xi, p) <= 0.0)
        return {0.0, ProbabilityMethod::ClosedForm};
    // 1 + xi L^A = [(1-p)^{-xi} - (1-p) 2^xi] / p
    const double base = (std::pow(1.0 - p, -xi) - (1.0 - p) * std::pow(2.0, xi)) / p;
    if (base >= 1.0)
        return {0.0, ProbabilityMethod::ClosedForm};
    return {-std::expm1(-std::log(base) / xi), ProbabilityMethod::ClosedForm};
}

inline Evaluated left_prob(const family::Frechet& d, double p)
{
    if (p < 0.5 && d.alpha <= frechet_alpha0(p))
        return {0.0, ProbabilityMethod::ClosedForm};
    const double l = left_fence_of(d, p);
    if (l <= 0.0)
        return {0.0, ProbabilityMethod::ClosedForm};
    return {std::exp(-std::pow(l, -d.alpha)), ProbabilityMethod::ClosedForm};
}

inline Evaluated left_prob(const family::NegWeibull& d, double p)
{
    if (p < 0.5 && d.alpha <= neg_weibull_alpha0(p))
        return {0.0, ProbabilityMethod::ClosedForm};
    const double l = left_fence_of(d, p);
    if (l <= 0.0)
        return {0.0, ProbabilityMethod::ClosedForm};
    return {-std::expm1(-std::pow(l, d.alpha)), ProbabilityMethod::ClosedForm};
}

inline Evaluated left_prob(const family::Gumbel&, double p)
{
    // 2^{-(-log2 p)^{1/p}}
    const double t = -std::log(p) / ln2;
    return {std::exp(-ln2 * std::pow(t, 1.0 / p)), ProbabilityMethod::ClosedForm};
}

inline Evaluated left_prob(const family::Logistic& d, double p) { return right_prob(d, p); }

inline Evaluated left_prob(const family::LogLogistic& d, double p)
{
    if (p < 0.5 && d.alpha <= log_logistic_alpha0(p))
        return {0.0, ProbabilityMethod::ClosedForm};
    const double l = left_fence_of(d, p);
    if (l <= 0.0)
        return {0.0, ProbabilityMethod::ClosedForm};
    return {1.0 / (1.0 + std::pow(l, -d.alpha)), ProbabilityMethod::ClosedForm};
}

inline Evaluated left_prob(const family::ExpFrechet& d, double p)
{
    if (exp_frechet_left_equation(d.alpha, d.lambda, p) <= 0.0)
        return {0.0, ProbabilityMethod::ClosedForm};
    const double l = left_fence_of(d, p);
    if (l <= 0.0)
        return {0.0, ProbabilityMethod::ClosedForm};
    return {-std::expm1(d.lambda * std::log(-std::expm1(-std::pow(l, -d.alpha)))),
            ProbabilityMethod::ClosedForm};
}

inline Evaluated left_prob(const family::HillHorror& d, double p)
{
    const double l = left_fence_of(d, p);
    return {l <= 0.0 ? 0.0 : d.cdf(l), ProbabilityMethod::NumericInversion};
}

} // namespace detail

inline double right_fence(const DistributionSpec& dist, Probability p)
{
    detail::require_fence_level(p, "right_fence");
    return dist.visit([&](const auto& d) { return detail::right_fence_of(d, p); });
}

inline double left_fence(const DistributionSpec& dist, Probability p)
{
    detail::require_fence_level(p, "left_fence");
    return dist.visit([&](const auto& d) { return detail::left_fence_of(d, p); });
}

inline FencePair fences(const DistributionSpec& dist, Probability p)
{
    return {p, left_fence(dist, p), right_fence(dist, p)};
}

inline OutsideProbabilities outside_probabilities(const DistributionSpec& dist, Probability p)
{
    detail::require_fence_level(p, "outside_probabilities");
    const auto r = dist.visit([&](const auto& d) { return detail::right_prob(d, p); });
    const auto l = dist.visit([&](const auto& d) { return detail::left_prob(d, p); });
    return {p, detail::clamp_probability(l.value, "p_{A,L,p}"),
            detail::clamp_probability(r.value, "p_{A,R,p}"), r.method};
}

/// p_{A,R,p}(X) = P(X > R^A(X, p)).
inline Probability prob_right_outside(const DistributionSpec& dist, Probability p)
{
    return outside_probabilities(dist, p).right;
}

/// p_{A,L,p}(X) = P(X < L^A(X, p)).
inline Probability prob_left_outside(const DistributionSpec& dist, Probability p)
{
    return outside_probabilities(dist, p).left;
}

// ---------------------------------------------------------------------------
// Positivity thresholds.

enum class ThresholdKind { LeftP0, RightP0, AlphaZero, XiThreshold };

inline constexpr std::string_view threshold_kind_name(ThresholdKind k)
{
    switch (k) {
    case ThresholdKind::LeftP0: return "left-p0";
    case ThresholdKind::RightP0: return "right-p0";
    case ThresholdKind::AlphaZero: return "alpha0";
    case ThresholdKind::XiThreshold: return "xi-threshold";
    }
    return "unknown";
}

struct ThresholdReport {
    ThresholdKind kind;
    double value;
    double residual;
};

namespace detail {

// Smallest p in (0, 0.5] at which `positive(p)` changes from <= 0 to > 0.
// Returns 0 when already positive at the bottom of the scan and 0.5 when it
// never becomes positive.
template <class Equation>
ThresholdReport threshold_from_equation(ThresholdKind kind, const Equation& eq)
{
    constexpr double lo = 1e-12;
    constexpr double hi = 0.5;
    if (eq(lo) > 0.0)
        return {kind, 0.0, 0.0};
    const auto bracket = scan_for_sign_change(eq, lo, hi, 512);
    if (!bracket)
        return {kind, 0.5, std::abs(eq(hi))};
    const Root root = bisect(eq, *bracket);
    return {kind, root.x, root.residual};
}

} // namespace detail

/// p_L(X) = inf{p > 0 : p_{A,L,p}(X) > 0}; 0 for Gumbel / Logistic.
inline ThresholdReport left_positivity_threshold(const DistributionSpec& dist)
{
    using K = ThresholdKind;
    switch (dist.family()) {
    case Family::Gumbel:
    case Family::Logistic:
        return {K::LeftP0, 0.0, 0.0};
    case Family::Exponential:
        return detail::threshold_from_equation(
            K::LeftP0, [](double p) { return -detail::exponential_left_equation(p); });
    case Family::ParetoPos: {
        const double xi = dist.shape1();
        return detail::threshold_from_equation(
            K::LeftP0, [xi](double p) { return -detail::pareto_left_equation(xi, p); });
    }
    case Family::ParetoNeg: {
        const double xi = dist.shape1();
        return detail::threshold_from_equation(
            K::LeftP0, [xi](double p) { return detail::pareto_neg_left_equation(xi, p); });
    }
    case Family::ExpFrechet: {
        const double a = dist.shape1();
        const double l = dist.shape2();
        return detail::threshold_from_equation(
            K::LeftP0, [a, l](double p) { return detail::exp_frechet_left_equation(a, l, p); });
    }
    default: {
        // No p-equation in closed form: the left fence meets the lower support endpoint.
        const double lower = dist.support().lower;
        return detail::threshold_from_equation(K::LeftP0, [&](double p) {
            return dist.visit([&](const auto& d) { return detail::left_fence_of(d, p); }) - lower;
        });
    }
    }
}

/// p_R(X) = inf{p > 0 : p_{A,R,p}(X) > 0}. Only the bounded Pareto has a positive value.
inline ThresholdReport right_positivity_threshold(const DistributionSpec& dist)
{
    if (dist.family() != Family::ParetoNeg)
        return {ThresholdKind::RightP0, 0.0, 0.0};
    const double xi = dist.shape1();
    return detail::threshold_from_equation(ThresholdKind::RightP0, [xi](double p) {
        return std::pow(2.0 * p, -xi) - (1.0 - p);
    });
}

/// Closed-form shape thresholds at fixed p in (0, 0.5):
///   Frechet, NegWeibull, LogLogistic: alpha0 (p_{A,L,p} = 0 for alpha <= alpha0);
///   ParetoNeg: xi* (p_{A,R,p} = 0 for xi <= xi*).
inline ThresholdReport alpha_threshold(Family fam, Probability p)
{
    if (!(p > 0.0 && p < 0.5))
        throw DomainError("alpha_threshold: p must lie in (0, 0.5)");
    const double lq = std::log1p(-p); // log(1-p)
    switch (fam) {
    case Family::Frechet: {
        const double a = detail::frechet_alpha0(p);
        return {ThresholdKind::AlphaZero, a,
                std::abs(a * lq - std::log(detail::ln2 / -std::log(p.value())))};
    }
    case Family::NegWeibull: {
        const double a = detail::neg_weibull_alpha0(p);
        return {ThresholdKind::AlphaZero, a, std::abs(a * lq - std::log(-lq / detail::ln2))};
    }
    case Family::LogLogistic: {
        const double a = detail::log_logistic_alpha0(p);
        return {ThresholdKind::AlphaZero, a, std::abs(a * lq - (std::log(p.value()) - lq))};
    }
    case Family::ParetoNeg: {
        const double xi = detail::pareto_neg_xi_threshold(p);
        return {ThresholdKind::XiThreshold, xi, std::abs(xi * std::log(2.0 * p) + lq)};
    }
    default:
        throw InvalidSpec("alpha_threshold: no closed-form shape threshold for " +
                          std::string(family_name(fam)));
    }
}

// ---------------------------------------------------------------------------

struct CurvePoint {
    FencePair fences;
    OutsideProbabilities probabilities;
};

/// Fences and outside probabilities over a strictly increasing grid in (0, 0.5].
inline std::vector<CurvePoint> outside_curve(const DistributionSpec& dist,
                                             std::span<const double> grid)
{
    if (grid.empty())
        throw DomainError("outside_curve: empty grid");
    std::vector<CurvePoint> out;
    out.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw DomainError("outside_curve: grid must be strictly increasing");
        out.push_back({fences(dist, grid[i]), outside_probabilities(dist, grid[i])});
    }
    return out;
}

} // namespace tailfence
