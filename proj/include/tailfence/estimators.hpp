#pragma once

// Distribution-sensitive tail-index estimators. Equating the plug-in
// frequency p_hat = #{X_i > R_n^A(p)} / n with the model's closed-form
// p_{A,R,p} and solving for alpha gives
//
//   Pareto:   alpha = -log(p_hat) / log(R_n^A)
//   Frechet:  alpha = -log(-log(1 - p_hat)) / log(R_n^A)
//
// Both need at least one observation above R_n^A(p) and R_n^A(p) > 1.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "distributions.hpp"
#include "empirical.hpp"
#include "errors.hpp"
#include "fences.hpp"
#include "sample.hpp"

namespace tailfence {

enum class TailModel { Pareto, Frechet };

inline constexpr std::string_view model_name(TailModel m)
{
    return m == TailModel::Pareto ? "pareto" : "frechet";
}

struct EstimationReport {
    TailModel model;
    double p;
    double alpha_hat;
    double r_fence_used;
    double p_hat_used;
    std::size_t n;
};

namespace detail {

inline void require_estimator_level(double p)
{
    if (!(p > 0.0 && p < 0.5))
        throw DomainError("estimator: p must lie in (0, 0.5), got " + std::to_string(p));
}

inline void require_standing_assumptions(double p_hat, double r_fence)
{
    if (!(p_hat > 0.0))
        throw PreconditionViolation("no observation exceeds the empirical right fence");
    if (!(r_fence > 1.0)) {
        std::ostringstream os;
        os << "empirical right fence " << r_fence << " is not > 1";
        throw PreconditionViolation(os.str());
    }
}

} // namespace detail

inline double pareto_alpha_from(double p_hat, double r_fence)
{
    detail::require_standing_assumptions(p_hat, r_fence);
    const double a = -std::log(p_hat) / std::log(r_fence);
    if (!(a > 0.0) || !std::isfinite(a))
        throw PreconditionViolation("pareto estimate is not finite and positive");
    return a;
}

inline double frechet_alpha_from(double p_hat, double r_fence)
{
    detail::require_standing_assumptions(p_hat, r_fence);
    if (!(p_hat < 1.0))
        throw PreconditionViolation("every observation exceeds the empirical right fence");
    const double a = -std::log(-std::log1p(-p_hat)) / std::log(r_fence);
    if (!std::isfinite(a))
        throw PreconditionViolation("frechet estimate is not finite");
    return a;
}

inline double alpha_from(TailModel m, double p_hat, double r_fence)
{
    return m == TailModel::Pareto ? pareto_alpha_from(p_hat, r_fence)
                                  : frechet_alpha_from(p_hat, r_fence);
}

inline EstimationReport estimate_alpha(TailModel model, const Sample& s, Probability p = 0.25)
{
    detail::require_estimator_level(p);
    const auto plug = right_tail_plug_in(s, p);
    const double a = alpha_from(model, plug.p_hat(), plug.right_fence);
    return {model, p, a, plug.right_fence, plug.p_hat(), s.size()};
}

inline EstimationReport estimate_pareto_alpha(const Sample& s, Probability p = 0.25)
{
    return estimate_alpha(TailModel::Pareto, s, p);
}

inline EstimationReport estimate_frechet_alpha(const Sample& s, Probability p = 0.25)
{
    return estimate_alpha(TailModel::Frechet, s, p);
}

// ---------------------------------------------------------------------------
// Model selection for the two estimator families.

struct ModelFit {
    TailModel model;
    double alpha; // least-squares shape
    double sse;
};

inline constexpr std::array<double, 9> model_selection_grid = {0.05, 0.10, 0.15, 0.20, 0.25,
                                                               0.30, 0.35, 0.40, 0.45};

inline DistributionSpec model_distribution(TailModel m, double alpha)
{
    return m == TailModel::Pareto ? DistributionSpec::pareto(1.0 / alpha)
                                  : DistributionSpec::frechet(alpha);
}

namespace detail {

template <class Objective>
double golden_section_minimize(const Objective& f, double lo, double hi, double tol = 1e-10)
{
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

} // namespace detail

/// Fits each model's shape to the plug-in curve p_hat_{A,R}(p) over
/// model_selection_grid by least squares; result sorted by sse ascending.
inline std::vector<ModelFit> fit_tail_models(const Sample& s)
{
    std::array<double, model_selection_grid.size()> observed{};
    for (std::size_t i = 0; i < observed.size(); ++i)
        observed[i] = right_tail_plug_in(s, model_selection_grid[i]).p_hat();

    std::vector<ModelFit> fits;
    for (TailModel m : {TailModel::Pareto, TailModel::Frechet}) {
        auto sse = [&](double log_alpha) {
            const auto dist = model_distribution(m, std::exp(log_alpha));
            double acc = 0.0;
            for (std::size_t i = 0; i < observed.size(); ++i) {
                const double r = observed[i] - prob_right_outside(dist, model_selection_grid[i]);
                acc += r * r;
            }
            return acc;
        };
        const double best = detail::golden_section_minimize(sse, std::log(0.05), std::log(20.0));
        fits.push_back({m, std::exp(best), sse(best)});
    }
    std::stable_sort(fits.begin(), fits.end(),
                     [](const ModelFit& a, const ModelFit& b) { return a.sse < b.sse; });
    return fits;
}

inline TailModel select_model(const Sample& s) { return fit_tail_models(s).front().model; }

// ---------------------------------------------------------------------------
// Tail classification by p_{A,R,0.25}.

struct ClassificationEntry {
    std::string label;
    Family family;
    double alpha; // NaN for the shape-free families
    double reference;
    double distance;
};

struct ClassificationReport {
    double p_hat_right_025;
    double p_hat_left_025;
    std::vector<ClassificationEntry> ranking;
    bool coarse; // n < 20: plug-in lattice coarser than the gaps between references
};

inline constexpr std::array<double, 5> classification_alpha_grid = {0.25, 0.5, 1.0, 2.0, 4.0};

/// Reference p_{A,R,0.25} for the shape-free families and for the
/// alpha-parameterized families on classification_alpha_grid, in catalog order.
inline std::vector<ClassificationEntry> classification_references()
{
    std::vector<ClassificationEntry> refs;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    auto add = [&](const DistributionSpec& d, double alpha, std::string label) {
        refs.push_back({std::move(label), d.family(), alpha, prob_right_outside(d, 0.25), 0.0});
    };
    for (Family f : all_families) {
        switch (f) {
        case Family::Exponential:
        case Family::Gumbel:
        case Family::Logistic:
            add(DistributionSpec::make(f), nan, std::string(family_name(f)));
            break;
        case Family::ParetoPos:
        case Family::Frechet:
        case Family::NegWeibull:
        case Family::LogLogistic:
        case Family::HillHorror:
            for (double a : classification_alpha_grid) {
                std::ostringstream label;
                label << family_name(f) << "(alpha=" << a << ")";
                const auto d = f == Family::ParetoPos ? DistributionSpec::pareto(1.0 / a)
                                                      : DistributionSpec::make(f, a);
                add(d, a, label.str());
            }
            break;
        default:
            break; // bounded support or two shapes: not part of the classification
        }
    }
    return refs;
}

/// Ranks the reference families by |p_hat - p_{A,R,0.25}|; ties keep catalog order.
inline ClassificationReport rank_by_right_probability(
    double p_hat_right, double p_hat_left = std::numeric_limits<double>::quiet_NaN())
{
    ClassificationReport rep{p_hat_right, p_hat_left, classification_references(), false};
    for (auto& e : rep.ranking)
        e.distance = std::abs(p_hat_right - e.reference);
    std::stable_sort(rep.ranking.begin(), rep.ranking.end(),
                     [](const auto& a, const auto& b) { return a.distance < b.distance; });
    return rep;
}

inline ClassificationReport classify_tail(const Sample& s)
{
    if (s.count_distinct() < 3)
        throw DataError("classification needs at least 3 distinct observations");
    const auto rep = empirical_fences(s, 0.25);
    auto out = rank_by_right_probability(rep.p_hat_right, rep.p_hat_left);
    out.coarse = s.size() < 20;
    return out;
}

} // namespace tailfence
