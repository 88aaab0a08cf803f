#pragma once

// Catalog of the standardized distribution families: one representative per
// location-scale type. Every family exposes its quantile function in two
// forms, quantile(p) = F^{-1}(p) and upper_quantile(s) = F^{-1}(1 - s), so that
// both tails keep full relative precision, plus cdf and survival function.

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>

#include "errors.hpp"
#include "probability.hpp"

namespace tailfence {

enum class Family {
    Exponential,
    ParetoPos,
    ParetoNeg,
    Frechet,
    NegWeibull,
    Gumbel,
    Logistic,
    LogLogistic,
    ExpFrechet,
    HillHorror,
};

inline constexpr std::array<Family, 10> all_families = {
    Family::Exponential, Family::ParetoPos,  Family::ParetoNeg, Family::Frechet,
    Family::NegWeibull,  Family::Gumbel,     Family::Logistic,  Family::LogLogistic,
    Family::ExpFrechet,  Family::HillHorror,
};

inline constexpr std::string_view family_name(Family f)
{
    switch (f) {
    case Family::Exponential: return "exponential";
    case Family::ParetoPos: return "pareto";
    case Family::ParetoNeg: return "pareto-neg";
    case Family::Frechet: return "frechet";
    case Family::NegWeibull: return "neg-weibull";
    case Family::Gumbel: return "gumbel";
    case Family::Logistic: return "logistic";
    case Family::LogLogistic: return "log-logistic";
    case Family::ExpFrechet: return "exp-frechet";
    case Family::HillHorror: return "hill-horror";
    }
    return "unknown";
}

inline std::optional<Family> parse_family(std::string_view name)
{
    for (Family f : all_families)
        if (family_name(f) == name)
            return f;
    return std::nullopt;
}

struct Support {
    double lower;
    double upper;
};

namespace detail {

inline constexpr double inf = std::numeric_limits<double>::infinity();

inline void require_positive(double v, const char* what)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw InvalidSpec(std::string(what) + " must be finite and > 0");
}

} // namespace detail

namespace family {

/// F(x) = 1 - e^{-x}, x >= 0.
struct Exponential {
    static constexpr Family tag = Family::Exponential;
    Support support() const { return {0.0, detail::inf}; }
    double quantile(double p) const { return -std::log1p(-p); }
    double upper_quantile(double s) const { return -std::log(s); }
    double cdf(double x) const { return x <= 0.0 ? 0.0 : -std::expm1(-x); }
    double sf(double x) const { return x <= 0.0 ? 1.0 : std::exp(-x); }
};

/// F(x) = 1 - x^{-1/xi}, x >= 1, xi > 0.
struct ParetoPos {
    static constexpr Family tag = Family::ParetoPos;
    double xi;
    explicit ParetoPos(double xi_) : xi(xi_) { detail::require_positive(xi, "pareto xi"); }
    Support support() const { return {1.0, detail::inf}; }
    double quantile(double p) const { return std::exp(-xi * std::log1p(-p)); }
    double upper_quantile(double s) const { return std::pow(s, -xi); }
    double cdf(double x) const { return x <= 1.0 ? 0.0 : -std::expm1(-std::log(x) / xi); }
    double sf(double x) const { return x <= 1.0 ? 1.0 : std::pow(x, -1.0 / xi); }
};

/// F(x) = 1 - (1 + xi x)^{-1/xi} on [0, -1/xi), xi < 0.
struct ParetoNeg {
    static constexpr Family tag = Family::ParetoNeg;
    double xi;
    explicit ParetoNeg(double xi_) : xi(xi_)
    {
        if (!(xi < 0.0) || !std::isfinite(xi))
            throw InvalidSpec("pareto-neg xi must be finite and < 0");
    }
    Support support() const { return {0.0, -1.0 / xi}; }
    double quantile(double p) const { return std::expm1(-xi * std::log1p(-p)) / xi; }
    double upper_quantile(double s) const { return std::expm1(-xi * std::log(s)) / xi; }
    double cdf(double x) const
    {
        if (x <= 0.0)
            return 0.0;
        if (x >= support().upper)
            return 1.0;
        return -std::expm1(-std::log1p(xi * x) / xi);
    }
    double sf(double x) const
    {
        if (x <= 0.0)
            return 1.0;
        if (x >= support().upper)
            return 0.0;
        return std::exp(-std::log1p(xi * x) / xi);
    }
};

/// F(x) = exp(-x^{-alpha}), x >= 0.
struct Frechet {
    static constexpr Family tag = Family::Frechet;
    double alpha;
    explicit Frechet(double a) : alpha(a) { detail::require_positive(alpha, "frechet alpha"); }
    Support support() const { return {0.0, detail::inf}; }
    double quantile(double p) const { return std::pow(-std::log(p), -1.0 / alpha); }
    double upper_quantile(double s) const { return std::pow(-std::log1p(-s), -1.0 / alpha); }
    double cdf(double x) const { return x <= 0.0 ? 0.0 : std::exp(-std::pow(x, -alpha)); }
    double sf(double x) const { return x <= 0.0 ? 1.0 : -std::expm1(-std::pow(x, -alpha)); }
};

/// Negative of a reversed Weibull: F(x) = 1 - exp(-x^alpha), x >= 0.
struct NegWeibull {
    static constexpr Family tag = Family::NegWeibull;
    double alpha;
    explicit NegWeibull(double a) : alpha(a) { detail::require_positive(alpha, "neg-weibull alpha"); }
    Support support() const { return {0.0, detail::inf}; }
    double quantile(double p) const { return std::pow(-std::log1p(-p), 1.0 / alpha); }
    double upper_quantile(double s) const { return std::pow(-std::log(s), 1.0 / alpha); }
    double cdf(double x) const { return x <= 0.0 ? 0.0 : -std::expm1(-std::pow(x, alpha)); }
    double sf(double x) const { return x <= 0.0 ? 1.0 : std::exp(-std::pow(x, alpha)); }
};

/// F(x) = exp(-e^{-x}).
struct Gumbel {
    static constexpr Family tag = Family::Gumbel;
    Support support() const { return {-detail::inf, detail::inf}; }
    double quantile(double p) const { return -std::log(-std::log(p)); }
    double upper_quantile(double s) const { return -std::log(-std::log1p(-s)); }
    double cdf(double x) const { return std::exp(-std::exp(-x)); }
    double sf(double x) const { return -std::expm1(-std::exp(-x)); }
};

/// F(x) = 1 / (1 + e^{-x}).
struct Logistic {
    static constexpr Family tag = Family::Logistic;
    Support support() const { return {-detail::inf, detail::inf}; }
    double quantile(double p) const { return std::log(p) - std::log1p(-p); }
    double upper_quantile(double s) const { return std::log1p(-s) - std::log(s); }
    double cdf(double x) const { return 1.0 / (1.0 + std::exp(-x)); }
    double sf(double x) const { return 1.0 / (1.0 + std::exp(x)); }
};

/// F(x) = 1 / (1 + x^{-alpha}), x >= 0.
struct LogLogistic {
    static constexpr Family tag = Family::LogLogistic;
    double alpha;
    explicit LogLogistic(double a) : alpha(a) { detail::require_positive(alpha, "log-logistic alpha"); }
    Support support() const { return {0.0, detail::inf}; }
    double quantile(double p) const { return std::exp((std::log(p) - std::log1p(-p)) / alpha); }
    double upper_quantile(double s) const { return std::exp((std::log1p(-s) - std::log(s)) / alpha); }
    double cdf(double x) const { return x <= 0.0 ? 0.0 : 1.0 / (1.0 + std::pow(x, -alpha)); }
    double sf(double x) const { return x <= 0.0 ? 1.0 : 1.0 / (1.0 + std::pow(x, alpha)); }
};

/// F(x) = 1 - (1 - exp(-x^{-alpha}))^lambda, x >= 0.
struct ExpFrechet {
    static constexpr Family tag = Family::ExpFrechet;
    double alpha;
    double lambda;
    ExpFrechet(double a, double l) : alpha(a), lambda(l)
    {
        detail::require_positive(alpha, "exp-frechet alpha");
        detail::require_positive(lambda, "exp-frechet lambda");
    }
    Support support() const { return {0.0, detail::inf}; }
    // F^{-1}(p) = {-log[1 - (1-p)^{1/lambda}]}^{-1/alpha}
    double quantile(double p) const
    {
        const double tail = -std::expm1(std::log1p(-p) / lambda); // 1 - (1-p)^{1/lambda}
        return std::pow(-std::log(tail), -1.0 / alpha);
    }
    double upper_quantile(double s) const
    {
        return std::pow(-std::log1p(-std::pow(s, 1.0 / lambda)), -1.0 / alpha);
    }
    double cdf(double x) const
    {
        if (x <= 0.0)
            return 0.0;
        const double y = -std::expm1(-std::pow(x, -alpha));
        return -std::expm1(lambda * std::log(y));
    }
    double sf(double x) const
    {
        if (x <= 0.0)
            return 1.0;
        return std::pow(-std::expm1(-std::pow(x, -alpha)), lambda);
    }
};

/// Defined through F^{-1}(p) = (1-p)^{-1/alpha} (-log(1-p)); no closed-form c.d.f.
///
/// With t = -log(1-p) the quantile is t e^{t/alpha}, strictly increasing in t,
/// so the c.d.f. is obtained by bisecting for t and returning 1 - e^{-t}.
struct HillHorror {
    static constexpr Family tag = Family::HillHorror;
    double alpha;
    explicit HillHorror(double a) : alpha(a) { detail::require_positive(alpha, "hill-horror alpha"); }
    Support support() const { return {0.0, detail::inf}; }
    double quantile(double p) const
    {
        const double t = -std::log1p(-p);
        return t * std::exp(t / alpha);
    }
    double upper_quantile(double s) const
    {
        const double t = -std::log(s);
        return t * std::exp(t / alpha);
    }
    double cdf(double x) const { return x <= 0.0 ? 0.0 : -std::expm1(-log_survival_inverse(x)); }
    double sf(double x) const { return x <= 0.0 ? 1.0 : std::exp(-log_survival_inverse(x)); }

    /// Solves t e^{t/alpha} = x for t >= 0 (x > 0).
    double log_survival_inverse(double x) const
    {
        if (std::isinf(x))
            return detail::inf;
        auto g = [&](double t) { return t * std::exp(t / alpha) - x; };
        double lo = 0.0;
        double hi = 1.0;
        while (g(hi) < 0.0) {
            lo = hi;
            hi *= 2.0;
        }
        for (int i = 0; i < 2000; ++i) {
            const double mid = lo + 0.5 * (hi - lo);
            if (mid <= lo || mid >= hi)
                break;
            (g(mid) < 0.0 ? lo : hi) = mid;
        }
        return lo + 0.5 * (hi - lo);
    }
};

} // namespace family

/// Tagged union over the catalog; the handle every other module operates on.
class DistributionSpec {
public:
    using Variant = std::variant<family::Exponential, family::ParetoPos, family::ParetoNeg,
                                 family::Frechet, family::NegWeibull, family::Gumbel,
                                 family::Logistic, family::LogLogistic, family::ExpFrechet,
                                 family::HillHorror>;

    template <class F>
        requires std::is_constructible_v<Variant, F>
    DistributionSpec(F f) : v_(std::move(f)) // NOLINT(google-explicit-constructor)
    {
    }

    static DistributionSpec exponential() { return family::Exponential{}; }
    static DistributionSpec pareto(double xi) { return family::ParetoPos{xi}; }
    static DistributionSpec pareto_neg(double xi) { return family::ParetoNeg{xi}; }
    static DistributionSpec frechet(double alpha) { return family::Frechet{alpha}; }
    static DistributionSpec neg_weibull(double alpha) { return family::NegWeibull{alpha}; }
    static DistributionSpec gumbel() { return family::Gumbel{}; }
    static DistributionSpec logistic() { return family::Logistic{}; }
    static DistributionSpec log_logistic(double alpha) { return family::LogLogistic{alpha}; }
    static DistributionSpec exp_frechet(double alpha, double lambda)
    {
        return family::ExpFrechet{alpha, lambda};
    }
    static DistributionSpec hill_horror(double alpha) { return family::HillHorror{alpha}; }

    /// Builds a spec from a family tag and optional shape values. Families
    /// without a shape reject any supplied value; shaped families require theirs.
    static DistributionSpec make(Family f, std::optional<double> shape1 = std::nullopt,
                                 std::optional<double> shape2 = std::nullopt)
    {
        const std::string name(family_name(f));
        auto need = [&](const std::optional<double>& v, const char* what) {
            if (!v)
                throw InvalidSpec(name + " requires " + what);
            return *v;
        };
        auto none = [&](const std::optional<double>& v, const char* what) {
            if (v)
                throw InvalidSpec(name + " takes no " + what);
        };
        switch (f) {
        case Family::Exponential:
        case Family::Gumbel:
        case Family::Logistic:
            none(shape1, "shape parameter");
            none(shape2, "second shape parameter");
            if (f == Family::Exponential)
                return exponential();
            return f == Family::Gumbel ? gumbel() : logistic();
        case Family::ParetoPos:
            none(shape2, "second shape parameter");
            return pareto(need(shape1, "xi"));
        case Family::ParetoNeg:
            none(shape2, "second shape parameter");
            return pareto_neg(need(shape1, "xi"));
        case Family::Frechet:
            none(shape2, "second shape parameter");
            return frechet(need(shape1, "alpha"));
        case Family::NegWeibull:
            none(shape2, "second shape parameter");
            return neg_weibull(need(shape1, "alpha"));
        case Family::LogLogistic:
            none(shape2, "second shape parameter");
            return log_logistic(need(shape1, "alpha"));
        case Family::HillHorror:
            none(shape2, "second shape parameter");
            return hill_horror(need(shape1, "alpha"));
        case Family::ExpFrechet:
            return exp_frechet(need(shape1, "alpha"), need(shape2, "lambda"));
        }
        throw InvalidSpec("unknown family");
    }

    Family family() const
    {
        return std::visit([](const auto& d) { return std::decay_t<decltype(d)>::tag; }, v_);
    }

    /// xi for the Pareto families, alpha for the alpha families, NaN otherwise.
    double shape1() const
    {
        return std::visit(
            [](const auto& d) -> double {
                if constexpr (requires { d.xi; })
                    return d.xi;
                else if constexpr (requires { d.alpha; })
                    return d.alpha;
                else
                    return std::numeric_limits<double>::quiet_NaN();
            },
            v_);
    }

    /// lambda for ExpFrechet, NaN otherwise.
    double shape2() const
    {
        if (const auto* e = std::get_if<family::ExpFrechet>(&v_))
            return e->lambda;
        return std::numeric_limits<double>::quiet_NaN();
    }

    Support support() const
    {
        return std::visit([](const auto& d) { return d.support(); }, v_);
    }

    std::string describe() const
    {
        std::ostringstream os;
        os << family_name(family());
        switch (family()) {
        case Family::Exponential:
        case Family::Gumbel:
        case Family::Logistic:
            break;
        case Family::ParetoPos:
        case Family::ParetoNeg:
            os << "(xi=" << shape1() << ")";
            break;
        case Family::ExpFrechet:
            os << "(alpha=" << shape1() << ",lambda=" << shape2() << ")";
            break;
        default:
            os << "(alpha=" << shape1() << ")";
        }
        return os.str();
    }

    template <class Visitor>
    decltype(auto) visit(Visitor&& vis) const
    {
        return std::visit(std::forward<Visitor>(vis), v_);
    }

    const Variant& variant() const noexcept { return v_; }

private:
    Variant v_;
};

/// F^{-1}(p) for p in (0, 1).
inline double quantile(const DistributionSpec& dist, Probability p)
{
    detail::require_open_unit(p, "quantile");
    return dist.visit([&](const auto& d) { return d.quantile(p); });
}

/// F^{-1}(1 - s) for s in (0, 1), evaluated without forming 1 - s.
inline double upper_quantile(const DistributionSpec& dist, Probability s)
{
    detail::require_open_unit(s, "upper_quantile");
    return dist.visit([&](const auto& d) { return d.upper_quantile(s); });
}

inline Probability cdf(const DistributionSpec& dist, double x)
{
    if (std::isnan(x))
        throw DomainError("cdf: x is NaN");
    return detail::clamp_probability(dist.visit([&](const auto& d) { return d.cdf(x); }), "cdf");
}

/// 1 - F(x), computed directly for tail accuracy.
inline Probability survival(const DistributionSpec& dist, double x)
{
    if (std::isnan(x))
        throw DomainError("survival: x is NaN");
    return detail::clamp_probability(dist.visit([&](const auto& d) { return d.sf(x); }),
                                     "survival");
}

} // namespace tailfence
