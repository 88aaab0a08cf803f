#pragma once

// Seeded Monte Carlo: the estimator simulation study, exceedance-frequency
// oracles for the theoretical outside probabilities, and the batched
// simulation route for the Hill-horror curves.
//
// Replication r of cell (family, alpha index, n index) draws from
// make_engine(seed, {family, alpha index, n index, r}); results are reduced in
// replication order, so output is independent of the worker count.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "distributions.hpp"
#include "empirical.hpp"
#include "errors.hpp"
#include "estimators.hpp"
#include "fences.hpp"
#include "random.hpp"
#include "sampling.hpp"

namespace tailfence {

struct StudyConfig {
    TailModel data_family = TailModel::Pareto;
    std::vector<double> alphas;
    std::vector<std::size_t> ns;
    std::size_t reps = 1000;
    double p = 0.25;
    std::uint64_t seed = 1;
};

struct StudyRow {
    TailModel family;
    double alpha;
    std::size_t n;
    double mean_par;
    double sd_par;
    double mean_fr;
    double sd_fr;
    std::optional<TailModel> better; // empty when no replication was valid
    std::size_t valid_reps;
    std::size_t reps;
};

struct StudyReport {
    std::vector<StudyRow> rows;
};

inline void validate(const StudyConfig& c)
{
    if (c.reps < 1)
        throw DomainError("study: reps must be >= 1");
    if (c.alphas.empty() || c.ns.empty())
        throw DomainError("study: alpha and n lists must be non-empty");
    for (double a : c.alphas)
        if (!(a > 0.0) || !std::isfinite(a))
            throw DomainError("study: every alpha must be finite and > 0");
    for (std::size_t n : c.ns)
        if (n < 4)
            throw DomainError("study: every n must be >= 4");
    detail::require_estimator_level(c.p);
}

/// Desk-scale (reps = 10^3) or full-scale (reps = 10^4) replication of the
/// estimator table: both data families, alpha in {0.5, 1, 2}, n in {30, 100, 10^3, 10^4}.
inline std::vector<StudyConfig> table_preset(std::size_t reps, std::uint64_t seed = 1)
{
    std::vector<StudyConfig> out;
    for (TailModel f : {TailModel::Pareto, TailModel::Frechet})
        out.push_back({f, {0.5, 1.0, 2.0}, {30, 100, 1000, 10000}, reps, 0.25, seed});
    return out;
}

namespace detail {

struct ReplicationResult {
    bool valid;
    double par;
    double fr;
};

inline ReplicationResult run_replication(const DistributionSpec& dist, std::size_t n, double p,
                                         Engine eng, std::vector<double>& buf)
{
    buf.resize(n);
    draw_into(dist, eng, buf);
    const Sample s(std::move(buf));
    const auto plug = right_tail_plug_in(s, p);
    const double p_hat = plug.p_hat();
    // Replications violating the estimators' standing assumptions are dropped.
    if (!(p_hat > 0.0 && p_hat < 1.0 && plug.right_fence > 1.0))
        return {false, 0.0, 0.0};
    return {true, pareto_alpha_from(p_hat, plug.right_fence),
            frechet_alpha_from(p_hat, plug.right_fence)};
}

inline unsigned resolve_threads(unsigned threads)
{
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    return threads;
}

/// Runs body(i) for i in [0, count) on `threads` workers.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, const Body& body)
{
    threads = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < count;)
                body(i);
        });
}

struct MeanSd {
    double mean;
    double sd;
};

// Two-pass mean and (n-1)-denominator standard deviation, in index order.
inline MeanSd mean_sd(std::span<const ReplicationResult> reps, double ReplicationResult::*field)
{
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::size_t k = 0;
    double sum = 0.0;
    for (const auto& r : reps)
        if (r.valid) {
            sum += r.*field;
            ++k;
        }
    if (k == 0)
        return {nan, nan};
    const double mean = sum / static_cast<double>(k);
    if (k == 1)
        return {mean, 0.0};
    double ss = 0.0;
    for (const auto& r : reps)
        if (r.valid)
            ss += (r.*field - mean) * (r.*field - mean);
    return {mean, std::sqrt(ss / static_cast<double>(k - 1))};
}

} // namespace detail

/// For every (alpha, n) cell: reps independent samples from the data family,
/// both estimators at config.p, mean and sample st.dev. over valid replications.
inline StudyReport run_study(const StudyConfig& config, unsigned threads = 0)
{
    validate(config);
    const std::size_t cells = config.alphas.size() * config.ns.size();
    const std::size_t total = cells * config.reps;
    std::vector<detail::ReplicationResult> results(total);

    detail::parallel_for(total, threads, [&](std::size_t task) {
        const std::size_t cell = task / config.reps;
        const std::size_t rep = task % config.reps;
        const std::size_t ai = cell / config.ns.size();
        const std::size_t ni = cell % config.ns.size();
        const auto dist = model_distribution(config.data_family, config.alphas[ai]);
        thread_local std::vector<double> buf;
        results[task] = detail::run_replication(
            dist, config.ns[ni], config.p,
            make_engine(config.seed,
                        {static_cast<std::uint64_t>(config.data_family), ai, ni, rep}),
            buf);
    });

    StudyReport report;
    for (std::size_t cell = 0; cell < cells; ++cell) {
        const std::size_t ai = cell / config.ns.size();
        const std::size_t ni = cell % config.ns.size();
        const std::span<const detail::ReplicationResult> slice(
            results.data() + cell * config.reps, config.reps);
        const auto par = detail::mean_sd(slice, &detail::ReplicationResult::par);
        const auto fr = detail::mean_sd(slice, &detail::ReplicationResult::fr);
        const auto valid = static_cast<std::size_t>(
            std::count_if(slice.begin(), slice.end(), [](const auto& r) { return r.valid; }));
        const double alpha = config.alphas[ai];
        std::optional<TailModel> better;
        if (valid > 0)
            better = std::abs(par.mean - alpha) <= std::abs(fr.mean - alpha) ? TailModel::Pareto
                                                                             : TailModel::Frechet;
        report.rows.push_back({config.data_family, alpha, config.ns[ni], par.mean, par.sd,
                               fr.mean, fr.sd, better, valid, config.reps});
    }
    return report;
}

inline StudyReport run_study(std::span<const StudyConfig> configs, unsigned threads = 0)
{
    StudyReport all;
    for (const auto& c : configs) {
        auto part = run_study(c, threads);
        all.rows.insert(all.rows.end(), part.rows.begin(), part.rows.end());
    }
    return all;
}

// ---------------------------------------------------------------------------

struct MonteCarloOutside {
    double p;
    double left;
    double left_se;
    double right;
    double right_se;
    std::size_t samples;
};

/// Exceedance frequencies of the theoretical fences among n_samples draws,
/// with binomial standard errors sqrt(q(1-q)/n).
inline MonteCarloOutside mc_outside_prob(const DistributionSpec& dist, Probability p,
                                         std::size_t n_samples, std::uint64_t seed)
{
    if (n_samples < 1000)
        throw DomainError("mc_outside_prob: n_samples must be >= 1000");
    const auto f = fences(dist, p);
    Engine eng = make_engine(seed);
    std::size_t above = 0;
    std::size_t below = 0;
    dist.visit([&](const auto& d) {
        for (std::size_t i = 0; i < n_samples; ++i) {
            const double x = d.quantile(uniform_open(eng));
            above += x > f.right;
            below += x < f.left;
        }
    });
    const double n = static_cast<double>(n_samples);
    const double r = static_cast<double>(above) / n;
    const double l = static_cast<double>(below) / n;
    return {p, l, std::sqrt(l * (1.0 - l) / n), r, std::sqrt(r * (1.0 - r) / n), n_samples};
}

// ---------------------------------------------------------------------------

enum class CurveMethod { Inversion, Simulation };

struct CurveEstimate {
    OutsideProbabilities probabilities;
    double left_se;
    double right_se;
};

/// Hill-horror outside-probability curve, either by numeric inversion of the
/// quantile function or by averaging per-batch exceedance frequencies of the
/// theoretical fences over sim_batches batches of sim_samples draws.
inline std::vector<CurveEstimate> hill_horror_prob_curve(double alpha, std::span<const double> grid,
                                                         CurveMethod method,
                                                         std::size_t sim_samples = 1000000,
                                                         std::size_t sim_batches = 100,
                                                         std::uint64_t seed = 1)
{
    const auto dist = DistributionSpec::hill_horror(alpha);
    if (grid.empty())
        throw DomainError("hill_horror_prob_curve: empty grid");
    for (double p : grid)
        detail::require_fence_level(p, "hill_horror_prob_curve");

    std::vector<CurveEstimate> out;
    if (method == CurveMethod::Inversion) {
        for (double p : grid)
            out.push_back({outside_probabilities(dist, p), 0.0, 0.0});
        return out;
    }

    if (sim_samples < 1 || sim_batches < 1)
        throw DomainError("hill_horror_prob_curve: sim_samples and sim_batches must be >= 1");
    std::vector<FencePair> fp;
    for (double p : grid)
        fp.push_back(fences(dist, p));

    // freq[b * grid + g] for left and right
    std::vector<double> left(sim_batches * grid.size());
    std::vector<double> right(sim_batches * grid.size());
    std::vector<double> buf(sim_samples);
    for (std::size_t b = 0; b < sim_batches; ++b) {
        Engine eng = make_engine(seed, {b});
        draw_into(dist, eng, buf);
        std::sort(buf.begin(), buf.end());
        for (std::size_t g = 0; g < grid.size(); ++g) {
            const auto lo = std::lower_bound(buf.begin(), buf.end(), fp[g].left) - buf.begin();
            const auto hi = buf.end() - std::upper_bound(buf.begin(), buf.end(), fp[g].right);
            left[b * grid.size() + g] = static_cast<double>(lo) / static_cast<double>(sim_samples);
            right[b * grid.size() + g] = static_cast<double>(hi) / static_cast<double>(sim_samples);
        }
    }

    const double nb = static_cast<double>(sim_batches);
    auto summarize = [&](const std::vector<double>& v, std::size_t g) -> std::pair<double, double> {
        double sum = 0.0;
        for (std::size_t b = 0; b < sim_batches; ++b)
            sum += v[b * grid.size() + g];
        const double mean = sum / nb;
        if (sim_batches == 1) {
            return {mean, std::sqrt(mean * (1.0 - mean) / static_cast<double>(sim_samples))};
        }
        double ss = 0.0;
        for (std::size_t b = 0; b < sim_batches; ++b) {
            const double d = v[b * grid.size() + g] - mean;
            ss += d * d;
        }
        return {mean, std::sqrt(ss / (nb - 1.0) / nb)};
    };
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const auto [l, lse] = summarize(left, g);
        const auto [r, rse] = summarize(right, g);
        out.push_back({{grid[g], l, r, ProbabilityMethod::MonteCarlo}, lse, rse});
    }
    return out;
}

} // namespace tailfence
