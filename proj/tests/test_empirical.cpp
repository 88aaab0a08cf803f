#include <tailfence/empirical.hpp>
#include <tailfence/fences.hpp>
#include <tailfence/sampling.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "catalog_cells.hpp"
#include "oracles.hpp"

using namespace tailfence;

namespace {

std::vector<double> one_to(int n)
{
    std::vector<double> v(n);
    std::iota(v.begin(), v.end(), 1.0);
    return v;
}

} // namespace

TEST(Sample, RejectsEmptyAndNonFinite)
{
    EXPECT_THROW(Sample(std::vector<double>{}), DataError);
    EXPECT_THROW(Sample(std::vector<double>{1.0, NAN}), DataError);
    EXPECT_THROW(Sample(std::vector<double>{1.0, INFINITY}), DataError);
}

TEST(Ecdf, StepValues)
{
    const Sample s({3.0, 1.0, 2.0, 2.0});
    EXPECT_EQ(ecdf(s, 0.5), 0.0);
    EXPECT_EQ(ecdf(s, 1.0), 0.25);
    EXPECT_EQ(ecdf(s, 2.0), 0.75);
    EXPECT_EQ(ecdf(s, 2.5), 0.75);
    EXPECT_EQ(ecdf(s, 3.0), 1.0);
}

TEST(EmpiricalQuantile, MatchesExactRationalIndex)
{
    const auto xs = draw(DistributionSpec::gumbel(), 37, 5);
    const Sample s(xs);
    for (std::size_t m : {4u, 10u, 37u, 100u, 200u}) {
        for (std::size_t k = 0; k <= m; ++k) {
            const double p = static_cast<double>(k) / static_cast<double>(m);
            EXPECT_EQ(empirical_quantile(s, p), oracle::type1_rational(xs, k, m))
                << "p=" << k << "/" << m;
        }
    }
}

TEST(EmpiricalQuantile, DecimalInputsHitIntendedOrderStatistic)
{
    const Sample s(one_to(100));
    EXPECT_EQ(empirical_quantile(s, 0.07), 7.0);
    EXPECT_EQ(empirical_quantile(s, 0.29), 29.0);
    EXPECT_EQ(empirical_quantile(s, 1.0 - 0.29), 71.0);
    EXPECT_EQ(empirical_quantile(s, 0.0), 1.0);
    EXPECT_EQ(empirical_quantile(s, 1.0), 100.0);
    EXPECT_EQ(type1_index(10, 0.3), 3u);
    EXPECT_EQ(type1_index(10, 0.31), 4u);
}

TEST(EmpiricalFences, WorkedExample)
{
    const Sample s(one_to(8));
    const auto f = empirical_fence_values(s, 0.25);
    EXPECT_DOUBLE_EQ(f.right, 12.0);
    EXPECT_DOUBLE_EQ(f.left, -4.0);
    const auto rep = empirical_fences(s, 0.25);
    EXPECT_EQ(rep.p_hat_right, 0.0);
    EXPECT_EQ(rep.p_hat_left, 0.0);
    EXPECT_FALSE(rep.degenerate);
}

TEST(EmpiricalFences, HalfCollapsesToSampleMedian)
{
    const Sample s(draw(DistributionSpec::logistic(), 51, 9));
    const auto rep = empirical_fences(s, 0.5);
    const double med = empirical_quantile(s, 0.5);
    EXPECT_DOUBLE_EQ(rep.left_fence, med);
    EXPECT_DOUBLE_EQ(rep.right_fence, med);
    EXPECT_EQ(rep.outside_right_idx.size(), s.count_greater(med));
    EXPECT_EQ(rep.outside_left_idx.size(), s.count_less(med));
}

TEST(EmpiricalFences, FlagsAreCoherent)
{
    for (const auto& d : testcells::catalog()) {
        const auto xs = draw(d, 257, 17);
        const Sample s(xs);
        for (double p : {0.05, 0.25, 0.4, 0.5}) {
            const auto rep = empirical_fences(s, p);
            std::vector<bool> right(xs.size()), left(xs.size());
            for (auto i : rep.outside_right_idx)
                right[i] = true;
            for (auto i : rep.outside_left_idx)
                left[i] = true;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                EXPECT_EQ(right[i], xs[i] > rep.right_fence) << d.describe();
                EXPECT_EQ(left[i], xs[i] < rep.left_fence) << d.describe();
            }
            EXPECT_TRUE(std::is_sorted(rep.outside_right_idx.begin(), rep.outside_right_idx.end()));
            EXPECT_DOUBLE_EQ(rep.p_hat_right,
                             static_cast<double>(rep.outside_right_idx.size()) / 257.0);
            EXPECT_DOUBLE_EQ(rep.p_hat_left,
                             static_cast<double>(rep.outside_left_idx.size()) / 257.0);
        }
    }
}

TEST(EmpiricalFences, PointsOnTheFenceAreInside)
{
    // p = 0.5: both fences equal the median, which is itself an observation.
    const Sample s({1.0, 2.0, 3.0, 4.0, 5.0});
    const auto rep = empirical_fences(s, 0.5);
    EXPECT_EQ(rep.outside_right_idx, (std::vector<std::size_t>{3, 4}));
    EXPECT_EQ(rep.outside_left_idx, (std::vector<std::size_t>{0, 1}));
}

TEST(EmpiricalFences, AffineEquivariance)
{
    const auto xs = draw(DistributionSpec::frechet(1.0), 301, 23);
    for (const auto& [a, b] : std::vector<std::pair<double, double>>{{2.0, 3.0}, {-1.0, 0.25}}) {
        std::vector<double> ys;
        for (double x : xs)
            ys.push_back(a + b * x);
        for (double p : {0.1, 0.25, 0.45}) {
            const auto fx = empirical_fences(Sample(xs), p);
            const auto fy = empirical_fences(Sample(ys), p);
            EXPECT_NEAR(fy.right_fence, a + b * fx.right_fence,
                        1e-12 * std::max(1.0, std::abs(fy.right_fence)));
            EXPECT_NEAR(fy.left_fence, a + b * fx.left_fence,
                        1e-12 * std::max(1.0, std::abs(fy.left_fence)));
            EXPECT_EQ(fy.outside_right_idx, fx.outside_right_idx);
            EXPECT_EQ(fy.outside_left_idx, fx.outside_left_idx);
        }
    }
}

TEST(EmpiricalFences, DegenerateSamples)
{
    EXPECT_TRUE(empirical_fences(Sample({1.0, 2.0, 3.0}), 0.25).degenerate);
    const auto rep = empirical_fences(Sample(std::vector<double>(10, 4.0)), 0.25);
    EXPECT_TRUE(rep.degenerate);
    EXPECT_EQ(rep.p_hat_right, 0.0);
    EXPECT_EQ(rep.p_hat_left, 0.0);
    EXPECT_THROW(empirical_fences(Sample({1.0, 2.0, 3.0, 4.0}), 0.0), DomainError);
    EXPECT_THROW(empirical_fences(Sample({1.0, 2.0, 3.0, 4.0}), 0.51), DomainError);
}

TEST(PlugIn, LargeExponentialSampleApproachesTheory)
{
    const Sample s(draw(DistributionSpec::exponential(), 1000000, 2024));
    const auto plug = right_tail_plug_in(s, 0.25);
    EXPECT_NEAR(plug.p_hat(), 0.03125, 0.0006);
    EXPECT_NEAR(plug.right_fence, 3.4657359027997265, 0.02);
}

TEST(PlugIn, ConsistencyAcrossReplications)
{
    // Mean plug-in frequency over 200 samples of size 2000 tracks p_{A,R,p};
    // the tolerance is 4 standard errors of the replication mean.
    for (const auto& d : {DistributionSpec::exponential(), DistributionSpec::gumbel(),
                          DistributionSpec::pareto(1.0)}) {
        for (double p : {0.1, 0.25}) {
            const double theory = prob_right_outside(d, p);
            std::vector<double> hats;
            for (std::uint64_t r = 0; r < 200; ++r)
                hats.push_back(right_tail_plug_in(Sample(draw(d, 2000, 1000 + r)), p).p_hat());
            const double mean = std::accumulate(hats.begin(), hats.end(), 0.0) / 200.0;
            double ss = 0.0;
            for (double h : hats)
                ss += (h - mean) * (h - mean);
            const double se = std::sqrt(ss / 199.0 / 200.0);
            EXPECT_NEAR(mean, theory, 4.0 * se + 2e-4) << d.describe() << " p=" << p;
        }
    }
}
