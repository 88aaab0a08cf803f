#include <tailfence/monte_carlo.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <vector>

using namespace tailfence;

namespace {

StudyConfig small_config(std::size_t n)
{
    return {TailModel::Pareto, {0.5, 1.0}, {n, 200}, 60, 0.25, 77};
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

} // namespace

TEST(Study, IdenticalAcrossThreadCounts)
{
    const auto base = run_study(small_config(30), 1);
    for (unsigned t : {4u, 8u}) {
        const auto other = run_study(small_config(30), t);
        ASSERT_EQ(other.rows.size(), base.rows.size());
        for (std::size_t i = 0; i < base.rows.size(); ++i) {
            EXPECT_TRUE(same_bits(other.rows[i].mean_par, base.rows[i].mean_par));
            EXPECT_TRUE(same_bits(other.rows[i].sd_par, base.rows[i].sd_par));
            EXPECT_TRUE(same_bits(other.rows[i].mean_fr, base.rows[i].mean_fr));
            EXPECT_TRUE(same_bits(other.rows[i].sd_fr, base.rows[i].sd_fr));
            EXPECT_EQ(other.rows[i].valid_reps, base.rows[i].valid_reps);
        }
    }
}

TEST(Study, SeedChangesResults)
{
    auto c = small_config(30);
    const auto a = run_study(c, 1);
    c.seed = 78;
    const auto b = run_study(c, 1);
    EXPECT_NE(a.rows[0].mean_par, b.rows[0].mean_par);
}

TEST(Study, RowsMatchDirectReplication)
{
    // n = 4 drops many replications (often nothing exceeds R_n^A), which
    // exercises the valid-replication bookkeeping.
    const auto cfg = small_config(4);
    const auto rep = run_study(cfg, 2);
    ASSERT_EQ(rep.rows.size(), 4u);
    for (std::size_t ai = 0; ai < cfg.alphas.size(); ++ai) {
        for (std::size_t ni = 0; ni < cfg.ns.size(); ++ni) {
            const auto dist = DistributionSpec::pareto(1.0 / cfg.alphas[ai]);
            std::vector<double> par, fr;
            for (std::size_t r = 0; r < cfg.reps; ++r) {
                Engine eng = make_engine(cfg.seed, {0, ai, ni, r});
                std::vector<double> xs(cfg.ns[ni]);
                draw_into(dist, eng, xs);
                const auto plug = right_tail_plug_in(Sample(xs), cfg.p);
                if (plug.count == 0 || plug.count == plug.n || !(plug.right_fence > 1.0))
                    continue;
                par.push_back(pareto_alpha_from(plug.p_hat(), plug.right_fence));
                fr.push_back(frechet_alpha_from(plug.p_hat(), plug.right_fence));
            }
            const auto& row = rep.rows[ai * cfg.ns.size() + ni];
            EXPECT_EQ(row.alpha, cfg.alphas[ai]);
            EXPECT_EQ(row.n, cfg.ns[ni]);
            EXPECT_EQ(row.reps, cfg.reps);
            ASSERT_EQ(row.valid_reps, par.size());
            double m = 0.0;
            for (double v : par)
                m += v;
            m /= static_cast<double>(par.size());
            double ss = 0.0;
            for (double v : par)
                ss += (v - m) * (v - m);
            EXPECT_NEAR(row.mean_par, m, 1e-12);
            EXPECT_NEAR(row.sd_par, std::sqrt(ss / static_cast<double>(par.size() - 1)), 1e-12);
            ASSERT_TRUE(row.better.has_value());
            const double mf = [&] {
                double s = 0.0;
                for (double v : fr)
                    s += v;
                return s / static_cast<double>(fr.size());
            }();
            EXPECT_NEAR(row.mean_fr, mf, 1e-12);
            EXPECT_EQ(*row.better, std::abs(m - row.alpha) <= std::abs(mf - row.alpha)
                                       ? TailModel::Pareto
                                       : TailModel::Frechet);
        }
    }
    EXPECT_LT(rep.rows[0].valid_reps, rep.rows[0].reps);
}

TEST(Study, AllInvalidGivesNaN)
{
    std::vector<detail::ReplicationResult> none(5, {false, 0.0, 0.0});
    const auto ms = detail::mean_sd(none, &detail::ReplicationResult::par);
    EXPECT_TRUE(std::isnan(ms.mean));
    EXPECT_TRUE(std::isnan(ms.sd));
}

TEST(Study, Validation)
{
    auto c = small_config(30);
    c.reps = 0;
    EXPECT_THROW(run_study(c), DomainError);
    c = small_config(3);
    EXPECT_THROW(run_study(c), DomainError);
    c = small_config(30);
    c.alphas = {-1.0};
    EXPECT_THROW(run_study(c), DomainError);
    c = small_config(30);
    c.p = 0.5;
    EXPECT_THROW(run_study(c), DomainError);
}

TEST(Study, TablePresetShape)
{
    const auto cfgs = table_preset(1000);
    ASSERT_EQ(cfgs.size(), 2u);
    EXPECT_EQ(cfgs[0].data_family, TailModel::Pareto);
    EXPECT_EQ(cfgs[1].data_family, TailModel::Frechet);
    EXPECT_EQ(cfgs[0].alphas, (std::vector<double>{0.5, 1.0, 2.0}));
    EXPECT_EQ(cfgs[0].ns, (std::vector<std::size_t>{30, 100, 1000, 10000}));
    EXPECT_EQ(cfgs[0].reps, 1000u);
}

TEST(MonteCarloOutside, ExponentialAndPareto)
{
    const auto e = mc_outside_prob(DistributionSpec::exponential(), 0.25, 400000, 5);
    EXPECT_NEAR(e.right, 0.03125, 4.0 * e.right_se);
    EXPECT_EQ(e.left, 0.0);
    const auto p = mc_outside_prob(DistributionSpec::pareto(1.0), 0.25, 400000, 6);
    EXPECT_NEAR(p.right, 0.1, 4.0 * p.right_se);
    EXPECT_THROW(mc_outside_prob(DistributionSpec::exponential(), 0.25, 999, 1), DomainError);
}

TEST(HillHorrorCurve, SimulationAgreesWithInversion)
{
    const std::vector<double> grid = {0.1, 0.25, 0.4, 0.5};
    for (double alpha : {0.5, 1.0, 2.0}) {
        const auto inv = hill_horror_prob_curve(alpha, grid, CurveMethod::Inversion);
        const auto sim = hill_horror_prob_curve(alpha, grid, CurveMethod::Simulation, 100000, 20, 9);
        ASSERT_EQ(sim.size(), grid.size());
        for (std::size_t g = 0; g < grid.size(); ++g) {
            EXPECT_EQ(inv[g].probabilities.method, ProbabilityMethod::NumericInversion);
            EXPECT_EQ(sim[g].probabilities.method, ProbabilityMethod::MonteCarlo);
            EXPECT_NEAR(sim[g].probabilities.right, inv[g].probabilities.right,
                        4.0 * sim[g].right_se + 1e-6)
                << "alpha=" << alpha << " p=" << grid[g];
            EXPECT_NEAR(sim[g].probabilities.left, inv[g].probabilities.left,
                        4.0 * sim[g].left_se + 1e-6)
                << "alpha=" << alpha << " p=" << grid[g];
        }
    }
}

TEST(HillHorrorCurve, Errors)
{
    EXPECT_THROW(hill_horror_prob_curve(1.0, std::vector<double>{}, CurveMethod::Inversion),
                 DomainError);
    EXPECT_THROW(hill_horror_prob_curve(1.0, std::vector<double>{0.7}, CurveMethod::Inversion),
                 DomainError);
    EXPECT_THROW(
        hill_horror_prob_curve(1.0, std::vector<double>{0.25}, CurveMethod::Simulation, 0, 10),
        DomainError);
}
