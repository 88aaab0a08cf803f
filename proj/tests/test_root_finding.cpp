#include <tailfence/root_finding.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace tailfence;

TEST(RootFinding, ScanFindsFirstSignChange)
{
    // roots at 0.1 and 0.3; the scan must report the first.
    auto f = [](double x) { return (x - 0.1) * (x - 0.3); };
    const auto b = scan_for_sign_change(f, 0.0, 0.5, 512);
    ASSERT_TRUE(b.has_value());
    EXPECT_LE(b->lo, 0.1);
    EXPECT_GE(b->hi, 0.1);
    EXPECT_LT(b->hi - b->lo, 0.5 / 512 + 1e-15);
}

TEST(RootFinding, ScanReportsNoSignChange)
{
    EXPECT_FALSE(scan_for_sign_change([](double x) { return x * x + 1.0; }, -1.0, 1.0).has_value());
}

TEST(RootFinding, BisectionConvergesToMachinePrecision)
{
    auto f = [](double x) { return std::cos(x) - x; };
    const auto b = scan_for_sign_change(f, 0.0, 1.0);
    ASSERT_TRUE(b);
    const Root r = bisect(f, *b);
    EXPECT_NEAR(r.x, 0.73908513321516064166, 1e-15);
    EXPECT_LE(r.residual, 1e-15);
}

TEST(RootFinding, ExactZeroAtEndpoint)
{
    auto f = [](double x) { return x - 0.25; };
    const Root r = bisect(f, {0.25, 1.0});
    EXPECT_EQ(r.x, 0.25);
    EXPECT_EQ(r.residual, 0.0);
}
