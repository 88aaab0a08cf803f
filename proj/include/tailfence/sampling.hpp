#pragma once

#include <cstdint>
#include <vector>

#include "distributions.hpp"
#include "random.hpp"
#include "sample.hpp"

namespace tailfence {

/// Fills `out` with inverse-transform draws quantile(U), U uniform on (0, 1).
inline void draw_into(const DistributionSpec& dist, Engine& eng, std::vector<double>& out)
{
    dist.visit([&](const auto& d) {
        for (double& x : out)
            x = d.quantile(uniform_open(eng));
    });
}

inline std::vector<double> draw(const DistributionSpec& dist, std::size_t n, std::uint64_t seed)
{
    if (n == 0)
        throw DomainError("sample: n must be >= 1");
    std::vector<double> out(n);
    Engine eng = make_engine(seed);
    draw_into(dist, eng, out);
    return out;
}

/// n i.i.d. draws; identical (dist, n, seed) gives bit-identical output.
inline Sample sample(const DistributionSpec& dist, std::size_t n, std::uint64_t seed)
{
    return Sample(draw(dist, n, seed));
}

} // namespace tailfence
