#ifndef VOALAB_TEST_ORACLES_HPP
#define VOALAB_TEST_ORACLES_HPP

// Small independent oracles used by the tests.  These deliberately avoid the
// library's enumeration and series code paths: plain boxes, plain partitions.

#include <vector>

#include "voalab/lattice.hpp"

namespace oracle {

// All integer vectors x in [-box, box]^d with x^T G x <= bound.
inline std::vector<std::vector<long>> brute_force_short_vectors(
    const std::vector<std::vector<long>>& gram, long bound, long box) {
    const int d = static_cast<int>(gram.size());
    std::vector<std::vector<long>> out;
    std::vector<long> x(d, -box);
    while (true) {
        long norm = 0;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) norm += x[i] * gram[i][j] * x[j];
        if (norm <= bound) out.push_back(x);
        int k = d - 1;
        while (k >= 0 && x[k] == box) x[k--] = -box;
        if (k < 0) break;
        ++x[k];
    }
    return out;
}

// p(n) with `colors` colors: the number of multisets of (color, part) pairs
// with total part sum n; equals the coefficient of q^n in prod (1-q^k)^-colors.
inline long long colored_partitions(int n, int colors) {
    // dp over part sizes 1..n, each usable with multiplicity, `colors` kinds.
    std::vector<long long> dp(n + 1, 0);
    dp[0] = 1;
    for (int part = 1; part <= n; ++part)
        for (int c = 0; c < colors; ++c)
            for (int v = part; v <= n; ++v) dp[v] += dp[v - part];
    return dp[n];
}

// Coefficients 0..W of the product of two coefficient lists.
inline std::vector<long long> convolve(const std::vector<long long>& a,
                                       const std::vector<long long>& b, int W) {
    std::vector<long long> out(W + 1, 0);
    for (int i = 0; i <= W && i < static_cast<int>(a.size()); ++i)
        for (int j = 0; i + j <= W && j < static_cast<int>(b.size()); ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

}  // namespace oracle

#endif
