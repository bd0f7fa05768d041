#ifndef BRANDTLAB_TEST_HELPERS_HPP
#define BRANDTLAB_TEST_HELPERS_HPP

#include <map>
#include <memory>
#include <mutex>

#include "brandtlab/record.hpp"

namespace testing_support {

using namespace brandtlab;

struct LevelData {
    ClassList classes;
    BrandtCollection brandt;
};

/// Classes and Brandt matrices per (level, bound), computed once per process.
inline const LevelData& level_data(long level, long bound = 0) {
    static std::map<std::pair<long, long>, std::unique_ptr<LevelData>> cache;
    static std::mutex mutex;
    if (bound == 0) bound = default_coefficient_bound(level);
    std::lock_guard lock(mutex);
    auto& slot = cache[{level, bound}];
    if (!slot) {
        slot = std::make_unique<LevelData>();
        slot->classes = enumerate_classes(construct_maximal_order(construct_algebra(level)), level);
        slot->brandt = compute_brandt(slot->classes, bound);
    }
    return *slot;
}

/// Eichler's class number formula for a maximal order of prime level.
inline long eichler_class_number(long p) {
    if (p == 2 || p == 3) return 1;
    const long m4 = p % 4 == 1 ? 1 : -1;   // (-4 | p)
    const long m3 = p % 3 == 1 ? 1 : -1;   // (-3 | p)
    // (p-1)/12 + (1 - m4)/4 + (1 - m3)/3, computed over 12
    const long twelve = (p - 1) + 3 * (1 - m4) + 4 * (1 - m3);
    return twelve / 12;
}

/// Reference rank over Q by plain Gaussian elimination on rationals.
inline std::size_t gauss_rank(RatMatrix a) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
        std::size_t p = rank;
        while (p < a.rows() && a(p, c) == 0) ++p;
        if (p == a.rows()) continue;
        a.swap_rows(p, rank);
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == rank || a(r, c) == 0) continue;
            const Rational f = a(r, c) / a(rank, c);
            for (std::size_t j = c; j < a.cols(); ++j) a(r, j) -= f * a(rank, j);
        }
        ++rank;
    }
    return rank;
}

/// Brute-force count of x in a box with x^T A x / 2 = m, for m <= bound.
inline std::vector<long long> box_counts(const IntMatrix& a, long bound, long radius) {
    const std::size_t n = a.rows();
    const SmallIntMatrix s = to_small(a);
    std::vector<long long> out(static_cast<std::size_t>(bound) + 1, 0);
    std::vector<long> x(n, -radius);
    for (;;) {
        long long q = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) q += s(i, j) * x[i] * x[j];
        q /= 2;
        if (q <= bound) ++out[static_cast<std::size_t>(q)];
        std::size_t t = 0;
        while (t < n && x[t] == radius) x[t++] = -radius;
        if (t == n) break;
        ++x[t];
    }
    return out;
}

} // namespace testing_support

#endif
