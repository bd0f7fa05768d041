#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"

using namespace brandtlab;
using testing_support::gauss_rank;

namespace {

Rational cofactor_det(const RatMatrix& a) {
    const std::size_t n = a.rows();
    if (n == 1) return a(0, 0);
    Rational d = 0;
    for (std::size_t c = 0; c < n; ++c) {
        RatMatrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0, k = 0; j < n; ++j)
                if (j != c) minor(i - 1, k++) = a(i, j);
        d += (c % 2 ? -1 : 1) * a(0, c) * cofactor_det(minor);
    }
    return d;
}

IntMatrix random_int(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo, long hi) {
    std::uniform_int_distribution<long> dist(lo, hi);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
    return m;
}

} // namespace

TEST(ExactRank, SmallCases) {
    EXPECT_EQ(exact_rank(IntMatrix::identity(5)), 5u);
    EXPECT_EQ(exact_rank(IntMatrix{{1, 2}, {2, 4}}), 1u);
    EXPECT_EQ(exact_rank(IntMatrix(3, 4, 0)), 0u);
    EXPECT_EQ(exact_rank(SmallIntMatrix{{0, 1, 0}, {0, 2, 0}, {1, 0, 0}}), 2u);
}

TEST(ExactRank, MatchesRationalGauss) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 7;
        IntMatrix m = random_int(rng, r, c, -10, 10);
        // Plant dependencies in some trials.
        if (trial % 3 == 0 && r >= 3)
            for (std::size_t j = 0; j < c; ++j) m(2, j) = 2 * m(0, j) - 3 * m(1, j);
        if (trial % 5 == 0)
            for (std::size_t i = 0; i < r; ++i) m(i, 0) = 0;
        EXPECT_EQ(exact_rank(m), gauss_rank(matrix_cast<Rational>(m))) << "trial " << trial;
    }
}

TEST(Determinant, MatchesCofactorExpansion) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng() % 5;
        RatMatrix a = matrix_cast<Rational>(random_int(rng, n, n, -6, 6));
        EXPECT_EQ(determinant(a), cofactor_det(a));
        if (determinant(a) != 0) EXPECT_EQ(a * inverse(a), RatMatrix::identity(n));
    }
}

TEST(HermiteNormalForm, ShapeAndSameLattice) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t rows = 4 + rng() % 4;
        IntMatrix a = random_int(rng, rows, 4, -9, 9);
        IntMatrix h = hermite_normal_form(a);
        ASSERT_LE(h.rows(), 4u);
        // Echelon with positive pivots, reduced above.
        std::size_t col = 0;
        for (std::size_t i = 0; i < h.rows(); ++i) {
            while (col < 4 && h(i, col) == 0) ++col;
            ASSERT_LT(col, 4u);
            EXPECT_GT(h(i, col), 0);
            for (std::size_t k = i + 1; k < h.rows(); ++k) EXPECT_EQ(h(k, col), 0);
            for (std::size_t k = 0; k < i; ++k) {
                EXPECT_GE(h(k, col), 0);
                EXPECT_LT(h(k, col), h(i, col));
            }
            ++col;
        }
        if (h.rows() != 4) continue;
        // Every input row is an integral combination of H and vice versa via determinant of Gram.
        RatMatrix hi = inverse(matrix_cast<Rational>(h));
        for (std::size_t i = 0; i < rows; ++i) {
            RatMatrix row(1, 4);
            for (std::size_t j = 0; j < 4; ++j) row(0, j) = a(i, j);
            RatMatrix coeffs = row * hi;
            for (std::size_t j = 0; j < 4; ++j) EXPECT_TRUE(is_integer(coeffs(0, j)));
        }
        // Index of the row lattice: gcd of the 4x4 minors equals det H.
        Int g = 0;
        std::vector<std::size_t> pick{0, 1, 2, 3};
        std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t start, std::size_t depth) {
            if (depth == 4) {
                RatMatrix m(4, 4);
                for (std::size_t r = 0; r < 4; ++r)
                    for (std::size_t c = 0; c < 4; ++c) m(r, c) = a(pick[r], c);
                g = gcd(g, Int(Rational(abs(determinant(m))).get_num()));
                return;
            }
            for (std::size_t s = start; s < rows; ++s) {
                pick[depth] = s;
                choose(s + 1, depth + 1);
            }
        };
        choose(0, 0);
        EXPECT_EQ(Int(determinant(matrix_cast<Rational>(h)).get_num()), g);
    }
}

TEST(LLL, UnimodularAndReducing) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        IntMatrix b = random_int(rng, 4, 4, -20, 20);
        if (determinant(matrix_cast<Rational>(b)) == 0) continue;
        IntMatrix gram = b * b.transpose();
        IntMatrix u = lll_transform(gram);
        EXPECT_EQ(abs(determinant(matrix_cast<Rational>(u))), 1);
        IntMatrix reduced = u * gram * u.transpose();
        EXPECT_EQ(determinant(matrix_cast<Rational>(reduced)), determinant(matrix_cast<Rational>(gram)));
        // First reduced vector is no longer than the shortest input vector times 2^(3/2).
        Int shortest = gram(0, 0);
        for (std::size_t i = 1; i < 4; ++i) shortest = std::min(shortest, Int(gram(i, i)));
        EXPECT_LE(reduced(0, 0), 8 * shortest);
    }
}
