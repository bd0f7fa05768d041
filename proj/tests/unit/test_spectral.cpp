#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"

using namespace brandtlab;
using testing_support::level_data;

namespace {

double det_shifted(const RealMatrix& a, double lambda) {
    RatMatrix m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = Rational(a(i, j) - (i == j ? lambda : 0.0));
    return determinant(m).get_d();
}

} // namespace

TEST(Spectral, AugmentationAndSigma) {
    EXPECT_EQ(augmentation({1, 0, 0}), 1);
    EXPECT_EQ(augmentation({1, -1}), 0);
    const auto& c = level_data(11).brandt;
    // The augmentation of T_m [j] is sigma(m)_N.
    for (long m = 1; m <= c.bound; ++m)
        for (std::size_t j = 0; j < c.n; ++j) {
            std::vector<Rational> col;
            for (std::size_t i = 0; i < c.n; ++i) col.emplace_back(static_cast<long>(c(m)(i, j)));
            EXPECT_EQ(augmentation(col), sigma_N(m, 11));
        }
    EXPECT_EQ(sigma_N(3, 11), 4);
    EXPECT_EQ(sigma_N(37, 37), 1);
}

TEST(Spectral, SturmBound) {
    EXPECT_EQ(sturm_bound(11), 3);
    EXPECT_EQ(sturm_bound(37), 7);
    EXPECT_EQ(default_coefficient_bound(37), 9);
}

TEST(Spectral, EisensteinVector) {
    const auto v11 = eisenstein_vector({2, 3}, &level_data(11).brandt);
    EXPECT_NEAR(v11[0], 3 / std::sqrt(30.0), 1e-15);
    EXPECT_NEAR(v11[1], 2 / std::sqrt(30.0), 1e-15);
    const auto v37 = eisenstein_vector({1, 1, 1});
    for (double x : v37) EXPECT_NEAR(x, 1 / std::sqrt(3.0), 1e-15);
    EXPECT_EQ(eisenstein_direction({2, 3}), (std::vector<Int>{3, 2}));
    BrandtCollection bad = level_data(11).brandt;
    bad.matrices[1](0, 0) += 1;
    EXPECT_THROW(eisenstein_vector(bad.weights, &bad), Error);
}

TEST(Spectral, SymmetrizeLevel11) {
    const auto s = symmetrize(level_data(11).brandt(3), {2, 3});
    EXPECT_DOUBLE_EQ(s(0, 0), 2);
    EXPECT_DOUBLE_EQ(s(1, 1), 1);
    EXPECT_NEAR(s(0, 1), std::sqrt(6.0), 1e-14);
    EXPECT_NEAR(s(1, 0), std::sqrt(6.0), 1e-14);
    EXPECT_THROW(symmetrize(SmallIntMatrix{{1, 2}, {1, 1}}, {1, 1}), Error);
    const SmallIntMatrix b{{2, 1, 1}, {1, 0, 3}, {1, 3, 0}};
    const auto same = symmetrize(b, {1, 1, 1});
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(same(i, j), static_cast<double>(b(i, j)));
}

TEST(Spectral, JacobiAgainstCharacteristicPolynomial) {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> dist(-5, 5);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + rng() % 5;
        RealMatrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j) a(i, j) = a(j, i) = dist(rng);
        const auto es = jacobi_eigen(a);
        for (std::size_t k = 0; k < n; ++k) {
            // A v = lambda v and det(A - lambda) vanishes.
            for (std::size_t i = 0; i < n; ++i) {
                double s = 0;
                for (std::size_t j = 0; j < n; ++j) s += a(i, j) * es.vectors(j, k);
                EXPECT_NEAR(s, es.values[k] * es.vectors(i, k), 1e-10);
            }
            EXPECT_NEAR(det_shifted(a, es.values[k]), 0.0, 1e-6);
        }
        double trace = 0, sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
            trace += a(i, i);
            sum += es.values[i];
        }
        EXPECT_NEAR(trace, sum, 1e-10);
    }
}

TEST(Spectral, Level11Decomposition) {
    const auto& c = level_data(11, 9).brandt;
    const auto s = eigendecompose(c, 42);
    ASSERT_EQ(s.n, 2u);
    EXPECT_EQ(s.eisenstein_index, 1u);
    EXPECT_NEAR(s.alpha(1, 3), 4, 1e-12);
    EXPECT_NEAR(s.alpha(0, 3), -1, 1e-12);
    EXPECT_NEAR(s.eigenvectors(0, 0), 1 / std::sqrt(5.0), 1e-12);
    EXPECT_NEAR(s.eigenvectors(1, 0), -1 / std::sqrt(5.0), 1e-12);
    const auto q = integral_qexpansion(s, 0, 9);
    ASSERT_TRUE(q.has_value());
    EXPECT_EQ(*q, (std::vector<long>{1, -2, -1, 2, 1, 2, -2, 0, -2}));
    const auto e = integral_qexpansion(s, 1, 9);
    for (long m = 1; m <= 9; ++m) EXPECT_EQ((*e)[static_cast<std::size_t>(m - 1)], sigma_N(m, 11));
    for (const auto& ch : spectral_checks(s, c)) EXPECT_TRUE(ch.passed) << ch.name << " " << ch.detail;
}

TEST(Spectral, Level37Decomposition) {
    const auto& c = level_data(37).brandt;
    const auto s = eigendecompose(c, 42);
    ASSERT_EQ(s.n, 3u);
    EXPECT_NEAR(s.alpha(0, 3), 1, 1e-12);
    EXPECT_NEAR(s.alpha(1, 3), -3, 1e-12);
    EXPECT_NEAR(s.alpha(2, 3), 4, 1e-12);
    // Eigenvectors proportional to (-2,1,1), (0,-1,1), (1,1,1), up to the sign convention.
    const double r6 = std::sqrt(6.0), r2 = std::sqrt(2.0), r3 = std::sqrt(3.0);
    const double f1[] = {-2 / r6, 1 / r6, 1 / r6}, f2[] = {0, -1 / r2, 1 / r2}, f3[] = {1 / r3, 1 / r3, 1 / r3};
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_NEAR(std::abs(s.eigenvectors(i, 0)), std::abs(f1[i]), 1e-12);
        EXPECT_NEAR(std::abs(s.eigenvectors(i, 1)), std::abs(f2[i]), 1e-12);
        EXPECT_NEAR(s.eigenvectors(i, 2), f3[i], 1e-12);
    }
    EXPECT_EQ(*integral_qexpansion(s, 0, 9), (std::vector<long>{1, 0, 1, -2, 0, 0, -1, 0, -2}));
    EXPECT_EQ(*integral_qexpansion(s, 1, 9), (std::vector<long>{1, -2, -3, 2, -2, 6, -1, 0, 6}));
    // The two cusp forms already differ within the Sturm bound.
    double gap = 0;
    for (long m = 1; m <= sturm_bound(37); ++m) gap = std::max(gap, std::abs(s.alpha(0, m) - s.alpha(1, m)));
    EXPECT_GT(gap, 1);
    for (const auto& ch : spectral_checks(s, c)) EXPECT_TRUE(ch.passed) << ch.name << " " << ch.detail;
}

TEST(Spectral, SeedChangesCombinationNotResult) {
    const auto& c = level_data(71).brandt;
    const auto a = eigendecompose(c, 1), b = eigendecompose(c, 99);
    for (std::size_t k = 0; k < c.n; ++k)
        for (long m = 1; m <= c.bound; ++m) EXPECT_NEAR(a.alpha(k, m), b.alpha(k, m), 1e-9);
    const auto again = eigendecompose(c, 1);
    EXPECT_EQ(a.combination, again.combination);
    EXPECT_EQ(a.characters, again.characters);
}

TEST(Spectral, CharacterQexpansionBounds) {
    const auto s = eigendecompose(level_data(11).brandt);
    EXPECT_THROW(character_qexpansion(s, 5, 3), Error);
    EXPECT_THROW(character_qexpansion(s, 0, 100), Error);
}
