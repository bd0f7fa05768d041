#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace brandtlab;
using testing_support::eichler_class_number;
using testing_support::level_data;

namespace {

/// Hasse invariant test: E is supersingular iff the coefficient of x^{p-1}
/// in (x^3 + a x + b)^{(p-1)/2} vanishes.
bool hasse_supersingular(const Fp2& f, long j) {
    const long p = f.p();
    const auto J = f.from_integer(j);
    Fp2::Elt a, b;
    if (mod(j, p) == 0) {
        a = f.from_integer(0);
        b = f.from_integer(1);
    } else if (mod(j - 1728, p) == 0) {
        a = f.from_integer(1);
        b = f.from_integer(0);
    } else {
        const auto u = f.sub(f.from_integer(1728), J);
        a = f.mul(f.from_integer(3), f.mul(J, u));
        b = f.mul(f.from_integer(2), f.mul(J, f.mul(u, u)));
    }
    std::vector<Fp2::Elt> poly{f.from_integer(1)};
    const std::vector<Fp2::Elt> cubic{b, a, f.from_integer(0), f.from_integer(1)};
    for (long e = 0; e < (p - 1) / 2; ++e) {
        std::vector<Fp2::Elt> next(poly.size() + 3, f.from_integer(0));
        for (std::size_t i = 0; i < poly.size(); ++i)
            for (std::size_t k = 0; k < 4; ++k) next[i + k] = f.add(next[i + k], f.mul(poly[i], cubic[k]));
        poly = std::move(next);
    }
    return poly[static_cast<std::size_t>(p - 1)] == f.from_integer(0);
}

} // namespace

TEST(Fp2, FieldAxioms) {
    for (long p : {5L, 7L, 11L}) {
        const Fp2 f(p);
        EXPECT_EQ(legendre(f.nonresidue(), p), -1);
        long squares = 0;
        for (long x = 0; x < f.size(); ++x) {
            const auto e = f.from_index(x);
            if (f.chi(e) == 1) ++squares;
            if (x == 0) continue;
            bool has_inverse = false;
            for (long y = 1; y < f.size() && !has_inverse; ++y)
                if (f.mul(e, f.from_index(y)) == f.from_integer(1)) has_inverse = true;
            EXPECT_TRUE(has_inverse);
            // Frobenius is x -> x^p
            Fp2::Elt pow = f.from_integer(1);
            for (long t = 0; t < p; ++t) pow = f.mul(pow, e);
            EXPECT_EQ(pow, f.frobenius(e));
        }
        EXPECT_EQ(squares, (f.size() - 1) / 2);
    }
    EXPECT_THROW(Fp2(9), Error);
}

TEST(SsOracle, KnownSmallCharacteristics) {
    const auto s11 = supersingular_set(11);
    EXPECT_EQ(s11.j_list, (std::vector<std::pair<long, long>>{{0, 0}, {1, 0}}));
    EXPECT_EQ(s11.rational_count, 2);
    EXPECT_TRUE(s11.has_j0);
    EXPECT_TRUE(s11.has_j1728);
    const auto s13 = supersingular_set(13);
    EXPECT_EQ(s13.j_list, (std::vector<std::pair<long, long>>{{5, 0}}));
    EXPECT_EQ(supersingular_set(2).j_list.size(), 1u);
    const Fp2 f(11);
    EXPECT_TRUE(is_supersingular(f, f.make(0)));
    EXPECT_FALSE(is_supersingular(f, f.make(2)));
    EXPECT_THROW(is_supersingular(f, Fp2::Elt{11, 0}), Error);
}

TEST(SsOracle, RationalJMatchHasseInvariant) {
    for (long p = 5; p <= 61; ++p) {
        if (!is_prime(p)) continue;
        const Fp2 f(p);
        const auto ss = supersingular_set(p);
        long rational = 0;
        for (long j = 0; j < p; ++j) {
            const bool expect = hasse_supersingular(f, j);
            EXPECT_EQ(is_supersingular(f, f.make(j)), expect) << "p=" << p << " j=" << j;
            if (expect) ++rational;
        }
        EXPECT_EQ(ss.rational_count, rational) << p;
        EXPECT_EQ(static_cast<long>(ss.j_list.size()), eichler_class_number(p)) << p;
    }
}

TEST(SsOracle, CrossValidation) {
    for (long p : {2L, 3L, 11L, 23L, 37L}) {
        const auto checks = cross_validate(supersingular_set(p), level_data(p).brandt);
        for (const auto& c : checks) EXPECT_TRUE(c.passed) << p << " " << c.name;
    }
    EXPECT_EQ(supersingular_set(37).rational_count, 1);
    EXPECT_EQ(supersingular_set(23).rational_count, 3);
    // A mismatched weight list is rejected.
    BrandtCollection wrong = level_data(11).brandt;
    wrong.weights = {1, 6};
    try {
        cross_validate(supersingular_set(11), wrong);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::cross_validation);
    }
}
