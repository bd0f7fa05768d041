#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace brandtlab;
using testing_support::eichler_class_number;
using testing_support::level_data;

TEST(ClassNumber, EichlerFormulaOracle) {
    // Smaller range here; the acceptance suite covers every prime up to 200.
    for (long p = 2; p <= 60; ++p) {
        if (!is_prime(p)) continue;
        const auto& d = level_data(p, 3);
        EXPECT_EQ(static_cast<long>(d.classes.size()), eichler_class_number(p)) << p;
        EXPECT_EQ(d.classes.mass(), eichler_mass(p)) << p;
        Int prod = 1;
        for (long w : d.classes.weights) prod *= w;
        EXPECT_EQ(prod, eichler_mass(p).get_den()) << p;
    }
}

TEST(ClassNumber, PublishedWeights) {
    EXPECT_EQ(level_data(11).classes.weights, (std::vector<long>{2, 3}));
    EXPECT_EQ(level_data(37).classes.weights, (std::vector<long>{1, 1, 1}));
    EXPECT_EQ(level_data(2).classes.weights, (std::vector<long>{12}));
    EXPECT_EQ(level_data(3).classes.weights, (std::vector<long>{6}));
}

TEST(Ideals, OrdersOfTheUnitIdeal) {
    const auto order = construct_maximal_order(construct_algebra(37));
    EXPECT_EQ(left_order(order.lattice()), order);
    EXPECT_EQ(right_order(order.lattice()), order);
    const auto inv = ideal_inverse(order.lattice());
    EXPECT_EQ(inv, order.lattice());
    EXPECT_EQ(unit_weight(order), 1);
}

TEST(Ideals, NeighborsHaveExpectedShape) {
    const auto order = construct_maximal_order(construct_algebra(11));
    const auto unit = LeftIdeal::make(order, order.lattice());
    for (long p : {2L, 3L, 5L}) {
        const auto ns = neighbors(order, unit, p);
        ASSERT_EQ(ns.size(), static_cast<std::size_t>(p + 1));
        for (const auto& j : ns) {
            EXPECT_EQ(j.norm(), p);
            EXPECT_EQ(j.lattice().covolume(), order.lattice().covolume() * p * p);
            EXPECT_TRUE(order.lattice().contains(j.lattice()));
            EXPECT_EQ(left_order(j.lattice()), order);
            EXPECT_EQ(reduced_discriminant(right_order(j)), 11);
            // J^{-1} = {b : J b J in J} has norm 1/N(J) and J^{-1} J is the right order.
            const auto inv = ideal_inverse(j);
            EXPECT_EQ(normalized_content(inv) * j.norm(), 1);
            EXPECT_EQ(ideal_product(inv, j.lattice()), right_order(j).lattice());
            EXPECT_EQ(ideal_product(j.lattice(), inv), order.lattice());
        }
        for (std::size_t a = 0; a < ns.size(); ++a)
            for (std::size_t b = a + 1; b < ns.size(); ++b) EXPECT_FALSE(ns[a].lattice() == ns[b].lattice());
    }
    EXPECT_THROW(neighbors(order, unit, 11), Error);
    EXPECT_THROW(neighbors(order, unit, 4), Error);
}

TEST(Ideals, EquivalenceIsReflexiveAndDistinguishesClasses) {
    const auto& d = level_data(37);
    for (std::size_t i = 0; i < d.classes.size(); ++i)
        for (std::size_t j = 0; j < d.classes.size(); ++j)
            EXPECT_EQ(is_equivalent(d.classes.ideals[i], d.classes.ideals[j]), i == j);
    // Scaling by a non-unit element keeps the class.
    const auto& alg = d.classes.order.algebra();
    const auto x = QuatElement(alg, {1, 1, 0, 0});
    std::vector<QuatElement> gens;
    for (const auto& e : d.classes.ideals[1].lattice().basis()) gens.push_back(e * x);
    const auto shifted = LeftIdeal::make(d.classes.order, QuatLattice::from_generators(gens));
    EXPECT_TRUE(is_equivalent(shifted, d.classes.ideals[1]));
    EXPECT_EQ(d.classes.find(shifted), 1u);
}

TEST(Ideals, RightOrdersAreMaximalWithWeights) {
    for (long p : {11L, 23L, 37L, 71L}) {
        const auto& d = level_data(p);
        for (std::size_t i = 0; i < d.classes.size(); ++i) {
            EXPECT_EQ(reduced_discriminant(d.classes.right_orders[i]), p);
            EXPECT_EQ(unit_weight(d.classes.right_orders[i]), d.classes.weights[i]);
        }
    }
}
