#ifndef BRANDTLAB_IDEALS_HPP
#define BRANDTLAB_IDEALS_HPP

#include <deque>
#include <functional>
#include <string>
#include <vector>

#include "order.hpp"

namespace brandtlab {

namespace detail {

/// Functionals whose integrality on beta encodes "op(beta) lies in target",
/// where op is linear in beta (coordinates w.r.t. 1,i,j,k).
inline std::vector<std::array<Rational, 4>> membership_conditions(
    const QuatLattice& target, const std::vector<std::function<QuatElement(const QuatElement&)>>& ops) {
    const auto& alg = target.algebra();
    std::vector<std::array<Rational, 4>> out;
    for (const auto& op : ops) {
        std::array<std::array<Rational, 4>, 4> images;  // images[t] = coords of op(u_t)
        for (int t = 0; t < 4; ++t) images[static_cast<std::size_t>(t)] = target.coordinates(op(QuatElement::unit(alg, t)));
        for (std::size_t s = 0; s < 4; ++s) {
            std::array<Rational, 4> f;
            for (std::size_t t = 0; t < 4; ++t) f[t] = images[t][s];
            out.push_back(f);
        }
    }
    return out;
}

} // namespace detail

/// {b : b L ⊆ L}
inline QuatOrder left_order(const QuatLattice& lat) {
    std::vector<std::function<QuatElement(const QuatElement&)>> ops;
    for (const auto& e : lat.basis()) ops.push_back([e](const QuatElement& b) { return b * e; });
    QuatLattice o = QuatLattice::from_integrality_conditions(lat.algebra(), detail::membership_conditions(lat, ops));
    if (!is_order(o)) fail(ErrorKind::inconsistency, "left order is not closed under multiplication");
    return QuatOrder::from_lattice(o);
}

/// {b : L b ⊆ L}
inline QuatOrder right_order(const QuatLattice& lat) {
    std::vector<std::function<QuatElement(const QuatElement&)>> ops;
    for (const auto& e : lat.basis()) ops.push_back([e](const QuatElement& b) { return e * b; });
    QuatLattice o = QuatLattice::from_integrality_conditions(lat.algebra(), detail::membership_conditions(lat, ops));
    if (!is_order(o)) fail(ErrorKind::inconsistency, "right order is not closed under multiplication");
    return QuatOrder::from_lattice(o);
}

/// Left ideal of a fixed order R, with its norm: the positive rational whose
/// quotients N(x)/N(I) are coprime integers.
class LeftIdeal {
public:
    LeftIdeal() = default;

    static LeftIdeal make(const QuatOrder& order, const QuatLattice& lat) {
        for (const auto& r : order.lattice().basis())
            for (const auto& e : lat.basis())
                if (!lat.contains(r * e)) fail(ErrorKind::precondition, "lattice is not stable under left multiplication by the order");
        return LeftIdeal(lat, normalized_content(lat));
    }

    const QuatLattice& lattice() const noexcept { return lat_; }
    const Rational& norm() const noexcept { return norm_; }

private:
    LeftIdeal(QuatLattice lat, Rational norm) : lat_(std::move(lat)), norm_(std::move(norm)) {}
    QuatLattice lat_;
    Rational norm_;
};

inline QuatOrder right_order(const LeftIdeal& ideal) { return right_order(ideal.lattice()); }

/// {b : I b I ⊆ I}
inline QuatLattice ideal_inverse(const QuatLattice& lat) {
    std::vector<std::function<QuatElement(const QuatElement&)>> ops;
    for (const auto& x : lat.basis())
        for (const auto& y : lat.basis()) ops.push_back([x, y](const QuatElement& b) { return x * b * y; });
    return QuatLattice::from_integrality_conditions(lat.algebra(), detail::membership_conditions(lat, ops));
}

inline QuatLattice ideal_inverse(const LeftIdeal& ideal) { return ideal_inverse(ideal.lattice()); }

/// Lattice spanned by all products x*y, x in J, y in I.
inline QuatLattice ideal_product(const QuatLattice& j, const QuatLattice& i) {
    std::vector<QuatElement> gens;
    gens.reserve(16);
    for (const auto& x : j.basis())
        for (const auto& y : i.basis()) gens.push_back(x * y);
    return QuatLattice::from_generators(gens);
}

/// Half the number of norm-one elements.
inline long unit_weight(const QuatOrder& order) {
    if (normalized_content(order.lattice()) != 1) fail(ErrorKind::precondition, "order norm form is not primitive");
    const long long units = count_vectors(order.lattice(), 1);
    if (units % 2 != 0) fail(ErrorKind::inconsistency, "odd number of units");
    return static_cast<long>(units / 2);
}

/// I ~ J iff the normalized norm form on J^{-1} I represents 1.
inline bool is_equivalent_given_inverse(const LeftIdeal& i, const QuatLattice& j_inverse) {
    return count_vectors(ideal_product(j_inverse, i.lattice()), 1) > 0;
}

inline bool is_equivalent(const LeftIdeal& i, const LeftIdeal& j) {
    return is_equivalent_given_inverse(i, ideal_inverse(j));
}

/// The p+1 left R-ideals J with pI ⊂ J ⊂ I and [I:J] = p^2 (p not the level).
inline std::vector<LeftIdeal> neighbors(const QuatOrder& order, const LeftIdeal& ideal, long p) {
    const auto& alg = order.algebra();
    if (!is_prime(p) || p == alg.level) fail(ErrorKind::invalid_argument, "neighbor prime must be a prime different from the level");
    const QuatLattice& lat = ideal.lattice();
    const Rational target_norm = ideal.norm() * p;
    const Rational target_covolume = lat.covolume() * p * p;

    std::vector<LeftIdeal> found;
    std::array<long, 4> c{0, 0, 0, 0};
    const long total = p * p * p * p;
    for (long code = 1; code < total; ++code) {
        long rest = code;
        for (auto& ci : c) {
            ci = rest % p;
            rest /= p;
        }
        QuatElement x = QuatElement::scalar(alg, 0);
        for (std::size_t k = 0; k < 4; ++k)
            if (c[k] != 0) x = x + Rational(c[k]) * lat[k];
        Rational reduced = x.norm() / ideal.norm();
        if (!is_integer(reduced)) fail(ErrorKind::inconsistency, "ideal norm does not divide element norm");
        if (mpz_divisible_ui_p(reduced.get_num_mpz_t(), static_cast<unsigned long>(p)) == 0) continue;
        bool seen = false;
        for (const auto& j : found)
            if (j.lattice().contains(x)) {
                seen = true;
                break;
            }
        if (seen) continue;

        std::vector<QuatElement> gens;
        for (const auto& r : order.lattice().basis()) gens.push_back(r * x);
        for (const auto& e : lat.basis()) gens.push_back(Rational(p) * e);
        QuatLattice sub = QuatLattice::from_generators(gens);
        if (sub.covolume() != target_covolume) fail(ErrorKind::inconsistency, "neighbor sublattice has the wrong index");
        LeftIdeal j = LeftIdeal::make(order, sub);
        if (j.norm() != target_norm) fail(ErrorKind::inconsistency, "neighbor ideal has the wrong norm");
        found.push_back(std::move(j));
    }
    if (found.size() != static_cast<std::size_t>(p + 1))
        fail(ErrorKind::inconsistency, "found " + std::to_string(found.size()) + " neighbors at p=" + std::to_string(p));
    return found;
}

/// Left ideal classes I_1 = R, I_2, ... with right orders and unit weights.
struct ClassList {
    long level = 0;
    QuatOrder order;
    std::vector<LeftIdeal> ideals;
    std::vector<QuatOrder> right_orders;
    std::vector<long> weights;
    std::vector<QuatLattice> inverses;
    std::vector<long> neighbor_primes;

    std::size_t size() const noexcept { return ideals.size(); }

    Rational mass() const {
        Rational m = 0;
        for (long w : weights) m += Rational(1, w);
        m.canonicalize();
        return m;
    }

    void add(const LeftIdeal& ideal) {
        QuatOrder ro = right_order(ideal);
        if (reduced_discriminant(ro) != level) fail(ErrorKind::inconsistency, "right order is not maximal");
        weights.push_back(unit_weight(ro));
        right_orders.push_back(std::move(ro));
        inverses.push_back(ideal_inverse(ideal));
        ideals.push_back(ideal);
    }

    /// Index of the known class equivalent to the ideal, or size() if none.
    std::size_t find(const LeftIdeal& ideal) const {
        for (std::size_t k = 0; k < ideals.size(); ++k)
            if (is_equivalent_given_inverse(ideal, inverses[k])) return k;
        return ideals.size();
    }
};

inline Rational eichler_mass(long level) { return make_rational(level - 1, 12); }

/// Breadth-first p-neighbor search from R, stopping once the Eichler mass is
/// reached exactly.
inline ClassList enumerate_classes(const QuatOrder& order, long level) {
    if (reduced_discriminant(order) != level) fail(ErrorKind::precondition, "order is not maximal of the given level");
    ClassList classes;
    classes.level = level;
    classes.order = order;
    classes.add(LeftIdeal::make(order, order.lattice()));
    const Rational target = eichler_mass(level);

    for (long p = 2; p < 100 && classes.mass() < target; ++p) {
        if (!is_prime(p) || p == level) continue;
        classes.neighbor_primes.push_back(p);
        std::deque<std::size_t> queue;
        for (std::size_t k = 0; k < classes.size(); ++k) queue.push_back(k);
        while (!queue.empty() && classes.mass() < target) {
            const LeftIdeal current = classes.ideals[queue.front()];
            queue.pop_front();
            for (const auto& j : neighbors(order, current, p)) {
                if (classes.find(j) != classes.size()) continue;
                classes.add(j);
                queue.push_back(classes.size() - 1);
                if (classes.mass() >= target) break;
            }
        }
    }
    if (classes.mass() != target)
        fail(ErrorKind::enumeration_failure, "mass " + classes.mass().get_str() + " != " + target.get_str() + " at level " +
                                                 std::to_string(level));
    return classes;
}

} // namespace brandtlab

#endif // BRANDTLAB_IDEALS_HPP
