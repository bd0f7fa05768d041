#ifndef BRANDTLAB_ORDER_HPP
#define BRANDTLAB_ORDER_HPP

#include <string>
#include <vector>

#include "lattice.hpp"

namespace brandtlab {

/// Reduced discriminant d of a rank-4 lattice: d^2 = |det(Tr(b_i conj(b_j)))|.
inline Int reduced_discriminant(const QuatLattice& lat) {
    RatMatrix trace_form(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) trace_form(i, j) = 2 * norm_bilinear(lat[i], lat[j]);
    Rational det = abs(determinant(trace_form));
    if (!is_integer(det)) fail(ErrorKind::malformed_order, "trace form determinant " + det.get_str() + " is not integral");
    Int d = sqrt(Int(det.get_num()));
    if (d * d != det.get_num()) fail(ErrorKind::malformed_order, "trace form determinant " + det.get_str() + " is not a square");
    return d;
}

/// True when the lattice contains 1 and is closed under multiplication.
inline bool is_order(const QuatLattice& lat) {
    if (!lat.contains(QuatElement::scalar(lat.algebra(), 1))) return false;
    for (const auto& x : lat.basis())
        for (const auto& y : lat.basis())
            if (!lat.contains(x * y)) return false;
    return true;
}

/// A lattice verified to be an order (contains 1, multiplicatively closed).
class QuatOrder {
public:
    QuatOrder() = default;

    static QuatOrder from_lattice(const QuatLattice& lat) {
        if (!is_order(lat)) fail(ErrorKind::malformed_order, "lattice is not a multiplicatively closed ring with 1");
        for (const auto& e : lat.basis())
            if (!is_integer(e.trace()) || !is_integer(e.norm()))
                fail(ErrorKind::malformed_order, "order contains a non-integral element");
        return QuatOrder(lat);
    }

    static QuatOrder from_generators(const std::vector<QuatElement>& gens) {
        return from_lattice(QuatLattice::from_generators(gens));
    }

    const QuatLattice& lattice() const noexcept { return lat_; }
    const QuaternionAlgebra& algebra() const noexcept { return lat_.algebra(); }
    const QuatElement& operator[](std::size_t i) const { return lat_[i]; }

    friend bool operator==(const QuatOrder& x, const QuatOrder& y) { return x.lat_ == y.lat_; }

private:
    explicit QuatOrder(QuatLattice lat) : lat_(std::move(lat)) {}
    QuatLattice lat_;
};

inline Int reduced_discriminant(const QuatOrder& order) { return reduced_discriminant(order.lattice()); }

/// Standard half-integral maximal order for the algebra's residue class,
/// certified by disc = level.
inline QuatOrder construct_maximal_order(const QuaternionAlgebra& alg) {
    const long level = alg.level;
    auto q = [&](long x0, long x1, long x2, long x3, long den) {
        return QuatElement(alg, {make_rational(x0, den), make_rational(x1, den), make_rational(x2, den), make_rational(x3, den)});
    };
    auto certified = [&](const std::vector<QuatElement>& gens, QuatOrder& out) {
        QuatLattice lat = QuatLattice::from_generators(gens);
        if (!is_order(lat)) return false;
        out = QuatOrder::from_lattice(lat);
        return reduced_discriminant(out) == level;
    };

    QuatOrder order;
    std::vector<std::vector<QuatElement>> candidates;
    if (alg.a == -1 && alg.b == -1 && level == 2) {
        candidates.push_back({q(1, 0, 0, 0, 1), q(0, 1, 0, 0, 1), q(0, 0, 1, 0, 1), q(1, 1, 1, 1, 2)});
    } else if (alg.a == -1 && alg.b == -level && level % 4 == 3) {
        candidates.push_back({q(1, 0, 0, 0, 1), q(0, 1, 0, 0, 1), q(1, 0, 1, 0, 2), q(0, 1, 0, 1, 2)});
    } else if (alg.a == -2 && alg.b == -level && level % 8 == 5) {
        candidates.push_back({q(1, 0, 1, 1, 2), q(0, 1, 2, 1, 4), q(0, 0, 1, 0, 1), q(0, 0, 0, 1, 1)});
    } else if (alg.b == -level && level % 8 == 1) {
        // a = -r with r = 3 mod 4; c runs over residues with r | c^2 level + 1 or c^2 = -level mod r.
        const long r = -alg.a;
        for (long c = 0; c < r; ++c) {
            if (mod(c * c * level + 1, r) != 0 && mod(c * c + level, r) != 0) continue;
            candidates.push_back({q(1, 1, 0, 0, 2), q(0, 0, 1, 1, 2), q(0, 1, 0, c, r), q(0, 0, 0, 1, 1)});
        }
    }
    for (const auto& gens : candidates)
        if (certified(gens, order)) return order;
    fail(ErrorKind::construction_failed, "no maximal order recipe verified for (" + std::to_string(alg.a) + ", " +
                                             std::to_string(alg.b) + ") at level " + std::to_string(level));
}

} // namespace brandtlab

#endif // BRANDTLAB_ORDER_HPP
