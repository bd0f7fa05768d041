#ifndef BRANDTLAB_QUATERNION_HPP
#define BRANDTLAB_QUATERNION_HPP

#include <array>
#include <ostream>
#include <string>

#include "arith.hpp"

namespace brandtlab {

/// A place of Q: either a finite prime or the real place.
class Place {
public:
    static Place infinity() { return Place(0); }
    static Place prime(long p) {
        if (!is_prime(p)) fail(ErrorKind::invalid_place, std::to_string(p) + " is neither prime nor infinity");
        return Place(p);
    }

    bool is_infinite() const noexcept { return p_ == 0; }
    long prime() const {
        if (is_infinite()) fail(ErrorKind::invalid_place, "the real place has no prime");
        return p_;
    }

    friend bool operator==(const Place&, const Place&) = default;

private:
    explicit Place(long p) : p_(p) {}
    long p_;
};

namespace detail {
inline long valuation(long& n, long p) {
    long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}
} // namespace detail

/// Hilbert symbol (a,b)_v. Returns -1 exactly when the quaternion algebra
/// (a,b | Q) is ramified at v.
inline int hilbert_symbol(long a, long b, const Place& place) {
    if (a == 0 || b == 0) fail(ErrorKind::invalid_argument, "hilbert symbol needs nonzero arguments");
    if (place.is_infinite()) return (a < 0 && b < 0) ? -1 : 1;

    const long p = place.prime();
    long u = a, v = b;
    const long alpha = detail::valuation(u, p);
    const long beta = detail::valuation(v, p);

    if (p != 2) {
        int s = ((alpha * beta) % 2 == 1 && ((p - 1) / 2) % 2 == 1) ? -1 : 1;
        if (beta % 2 == 1) s *= legendre(u, p);
        if (alpha % 2 == 1) s *= legendre(v, p);
        return s;
    }

    auto eps = [](long x) { return (mod(x, 8) % 4 == 3) ? 1L : 0L; };       // (x-1)/2 mod 2
    auto omega = [](long x) { long r = mod(x, 8); return (r == 3 || r == 5) ? 1L : 0L; }; // (x^2-1)/8 mod 2
    long e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
    return (e % 2 == 0) ? 1 : -1;
}

/// Definite quaternion algebra (a, b | Q), i^2 = a, j^2 = b, k = ij, ramified
/// exactly at {level, infinity}.
struct QuaternionAlgebra {
    long a = -1;
    long b = -1;
    long level = 2;

    friend bool operator==(const QuaternionAlgebra&, const QuaternionAlgebra&) = default;

    bool ramified_exactly_at_level() const {
        if (hilbert_symbol(a, b, Place::infinity()) != -1) return false;
        for (long p : prime_factors(2 * a * b * level)) {
            const int expected = (p == level) ? -1 : 1;
            if (hilbert_symbol(a, b, Place::prime(p)) != expected) return false;
        }
        return true;
    }
};

/// Picks (a,b) by residue class of N and certifies the ramification set.
inline QuaternionAlgebra construct_algebra(long level) {
    if (!is_prime(level)) fail(ErrorKind::invalid_argument, std::to_string(level) + " is not prime");
    QuaternionAlgebra alg{-1, -1, level};
    if (level == 2) {
        alg = {-1, -1, 2};
    } else if (level % 4 == 3) {
        alg = {-1, -level, level};
    } else if (level % 8 == 5) {
        alg = {-2, -level, level};
    } else {
        for (long r = 3; r < 10000; r += 4) {
            if (!is_prime(r)) continue;
            QuaternionAlgebra candidate{-r, -level, level};
            if (candidate.ramified_exactly_at_level()) return candidate;
        }
        fail(ErrorKind::construction_failed, "no auxiliary prime found for level " + std::to_string(level));
    }
    if (!alg.ramified_exactly_at_level())
        fail(ErrorKind::construction_failed, "algebra recipe failed ramification check at " + std::to_string(level));
    return alg;
}

/// Element x0 + x1 i + x2 j + x3 k with exact rational coordinates.
class QuatElement {
public:
    using Coords = std::array<Rational, 4>;

    QuatElement() = default;
    QuatElement(const QuaternionAlgebra& alg, Coords coords) : alg_(alg), c_(std::move(coords)) {}

    static QuatElement scalar(const QuaternionAlgebra& alg, const Rational& s) { return {alg, {s, 0, 0, 0}}; }
    static QuatElement unit(const QuaternionAlgebra& alg, int index) {
        Coords c{0, 0, 0, 0};
        c.at(static_cast<std::size_t>(index)) = 1;
        return {alg, c};
    }

    const QuaternionAlgebra& algebra() const noexcept { return alg_; }
    const Coords& coords() const noexcept { return c_; }
    const Rational& operator[](std::size_t i) const { return c_[i]; }

    bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }

    QuatElement conjugate() const { return {alg_, {c_[0], -c_[1], -c_[2], -c_[3]}}; }
    Rational trace() const { return 2 * c_[0]; }
    Rational norm() const {
        const Rational a = alg_.a, b = alg_.b;
        return c_[0] * c_[0] - a * c_[1] * c_[1] - b * c_[2] * c_[2] + a * b * c_[3] * c_[3];
    }

    friend QuatElement operator+(const QuatElement& x, const QuatElement& y) {
        check(x, y);
        return {x.alg_, {x.c_[0] + y.c_[0], x.c_[1] + y.c_[1], x.c_[2] + y.c_[2], x.c_[3] + y.c_[3]}};
    }
    friend QuatElement operator-(const QuatElement& x, const QuatElement& y) {
        check(x, y);
        return {x.alg_, {x.c_[0] - y.c_[0], x.c_[1] - y.c_[1], x.c_[2] - y.c_[2], x.c_[3] - y.c_[3]}};
    }
    friend QuatElement operator-(const QuatElement& x) { return {x.alg_, {-x.c_[0], -x.c_[1], -x.c_[2], -x.c_[3]}}; }
    friend QuatElement operator*(const Rational& s, const QuatElement& x) {
        return {x.alg_, {s * x.c_[0], s * x.c_[1], s * x.c_[2], s * x.c_[3]}};
    }

    // ij = k, ji = -k, jk = -b i, kj = b i, ki = -a j, ik = a j, k^2 = -ab.
    friend QuatElement operator*(const QuatElement& x, const QuatElement& y) {
        check(x, y);
        const Rational a = x.alg_.a, b = x.alg_.b;
        const auto& p = x.c_;
        const auto& q = y.c_;
        Coords r;
        r[0] = p[0] * q[0] + a * p[1] * q[1] + b * p[2] * q[2] - a * b * p[3] * q[3];
        r[1] = p[0] * q[1] + p[1] * q[0] - b * p[2] * q[3] + b * p[3] * q[2];
        r[2] = p[0] * q[2] + p[2] * q[0] + a * p[1] * q[3] - a * p[3] * q[1];
        r[3] = p[0] * q[3] + p[3] * q[0] + p[1] * q[2] - p[2] * q[1];
        return {x.alg_, r};
    }

    friend bool operator==(const QuatElement& x, const QuatElement& y) { return x.alg_ == y.alg_ && x.c_ == y.c_; }

    friend std::ostream& operator<<(std::ostream& os, const QuatElement& x) {
        return os << x.c_[0] << " + " << x.c_[1] << "*i + " << x.c_[2] << "*j + " << x.c_[3] << "*k";
    }

private:
    static void check(const QuatElement& x, const QuatElement& y) {
        if (!(x.alg_ == y.alg_)) fail(ErrorKind::incompatible_algebra, "operands belong to different quaternion algebras");
    }

    QuaternionAlgebra alg_;
    Coords c_{0, 0, 0, 0};
};

/// (x, y) = (N(x+y) - N(x) - N(y)) / 2 = Tr(x * conj(y)) / 2.
inline Rational norm_bilinear(const QuatElement& x, const QuatElement& y) {
    const auto& alg = x.algebra();
    if (!(alg == y.algebra())) fail(ErrorKind::incompatible_algebra, "operands belong to different quaternion algebras");
    const Rational a = alg.a, b = alg.b;
    return x[0] * y[0] - a * x[1] * y[1] - b * x[2] * y[2] + a * b * x[3] * y[3];
}

} // namespace brandtlab

#endif // BRANDTLAB_QUATERNION_HPP
