#ifndef BRANDTLAB_LATTICE_HPP
#define BRANDTLAB_LATTICE_HPP

#include <array>
#include <cmath>
#include <vector>

#include "matrix.hpp"
#include "quaternion.hpp"

namespace brandtlab {

namespace detail {

inline Int common_denominator(const std::vector<QuatElement>& gens) {
    Int d = 1;
    for (const auto& g : gens)
        for (const auto& c : g.coords()) d = lcm(d, Int(c.get_den()));
    return d;
}

inline RatMatrix hnf_rows(const std::vector<std::array<Rational, 4>>& rows) {
    Int d = 1;
    for (const auto& r : rows)
        for (const auto& c : r) d = lcm(d, Int(c.get_den()));
    IntMatrix m(rows.size(), 4);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            Rational scaled = rows[i][j] * d;
            m(i, j) = scaled.get_num();
        }
    IntMatrix h = hermite_normal_form(std::move(m));
    if (h.rows() < 4) fail(ErrorKind::rank_deficient, "generators span a lattice of rank " + std::to_string(h.rows()));
    RatMatrix out(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            out(i, j) = Rational(h(i, j), d);
            out(i, j).canonicalize();
        }
    return out;
}

} // namespace detail

/// Canonical triangular basis of the Z-lattice spanned by the generators.
inline std::array<QuatElement, 4> hnf_basis(const std::vector<QuatElement>& generators) {
    if (generators.empty()) fail(ErrorKind::rank_deficient, "no generators");
    const QuaternionAlgebra alg = generators.front().algebra();
    std::vector<std::array<Rational, 4>> rows;
    rows.reserve(generators.size());
    for (const auto& g : generators) {
        if (!(g.algebra() == alg)) fail(ErrorKind::incompatible_algebra, "generators from different algebras");
        rows.push_back(g.coords());
    }
    RatMatrix b = detail::hnf_rows(rows);
    std::array<QuatElement, 4> out;
    for (std::size_t i = 0; i < 4; ++i) out[i] = QuatElement(alg, {b(i, 0), b(i, 1), b(i, 2), b(i, 3)});
    return out;
}

/// Full-rank Z-lattice in a quaternion algebra, stored by its Hermite basis.
/// Two lattices are equal iff their bases are equal.
class QuatLattice {
public:
    QuatLattice() = default;

    static QuatLattice from_generators(const std::vector<QuatElement>& generators) {
        auto basis = hnf_basis(generators);
        return QuatLattice(basis);
    }

    /// The lattice {v : <f, v> in Z for every f}, v in coordinates 1,i,j,k.
    static QuatLattice from_integrality_conditions(const QuaternionAlgebra& alg,
                                                   const std::vector<std::array<Rational, 4>>& functionals) {
        RatMatrix span = detail::hnf_rows(functionals);
        RatMatrix dual = inverse(span).transpose();
        std::vector<std::array<Rational, 4>> rows(4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) rows[i][j] = dual(i, j);
        RatMatrix b = detail::hnf_rows(rows);
        std::array<QuatElement, 4> basis;
        for (std::size_t i = 0; i < 4; ++i) basis[i] = QuatElement(alg, {b(i, 0), b(i, 1), b(i, 2), b(i, 3)});
        return QuatLattice(basis);
    }

    const QuaternionAlgebra& algebra() const noexcept { return basis_[0].algebra(); }
    const std::array<QuatElement, 4>& basis() const noexcept { return basis_; }
    const QuatElement& operator[](std::size_t i) const { return basis_[i]; }

    RatMatrix basis_matrix() const {
        RatMatrix m(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) m(i, j) = basis_[i][j];
        return m;
    }

    /// Coordinates of x with respect to the lattice basis (rational in general).
    std::array<Rational, 4> coordinates(const QuatElement& x) const {
        std::array<Rational, 4> c;
        for (std::size_t j = 0; j < 4; ++j) {
            Rational s = 0;
            for (std::size_t i = 0; i < 4; ++i) s += x[i] * inverse_(i, j);
            c[j] = s;
        }
        return c;
    }

    bool contains(const QuatElement& x) const {
        for (const auto& c : coordinates(x))
            if (!is_integer(c)) return false;
        return true;
    }

    bool contains(const QuatLattice& other) const {
        for (const auto& e : other.basis_)
            if (!contains(e)) return false;
        return true;
    }

    /// Gram matrix of the norm form: gram(k,l) = (b_k, b_l).
    RatMatrix gram() const {
        RatMatrix g(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = i; j < 4; ++j) g(i, j) = g(j, i) = norm_bilinear(basis_[i], basis_[j]);
        return g;
    }

    /// |det| of the basis matrix (covolume relative to Z<1,i,j,k>).
    Rational covolume() const { return abs(determinant(basis_matrix())); }

    friend bool operator==(const QuatLattice& x, const QuatLattice& y) { return x.basis_ == y.basis_; }

private:
    explicit QuatLattice(const std::array<QuatElement, 4>& basis) : basis_(basis), inverse_(inverse(basis_matrix())) {}

    std::array<QuatElement, 4> basis_;
    RatMatrix inverse_;
};

/// The positive rational c such that N(x)/c takes coprime integer values on
/// the lattice. gcd of Q(e_i) and 2(e_i, e_j) over a basis.
inline Rational normalized_content(const QuatLattice& lat) {
    RatMatrix g = lat.gram();
    Rational c = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        c = rational_gcd(c, g(i, i));
        for (std::size_t j = i + 1; j < 4; ++j) c = rational_gcd(c, 2 * g(i, j));
    }
    return c;
}

/// Integral matrix A with N(x)/content = x^T A x / 2 (even diagonal).
inline IntMatrix normalized_form(const QuatLattice& lat) {
    RatMatrix g = lat.gram();
    Rational c = normalized_content(lat);
    IntMatrix a(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            Rational v = 2 * g(i, j) / c;
            if (!is_integer(v)) fail(ErrorKind::inconsistency, "normalized norm form is not integral");
            a(i, j) = v.get_num();
        }
    return a;
}

/// Counts lattice vectors by value of an even positive definite integral form
/// x^T A x / 2. The basis is LLL-reduced once; enumeration is Fincke-Pohst with
/// a floating point Cholesky proposal and an exact integer acceptance test.
class ThetaCounter {
public:
    explicit ThetaCounter(const IntMatrix& form) {
        const std::size_t n = form.rows();
        if (n != form.cols() || n == 0) fail(ErrorKind::invalid_argument, "form must be square");
        IntMatrix u = lll_transform(form);
        IntMatrix reduced = u * form * u.transpose();
        form_ = to_small(reduced);
        n_ = n;
        // Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2
        q_.assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) q_[i * n + j] = static_cast<double>(form_(i, j)) / 2.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                q_[j * n + i] = q_[i * n + j];
                q_[i * n + j] /= q_[i * n + i];
            }
            for (std::size_t k = i + 1; k < n; ++k)
                for (std::size_t l = k; l < n; ++l) q_[k * n + l] -= q_[k * n + i] * q_[i * n + l];
        }
        counts_.assign(1, 1);
    }

    /// Coefficients r(0..bound) of the theta series.
    const std::vector<long long>& coefficients(long bound) {
        if (bound < 0) fail(ErrorKind::invalid_argument, "negative coefficient bound");
        if (bound > bound_) recompute(bound);
        return counts_;
    }

    long long count(long m) {
        if (m < 0) fail(ErrorKind::invalid_argument, "negative norm");
        return coefficients(m)[static_cast<std::size_t>(m)];
    }

    const SmallIntMatrix& reduced_form() const noexcept { return form_; }

private:
    void recompute(long bound) {
        counts_.assign(static_cast<std::size_t>(bound) + 1, 0);
        std::vector<long long> x(n_, 0);
        visit(static_cast<long>(n_) - 1, static_cast<double>(bound) + 0.5, x, bound);
        bound_ = bound;
    }

    void visit(long level, double remaining, std::vector<long long>& x, long bound) {
        const std::size_t i = static_cast<std::size_t>(level);
        double center = 0.0;
        for (std::size_t j = i + 1; j < n_; ++j) center -= q_[i * n_ + j] * static_cast<double>(x[j]);
        const double qii = q_[i * n_ + i];
        const double radius = std::sqrt(std::max(remaining, 0.0) / qii) + 1e-9;
        const long long lo = static_cast<long long>(std::ceil(center - radius));
        const long long hi = static_cast<long long>(std::floor(center + radius));
        for (long long v = lo; v <= hi; ++v) {
            const double d = static_cast<double>(v) - center;
            const double rest = remaining - qii * d * d;
            if (rest < -1e-7) continue;
            x[i] = v;
            if (level == 0) {
                tally(x, bound);
            } else {
                visit(level - 1, rest, x, bound);
            }
        }
        x[i] = 0;
    }

    void tally(const std::vector<long long>& x, long bound) {
        __int128 twice = 0;
        for (std::size_t r = 0; r < n_; ++r)
            for (std::size_t c = 0; c < n_; ++c) twice += static_cast<__int128>(form_(r, c)) * x[r] * x[c];
        const __int128 value = twice / 2;
        if (value <= bound) ++counts_[static_cast<std::size_t>(value)];
    }

    std::size_t n_ = 0;
    SmallIntMatrix form_;
    std::vector<double> q_;
    std::vector<long long> counts_;
    long bound_ = 0;
};

/// |{x in lat : N(x)/content(lat) = m}|.
inline long long count_vectors(const QuatLattice& lat, long m) {
    ThetaCounter counter(normalized_form(lat));
    return counter.count(m);
}

/// Theta coefficients r(0..bound) of the normalized norm form.
inline std::vector<long long> theta_coefficients(const QuatLattice& lat, long bound) {
    ThetaCounter counter(normalized_form(lat));
    return counter.coefficients(bound);
}

} // namespace brandtlab

#endif // BRANDTLAB_LATTICE_HPP
