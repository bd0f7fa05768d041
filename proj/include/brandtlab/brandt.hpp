#ifndef BRANDTLAB_BRANDT_HPP
#define BRANDTLAB_BRANDT_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "ideals.hpp"

namespace brandtlab {

/// Brandt matrices B(1..bound) of one level, in the convention
/// T_m[j] = sum_i B(m)_ij [i], so columns sum to sigma(m)_N.
struct BrandtCollection {
    long level = 0;
    std::size_t n = 0;
    std::vector<long> weights;
    RatMatrix b0;
    std::vector<SmallIntMatrix> matrices;  // matrices[m-1] = B(m)
    long bound = 0;
    SmallIntMatrix level_matrix;           // B(N), kept even when N > bound

    bool has(long m) const { return (m >= 1 && m <= bound) || m == level; }

    const SmallIntMatrix& operator()(long m) const {
        if (m >= 1 && m <= bound) return matrices[static_cast<std::size_t>(m - 1)];
        if (m == level) return level_matrix;
        fail(ErrorKind::invalid_argument, "B(" + std::to_string(m) + ") is outside 1.." + std::to_string(bound));
    }
};

struct ThetaSeries {
    std::size_t i = 0;
    std::size_t j = 0;
    Rational constant;
    std::vector<long long> coeffs;  // coeffs[m-1] for m = 1..bound
};

/// M_ij = I_j^{-1} I_i, a left R_j-ideal with right order R_i.
inline QuatLattice translation_module(const ClassList& classes, std::size_t i, std::size_t j) {
    if (i >= classes.size() || j >= classes.size()) fail(ErrorKind::invalid_argument, "class index out of range");
    return ideal_product(classes.inverses[j], classes.ideals[i].lattice());
}

inline RatMatrix brandt_b0(const ClassList& classes) {
    const std::size_t n = classes.size();
    RatMatrix b0(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b0(i, j) = Rational(1, 2 * classes.weights[i]);
    return b0;
}

namespace detail {
inline long long brandt_entry(long long count, long weight) {
    if (count % (2 * weight) != 0)
        fail(ErrorKind::inconsistency, "representation count " + std::to_string(count) + " not divisible by 2w=" + std::to_string(2 * weight));
    return count / (2 * weight);
}
} // namespace detail

/// B(1..bound) from one enumeration sweep per translation module.
inline BrandtCollection compute_brandt(const ClassList& classes, long bound) {
    if (bound < 1) fail(ErrorKind::invalid_argument, "coefficient bound must be positive");
    const std::size_t n = classes.size();
    BrandtCollection out;
    out.level = classes.level;
    out.n = n;
    out.weights = classes.weights;
    out.b0 = brandt_b0(classes);
    out.bound = bound;
    out.matrices.assign(static_cast<std::size_t>(bound), SmallIntMatrix(n, n, 0));
    out.level_matrix = SmallIntMatrix(n, n, 0);
    const long sweep = std::max(bound, out.level);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto counts = theta_coefficients(translation_module(classes, i, j), sweep);
            for (long m = 1; m <= bound; ++m)
                out.matrices[static_cast<std::size_t>(m - 1)](i, j) =
                    detail::brandt_entry(counts[static_cast<std::size_t>(m)], classes.weights[i]);
            out.level_matrix(i, j) = detail::brandt_entry(counts[static_cast<std::size_t>(out.level)], classes.weights[i]);
        }
    return out;
}

inline SmallIntMatrix brandt_matrix(const ClassList& classes, long m) {
    if (m < 1) fail(ErrorKind::invalid_argument, "Brandt matrices are indexed by m >= 1");
    return compute_brandt(classes, m)(m);
}

inline ThetaSeries theta_series(const ClassList& classes, std::size_t i, std::size_t j, long bound) {
    if (bound < 1) fail(ErrorKind::invalid_argument, "coefficient bound must be positive");
    if (i >= classes.size() || j >= classes.size()) fail(ErrorKind::invalid_argument, "class index out of range");
    const auto counts = theta_coefficients(translation_module(classes, i, j), bound);
    ThetaSeries s{i, j, Rational(1, 2 * classes.weights[i]), {}};
    for (long m = 1; m <= bound; ++m)
        s.coeffs.push_back(detail::brandt_entry(counts[static_cast<std::size_t>(m)], classes.weights[i]));
    return s;
}

/// One named pass/fail line of a check ledger.
struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

inline bool all_passed(const std::vector<CheckResult>& checks) {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

namespace detail {

inline std::string where(long m, std::size_t i, std::size_t j) {
    return "m=" + std::to_string(m) + " (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

inline SmallIntMatrix small_product(const SmallIntMatrix& a, const SmallIntMatrix& b) {
    SmallIntMatrix out(a.rows(), b.cols(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    return out;
}

} // namespace detail

/// Exact identities every Brandt collection must satisfy. Works from the
/// matrices alone, so it also serves to re-verify cached records.
inline std::vector<CheckResult> structural_checks(const BrandtCollection& c) {
    std::vector<CheckResult> out;
    const std::size_t n = c.n;
    const long level = c.level;
    auto id = SmallIntMatrix::identity(n);

    {
        Rational mass = 0;
        Int prod = 1;
        for (long w : c.weights) {
            mass += Rational(1, w);
            prod *= w;
        }
        mass.canonicalize();
        const Rational target = eichler_mass(level);
        bool ok = mass == target && prod == target.get_den() && c.weights.size() == n;
        out.push_back({"mass_formula", ok, "sum 1/w = " + mass.get_str() + ", prod w = " + prod.get_str() + ", (N-1)/12 = " + target.get_str()});
    }
    {
        bool ok = c.b0.rows() == n && c.b0.cols() == n;
        for (std::size_t i = 0; ok && i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (c.b0(i, j) != Rational(1, 2 * c.weights[i])) ok = false;
        out.push_back({"b0_rows", ok, "B(0)_ij = 1/(2 w_i)"});
    }
    if (c.bound >= 1) out.push_back({"unit_matrix", c(1) == id, "B(1) = I"});

    std::vector<long> indices;
    for (long m = 1; m <= c.bound; ++m) indices.push_back(m);
    if (level > c.bound) indices.push_back(level);

    std::string negative_at;
    bool sym = true, cols = true, rows = true, nonneg = true;
    for (long m : indices) {
        const auto& b = c(m);
        const long sigma = sigma_coprime(m, level);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (b(i, j) < 0 && nonneg) {
                    nonneg = false;
                    negative_at = detail::where(m, i, j);
                }
                if (sym && c.weights[i] * b(i, j) != c.weights[j] * b(j, i)) {
                    sym = false;
                    out.push_back({"weighted_symmetry", false, "w_i B_ij != w_j B_ji at " + detail::where(m, i, j)});
                }
            }
        for (std::size_t j = 0; j < n && cols; ++j) {
            long long s = 0;
            for (std::size_t i = 0; i < n; ++i) s += b(i, j);
            if (s != sigma) {
                cols = false;
                out.push_back({"column_sums", false, "column " + std::to_string(j + 1) + " of B(" + std::to_string(m) +
                                                         ") sums to " + std::to_string(s) + ", expected " + std::to_string(sigma)});
            }
        }
        // sum_j B_ij / w_j = sigma / w_i
        for (std::size_t i = 0; i < n && rows; ++i) {
            Rational s = 0;
            for (std::size_t j = 0; j < n; ++j) s += Rational(static_cast<long>(b(i, j)), c.weights[j]);
            s.canonicalize();
            Rational expect(sigma, c.weights[i]);
            expect.canonicalize();
            if (s != expect) {
                rows = false;
                out.push_back({"weighted_row_sums", false, "row " + std::to_string(i + 1) + " of B(" + std::to_string(m) + ")"});
            }
        }
    }
    out.push_back({"nonnegative_entries", nonneg, negative_at});
    if (sym) out.push_back({"weighted_symmetry", true, "w_i B(m)_ij = w_j B(m)_ji for m <= " + std::to_string(c.bound)});
    if (cols) out.push_back({"column_sums", true, "column sums equal sigma(m)_N"});
    if (rows) out.push_back({"weighted_row_sums", true, "sum_j B_ij / w_j = sigma(m)_N / w_i"});

    bool comm = true;
    for (std::size_t a = 0; a < indices.size() && comm; ++a)
        for (std::size_t b = a + 1; b < indices.size() && comm; ++b) {
            const long m = indices[a], k = indices[b];
            if (detail::small_product(c(m), c(k)) != detail::small_product(c(k), c(m))) {
                comm = false;
                out.push_back({"commutativity", false, "B(" + std::to_string(m) + ") and B(" + std::to_string(k) + ") do not commute"});
            }
        }
    if (comm) out.push_back({"commutativity", true, "all pairs m, m' <= " + std::to_string(c.bound)});

    // B(p) B(p^k) = B(p^{k+1}) + p B(p^{k-1}) for p not dividing N; B(N^k) = B(N)^k.
    bool rec = true;
    std::string rec_detail;
    for (long p = 2; p <= c.bound && rec; ++p) {
        if (!is_prime(p)) continue;
        long prev = 1, cur = p;
        while (cur * p <= c.bound && rec) {
            const long next = cur * p;
            SmallIntMatrix lhs = detail::small_product(c(p), c(cur));
            SmallIntMatrix rhs = c(next);
            if (p != level) rhs = rhs + static_cast<long long>(p) * c(prev);
            if (lhs != rhs) {
                rec = false;
                rec_detail = "fails at p=" + std::to_string(p) + ", p^k=" + std::to_string(cur);
            }
            prev = cur;
            cur = next;
        }
    }
    out.push_back({"hecke_recursion", rec, rec_detail});

    bool coprime = true;
    for (long m = 2; m <= c.bound && coprime; ++m)
        for (long k = 2; m * k <= c.bound && coprime; ++k)
            if (std::gcd(m, k) == 1 && detail::small_product(c(m), c(k)) != c(m * k)) {
                coprime = false;
                out.push_back({"multiplicativity", false, "B(" + std::to_string(m * k) + ") != B(" + std::to_string(m) + ")B(" + std::to_string(k) + ")"});
            }
    if (coprime) out.push_back({"multiplicativity", true, "B(mk) = B(m)B(k) for coprime m, k"});

    {
        const auto& bn = c(level);
        bool perm = detail::small_product(bn, bn) == id;
        for (std::size_t i = 0; i < n && perm; ++i) {
            long long ones = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (bn(i, j) != 0 && bn(i, j) != 1) perm = false;
                ones += bn(i, j);
            }
            if (ones != 1) perm = false;
        }
        out.push_back({"level_involution", perm, "B(N) is a permutation matrix with B(N)^2 = I"});
    }
    return out;
}

/// Indices i with B(N)_ii = 1.
inline std::vector<std::size_t> frobenius_fixed_points(const BrandtCollection& c) {
    const auto& bn = c(c.level);
    std::vector<std::size_t> fixed;
    for (std::size_t i = 0; i < c.n; ++i)
        if (bn(i, i) == 1) fixed.push_back(i);
    return fixed;
}

} // namespace brandtlab

#endif // BRANDTLAB_BRANDT_HPP
