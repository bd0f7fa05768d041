#ifndef BRANDTLAB_SPECTRAL_HPP
#define BRANDTLAB_SPECTRAL_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "brandt.hpp"

namespace brandtlab {

using RealMatrix = Matrix<double>;

/// Coefficient of epsilon under the augmentation map: the coordinate sum.
inline Rational augmentation(const std::vector<Rational>& x) {
    Rational s = 0;
    for (const auto& v : x) s += v;
    return s;
}

inline long sigma_N(long m, long level) { return sigma_coprime(m, level); }

/// Number of leading coefficients that pins down a weight-2 form of prime level.
inline long sturm_bound(long level) {
    if (level < 2) fail(ErrorKind::invalid_argument, "level must be prime");
    return (level + 1) / 6 + 1;
}

inline long default_coefficient_bound(long level) { return sturm_bound(level) + 2; }

/// Integral vector proportional to sum_i [i]/w_i.
inline std::vector<Int> eisenstein_direction(const std::vector<long>& weights) {
    Int l = 1;
    for (long w : weights) l = lcm(l, Int(w));
    std::vector<Int> v;
    for (long w : weights) v.push_back(l / w);
    return v;
}

/// Pairing-normalized Eisenstein eigenvector. When a collection is supplied
/// the eigen-equation B(m) v = sigma(m)_N v is first checked exactly.
inline std::vector<double> eisenstein_vector(const std::vector<long>& weights, const BrandtCollection* collection = nullptr) {
    for (long w : weights)
        if (w <= 0) fail(ErrorKind::invalid_argument, "weights must be positive");
    const auto dir = eisenstein_direction(weights);
    if (collection) {
        std::vector<long> ms;
        for (long m = 1; m <= collection->bound; ++m) ms.push_back(m);
        ms.push_back(collection->level);
        for (long m : ms) {
            const auto& b = (*collection)(m);
            const long sigma = sigma_N(m, collection->level);
            for (std::size_t i = 0; i < dir.size(); ++i) {
                Int s = 0;
                for (std::size_t j = 0; j < dir.size(); ++j) s += Int(static_cast<long>(b(i, j))) * dir[j];
                if (s != sigma * dir[i])
                    fail(ErrorKind::inconsistency, "Eisenstein eigen-equation fails for B(" + std::to_string(m) + ")");
            }
        }
    }
    double norm2 = 0;
    for (std::size_t i = 0; i < dir.size(); ++i) norm2 += static_cast<double>(weights[i]) * dir[i].get_d() * dir[i].get_d();
    std::vector<double> out;
    for (const auto& d : dir) out.push_back(d.get_d() / std::sqrt(norm2));
    return out;
}

/// S = D^{1/2} B D^{-1/2}, D = diag(w). Symmetric whenever w_i B_ij = w_j B_ji.
inline RealMatrix symmetrize(const SmallIntMatrix& b, const std::vector<long>& weights) {
    const std::size_t n = b.rows();
    if (b.cols() != n || weights.size() != n) fail(ErrorKind::invalid_argument, "shape mismatch");
    RealMatrix s(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (weights[i] * b(i, j) != weights[j] * b(j, i))
                fail(ErrorKind::precondition, "matrix is not self-adjoint for the weights at (" + std::to_string(i + 1) + "," +
                                                  std::to_string(j + 1) + ")");
            s(i, j) = std::sqrt(static_cast<double>(weights[i])) * static_cast<double>(b(i, j)) /
                      std::sqrt(static_cast<double>(weights[j]));
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s(i, j) = s(j, i) = 0.5 * (s(i, j) + s(j, i));
    return s;
}

struct EigenSystem {
    std::vector<double> values;
    RealMatrix vectors;  // column k is the unit eigenvector for values[k]
};

/// Cyclic Jacobi rotations for a real symmetric matrix.
inline EigenSystem jacobi_eigen(RealMatrix a, int max_sweeps = 100) {
    const std::size_t n = a.rows();
    RealMatrix v = RealMatrix::identity(n);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0, total = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                total += a(i, j) * a(i, j);
                if (i != j) off += a(i, j) * a(i, j);
            }
        if (off <= 1e-30 * std::max(total, 1e-300)) break;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a(p, q) == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
    }
    EigenSystem out;
    for (std::size_t i = 0; i < n; ++i) out.values.push_back(a(i, i));
    out.vectors = std::move(v);
    return out;
}

/// Simultaneous eigenbasis of the Hecke action on X (x) R. Labels are 0-based
/// here; label n-1 is always the Eisenstein vector, cuspidal labels are sorted
/// by descending (a_2, a_3, a_5, ...) fingerprint.
struct SpectralData {
    long level = 0;
    std::size_t n = 0;
    std::vector<long> weights;
    long bound = 0;
    RealMatrix eigenvectors;                        // (i, k) = f_ik, columns pairing-orthonormal
    std::vector<std::vector<double>> characters;    // characters[k][m-1] = alpha_k(T_m)
    std::vector<double> level_characters;           // alpha_k(T_N)
    std::size_t eisenstein_index = 0;
    std::uint64_t seed = 0;
    std::vector<std::pair<long, long>> combination; // (p, c_p)
    double residual = 0;                            // scaled max diagonalization residual
    double orthonormality_residual = 0;

    double alpha(std::size_t k, long m) const {
        if (m >= 1 && m <= bound) return characters[k][static_cast<std::size_t>(m - 1)];
        if (m == level) return level_characters[k];
        fail(ErrorKind::invalid_argument, "character value at T_" + std::to_string(m) + " not computed");
    }

    /// ([i], f_k) = w_i f_ik
    double pairing(std::size_t i, std::size_t k) const { return static_cast<double>(weights[i]) * eigenvectors(i, k); }

    bool is_cuspidal(std::size_t k) const { return k != eisenstein_index; }
};

namespace detail {

inline std::string format_sci(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

inline double max_abs_row_sum(const SmallIntMatrix& b) {
    double best = 0;
    for (std::size_t i = 0; i < b.rows(); ++i) {
        double s = 0;
        for (std::size_t j = 0; j < b.cols(); ++j) s += std::abs(static_cast<double>(b(i, j)));
        best = std::max(best, s);
    }
    return best;
}

inline std::vector<long> spectral_indices(const BrandtCollection& c) {
    std::vector<long> ms;
    for (long m = 1; m <= c.bound; ++m) ms.push_back(m);
    if (c.level > c.bound) ms.push_back(c.level);
    return ms;
}

/// max_k ||B f_k - alpha_k f_k||_inf / max(1, ||B||_inf)
inline double diagonalization_residual(const SmallIntMatrix& b, const RealMatrix& f, const std::vector<double>& alpha) {
    const std::size_t n = b.rows();
    double worst = 0;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0;
            for (std::size_t j = 0; j < n; ++j) s += static_cast<double>(b(i, j)) * f(j, k);
            worst = std::max(worst, std::abs(s - alpha[k] * f(i, k)));
        }
    return worst / std::max(1.0, max_abs_row_sum(b));
}

} // namespace detail

inline constexpr double kDiagonalizationTolerance = 1e-8;
inline constexpr double kCharacterSeparation = 1e-6;

inline SpectralData eigendecompose(const BrandtCollection& c, std::uint64_t seed = 42) {
    const std::size_t n = c.n;
    SpectralData out;
    out.level = c.level;
    out.n = n;
    out.weights = c.weights;
    out.bound = c.bound;
    out.seed = seed;

    std::vector<long> primes;
    for (long p = 2; p <= c.bound && primes.size() < 4; ++p)
        if (is_prime(p) && p != c.level) primes.push_back(p);
    if (primes.empty()) fail(ErrorKind::precondition, "no Hecke primes below the coefficient bound");

    const auto ms = detail::spectral_indices(c);
    std::vector<RealMatrix> sym;
    for (long m : ms) sym.push_back(symmetrize(c(m), c.weights));
    auto sym_at = [&](long m) -> const RealMatrix& {
        return sym[static_cast<std::size_t>(std::find(ms.begin(), ms.end(), m) - ms.begin())];
    };

    std::mt19937_64 rng(seed);
    RealMatrix f;
    std::vector<std::vector<double>> alpha;  // alpha[idx of m][k]
    double residual = 0;
    bool ok = false;
    for (int attempt = 0; attempt < 4 && !ok; ++attempt) {
        out.combination.clear();
        RealMatrix combo(n, n, 0.0);
        for (long p : primes) {
            const long cp = 1 + static_cast<long>(rng() % 9);
            out.combination.emplace_back(p, cp);
            combo = combo + static_cast<double>(cp) * sym_at(p);
        }
        EigenSystem es = jacobi_eigen(combo);
        f = RealMatrix(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) f(i, k) = es.vectors(i, k) / std::sqrt(static_cast<double>(c.weights[i]));

        alpha.assign(ms.size(), std::vector<double>(n, 0.0));
        residual = 0;
        for (std::size_t t = 0; t < ms.size(); ++t) {
            const RealMatrix& s = sym[t];
            for (std::size_t k = 0; k < n; ++k) {
                double r = 0;
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) r += es.vectors(i, k) * s(i, j) * es.vectors(j, k);
                alpha[t][k] = r;
            }
            residual = std::max(residual, detail::diagonalization_residual(c(ms[t]), f, alpha[t]));
        }
        ok = residual < kDiagonalizationTolerance;
    }
    if (!ok)
        fail(ErrorKind::degenerate_combination, "Hecke combination failed to diagonalize B(m) after re-randomizing (residual " +
                                                    detail::format_sci(residual) + ")");

    // Eisenstein vector: the unique eigenvector with coordinates of one sign.
    std::vector<std::size_t> positive;
    for (std::size_t k = 0; k < n; ++k) {
        bool pos = true, neg = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (!(f(i, k) > 1e-9)) pos = false;
            if (!(f(i, k) < -1e-9)) neg = false;
        }
        if (pos || neg) positive.push_back(k);
    }
    if (positive.size() != 1) fail(ErrorKind::inconsistency, std::to_string(positive.size()) + " eigenvectors of constant sign");
    const std::size_t eis = positive.front();

    // Sign convention: first non-negligible coordinate positive.
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(f(i, k)) <= 1e-9) continue;
            if (f(i, k) < 0)
                for (std::size_t r = 0; r < n; ++r) f(r, k) = -f(r, k);
            break;
        }
    }

    std::vector<long> fingerprint_primes;
    for (long p = 2; p <= c.bound; ++p)
        if (is_prime(p) && p != c.level) fingerprint_primes.push_back(p);
    auto value = [&](std::size_t k, long m) {
        return alpha[static_cast<std::size_t>(std::find(ms.begin(), ms.end(), m) - ms.begin())][k];
    };
    std::vector<std::size_t> order;
    for (std::size_t k = 0; k < n; ++k)
        if (k != eis) order.push_back(k);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        for (long p : fingerprint_primes) {
            const double ax = value(x, p), ay = value(y, p);
            if (std::abs(ax - ay) > kCharacterSeparation) return ax > ay;
        }
        return x < y;
    });
    order.push_back(eis);

    out.eigenvectors = RealMatrix(n, n);
    out.characters.assign(n, std::vector<double>(static_cast<std::size_t>(c.bound), 0.0));
    out.level_characters.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = order[k];
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = f(i, src);
        for (long m = 1; m <= c.bound; ++m) out.characters[k][static_cast<std::size_t>(m - 1)] = value(src, m);
        out.level_characters[k] = value(src, c.level);
    }
    out.eisenstein_index = n - 1;
    out.residual = residual;

    double ortho = 0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            double s = 0;
            for (std::size_t i = 0; i < n; ++i) s += static_cast<double>(c.weights[i]) * out.eigenvectors(i, j) * out.eigenvectors(i, k);
            ortho = std::max(ortho, std::abs(s - (j == k ? 1.0 : 0.0)));
        }
    out.orthonormality_residual = ortho;

    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
            double gap = 0;
            for (long m : ms) gap = std::max(gap, std::abs(out.alpha(j, m) - out.alpha(k, m)));
            if (gap <= kCharacterSeparation)
                fail(ErrorKind::inconsistency, "characters " + std::to_string(j + 1) + " and " + std::to_string(k + 1) +
                                                   " coincide; multiplicity one is violated");
        }
    return out;
}

/// (alpha_k(T_m))_{m=1..bound}: the q-expansion of f_k without constant term.
inline std::vector<double> character_qexpansion(const SpectralData& s, std::size_t k, long bound) {
    if (k >= s.n) fail(ErrorKind::invalid_argument, "eigenform label out of range");
    if (bound > s.bound) fail(ErrorKind::insufficient_precision, "characters only known up to T_" + std::to_string(s.bound));
    std::vector<double> out;
    for (long m = 1; m <= bound; ++m) out.push_back(s.alpha(k, m));
    return out;
}

/// Closest integer list when every coefficient is integral to within tol.
inline std::optional<std::vector<long>> integral_qexpansion(const SpectralData& s, std::size_t k, long bound, double tol = 1e-6) {
    std::vector<long> out;
    for (double a : character_qexpansion(s, k, bound)) {
        const double r = std::round(a);
        if (std::abs(a - r) > tol) return std::nullopt;
        out.push_back(static_cast<long>(r));
    }
    return out;
}

inline constexpr double kOrthonormalityTolerance = 1e-9;
inline constexpr double kRamanujanSlack = 1e-6;

/// Numerical checks on a decomposition: orthonormality, diagonalization of
/// every computed B(m), Ramanujan bound, T_N signs, exact Eisenstein vector.
inline std::vector<CheckResult> spectral_checks(const SpectralData& s, const BrandtCollection& c) {
    std::vector<CheckResult> out;
    const std::size_t n = s.n;
    out.push_back({"orthonormality", s.orthonormality_residual < kOrthonormalityTolerance,
                   "max |<f_j,f_k> - delta| = " + detail::format_sci(s.orthonormality_residual)});

    double worst = 0;
    for (long m : detail::spectral_indices(c)) {
        std::vector<double> a;
        for (std::size_t k = 0; k < n; ++k) a.push_back(s.alpha(k, m));
        worst = std::max(worst, detail::diagonalization_residual(c(m), s.eigenvectors, a));
    }
    out.push_back({"diagonalization", worst < kDiagonalizationTolerance, "scaled residual " + detail::format_sci(worst)});

    bool ram = true;
    std::string ram_detail;
    for (std::size_t k = 0; k < n; ++k) {
        if (!s.is_cuspidal(k)) continue;
        for (long p = 2; p <= c.bound; ++p) {
            if (!is_prime(p) || p == c.level) continue;
            if (std::abs(s.alpha(k, p)) > 2 * std::sqrt(static_cast<double>(p)) + kRamanujanSlack) {
                ram = false;
                ram_detail = "f_" + std::to_string(k + 1) + " at p=" + std::to_string(p);
            }
        }
    }
    out.push_back({"ramanujan_bound", ram, ram_detail});

    bool signs = true;
    for (std::size_t k = 0; k < n; ++k)
        if (s.is_cuspidal(k) && std::abs(std::abs(s.alpha(k, c.level)) - 1.0) > kRamanujanSlack) signs = false;
    out.push_back({"level_operator_signs", signs, "alpha_k(T_N) in {-1, +1} for cuspidal k"});

    bool eis_ok = true;
    std::string eis_detail;
    try {
        const auto expect = eisenstein_vector(c.weights, &c);
        for (std::size_t i = 0; i < n; ++i) {
            if (!(s.eigenvectors(i, s.eisenstein_index) > 0)) eis_ok = false;
            if (std::abs(s.eigenvectors(i, s.eisenstein_index) - expect[i]) > 1e-9) eis_ok = false;
        }
        for (long m : detail::spectral_indices(c))
            if (std::abs(s.alpha(s.eisenstein_index, m) - static_cast<double>(sigma_N(m, c.level))) > 1e-6) eis_ok = false;
        for (std::size_t k = 0; k < n; ++k) {
            if (!s.is_cuspidal(k)) continue;
            bool pos = false, neg = false;
            for (std::size_t i = 0; i < n; ++i) {
                if (s.eigenvectors(i, k) > 1e-9) pos = true;
                if (s.eigenvectors(i, k) < -1e-9) neg = true;
            }
            if (!(pos && neg)) eis_ok = false;
        }
    } catch (const Error& e) {
        eis_ok = false;
        eis_detail = e.what();
    }
    out.push_back({"eisenstein_vector", eis_ok, eis_detail.empty() ? "unique positive eigenvector with eigenvalues sigma(m)_N" : eis_detail});
    return out;
}

} // namespace brandtlab

#endif // BRANDTLAB_SPECTRAL_HPP
