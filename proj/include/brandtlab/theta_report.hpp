#ifndef BRANDTLAB_THETA_REPORT_HPP
#define BRANDTLAB_THETA_REPORT_HPP

#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "polynomial.hpp"
#include "spectral.hpp"

namespace brandtlab {

enum class HeckeFieldVerdict { field, product, inconclusive };

inline std::string to_string(HeckeFieldVerdict v) {
    switch (v) {
    case HeckeFieldVerdict::field: return "field";
    case HeckeFieldVerdict::product: return "product";
    case HeckeFieldVerdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

inline HeckeFieldVerdict parse_verdict(const std::string& s) {
    if (s == "field") return HeckeFieldVerdict::field;
    if (s == "product") return HeckeFieldVerdict::product;
    if (s == "inconclusive") return HeckeFieldVerdict::inconclusive;
    fail(ErrorKind::invalid_argument, "unknown verdict " + s);
}

namespace detail {

/// Rows j: (B(m)_ij)_{m=1..bound}, optionally stacked over every i.
inline IntMatrix theta_rows(const BrandtCollection& c, std::optional<std::size_t> only_i) {
    const std::size_t n = c.n;
    const std::size_t cols = static_cast<std::size_t>(c.bound);
    std::vector<std::size_t> is;
    if (only_i) is.push_back(*only_i);
    else
        for (std::size_t i = 0; i < n; ++i) is.push_back(i);
    IntMatrix out(is.size() * n, cols, 0);
    std::size_t r = 0;
    for (std::size_t i : is)
        for (std::size_t j = 0; j < n; ++j, ++r)
            for (long m = 1; m <= c.bound; ++m) out(r, static_cast<std::size_t>(m - 1)) = Int(static_cast<long>(c(m)(i, j)));
    return out;
}

} // namespace detail

/// dim Theta_i as the exact rank of the theta coefficient rows of class i.
inline long dim_theta_exact(const BrandtCollection& c, std::size_t i) {
    if (i >= c.n) fail(ErrorKind::invalid_argument, "class index out of range");
    if (c.bound < sturm_bound(c.level))
        fail(ErrorKind::insufficient_precision, "coefficient bound " + std::to_string(c.bound) + " is below the Sturm bound " +
                                                    std::to_string(sturm_bound(c.level)));
    return static_cast<long>(exact_rank(detail::theta_rows(c, i)));
}

/// Rank of all n^2 theta series; equals n when they span M_2(Gamma_0(N)).
inline long theta_span_rank(const BrandtCollection& c) {
    if (c.bound < sturm_bound(c.level)) fail(ErrorKind::insufficient_precision, "coefficient bound is below the Sturm bound");
    return static_cast<long>(exact_rank(detail::theta_rows(c, std::nullopt)));
}

inline bool full_span_check(const BrandtCollection& c) { return theta_span_rank(c) == static_cast<long>(c.n); }

/// {k : |([i], f_k)| > tol}; eigenvectors are pairing-normalized.
inline std::vector<std::size_t> sigma_set(const SpectralData& s, std::size_t i, double tol) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < s.n; ++k)
        if (std::abs(s.pairing(i, k)) > tol) out.push_back(k);
    return out;
}

struct SigmaResolution {
    std::vector<std::size_t> labels;
    double tolerance = 0;
    int adjustments = 0;
};

inline constexpr double kDefaultSigmaTolerance = 1e-7;

/// Sigma(i) reconciled with the exact dimension: the tolerance moves one
/// decade at a time towards agreement, at most three times.
inline SigmaResolution resolve_sigma_set(const SpectralData& s, std::size_t i, long exact_dim, double tol = kDefaultSigmaTolerance) {
    SigmaResolution r;
    r.tolerance = tol;
    for (;;) {
        r.labels = sigma_set(s, i, r.tolerance);
        const long got = static_cast<long>(r.labels.size());
        if (got == exact_dim) return r;
        if (r.adjustments == 3)
            fail(ErrorKind::tolerance_resolution, "|Sigma(" + std::to_string(i + 1) + ")| = " + std::to_string(got) +
                                                      " but exact dim = " + std::to_string(exact_dim));
        r.tolerance = got > exact_dim ? r.tolerance * 10 : r.tolerance / 10;
        ++r.adjustments;
    }
}

struct ThetaIdentityResidual {
    double expansion = 0;   // w_i theta_ij against sum_k ([j],f_k)([i],f_k) f_k
    double eigenform = 0;   // ([i],f_j) f_j against w_i sum_k f_kj theta_ik
    double scale = 1;
};

/// Coefficient-wise residuals of the eigenform expansion of w_i theta_ij,
/// each scaled by max(1, largest coefficient involved).
inline ThetaIdentityResidual theta_identity_residual(const BrandtCollection& c, const SpectralData& s, std::size_t i, std::size_t j) {
    ThetaIdentityResidual r;
    const std::size_t n = c.n;
    for (long m = 1; m <= c.bound; ++m) r.scale = std::max(r.scale, std::abs(static_cast<double>(c.weights[i] * c(m)(i, j))));
    for (long m = 1; m <= c.bound; ++m) {
        double sum = 0;
        for (std::size_t k = 0; k < n; ++k) sum += s.pairing(j, k) * s.pairing(i, k) * s.alpha(k, m);
        r.expansion = std::max(r.expansion, std::abs(static_cast<double>(c.weights[i] * c(m)(i, j)) - sum) / r.scale);
    }
    // Here j plays the role of an eigenform label.
    for (long m = 1; m <= c.bound; ++m) {
        double rhs = 0, coeff_scale = 1;
        for (std::size_t k = 0; k < n; ++k) {
            rhs += s.eigenvectors(k, j) * static_cast<double>(c(m)(i, k));
            coeff_scale = std::max(coeff_scale, std::abs(static_cast<double>(c(m)(i, k))));
        }
        rhs *= static_cast<double>(c.weights[i]);
        const double lhs = s.pairing(i, j) * s.alpha(j, m);
        r.eigenform = std::max(r.eigenform, std::abs(lhs - rhs) / (coeff_scale * c.weights[i]));
    }
    return r;
}

/// Coefficient of f_k in theta_ij: ([j],f_k)([i],f_k)/w_i.
inline double theta_eigen_coefficient(const SpectralData& s, std::size_t i, std::size_t j, std::size_t k) {
    return s.pairing(j, k) * s.pairing(i, k) / static_cast<double>(s.weights[i]);
}

/// Number of cuspidal eigenforms with alpha(T_N) = -1.
inline long atkin_lehner_rho(const SpectralData& s) {
    long rho = 0;
    for (std::size_t k = 0; k < s.n; ++k) {
        if (!s.is_cuspidal(k)) continue;
        const double a = s.alpha(k, s.level);
        if (std::abs(a + 1) < kRamanujanSlack) ++rho;
        else if (std::abs(a - 1) >= kRamanujanSlack)
            fail(ErrorKind::inconsistency, "alpha(T_N) = " + detail::format_sci(a) + " is not a sign");
    }
    return rho;
}

struct FieldProbe {
    HeckeFieldVerdict verdict = HeckeFieldVerdict::inconclusive;
    IntPoly cuspidal_charpoly;  // char poly on X_0 of the generic combination
    std::vector<std::pair<long, long>> combination;
    std::vector<IntPoly> factors;  // certified rational factors when verdict is product
};

namespace detail {

inline IntPoly poly_from_roots(const std::vector<double>& roots, double& worst_rounding) {
    std::vector<double> c{1.0};
    for (double r : roots) {
        std::vector<double> next(c.size() + 1, 0.0);
        for (std::size_t t = 0; t < c.size(); ++t) {
            next[t + 1] += c[t];
            next[t] -= r * c[t];
        }
        c = std::move(next);
    }
    IntPoly out;
    worst_rounding = 0;
    for (double v : c) {
        const double rv = std::round(v);
        worst_rounding = std::max(worst_rounding, std::abs(v - rv) / std::max(1.0, std::abs(v)));
        out.push_back(Int(rv));
    }
    return out;
}

/// Searches subsets of the given size for an exact rational factor.
inline bool find_factor(const IntPoly& f, const std::vector<double>& roots, long size, IntPoly& factor) {
    const std::size_t r = roots.size();
    std::vector<std::size_t> pick(static_cast<std::size_t>(size));
    for (std::size_t t = 0; t < pick.size(); ++t) pick[t] = t;
    long long budget = 200000;
    while (budget-- > 0) {
        std::vector<double> chosen;
        for (auto t : pick) chosen.push_back(roots[t]);
        double rounding = 0;
        IntPoly g = poly_from_roots(chosen, rounding);
        if (rounding < 1e-6 && divides(g, f)) {
            factor = g;
            return true;
        }
        long t = size - 1;
        while (t >= 0 && pick[static_cast<std::size_t>(t)] == r - static_cast<std::size_t>(size) + static_cast<std::size_t>(t)) --t;
        if (t < 0) return false;
        ++pick[static_cast<std::size_t>(t)];
        for (auto u = static_cast<std::size_t>(t) + 1; u < pick.size(); ++u) pick[u] = pick[u - 1] + 1;
    }
    return false;
}

} // namespace detail

/// Is the cuspidal Hecke algebra tensored with Q a field? Uses the same
/// generic combination as the eigendecomposition.
inline FieldProbe hecke_field_probe(const BrandtCollection& c, const SpectralData& s) {
    if (c.n < 2) fail(ErrorKind::precondition, "no cuspidal part at class number 1");
    FieldProbe out;
    out.combination = s.combination;
    IntMatrix combo(c.n, c.n, 0);
    long eis = 0;
    for (const auto& [p, cp] : s.combination) {
        const auto& b = c(p);
        for (std::size_t i = 0; i < c.n; ++i)
            for (std::size_t j = 0; j < c.n; ++j) combo(i, j) += Int(cp) * Int(static_cast<long>(b(i, j)));
        eis += cp * sigma_N(p, c.level);
    }
    // The Eisenstein line is complementary to X_0, so dividing it off leaves
    // the characteristic polynomial of the restriction.
    out.cuspidal_charpoly = exact_divide(characteristic_polynomial(combo), IntPoly{Int(-eis), Int(1)});
    const IntPoly& f = out.cuspidal_charpoly;
    const long d = degree(f);
    if (d == 1) {
        out.verdict = HeckeFieldVerdict::field;
        return out;
    }
    const auto allowed = admissible_factor_degrees(f);
    if (allowed.size() == 2 && allowed.count(0) && allowed.count(d)) {
        out.verdict = HeckeFieldVerdict::field;
        return out;
    }

    std::vector<double> roots;
    for (std::size_t k = 0; k < s.n; ++k) {
        if (!s.is_cuspidal(k)) continue;
        double v = 0;
        for (const auto& [p, cp] : s.combination) v += static_cast<double>(cp) * s.alpha(k, p);
        roots.push_back(v);
    }
    IntPoly rest = f;
    for (;;) {
        const long dr = degree(rest);
        bool split = false;
        for (long size = 1; 2 * size <= dr && !split; ++size) {
            if (!allowed.count(size)) continue;
            IntPoly g;
            if (detail::find_factor(rest, roots, size, g)) {
                out.factors.push_back(g);
                rest = exact_divide(rest, g);
                split = true;
            }
        }
        if (!split) break;
    }
    if (!out.factors.empty()) {
        out.factors.push_back(rest);
        out.verdict = HeckeFieldVerdict::product;
    }
    return out;
}

/// Everything derived from the theta series of one level.
struct ThetaReport {
    long level = 0;
    std::size_t n = 0;
    long bound = 0;
    std::vector<long> dims;
    std::vector<std::vector<std::size_t>> sigma;
    std::vector<double> sigma_tolerance;
    long rho = 0;
    std::vector<std::size_t> frobenius_fixed;
    long span_rank = 0;
    std::optional<HeckeFieldVerdict> field_verdict;  // absent when n = 1
    double max_expansion_residual = 0;
    double max_eigenform_residual = 0;
    std::vector<CheckResult> checks;
    std::vector<std::string> notes;

    bool hecke_conjecture_holds() const {
        for (long d : dims)
            if (d != static_cast<long>(n)) return false;
        return true;
    }

    std::vector<long> dims_multiset() const {
        auto d = dims;
        std::sort(d.begin(), d.end());
        return d;
    }
};

inline constexpr double kThetaIdentityTolerance = 1e-6;

inline ThetaReport build_theta_report(const BrandtCollection& c, const SpectralData& s, bool probe_field = true) {
    ThetaReport r;
    r.level = c.level;
    r.n = c.n;
    r.bound = c.bound;
    const std::size_t n = c.n;

    bool sigma_ok = true, eis_in = true;
    for (std::size_t i = 0; i < n; ++i) {
        const long d = dim_theta_exact(c, i);
        r.dims.push_back(d);
        try {
            auto res = resolve_sigma_set(s, i, d);
            if (res.adjustments > 0)
                r.notes.push_back("Sigma(" + std::to_string(i + 1) + ") tolerance moved to " + detail::format_sci(res.tolerance));
            r.sigma_tolerance.push_back(res.tolerance);
            r.sigma.push_back(res.labels);
        } catch (const Error& e) {
            sigma_ok = false;
            r.sigma_tolerance.push_back(kDefaultSigmaTolerance);
            r.sigma.push_back(sigma_set(s, i, kDefaultSigmaTolerance));
            r.notes.push_back(e.what());
        }
        if (std::find(r.sigma.back().begin(), r.sigma.back().end(), s.eisenstein_index) == r.sigma.back().end()) eis_in = false;
    }
    r.checks.push_back({"sigma_matches_exact_dim", sigma_ok, "|Sigma(i)| = dim Theta_i for every i"});
    r.checks.push_back({"eisenstein_in_sigma", eis_in, "Eisenstein label lies in every Sigma(i)"});

    r.span_rank = theta_span_rank(c);
    r.checks.push_back({"theta_span", r.span_rank == static_cast<long>(n),
                        "rank of all theta series = " + std::to_string(r.span_rank) + ", n = " + std::to_string(n)});

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto res = theta_identity_residual(c, s, i, j);
            r.max_expansion_residual = std::max(r.max_expansion_residual, res.expansion);
            r.max_eigenform_residual = std::max(r.max_eigenform_residual, res.eigenform);
        }
    r.checks.push_back({"theta_eigen_expansion", r.max_expansion_residual < kThetaIdentityTolerance,
                        "scaled residual " + detail::format_sci(r.max_expansion_residual)});
    r.checks.push_back({"eigenform_from_thetas", r.max_eigenform_residual < kThetaIdentityTolerance,
                        "scaled residual " + detail::format_sci(r.max_eigenform_residual)});

    r.rho = atkin_lehner_rho(s);
    r.frobenius_fixed = frobenius_fixed_points(c);
    bool al = true;
    std::string al_detail = "rho = " + std::to_string(r.rho);
    for (std::size_t i : r.frobenius_fixed)
        if (static_cast<long>(n) - r.dims[i] < r.rho) {
            al = false;
            al_detail += ", fails at class " + std::to_string(i + 1);
        }
    r.checks.push_back({"atkin_lehner_bound", al, al_detail});

    if (probe_field && n >= 2) {
        r.field_verdict = hecke_field_probe(c, s).verdict;
        if (*r.field_verdict == HeckeFieldVerdict::field)
            r.checks.push_back({"field_implies_full_dims", r.hecke_conjecture_holds(), "Hecke field forces dim Theta_i = n"});
    }
    if (!r.hecke_conjecture_holds()) r.notes.push_back("Hecke's conjecture fails: some dim Theta_i < n");
    return r;
}

} // namespace brandtlab

#endif // BRANDTLAB_THETA_REPORT_HPP
