#ifndef BRANDTLAB_SS_ORACLE_HPP
#define BRANDTLAB_SS_ORACLE_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "brandt.hpp"

namespace brandtlab {

/// F_{p^2} = F_p[t]/(t^2 - d) for the least non-residue d. Elements are
/// pairs a + b t, indexed as a + b p for table lookups.
class Fp2 {
public:
    struct Elt {
        long a = 0;
        long b = 0;
        friend bool operator==(const Elt&, const Elt&) = default;
    };

    explicit Fp2(long p) : p_(p) {
        if (!is_prime(p) || p < 3) fail(ErrorKind::invalid_argument, "F_{p^2} model needs an odd prime");
        d_ = 2;
        while (legendre(d_, p) != -1) ++d_;
        const long q = p * p;
        square_.assign(static_cast<std::size_t>(q), false);
        for (long x = 0; x < q; ++x) {
            const Elt s = mul(from_index(x), from_index(x));
            square_[static_cast<std::size_t>(index(s))] = true;
        }
    }

    long p() const noexcept { return p_; }
    long nonresidue() const noexcept { return d_; }
    long size() const noexcept { return p_ * p_; }

    Elt from_index(long x) const { return {x % p_, x / p_}; }
    long index(const Elt& x) const { return x.a + x.b * p_; }

    Elt make(long a, long b = 0) const {
        if (a < 0 || b < 0 || a >= p_ || b >= p_) fail(ErrorKind::invalid_argument, "coordinates must be reduced mod p");
        return {a, b};
    }
    Elt from_integer(long a) const { return {mod(a, p_), 0}; }

    Elt add(const Elt& x, const Elt& y) const { return {(x.a + y.a) % p_, (x.b + y.b) % p_}; }
    Elt sub(const Elt& x, const Elt& y) const { return {mod(x.a - y.a, p_), mod(x.b - y.b, p_)}; }
    Elt mul(const Elt& x, const Elt& y) const {
        return {static_cast<long>((static_cast<__int128>(x.a) * y.a + static_cast<__int128>(d_) * (x.b * y.b % p_)) % p_),
                (x.a * y.b + x.b * y.a) % p_};
    }
    Elt frobenius(const Elt& x) const { return {x.a, mod(-x.b, p_)}; }
    bool in_prime_field(const Elt& x) const { return x.b == 0; }

    /// Quadratic character on F_{p^2}.
    int chi(const Elt& x) const {
        if (x.a == 0 && x.b == 0) return 0;
        return square_[static_cast<std::size_t>(index(x))] ? 1 : -1;
    }

private:
    long p_;
    long d_;
    std::vector<bool> square_;
};

namespace detail {

/// Frobenius trace of y^2 = x^3 + a x + b over F_{p^2}.
inline long curve_trace(const Fp2& f, const Fp2::Elt& a, const Fp2::Elt& b, const std::vector<Fp2::Elt>& cubes) {
    // x = x0 + x1 t runs in index order, so a x + b is updated by additions.
    const long p = f.p();
    const auto at = f.mul(a, f.make(0, 1 % p));
    long s = 0;
    Fp2::Elt row = b;
    for (long x1 = 0; x1 < p; ++x1) {
        Fp2::Elt lin = row;
        for (long x0 = 0; x0 < p; ++x0) {
            s += f.chi(f.add(cubes[static_cast<std::size_t>(x0 + x1 * p)], lin));
            lin = f.add(lin, a);
        }
        row = f.add(row, at);
    }
    return -s;
}

inline std::vector<Fp2::Elt> cube_table(const Fp2& f) {
    std::vector<Fp2::Elt> cubes;
    for (long xi = 0; xi < f.size(); ++xi) {
        const auto x = f.from_index(xi);
        cubes.push_back(f.mul(f.mul(x, x), x));
    }
    return cubes;
}

inline bool is_supersingular(const Fp2& f, const Fp2::Elt& j, const std::vector<Fp2::Elt>& cubes) {
    const long p = f.p();
    const auto zero = f.from_integer(0);
    const auto k1728 = f.from_integer(1728);
    Fp2::Elt a, b;
    if (j == zero) {
        a = zero;
        b = f.from_integer(1);
    } else if (j == k1728) {
        a = f.from_integer(1);
        b = zero;
    } else {
        const auto u = f.sub(k1728, j);
        a = f.mul(f.from_integer(3), f.mul(j, u));
        b = f.mul(f.from_integer(2), f.mul(j, f.mul(u, u)));
    }
    return mod(curve_trace(f, a, b, cubes), p) == 0;
}

} // namespace detail

/// Point-counting test: the Frobenius trace over F_{p^2} is divisible by p.
inline bool is_supersingular(const Fp2& f, const Fp2::Elt& j) {
    if (j.a < 0 || j.b < 0 || j.a >= f.p() || j.b >= f.p()) fail(ErrorKind::invalid_argument, "invalid field element");
    return detail::is_supersingular(f, j, detail::cube_table(f));
}

struct SupersingularSet {
    long level = 0;
    std::vector<std::pair<long, long>> j_list;  // (a, b) meaning a + b t; (0,0) only for p = 2, 3
    long rational_count = 0;
    long nonresidue = 0;
    bool has_j0 = false;
    bool has_j1728 = false;
};

/// All supersingular j-invariants in characteristic p by exhaustive scan.
inline SupersingularSet supersingular_set(long p) {
    if (!is_prime(p)) fail(ErrorKind::invalid_argument, "characteristic must be prime");
    SupersingularSet out;
    out.level = p;
    if (p == 2 || p == 3) {
        out.j_list = {{0, 0}};
        out.rational_count = 1;
        out.has_j0 = out.has_j1728 = true;
        return out;
    }
    const Fp2 f(p);
    out.nonresidue = f.nonresidue();
    const auto cubes = detail::cube_table(f);
    for (long xi = 0; xi < f.size(); ++xi) {
        const auto j = f.from_index(xi);
        const auto conj = f.frobenius(j);
        if (f.index(conj) < xi) continue;  // decided with its conjugate
        if (!detail::is_supersingular(f, j, cubes)) continue;
        out.j_list.emplace_back(j.a, j.b);
        if (!(conj == j)) out.j_list.emplace_back(conj.a, conj.b);
        else ++out.rational_count;
    }
    std::sort(out.j_list.begin(), out.j_list.end(), [](const auto& x, const auto& y) {
        return x.second != y.second ? x.second < y.second : x.first < y.first;
    });
    const long j1728 = mod(1728, p);
    for (const auto& [a, b] : out.j_list) {
        if (a == 0 && b == 0) out.has_j0 = true;
        if (a == j1728 && b == 0) out.has_j1728 = true;
    }
    return out;
}

inline constexpr long kDefaultMaxOracleLevel = 100;

/// Compares the geometric side with the quaternion side. Throws on mismatch.
inline std::vector<CheckResult> cross_validate(const SupersingularSet& ss, const BrandtCollection& c) {
    if (ss.level != c.level) fail(ErrorKind::invalid_argument, "oracle and Brandt data have different levels");
    std::vector<CheckResult> out;
    const long n = static_cast<long>(c.n);
    const long count = static_cast<long>(ss.j_list.size());
    if (count != n)
        fail(ErrorKind::cross_validation, std::to_string(count) + " supersingular j-invariants but class number " + std::to_string(n));
    out.push_back({"supersingular_count", true, std::to_string(count) + " = n"});

    const long fixed = static_cast<long>(frobenius_fixed_points(c).size());
    if (fixed != ss.rational_count)
        fail(ErrorKind::cross_validation, "B(N) has " + std::to_string(fixed) + " fixed points but " +
                                              std::to_string(ss.rational_count) + " supersingular j lie in F_N");
    out.push_back({"rational_j_vs_fixed_points", true, std::to_string(fixed) + " fixed points"});

    if (c.level >= 5) {
        const long w2 = std::count(c.weights.begin(), c.weights.end(), 2L);
        const long w3 = std::count(c.weights.begin(), c.weights.end(), 3L);
        if (w2 != (ss.has_j1728 ? 1 : 0) || w3 != (ss.has_j0 ? 1 : 0))
            fail(ErrorKind::cross_validation, "weights do not match extra automorphisms (w=2: " + std::to_string(w2) +
                                                  ", w=3: " + std::to_string(w3) + ")");
        out.push_back({"automorphism_weights", true, "j=1728 <-> w=2, j=0 <-> w=3"});
    }
    return out;
}

} // namespace brandtlab

#endif // BRANDTLAB_SS_ORACLE_HPP
