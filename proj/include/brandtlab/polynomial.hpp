#ifndef BRANDTLAB_POLYNOMIAL_HPP
#define BRANDTLAB_POLYNOMIAL_HPP

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "matrix.hpp"

namespace brandtlab {

/// Dense polynomial, coefficients from the constant term up.
using IntPoly = std::vector<Int>;
using ModPoly = std::vector<long>;

inline void trim(IntPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline long degree(const IntPoly& f) { return static_cast<long>(f.size()) - 1; }

inline std::string to_string(const IntPoly& f) {
    std::string out;
    for (long d = degree(f); d >= 0; --d) {
        const Int& c = f[static_cast<std::size_t>(d)];
        if (c == 0) continue;
        if (!out.empty()) out += c < 0 ? " - " : " + ";
        else if (c < 0) out += "-";
        Int a = abs(c);
        if (a != 1 || d == 0) out += a.get_str();
        if (d >= 1) out += "x";
        if (d >= 2) out += "^" + std::to_string(d);
    }
    return out.empty() ? "0" : out;
}

/// det(xI - A) by Faddeev-LeVerrier; every division is exact over Z.
inline IntPoly characteristic_polynomial(const IntMatrix& a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) fail(ErrorKind::invalid_argument, "characteristic polynomial needs a square matrix");
    IntPoly c(n + 1, 0);
    c[n] = 1;
    IntMatrix m(n, n, 0);
    for (std::size_t k = 1; k <= n; ++k) {
        IntMatrix next = a * m;
        for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
        m = std::move(next);
        IntMatrix am = a * m;
        Int tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
        if (tr % static_cast<long>(k) != 0) fail(ErrorKind::inconsistency, "non-exact Faddeev-LeVerrier step");
        c[n - k] = -tr / static_cast<long>(k);
    }
    return c;
}

/// Quotient of f by the monic g; fails when the remainder is nonzero.
inline IntPoly exact_divide(const IntPoly& f, const IntPoly& g) {
    if (g.empty() || g.back() != 1) fail(ErrorKind::invalid_argument, "divisor must be monic");
    IntPoly r = f;
    trim(r);
    const long dg = degree(g);
    if (degree(r) < dg) {
        if (r.empty()) return {};
        fail(ErrorKind::inconsistency, "polynomial division is not exact");
    }
    IntPoly q(static_cast<std::size_t>(degree(r) - dg + 1), 0);
    for (long d = degree(r); d >= dg; --d) {
        const Int lead = r[static_cast<std::size_t>(d)];
        q[static_cast<std::size_t>(d - dg)] = lead;
        for (long t = 0; t <= dg; ++t) r[static_cast<std::size_t>(d - dg + t)] -= lead * g[static_cast<std::size_t>(t)];
    }
    trim(r);
    if (!r.empty()) fail(ErrorKind::inconsistency, "polynomial division is not exact");
    return q;
}

inline bool divides(const IntPoly& g, const IntPoly& f) {
    try {
        exact_divide(f, g);
        return true;
    } catch (const Error&) {
        return false;
    }
}

namespace modp {

inline void trim(ModPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline long deg(const ModPoly& f) { return static_cast<long>(f.size()) - 1; }

inline ModPoly reduce(const IntPoly& f, long p) {
    ModPoly out;
    for (const auto& c : f) {
        Int r = c % p;
        if (r < 0) r += p;
        out.push_back(r.get_si());
    }
    trim(out);
    return out;
}

inline long inverse(long a, long p) { return powmod(mod(a, p), p - 2, p); }

inline ModPoly sub(ModPoly a, const ModPoly& b, long p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = mod(a[i] - b[i], p);
    trim(a);
    return a;
}

inline ModPoly rem(ModPoly a, const ModPoly& b, long p) {
    const long db = deg(b);
    const long inv = inverse(b.back(), p);
    while (deg(a) >= db) {
        const long shift = deg(a) - db;
        const long factor = static_cast<long>((static_cast<__int128>(a.back()) * inv) % p);
        for (long t = 0; t <= db; ++t) {
            auto& x = a[static_cast<std::size_t>(shift + t)];
            x = mod(static_cast<long>((x - static_cast<__int128>(factor) * b[static_cast<std::size_t>(t)]) % p), p);
        }
        trim(a);
    }
    return a;
}

inline ModPoly quo(ModPoly a, const ModPoly& b, long p) {
    const long db = deg(b);
    const long inv = inverse(b.back(), p);
    ModPoly q(static_cast<std::size_t>(std::max(0L, deg(a) - db + 1)), 0);
    while (deg(a) >= db) {
        const long shift = deg(a) - db;
        const long factor = static_cast<long>((static_cast<__int128>(a.back()) * inv) % p);
        q[static_cast<std::size_t>(shift)] = factor;
        for (long t = 0; t <= db; ++t) {
            auto& x = a[static_cast<std::size_t>(shift + t)];
            x = mod(static_cast<long>((x - static_cast<__int128>(factor) * b[static_cast<std::size_t>(t)]) % p), p);
        }
        trim(a);
    }
    return q;
}

inline ModPoly mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& f, long p) {
    if (a.empty() || b.empty()) return {};
    ModPoly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = static_cast<long>((out[i + j] + static_cast<__int128>(a[i]) * b[j]) % p);
    trim(out);
    return rem(out, f, p);
}

inline ModPoly gcd(ModPoly a, ModPoly b, long p) {
    while (!b.empty()) {
        ModPoly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const long inv = inverse(a.back(), p);
        for (auto& c : a) c = static_cast<long>((static_cast<__int128>(c) * inv) % p);
    }
    return a;
}

inline ModPoly derivative(const ModPoly& f, long p) {
    ModPoly out;
    for (std::size_t i = 1; i < f.size(); ++i) out.push_back(static_cast<long>((static_cast<__int128>(f[i]) * static_cast<long>(i)) % p));
    trim(out);
    return out;
}

inline ModPoly powmod_x(long e, const ModPoly& f, long p) {
    ModPoly result{1}, base{0, 1};
    base = rem(base, f, p);
    while (e > 0) {
        if (e & 1) result = mulmod(result, base, f, p);
        base = mulmod(base, base, f, p);
        e >>= 1;
    }
    return result;
}

inline ModPoly pow_poly(const ModPoly& g, long e, const ModPoly& f, long p) {
    ModPoly result{1}, base = rem(g, f, p);
    while (e > 0) {
        if (e & 1) result = mulmod(result, base, f, p);
        base = mulmod(base, base, f, p);
        e >>= 1;
    }
    return result;
}

} // namespace modp

/// Degrees of the irreducible factors of f mod p, or an empty list when f is
/// not squarefree of full degree mod p.
inline std::vector<long> factor_degrees_mod(const IntPoly& f, long p) {
    ModPoly g = modp::reduce(f, p);
    if (modp::deg(g) != degree(f) || degree(f) < 1) return {};
    if (modp::deg(modp::gcd(g, modp::derivative(g, p), p)) != 0) return {};
    std::vector<long> out;
    ModPoly h{0, 1};
    for (long d = 1; modp::deg(g) >= 2 * d; ++d) {
        h = modp::pow_poly(h, p, g, p);
        ModPoly common = modp::gcd(g, modp::sub(h, ModPoly{0, 1}, p), p);
        const long k = modp::deg(common);
        if (k > 0) {
            for (long t = 0; t < k / d; ++t) out.push_back(d);
            g = modp::quo(g, common, p);
            h = modp::rem(h, g, p);
        }
    }
    if (modp::deg(g) > 0) out.push_back(modp::deg(g));
    std::sort(out.begin(), out.end());
    return out;
}

/// Degrees a rational factor of f could have, intersected over the first
/// primes at which f stays squarefree. {0, deg f} means f is irreducible.
inline std::set<long> admissible_factor_degrees(const IntPoly& f, int prime_count = 60) {
    std::set<long> allowed;
    for (long d = 0; d <= degree(f); ++d) allowed.insert(d);
    int used = 0;
    for (long p = 3; used < prime_count && p < 100000; p += 2) {
        if (!is_prime(p)) continue;
        const auto degs = factor_degrees_mod(f, p);
        if (degs.empty()) continue;
        ++used;
        std::set<long> sums{0};
        for (long d : degs) {
            std::set<long> next = sums;
            for (long s : sums) next.insert(s + d);
            sums = std::move(next);
        }
        std::set<long> keep;
        for (long d : allowed)
            if (sums.count(d)) keep.insert(d);
        allowed = std::move(keep);
        if (allowed.size() <= 2) break;
    }
    return allowed;
}

} // namespace brandtlab

#endif // BRANDTLAB_POLYNOMIAL_HPP
