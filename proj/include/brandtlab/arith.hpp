#ifndef BRANDTLAB_ARITH_HPP
#define BRANDTLAB_ARITH_HPP

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace brandtlab {

using Int = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// gcd of two rationals: the largest positive rational g with a/g, b/g integral.
inline Rational rational_gcd(const Rational& a, const Rational& b) {
    if (a == 0) return abs(b);
    if (b == 0) return abs(a);
    Int num = gcd(Int(a.get_num() * b.get_den()), Int(b.get_num() * a.get_den()));
    Rational g(num, Int(a.get_den() * b.get_den()));
    g.canonicalize();
    return abs(g);
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline std::string to_string(const Rational& r) { return r.get_str(); }
inline std::string to_string(const Int& z) { return z.get_str(); }

inline Rational parse_rational(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0 || r.get_den() == 0)
        fail(ErrorKind::invalid_argument, "not a rational number: '" + s + "'");
    r.canonicalize();
    return r;
}

inline long to_long(const Int& z) {
    if (!z.fits_slong_p()) fail(ErrorKind::inconsistency, "integer does not fit in 64 bits: " + z.get_str());
    return z.get_si();
}

inline bool is_prime(long n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0 || n % 3 == 0) return false;
    for (long d = 5; d * d <= n; d += 6)
        if (n % d == 0 || n % (d + 2) == 0) return false;
    return true;
}

inline std::vector<long> primes_up_to(long bound) {
    std::vector<long> out;
    for (long p = 2; p <= bound; ++p)
        if (is_prime(p)) out.push_back(p);
    return out;
}

/// Distinct prime factors of |n|, n != 0.
inline std::vector<long> prime_factors(long n) {
    std::vector<long> out;
    if (n < 0) n = -n;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline long mod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

inline long powmod(long base, long exp, long m) {
    __int128 result = 1 % m;
    __int128 b = mod(base, m);
    while (exp > 0) {
        if (exp & 1) result = result * b % m;
        b = b * b % m;
        exp >>= 1;
    }
    return static_cast<long>(result);
}

/// Legendre symbol (a|p) for an odd prime p.
inline int legendre(long a, long p) {
    long r = mod(a, p);
    if (r == 0) return 0;
    return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

/// Sum of the divisors of m that are prime to n.
inline long sigma_coprime(long m, long n) {
    if (m < 1) fail(ErrorKind::invalid_argument, "divisor sum needs m >= 1");
    long s = 0;
    for (long d = 1; d * d <= m; ++d) {
        if (m % d != 0) continue;
        long e = m / d;
        if (std::gcd(d, n) == 1) s += d;
        if (e != d && std::gcd(e, n) == 1) s += e;
    }
    return s;
}

} // namespace brandtlab

#endif // BRANDTLAB_ARITH_HPP
