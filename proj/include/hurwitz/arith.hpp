// Exact elementary number theory shared by the rest of the library:
// Kronecker symbol, multiplicative functions, trial-division factorization,
// discriminant splitting, and the arbitrary-precision scalar types.
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace hurwitz {

using BigInt = mpz_class;
using Rational = mpq_class;  // GMP canonicalizes after every operation

/// Thrown when an input exceeds a configured size bound.
class bound_error : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

inline BigInt to_bigint(__int128 v) {
    const bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    BigInt hi{static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64))};
    BigInt lo{static_cast<unsigned long>(static_cast<std::uint64_t>(u))};
    BigInt r = (hi << 64) + lo;
    return neg ? BigInt{-r} : r;
}

inline BigInt to_bigint(std::int64_t v) { return BigInt{static_cast<long>(v)}; }

inline Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("zero denominator");
    Rational r{num, den};
    r.canonicalize();
    return r;
}

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
    return make_rational(to_bigint(num), to_bigint(den));
}

inline std::string to_string(const Rational& r) { return r.get_str(); }
inline std::string to_string(const BigInt& z) { return z.get_str(); }

/// Integer power with an arbitrary-precision result.
inline BigInt ipow(const BigInt& base, unsigned exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline BigInt ipow(std::int64_t base, unsigned exp) { return ipow(to_bigint(base), exp); }

inline BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline BigInt factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

/// Floor of the square root, exact for all non-negative 64-bit inputs.
constexpr std::uint64_t isqrt(std::uint64_t n) {
    if (n < 2) return n;
    std::uint64_t x = n;
    std::uint64_t y = x / 2 + (x & 1);  // (x + 1) / 2 without overflow
    while (y < x) {
        x = y;
        y = (x + n / x) / 2;
    }
    return x;
}

constexpr bool is_square(std::uint64_t n) {
    const auto r = isqrt(n);
    return r * r == n;
}

/// Non-negative residue of a modulo m (m > 0).
constexpr std::int64_t mod(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

constexpr std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

constexpr std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

/// Inverse of a modulo m; requires gcd(a, m) = 1.
inline std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
    if (m == 1) return 0;
    std::int64_t g = m, x = 0, x1 = 1, a1 = mod(a, m);
    while (a1) {
        const std::int64_t q = g / a1;
        std::tie(g, a1) = std::make_pair(a1, g - q * a1);
        std::tie(x, x1) = std::make_pair(x1, x - q * x1);
    }
    if (g != 1) throw std::invalid_argument("inverse_mod: not invertible");
    return mod(x, m);
}

/// Deterministic Miller-Rabin for 64-bit integers.
constexpr bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline std::vector<std::int64_t> primes_up_to(std::int64_t n) {
    std::vector<std::int64_t> out;
    if (n < 2) return out;
    std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
    for (std::int64_t i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::int64_t j = i * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

/// Kronecker symbol (D/n) on all of Z x Z.
constexpr int kronecker(std::int64_t D, std::int64_t n) {
    if (n == 0) return (D == 1 || D == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (D < 0) result = -result;
    }
    // Factor out powers of two with the mod-8 rule.
    int v = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++v;
    }
    if (v > 0) {
        if ((D & 1) == 0) return 0;
        if ((v & 1) && (mod(D, 8) == 3 || mod(D, 8) == 5)) result = -result;
    }
    // Jacobi symbol (D/n) for odd positive n.
    std::int64_t a = mod(D, n);
    std::int64_t m = n;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            if (m % 8 == 3 || m % 8 == 5) result = -result;
        }
        std::swap(a, m);
        if (a % 4 == 3 && m % 4 == 3) result = -result;
        a %= m;
    }
    return m == 1 ? result : 0;
}

struct Factorization {
    std::uint64_t value = 1;
    std::vector<std::pair<std::uint64_t, unsigned>> factors;

    friend bool operator==(const Factorization&, const Factorization&) = default;
};

inline constexpr std::uint64_t default_factor_bound = 1'000'000'000'000ULL;

/// Trial division to 10^6, then a primality check on the remaining cofactor.
inline Factorization factorize(std::uint64_t n, std::uint64_t bound = default_factor_bound) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    if (n > bound) throw bound_error("factorize: " + std::to_string(n) + " exceeds bound " + std::to_string(bound));
    Factorization f;
    f.value = n;
    std::uint64_t rest = n;
    auto take = [&](std::uint64_t p) {
        unsigned e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        if (e) f.factors.emplace_back(p, e);
    };
    take(2);
    take(3);
    for (std::uint64_t p = 5; p <= 1'000'000 && p * p <= rest; p += 6) {
        take(p);
        take(p + 2);
    }
    if (rest > 1) {
        // Any composite cofactor would have a prime factor below 10^6 for rest <= 10^12.
        if (!is_prime(rest)) throw bound_error("factorize: cofactor " + std::to_string(rest) + " not resolved");
        f.factors.emplace_back(rest, 1);
    }
    return f;
}

inline int mobius(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("mobius: n must be positive");
    int mu = 1;
    for (const auto& [p, e] : factorize(n).factors) {
        if (e > 1) return 0;
        mu = -mu;
    }
    return mu;
}

inline std::uint64_t sigma1(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("sigma1: n must be positive");
    std::uint64_t s = 1;
    for (const auto& [p, e] : factorize(n).factors) {
        std::uint64_t term = 1, pk = 1;
        for (unsigned i = 0; i < e; ++i) {
            pk *= p;
            term += pk;
        }
        s *= term;
    }
    return s;
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> ds{1};
    for (const auto& [p, e] : factorize(n).factors) {
        const std::size_t base = ds.size();
        std::uint64_t pk = 1;
        for (unsigned i = 0; i < e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) ds.push_back(ds[j] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

inline std::uint64_t squarefree_part(std::uint64_t n) {
    std::uint64_t s = 1;
    for (const auto& [p, e] : factorize(n).factors)
        if (e & 1) s *= p;
    return s;
}

constexpr bool is_discriminant(std::int64_t D) { return D < 0 && (mod(D, 4) == 0 || mod(D, 4) == 1); }

inline bool is_fundamental(std::int64_t D) {
    if (!is_discriminant(D)) return false;
    const auto a = static_cast<std::uint64_t>(-D);
    if (mod(D, 4) == 1) return squarefree_part(a) == a;
    const std::int64_t m = D / 4;
    const auto am = static_cast<std::uint64_t>(-m);
    return (mod(m, 4) == 2 || mod(m, 4) == 3) && squarefree_part(am) == am;
}

struct DiscriminantSplit {
    std::int64_t fundamental;  // Delta
    std::uint64_t conductor;   // f, with D = Delta * f^2
};

/// Writes a negative discriminant D as Delta * f^2 with Delta fundamental.
inline DiscriminantSplit fundamental_split(std::int64_t D) {
    if (!is_discriminant(D))
        throw std::invalid_argument("fundamental_split: " + std::to_string(D) + " is not a negative discriminant");
    const auto n = static_cast<std::uint64_t>(-D);
    const std::uint64_t s = squarefree_part(n);
    const std::uint64_t g = isqrt(n / s);
    const auto neg_s = -static_cast<std::int64_t>(s);
    if (mod(neg_s, 4) == 1) return {neg_s, g};
    return {4 * neg_s, g / 2};
}

}  // namespace hurwitz
