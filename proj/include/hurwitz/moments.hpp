// Moments of Hurwitz class numbers over arithmetic progressions,
//
//   H_{kappa,m,M}(n) = sum_{t = m mod M} t^kappa H(4n - t^2),
//
// together with the p-restricted variant, the G-sums built from the
// polynomials p_{2k}(t, n), the Catalan recursion, and the lambda sums
// used by the holomorphic-projection correction.
#pragma once

#include "hurwitz/arith.hpp"
#include "hurwitz/classnum.hpp"
#include "hurwitz/parallel.hpp"
#include "hurwitz/stats.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hurwitz {

struct MomentSpec {
    unsigned kappa = 0;
    std::int64_t m = 0;  // reduced to [0, M)
    std::int64_t M = 1;

    MomentSpec() = default;
    MomentSpec(unsigned kappa_, std::int64_t m_, std::int64_t M_) : kappa(kappa_), M(M_) {
        if (M_ < 1) throw std::invalid_argument("MomentSpec: modulus must be positive");
        m = mod(m_, M_);
    }

    friend bool operator==(const MomentSpec&, const MomentSpec&) = default;
};

namespace detail {

// Calls fn(t) for every t = m mod M with |t| <= T, in increasing order.
template <class Fn>
void for_progression(std::int64_t m, std::int64_t M, std::int64_t T, Fn&& fn) {
    for (std::int64_t t = -T + mod(m + T, M); t <= T; t += M) fn(t);
}

inline std::int64_t window(std::int64_t n) { return static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(4 * n))); }

// 12 * sum_{t = m mod M, |t| <= 2 sqrt(n), p not dividing t (if p > 0)} t^kappa H(4n - t^2).
inline BigInt moment12(const MomentSpec& spec, std::int64_t n, const HurwitzTable& table, std::int64_t p = 0) {
    if (n < 0) throw std::invalid_argument("moment: n must be non-negative");
    table.require(4 * n, "moment");
    BigInt total = 0;
    const std::int64_t T = window(n);
    for_progression(spec.m, spec.M, T, [&](std::int64_t t) {
        if (p > 0 && t % p == 0) return;
        const std::int64_t h = table[static_cast<std::size_t>(4 * n - t * t)];
        if (h == 0) return;
        total += ipow(t, spec.kappa) * h;
    });
    return total;
}

}  // namespace detail

inline Rational h_moment(const MomentSpec& spec, std::int64_t n, const HurwitzTable& table) {
    return make_rational(detail::moment12(spec, n, table), 12);
}

/// Same sum restricted to p not dividing t.
inline Rational script_h_moment(const MomentSpec& spec, std::int64_t p, std::int64_t n, const HurwitzTable& table) {
    if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) throw std::invalid_argument("script_h_moment: p must be prime");
    return make_rational(detail::moment12(spec, n, table, p), 12);
}

struct IdentityReport {
    Rational lhs;
    Rational rhs;
    bool holds = false;
};

/// sum_t H(4p - t^2) = 2p for a prime p.
inline IdentityReport verify_eichler(std::int64_t p, const HurwitzTable& table) {
    if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) throw std::invalid_argument("verify_eichler: p must be prime");
    IdentityReport r;
    r.lhs = h_moment(MomentSpec{0, 0, 1}, p, table);
    r.rhs = 2 * p;
    r.holds = r.lhs == r.rhs;
    return r;
}

/// sum_{t = 1 mod 5} H(4p - t^2) against (p+1)/3, (p-1)/2, 5(p+1)/12 for
/// p = 1 or 2, 3, 4 mod 5.
inline IdentityReport verify_brown_calkin(std::int64_t p, const HurwitzTable& table) {
    if (p < 2 || p == 5 || !is_prime(static_cast<std::uint64_t>(p)))
        throw std::invalid_argument("verify_brown_calkin: p must be a prime other than 5");
    IdentityReport r;
    r.lhs = h_moment(MomentSpec{0, 1, 5}, p, table);
    switch (p % 5) {
        case 1:
        case 2: r.rhs = make_rational(p + 1, 3); break;
        case 3: r.rhs = make_rational(p - 1, 2); break;
        default: r.rhs = make_rational(5 * (p + 1), 12); break;
    }
    r.holds = r.lhs == r.rhs;
    return r;
}

/// Checks script_H_{kappa,m,M}(p; n) = sum over l mod p with p not dividing m + M l of H_{kappa, m+Ml, Mp}(n).
inline IdentityReport verify_script_h_splitting(const MomentSpec& spec, std::int64_t p, std::int64_t n,
                                                const HurwitzTable& table) {
    IdentityReport r;
    r.lhs = script_h_moment(spec, p, n, table);
    r.rhs = 0;
    for (std::int64_t l = 0; l < p; ++l) {
        const std::int64_t residue = spec.m + spec.M * l;
        if (residue % p == 0) continue;
        r.rhs += h_moment(MomentSpec{spec.kappa, residue, spec.M * p}, n, table);
    }
    r.holds = r.lhs == r.rhs;
    return r;
}

/// p_{2k}(t, n) = (2k)!/k! * sum_{mu=0}^{k} (-1)^mu binom(2k-mu, mu) t^(2k-2mu) n^mu.
inline BigInt p2k_coeff(unsigned k, std::int64_t t, std::int64_t n) {
    BigInt sum = 0;
    for (unsigned mu = 0; mu <= k; ++mu) {
        BigInt term = binomial(2 * k - mu, mu) * ipow(t, 2 * (k - mu)) * ipow(n, mu);
        if (mu & 1) sum -= term;
        else sum += term;
    }
    return sum * factorial(2 * k) / factorial(k);
}

/// G_{k,m,M}(n) = sum_{t = m mod M} p_{2k}(t, n) H(4n - t^2).
inline Rational g_sum(unsigned k, std::int64_t m, std::int64_t M, std::int64_t n, const HurwitzTable& table) {
    const MomentSpec spec{0, m, M};
    table.require(4 * n, "g_sum");
    BigInt total = 0;
    detail::for_progression(spec.m, spec.M, detail::window(n), [&](std::int64_t t) {
        const std::int64_t h = table[static_cast<std::size_t>(4 * n - t * t)];
        if (h != 0) total += p2k_coeff(k, t, n) * h;
    });
    return make_rational(total, 12);
}

/// Checks H_{2k,m,M}(n) = k!/(2k)! G_{k,m,M}(n)
///   - sum_{mu=1}^{k} (-1)^mu (2k-mu)!/(mu!(2k-2mu)!) n^mu H_{2k-2mu,m,M}(n).
inline IdentityReport verify_h_from_g(unsigned k, std::int64_t m, std::int64_t M, std::int64_t n,
                                      const HurwitzTable& table) {
    IdentityReport r;
    r.lhs = h_moment(MomentSpec{2 * k, m, M}, n, table);
    Rational rhs = make_rational(factorial(k), factorial(2 * k)) * g_sum(k, m, M, n, table);
    for (unsigned mu = 1; mu <= k; ++mu) {
        const Rational c{binomial(2 * k - mu, mu) * ipow(n, mu)};
        const Rational term = c * h_moment(MomentSpec{2 * k - 2 * mu, m, M}, n, table);
        if (mu & 1) rhs += term;
        else rhs -= term;
    }
    r.rhs = rhs;
    r.holds = r.lhs == r.rhs;
    return r;
}

/// C_0, ..., C_K with C_k = binom(2k, k) / (k + 1).
inline std::vector<BigInt> catalan(unsigned K) {
    std::vector<BigInt> out;
    out.reserve(K + 1);
    for (unsigned k = 0; k <= K; ++k) {
        const BigInt b = binomial(2 * k, k);
        if (b % (k + 1) != 0) throw std::logic_error("catalan: non-integral value");
        out.push_back(b / (k + 1));
    }
    return out;
}

struct CatalanReport {
    unsigned K = 0;
    std::optional<unsigned> first_failure;
    bool holds() const { return !first_failure; }
};

/// Checks -sum_{mu=1}^{k} (-1)^mu binom(2k-mu, mu) C_{k-mu} = C_k for 1 <= k <= K.
inline CatalanReport verify_catalan_recursion(unsigned K) {
    if (K < 1) throw std::invalid_argument("verify_catalan_recursion: K must be at least 1");
    const auto C = catalan(K);
    CatalanReport r{K, std::nullopt};
    for (unsigned k = 1; k <= K; ++k) {
        BigInt lhs = 0;
        for (unsigned mu = 1; mu <= k; ++mu) {
            const BigInt term = binomial(2 * k - mu, mu) * C[k - mu];
            if (mu & 1) lhs += term;
            else lhs -= term;
        }
        if (lhs != C[k]) {
            r.first_failure = k;
            break;
        }
    }
    return r;
}

/// lambda_{l,m,M}(n): sum over both signs of the starred sum over t > s >= 0,
/// t^2 - s^2 = n, t = +-m mod M of (t - s)^l; s = 0 terms carry weight 1/2.
inline Rational lambda_coeff(unsigned ell, std::int64_t m, std::int64_t M, std::int64_t n) {
    if (n < 1) throw std::invalid_argument("lambda_coeff: n must be positive");
    if (M < 1) throw std::invalid_argument("lambda_coeff: modulus must be positive");
    Rational total = 0;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        const std::int64_t e = n / d;  // d = t - s, e = t + s
        if ((e - d) % 2 != 0) continue;
        const std::int64_t t = (d + e) / 2;
        const std::int64_t s = (e - d) / 2;
        int branches = 0;
        if (mod(t - m, M) == 0) ++branches;
        if (mod(t + m, M) == 0) ++branches;
        if (branches == 0) continue;
        total += make_rational(ipow(d, ell) * branches, BigInt{s == 0 ? 2 : 1});
    }
    return total;
}

struct MomentRow {
    std::int64_t n = 0;
    unsigned k = 0;
    std::int64_t m = 0;
    std::int64_t M = 1;
    Rational value;    // H_{2k,m,M}(n)
    Rational zeroth;   // H_{m,M}(n)
    std::optional<double> ratio;    // value / (n^k zeroth)
    std::optional<double> abs_err;  // |ratio - C_k|
};

namespace detail {

// Fast path for scans: both moments in one pass over t with 128-bit integers.
// Returns false if the 128-bit accumulator could overflow.
inline bool moment_pair128(unsigned k, std::int64_t m, std::int64_t M, std::int64_t n, const HurwitzTable& table,
                           __int128& moment12, __int128& zeroth12) {
    const std::int64_t T = window(n);
    const double bits = 2.0 * k * std::log2(static_cast<double>(T) + 1) + std::log2(12.0 * n + 12) +
                        std::log2(2.0 * T + 2);
    if (bits > 120) return false;
    moment12 = 0;
    zeroth12 = 0;
    for_progression(m, M, T, [&](std::int64_t t) {
        const __int128 h = table[static_cast<std::size_t>(4 * n - t * t)];
        if (h == 0) return;
        __int128 w = 1;
        const __int128 t2 = static_cast<__int128>(t) * t;
        for (unsigned i = 0; i < k; ++i) w *= t2;
        moment12 += w * h;
        zeroth12 += h;
    });
    return true;
}

}  // namespace detail

inline MomentRow moment_row(unsigned k, std::int64_t m, std::int64_t M, std::int64_t n, const HurwitzTable& table) {
    const MomentSpec spec{2 * k, m, M};
    table.require(4 * n, "ratio_scan");
    MomentRow row;
    row.n = n;
    row.k = k;
    row.m = spec.m;
    row.M = spec.M;
    __int128 num12 = 0, den12 = 0;
    double ratio = 0;
    if (detail::moment_pair128(k, spec.m, spec.M, n, table, num12, den12)) {
        row.value = make_rational(to_bigint(num12), 12);
        row.zeroth = make_rational(to_bigint(den12), 12);
        if (den12 != 0)
            ratio = static_cast<double>(static_cast<long double>(num12) /
                                        (std::pow(static_cast<long double>(n), k) * static_cast<long double>(den12)));
    } else {
        row.value = h_moment(spec, n, table);
        row.zeroth = h_moment(MomentSpec{0, m, M}, n, table);
        if (row.zeroth != 0) ratio = Rational{row.value / (Rational{ipow(n, k)} * row.zeroth)}.get_d();
    }
    if (row.zeroth != 0) {
        row.ratio = ratio;
        row.abs_err = std::fabs(ratio - BigInt{binomial(2 * k, k) / (k + 1)}.get_d());
    }
    return row;
}

/// Rows for n in [n_lo, n_hi]; rows with a vanishing zeroth moment carry no ratio.
inline std::vector<MomentRow> ratio_scan(unsigned k, std::int64_t m, std::int64_t M, std::int64_t n_lo,
                                         std::int64_t n_hi, const HurwitzTable& table, unsigned workers = 1) {
    if (n_lo < 1 || n_hi < n_lo) throw std::invalid_argument("ratio_scan: invalid n range");
    table.require(4 * n_hi, "ratio_scan");
    const auto count = static_cast<std::size_t>(n_hi - n_lo + 1);
    std::vector<MomentRow> rows(count);
    workers = std::max(1u, workers);
    parallel_for(workers, [&](unsigned w) {
        for (std::size_t i = w; i < count; i += workers)
            rows[i] = moment_row(k, m, M, n_lo + static_cast<std::int64_t>(i), table);
    });
    return rows;
}

struct ScanSummary {
    std::vector<BlockMedian> blocks;
    SlopeFit fit;
    std::size_t flagged = 0;  // rows without a ratio
    double top_block_median() const { return blocks.empty() ? std::nan("") : blocks.back().median; }
};

inline constexpr double default_block_start = 64;

/// Dyadic medians of |ratio - C_k| and their log-log slope.
inline ScanSummary summarize_scan(const std::vector<MomentRow>& rows, double block_start = default_block_start) {
    ScanSummary s;
    std::vector<std::pair<double, double>> samples;
    for (const auto& r : rows) {
        if (!r.abs_err) {
            ++s.flagged;
            continue;
        }
        samples.emplace_back(static_cast<double>(r.n), *r.abs_err);
    }
    s.blocks = dyadic_medians(samples, block_start);
    s.fit = fit_block_medians(s.blocks);
    return s;
}

inline void write_ratio_csv_header(std::ostream& os) {
    os << "n,k,m,M,moment_num,moment_den,zeroth_num,zeroth_den,ratio,abs_err\n";
}

inline void write_ratio_csv_row(std::ostream& os, const MomentRow& r) {
    os << r.n << ',' << r.k << ',' << r.m << ',' << r.M << ',' << r.value.get_num() << ',' << r.value.get_den()
       << ',' << r.zeroth.get_num() << ',' << r.zeroth.get_den() << ',';
    if (r.ratio) {
        os.precision(17);
        os << *r.ratio << ',' << *r.abs_err;
    } else {
        os << ',';
    }
    os << '\n';
}

}  // namespace hurwitz
