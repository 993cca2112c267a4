// Hurwitz class numbers H(n).
//
// Three routes are provided:
//   * hurwitz(n)        enumerates reduced forms of discriminant -n,
//   * hurwitz_table(N)  sieves all n <= N at once by walking (a, b, c) triples,
//   * hurwitz_cohen(n)  goes through D = Delta f^2 and the divisor-sum relation.
//
// Internally every value is carried as 12*H(n), which is always an integer.
#pragma once

#include "hurwitz/arith.hpp"
#include "hurwitz/parallel.hpp"

#include <cmath>
#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hurwitz {

/// The form a x^2 + b xy + c y^2, reduced: |b| <= a <= c and b >= 0 if |b| = a or a = c.
struct ReducedForm {
    std::int64_t a = 1, b = 0, c = 1;

    constexpr std::int64_t discriminant() const { return b * b - 4 * a * c; }

    /// 12 / omega_Q. Classes proportional to x^2+y^2 have omega = 2,
    /// those proportional to x^2+xy+y^2 have omega = 3.
    constexpr int weight12() const {
        if (b == 0 && a == c) return 6;
        if (a == b && b == c) return 4;
        return 12;
    }

    constexpr bool is_reduced() const {
        if (a < 1) return false;
        if (b > a || -b > a || a > c) return false;
        if ((b == -a || a == c) && b < 0) return false;
        return discriminant() < 0;
    }

    friend bool operator==(const ReducedForm&, const ReducedForm&) = default;
};

/// All reduced forms (primitive or not) of discriminant -n.
inline std::vector<ReducedForm> reduced_forms(std::uint64_t n) {
    std::vector<ReducedForm> out;
    if (n == 0 || n % 4 == 1 || n % 4 == 2) return out;
    const auto sn = static_cast<std::int64_t>(n);
    for (std::int64_t a = 1; 3 * a * a <= sn; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            if (mod(b - sn, 2) != 0) continue;
            const std::int64_t num = b * b + sn;
            if (num % (4 * a) != 0) continue;
            const std::int64_t c = num / (4 * a);
            if (c < a) continue;
            if (c == a && b < 0) continue;
            out.push_back({a, b, c});
        }
    }
    return out;
}

/// 12 * H(n); zero for negative n and n = 1, 2 mod 4, and -1 at n = 0.
inline std::int64_t hurwitz12(std::int64_t n) {
    if (n < 0) return 0;
    if (n == 0) return -1;
    if (n % 4 == 1 || n % 4 == 2) return 0;
    std::int64_t total = 0;
    for (const auto& f : reduced_forms(static_cast<std::uint64_t>(n))) total += f.weight12();
    return total;
}

inline Rational hurwitz(std::int64_t n) { return make_rational(hurwitz12(n), 12); }

inline constexpr std::uint64_t default_table_bound = 4'000'000;

/// Dense table of 12*H(n) for 0 <= n <= limit.
class HurwitzTable {
public:
    HurwitzTable() = default;
    explicit HurwitzTable(std::vector<std::int32_t> twelve_h) : data_(std::move(twelve_h)) {}

    std::uint64_t limit() const { return data_.empty() ? 0 : data_.size() - 1; }

    bool covers(std::int64_t n) const { return n <= static_cast<std::int64_t>(limit()); }

    /// 12*H(n) with the zero convention outside [0, limit] on the negative side.
    std::int64_t twelve_h(std::int64_t n) const {
        if (n < 0) return 0;
        if (!covers(n))
            throw bound_error("HurwitzTable: n = " + std::to_string(n) + " beyond table limit " +
                              std::to_string(limit()));
        return data_[static_cast<std::size_t>(n)];
    }

    Rational value(std::int64_t n) const { return make_rational(twelve_h(n), 12); }

    /// Unchecked access for hot loops; 0 <= n <= limit().
    std::int32_t operator[](std::size_t n) const { return data_[n]; }

    std::span<const std::int32_t> raw() const { return data_; }

    /// Throws unless the table reaches n, naming the required bound.
    void require(std::int64_t n, const char* who) const {
        if (!covers(n))
            throw bound_error(std::string(who) + ": table limit " + std::to_string(limit()) +
                              " too small, need at least " + std::to_string(n));
    }

private:
    std::vector<std::int32_t> data_;
};

namespace detail {

// Adds the weighted contribution of every reduced (a, b, c) with the given a.
inline void sieve_row(std::int64_t a, std::int64_t N, std::vector<std::int32_t>& acc) {
    const std::int64_t step = 4 * a;
    for (std::int64_t b = -a + 1; b <= a; ++b) {
        const std::int64_t c0 = (b < 0) ? a + 1 : a;
        std::int64_t n = step * c0 - b * b;
        if (n > N) continue;
        std::int64_t c = c0;
        if (c == a) {
            // a == c needs the reduced-weight rule; handle the first term separately.
            const ReducedForm f{a, b, c};
            acc[static_cast<std::size_t>(n)] += f.weight12();
            n += step;
            ++c;
        }
        std::int32_t* out = acc.data();
        for (; n <= N; n += step) out[n] += 12;
    }
}

}  // namespace detail

/// Sieve of 12*H(n) for 0 <= n <= N. Rows of a are dealt round-robin to the
/// workers; each worker has a private accumulator, summed at the end.
inline HurwitzTable hurwitz_table(std::uint64_t N, unsigned workers = 1,
                                  std::uint64_t memory_bound = default_table_bound) {
    if (N < 1) throw std::invalid_argument("hurwitz_table: N must be positive");
    if (N > memory_bound)
        throw bound_error("hurwitz_table: N = " + std::to_string(N) + " exceeds memory bound " +
                          std::to_string(memory_bound));
    const auto sN = static_cast<std::int64_t>(N);
    std::int64_t amax = 1;
    while (3 * (amax + 1) * (amax + 1) <= sN) ++amax;
    workers = std::max(1u, workers);

    std::vector<std::vector<std::int32_t>> partial(workers, std::vector<std::int32_t>(N + 1, 0));
    parallel_for(workers, [&](unsigned w) {
        for (std::int64_t a = 1 + w; a <= amax; a += workers) detail::sieve_row(a, sN, partial[w]);
    });
    std::vector<std::int32_t> values = std::move(partial[0]);
    for (unsigned w = 1; w < workers; ++w)
        for (std::size_t i = 0; i <= N; ++i) values[i] += partial[w][i];
    values[0] = -1;
    return HurwitzTable{std::move(values)};
}

/// CSV `n,twelve_h`, rows for n = 0, 3 mod 4 only.
inline void write_table_csv(std::ostream& os, const HurwitzTable& table) {
    os << "n,twelve_h\n";
    for (std::uint64_t n = 0; n <= table.limit(); ++n) {
        if (n % 4 == 1 || n % 4 == 2) continue;
        os << n << ',' << table[n] << '\n';
    }
}

/// H(n) through D = Delta f^2 and
///   H(|Delta| f^2) = H(|Delta|) * sum_{d | f} mu(d) (Delta/d) sigma(f/d).
inline Rational hurwitz_cohen(std::int64_t n) {
    if (n <= 0 || n % 4 == 1 || n % 4 == 2)
        throw std::invalid_argument("hurwitz_cohen: n = " + std::to_string(n) + " is not 0 or 3 mod 4");
    const auto [delta, f] = fundamental_split(-n);
    std::int64_t sum = 0;
    for (const auto d : divisors(f))
        sum += mobius(d) * kronecker(delta, static_cast<std::int64_t>(d)) * static_cast<std::int64_t>(sigma1(f / d));
    return make_rational(hurwitz12(-delta) * sum, 12);
}

struct P2LemmaReport {
    std::int64_t D = 0;
    std::int64_t p = 0;
    unsigned alpha = 0;
    std::int64_t D_p = 0;  // D / p^(2 alpha)
    Rational lhs;          // H(|D| p^2)
    Rational rhs;          // p H(|D|) + (1 - (D_p/p)) H(|D_p|)
    bool holds = false;
};

/// Checks H(|D| p^2) = p H(|D|) + (1 - (D_p/p)) H(|D_p|) for an odd prime p.
inline P2LemmaReport verify_p2_lemma(std::int64_t D, std::int64_t p) {
    if (!is_discriminant(D)) throw std::invalid_argument("verify_p2_lemma: D must be a negative discriminant");
    if (p < 3 || !is_prime(static_cast<std::uint64_t>(p)))
        throw std::invalid_argument("verify_p2_lemma: p must be an odd prime");
    P2LemmaReport r;
    r.D = D;
    r.p = p;
    unsigned ord = 0;
    for (std::int64_t x = D; x % p == 0; x /= p) ++ord;
    r.alpha = ord / 2;
    r.D_p = D;
    for (unsigned i = 0; i < 2 * r.alpha; ++i) r.D_p /= p;
    r.lhs = hurwitz(-D * p * p);
    r.rhs = Rational{p} * hurwitz(-D) + Rational{1 - kronecker(r.D_p, p)} * hurwitz(-r.D_p);
    r.holds = r.lhs == r.rhs;
    return r;
}

struct EnvelopeViolation {
    std::int64_t n;
    double normalized;  // H(n) / sqrt(n)
};

/// Growth sanity check 0.1 <= H(n)/sqrt(n) <= 10 log n on n = 0, 3 mod 4 in [lo, hi].
inline std::vector<EnvelopeViolation> siegel_envelope(const HurwitzTable& table, std::int64_t lo, std::int64_t hi) {
    table.require(hi, "siegel_envelope");
    std::vector<EnvelopeViolation> out;
    for (std::int64_t n = lo; n <= hi; ++n) {
        if (n % 4 == 1 || n % 4 == 2) continue;
        const double x = table[static_cast<std::size_t>(n)] / 12.0 / std::sqrt(static_cast<double>(n));
        if (x < 0.1 || x > 10.0 * std::log(static_cast<double>(n))) out.push_back({n, x});
    }
    return out;
}

}  // namespace hurwitz
