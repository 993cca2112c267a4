// Elliptic curves y^2 = x^3 + a x + b over F_q, q = p^r with p > 3.
//
// The census counts nonsingular coefficient pairs by trace of Frobenius;
// dividing by q - 1 gives the automorphism-weighted class count N_A(q; t),
// since each isomorphism class {(u^4 a, u^6 b)} contains (q-1)/#Aut pairs.
// The formula route expresses the same moments through class numbers.
#pragma once

#include "hurwitz/arith.hpp"
#include "hurwitz/classnum.hpp"
#include "hurwitz/moments.hpp"
#include "hurwitz/parallel.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hurwitz {

inline constexpr std::uint64_t default_field_bound = 300'000;
inline constexpr std::uint64_t default_census_bound = 2'500;

namespace poly {

// Dense polynomials over F_p, coefficients low to high, no trailing zeros
// (the zero polynomial is the empty vector).
using Poly = std::vector<std::int64_t>;

inline void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline Poly mod(Poly a, const Poly& f, std::int64_t p) {
    trim(a);
    const std::size_t df = f.size() - 1;
    const std::int64_t lead_inv = inverse_mod(f.back(), p);
    while (a.size() >= f.size()) {
        const std::int64_t c = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - f.size();
        for (std::size_t i = 0; i <= df; ++i) a[shift + i] = hurwitz::mod(a[shift + i] - c * f[i], p);
        trim(a);
    }
    return a;
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& f, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    return mod(std::move(c), f, p);
}

inline Poly powmod(Poly base, std::uint64_t e, const Poly& f, std::int64_t p) {
    Poly r = mod(Poly{1}, f, p);
    base = mod(std::move(base), f, p);
    while (e) {
        if (e & 1) r = mulmod(r, base, f, p);
        base = mulmod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

inline Poly sub(Poly a, const Poly& b, std::int64_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = hurwitz::mod(a[i] - b[i], p);
    trim(a);
    return a;
}

inline Poly gcd(Poly a, Poly b, std::int64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// Rabin's test: f of degree r is irreducible iff x^(p^r) = x mod f and
/// gcd(x^(p^(r/l)) - x, f) = 1 for every prime l dividing r.
inline bool is_irreducible(const Poly& f, std::int64_t p) {
    const std::size_t r = f.size() - 1;
    if (r == 0) return false;
    if (r == 1) return true;
    const Poly x{0, 1};
    auto frobenius_power = [&](std::size_t i) {
        Poly y = x;
        for (std::size_t j = 0; j < i; ++j) y = powmod(y, static_cast<std::uint64_t>(p), f, p);
        return y;
    };
    if (sub(frobenius_power(r), x, p) != Poly{}) return false;
    for (const auto& [l, e] : factorize(r).factors) {
        const Poly g = gcd(f, sub(frobenius_power(r / l), x, p), p);
        if (g.size() != 1) return false;
    }
    return true;
}

}  // namespace poly

/// F_{p^r} as F_p[x]/(f) with f the lexicographically first monic irreducible
/// of degree r. Elements are indices sum c_i p^i of their coefficient vectors.
class FiniteField {
public:
    using Elem = std::uint32_t;

    FiniteField(std::int64_t p, unsigned r, std::uint64_t bound = default_field_bound) : p_(p), r_(r) {
        if (p <= 3 || !is_prime(static_cast<std::uint64_t>(p)))
            throw std::invalid_argument("FiniteField: p must be a prime greater than 3");
        if (r < 1) throw std::invalid_argument("FiniteField: degree must be positive");
        q_ = 1;
        for (unsigned i = 0; i < r; ++i) {
            q_ *= static_cast<std::uint64_t>(p);
            if (q_ > bound)
                throw bound_error("FiniteField: " + std::to_string(p) + "^" + std::to_string(r) + " exceeds bound " +
                                  std::to_string(bound));
        }
        find_modulus();
        build_tables();
    }

    std::int64_t p() const { return p_; }
    unsigned r() const { return r_; }
    std::uint64_t q() const { return q_; }
    const poly::Poly& modulus() const { return modulus_; }
    Elem generator() const { return generator_; }

    Elem from_int(std::int64_t v) const { return static_cast<Elem>(hurwitz::mod(v, p_)); }

    Elem add(Elem a, Elem b) const {
        if (r_ == 1) {
            const Elem s = a + b;
            return s >= p_ ? s - static_cast<Elem>(p_) : s;
        }
        Elem out = 0, place = 1;
        for (unsigned i = 0; i < r_; ++i) {
            Elem s = a % p_ + b % p_;
            if (s >= p_) s -= static_cast<Elem>(p_);
            out += s * place;
            place *= static_cast<Elem>(p_);
            a /= static_cast<Elem>(p_);
            b /= static_cast<Elem>(p_);
        }
        return out;
    }

    Elem neg(Elem a) const {
        Elem out = 0, place = 1;
        for (unsigned i = 0; i < r_; ++i) {
            const Elem d = a % p_;
            out += (d == 0 ? 0 : static_cast<Elem>(p_) - d) * place;
            place *= static_cast<Elem>(p_);
            a /= static_cast<Elem>(p_);
        }
        return out;
    }

    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }

    Elem inv(Elem a) const {
        if (a == 0) throw std::domain_error("FiniteField: inverse of zero");
        return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    }

    Elem pow(Elem a, std::uint64_t e) const {
        Elem r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    /// Quadratic character: 0 at 0, otherwise u^((q-1)/2) read as +-1.
    int chi(Elem u) const { return chi_[u]; }

    std::vector<std::int64_t> coefficients(Elem a) const {
        std::vector<std::int64_t> c(r_);
        for (unsigned i = 0; i < r_; ++i) {
            c[i] = a % p_;
            a /= static_cast<Elem>(p_);
        }
        return c;
    }

    Elem from_coefficients(const poly::Poly& c) const {
        Elem out = 0, place = 1;
        for (unsigned i = 0; i < r_; ++i) {
            out += static_cast<Elem>(i < c.size() ? hurwitz::mod(c[i], p_) : 0) * place;
            place *= static_cast<Elem>(p_);
        }
        return out;
    }

private:
    void find_modulus() {
        for (std::uint64_t code = 0; code < q_; ++code) {
            poly::Poly f(r_ + 1, 0);
            std::uint64_t c = code;
            for (unsigned i = 0; i < r_; ++i) {
                f[i] = static_cast<std::int64_t>(c % static_cast<std::uint64_t>(p_));
                c /= static_cast<std::uint64_t>(p_);
            }
            f[r_] = 1;
            if (poly::is_irreducible(f, p_)) {
                modulus_ = std::move(f);
                return;
            }
        }
        throw std::logic_error("FiniteField: no irreducible polynomial found");
    }

    poly::Poly as_poly(Elem a) const {
        poly::Poly c = coefficients(a);
        poly::trim(c);
        return c;
    }

    void build_tables() {
        const std::uint64_t order = q_ - 1;
        const auto primes_of_order = factorize(order).factors;
        for (Elem g = 1; g < q_; ++g) {
            const poly::Poly gp = as_poly(g);
            bool primitive = true;
            for (const auto& [l, e] : primes_of_order) {
                if (poly::powmod(gp, order / l, modulus_, p_) == poly::Poly{1}) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) {
                generator_ = g;
                break;
            }
        }
        exp_.assign(2 * order, 0);
        log_.assign(q_, 0);
        poly::Poly cur{1};
        const poly::Poly gp = as_poly(generator_);
        for (std::uint64_t i = 0; i < order; ++i) {
            const Elem e = from_coefficients(cur);
            exp_[i] = exp_[i + order] = e;
            log_[e] = static_cast<Elem>(i);
            cur = poly::mulmod(cur, gp, modulus_, p_);
        }
        chi_.assign(q_, 0);
        const Elem minus_one = from_int(-1);
        for (Elem u = 1; u < q_; ++u) chi_[u] = pow(u, order / 2) == 1 ? 1 : (pow(u, order / 2) == minus_one ? -1 : 0);
    }

    std::int64_t p_;
    unsigned r_;
    std::uint64_t q_ = 1;
    poly::Poly modulus_;
    Elem generator_ = 1;
    std::vector<Elem> exp_, log_;
    std::vector<std::int8_t> chi_;
};

inline FiniteField build_field(std::int64_t p, unsigned r, std::uint64_t bound = default_field_bound) {
    return FiniteField(p, r, bound);
}

inline bool is_singular(const FiniteField& F, FiniteField::Elem a, FiniteField::Elem b) {
    const auto a3 = F.mul(a, F.mul(a, a));
    const auto b2 = F.mul(b, b);
    return F.add(F.mul(F.from_int(4), a3), F.mul(F.from_int(27), b2)) == 0;
}

/// t = q + 1 - #E = -sum_x chi(x^3 + a x + b).
inline std::int64_t curve_trace(const FiniteField& F, FiniteField::Elem a, FiniteField::Elem b) {
    if (a >= F.q() || b >= F.q()) throw std::invalid_argument("curve_trace: coefficient outside the field");
    if (is_singular(F, a, b)) throw std::invalid_argument("curve_trace: singular curve (4a^3 + 27b^2 = 0)");
    std::int64_t s = 0;
    for (FiniteField::Elem x = 0; x < F.q(); ++x)
        s += F.chi(F.add(F.add(F.mul(x, F.mul(x, x)), F.mul(a, x)), b));
    return -s;
}

struct CurveCensus {
    std::int64_t p = 0;
    unsigned r = 0;
    std::uint64_t q = 0;
    std::map<std::int64_t, std::uint64_t> pair_counts;  // t -> #{(a, b) with trace t}
    std::map<std::int64_t, Rational> counts;            // t -> N_A(q; t)

    Rational na(std::int64_t t) const {
        const auto it = counts.find(t);
        return it == counts.end() ? Rational{0} : it->second;
    }
    Rational mass() const {
        Rational s = 0;
        for (const auto& [t, c] : counts) s += c;
        return s;
    }
};

/// Exhaustive scan over all nonsingular (a, b). Workers take a-values
/// round-robin and keep private trace histograms that are summed at the end.
inline CurveCensus census(const FiniteField& F, unsigned workers = 1, std::uint64_t bound = default_census_bound) {
    const std::uint64_t q = F.q();
    if (q > bound)
        throw bound_error("census: q = " + std::to_string(q) + " exceeds census bound " + std::to_string(bound) +
                          "; use the class-number formula route for larger fields");
    const auto T = static_cast<std::int64_t>(isqrt(4 * q));
    const std::size_t width = static_cast<std::size_t>(2 * T + 1);

    // shifted[b * q + w] = chi(w + b)
    std::vector<std::int8_t> shifted(q * q);
    for (FiniteField::Elem b = 0; b < q; ++b)
        for (FiniteField::Elem w = 0; w < q; ++w) shifted[b * q + w] = static_cast<std::int8_t>(F.chi(F.add(w, b)));
    std::vector<FiniteField::Elem> cube(q);
    for (FiniteField::Elem x = 0; x < q; ++x) cube[x] = F.mul(x, F.mul(x, x));

    workers = std::max(1u, workers);
    std::vector<std::vector<std::uint64_t>> hist(workers, std::vector<std::uint64_t>(width, 0));
    parallel_for(workers, [&](unsigned w) {
        std::vector<std::int8_t> mult(q);  // #{x : x^3 + a x = v}
        for (FiniteField::Elem a = w; a < q; a += workers) {
            std::fill(mult.begin(), mult.end(), 0);
            for (FiniteField::Elem x = 0; x < q; ++x) ++mult[F.add(cube[x], F.mul(a, x))];
            for (FiniteField::Elem b = 0; b < q; ++b) {
                if (is_singular(F, a, b)) continue;
                const std::int8_t* row = &shifted[b * q];
                std::int32_t s = 0;
                for (std::size_t v = 0; v < q; ++v) s += mult[v] * row[v];
                const std::int64_t t = -s;
                if (t < -T || t > T) throw std::logic_error("census: Hasse bound violated");
                ++hist[w][static_cast<std::size_t>(t + T)];
            }
        }
    });

    CurveCensus c;
    c.p = F.p();
    c.r = F.r();
    c.q = q;
    for (std::size_t i = 0; i < width; ++i) {
        std::uint64_t total = 0;
        for (unsigned w = 0; w < workers; ++w) total += hist[w][i];
        if (total == 0) continue;
        const std::int64_t t = static_cast<std::int64_t>(i) - T;
        c.pair_counts[t] = total;
        c.counts[t] = make_rational(static_cast<std::int64_t>(total), static_cast<std::int64_t>(q - 1));
    }
    return c;
}

/// CSV `q,t,pair_count,na_num,na_den`.
inline void write_census_csv(std::ostream& os, const CurveCensus& c) {
    os << "q,t,pair_count,na_num,na_den\n";
    for (const auto& [t, n] : c.pair_counts) {
        const Rational& na = c.counts.at(t);
        os << c.q << ',' << t << ',' << n << ',' << na.get_num() << ',' << na.get_den() << '\n';
    }
}

/// S_{kappa,m,M}(q) = sum_{t = m mod M} t^kappa N_A(q; t) from a census.
inline Rational s_moment_census(const CurveCensus& c, unsigned kappa, std::int64_t m, std::int64_t M) {
    if (M < 1) throw std::invalid_argument("s_moment_census: modulus must be positive");
    Rational s = 0;
    for (const auto& [t, na] : c.counts)
        if (mod(t - m, M) == 0) s += Rational{ipow(t, kappa)} * na;
    return s;
}

inline std::int64_t prime_power(std::int64_t p, unsigned r) {
    std::int64_t q = 1;
    for (unsigned i = 0; i < r; ++i) q *= p;
    return q;
}

/// Boundary correction E_{kappa,m,M}(p^r) in 2 S = script_H + E.
struct ETerm {
    unsigned kappa = 0;
    std::int64_t m = 0, M = 1, p = 0;
    unsigned r = 0;
    Rational value;
    int rho = 0;          // #{t = +-2 p^(r/2) : t = m mod M}
    int sigma_count = 0;  // #{t = +-p^(r/2) : t = m mod M}
    int sqrt_q_signed = 0;      // sum of sgn(t)^kappa over t^2 = p^r, t = m mod M
    int two_sqrt_q_signed = 0;  // sum of sgn(t)^kappa over t^2 = 4 p^r, t = m mod M
};

namespace detail {

// (count, signed sum of sgn(t)^kappa) over t = +-root with t = m mod M.
inline std::pair<int, int> boundary_count(std::int64_t root, unsigned kappa, std::int64_t m, std::int64_t M) {
    int count = 0, signed_sum = 0;
    for (const std::int64_t t : {root, -root}) {
        if (mod(t - m, M) != 0) continue;
        ++count;
        signed_sum += (t < 0 && (kappa & 1)) ? -1 : 1;
    }
    return {count, signed_sum};
}

}  // namespace detail

inline ETerm e_term(unsigned kappa, std::int64_t m, std::int64_t M, std::int64_t p, unsigned r,
                    const HurwitzTable& table) {
    if (p <= 3 || !is_prime(static_cast<std::uint64_t>(p))) throw std::invalid_argument("e_term: p must be a prime > 3");
    if (M < 1 || r < 1) throw std::invalid_argument("e_term: need M >= 1 and r >= 1");
    ETerm e;
    e.kappa = kappa;
    e.m = mod(m, M);
    e.M = M;
    e.p = p;
    e.r = r;
    const bool zero_in_class = e.m == 0;
    Rational v = 0;
    if (zero_in_class && kappa == 0) {
        if (r % 2 == 1) {
            table.require(4 * p, "e_term");
            v += table.value(4 * p);
        } else {
            v += make_rational(1 - kronecker(-1, p), 2);
        }
    }
    if (r % 2 == 0) {
        const std::int64_t half = prime_power(p, r / 2);
        std::tie(e.sigma_count, e.sqrt_q_signed) = detail::boundary_count(half, kappa, m, M);
        std::tie(e.rho, e.two_sqrt_q_signed) = detail::boundary_count(2 * half, kappa, m, M);
        const BigInt pk = ipow(half, kappa);  // p^(r kappa / 2)
        v += make_rational(BigInt{(1 - kronecker(-3, p)) * pk * e.sqrt_q_signed}, BigInt{3});
        // (1/3)(p-1) 2^(kappa-2) p^(r kappa/2)
        v += make_rational(BigInt{(p - 1) * ipow(2, kappa) * pk * e.two_sqrt_q_signed}, BigInt{12});
    }
    e.value = v;
    return e;
}

/// S_{kappa,m,M}(p^r) = (script_H_{kappa,m,M}(p^r) + E_{kappa,m,M}(p^r)) / 2.
inline Rational s_moment_formula(unsigned kappa, std::int64_t m, std::int64_t M, std::int64_t p, unsigned r,
                                 const HurwitzTable& table) {
    const std::int64_t q = prime_power(p, r);
    const Rational scr = script_h_moment(MomentSpec{kappa, m, M}, p, q, table);
    return (scr + e_term(kappa, m, M, p, r, table).value) / 2;
}

/// 2 N_A(p^r; t) from the case table in terms of class numbers.
inline Rational kaplan_petrow_value(std::int64_t p, unsigned r, std::int64_t t, const HurwitzTable& table) {
    const std::int64_t q = prime_power(p, r);
    const std::int64_t t2 = t * t;
    if (t2 < 4 * q && t % p != 0) return table.value(4 * q - t2);
    if (t == 0) return r % 2 == 1 ? table.value(4 * p) : make_rational(1 - kronecker(-1, p), 2);
    if (t2 == q) return make_rational(1 - kronecker(-3, p), 3);
    if (t2 == 4 * q) return make_rational(p - 1, 12);
    return 0;
}

struct TraceWitness {
    std::int64_t t = 0;
    Rational census_value;  // 2 N_A from the census
    Rational table_value;   // 2 N_A from the case table
    bool matches = false;
};

/// Per-t comparison of the census against the case table for |t| <= 2 sqrt(q).
inline std::vector<TraceWitness> verify_kaplan_petrow(const CurveCensus& c, const HurwitzTable& table) {
    table.require(static_cast<std::int64_t>(4 * c.q), "verify_kaplan_petrow");
    std::vector<TraceWitness> out;
    const auto T = static_cast<std::int64_t>(isqrt(4 * c.q));
    for (std::int64_t t = -T; t <= T; ++t) {
        TraceWitness w;
        w.t = t;
        w.census_value = 2 * c.na(t);
        w.table_value = kaplan_petrow_value(c.p, c.r, t, table);
        w.matches = w.census_value == w.table_value;
        out.push_back(std::move(w));
    }
    return out;
}

struct HpHrelReport {
    int branch = 0;  // 1 or 2
    Rational lhs;    // script_H_{2k,m,M}(p^r)
    Rational rhs;
    bool holds = false;
};

/// Expresses script_H_{2k,m,M}(p^r) through H_{2k,*,M} at p^r and p^(r-2).
inline HpHrelReport verify_hp_hrel(unsigned k, std::int64_t m, std::int64_t M, std::int64_t p, unsigned r,
                                   const HurwitzTable& table) {
    if (p <= 3 || !is_prime(static_cast<std::uint64_t>(p)))
        throw std::invalid_argument("verify_hp_hrel: p must be a prime > 3");
    if (M < 1 || r < 1) throw std::invalid_argument("verify_hp_hrel: need M >= 1 and r >= 1");
    const std::int64_t mm = mod(m, M);
    const bool p_divides_M = M % p == 0;
    const bool p_divides_m = mm % p == 0;
    const bool zero_term = mm == 0 && k == 0;
    const std::int64_t q = prime_power(p, r);
    const MomentSpec spec{2 * k, mm, M};
    HpHrelReport rep;
    rep.lhs = script_h_moment(spec, p, q, table);
    Rational rhs = h_moment(spec, q, table);
    if (r <= 1 || (p_divides_M && !p_divides_m)) {
        rep.branch = 1;
        if (zero_term) rhs -= table.value(4 * p);
    } else if (!p_divides_M && r >= 2) {
        rep.branch = 2;
        const std::int64_t m_pbar = mod(mm * inverse_mod(p, M), M);
        rhs -= Rational{ipow(p, 2 * k + 1)} * h_moment(MomentSpec{2 * k, m_pbar, M}, q / (p * p), table);
        if (zero_term) {
            if (r % 2 == 0) rhs -= make_rational(1 - kronecker(-1, p), 2);
            else rhs -= table.value(4 * p);
        }
        if (r % 2 == 0) {
            const std::int64_t half = prime_power(p, r / 2);
            const int rho = detail::boundary_count(2 * half, 0, mm, M).first;    // t = +-2 p^(r/2)
            const int sigma = detail::boundary_count(half, 0, mm, M).first;      // t = +-p^(r/2)
            // 4^k/12 p^(rk+1) (1 - 1/p) = 4^k/12 p^(rk) (p - 1)
            rhs -= make_rational(ipow(4, k) * ipow(p, r * k) * (p - 1) * rho, BigInt{12});
            rhs -= make_rational(BigInt{(1 - kronecker(-3, p)) * ipow(p, r * k) * sigma}, BigInt{3});
        }
    } else {
        throw std::invalid_argument("verify_hp_hrel: neither branch applies (p | M and p | m with r >= 2)");
    }
    rep.rhs = rhs;
    rep.holds = rep.lhs == rep.rhs;
    return rep;
}

struct Theorem2Row {
    std::int64_t p = 0;
    unsigned r = 0;
    unsigned k = 0;
    std::int64_t m = 0, M = 1;
    Rational moment;  // S_{2k,m,M}(p^r)
    Rational zeroth;  // S_{m,M}(p^r)
    std::optional<double> ratio;    // moment / (p^(rk) zeroth)
    std::optional<double> abs_err;  // |ratio - C_k|
    bool gcd_warning = false;       // p | gcd(m, M)
};

/// S_{2k,m,M}(p^r) / (p^(rk) S_{m,M}(p^r)) through the class-number formula.
inline Theorem2Row ratio_theorem2(unsigned k, std::int64_t m, std::int64_t M, std::int64_t p, unsigned r,
                                  const HurwitzTable& table) {
    Theorem2Row row;
    row.p = p;
    row.r = r;
    row.k = k;
    row.m = mod(m, M);
    row.M = M;
    row.gcd_warning = std::gcd(row.m, M) % p == 0;
    row.moment = s_moment_formula(2 * k, m, M, p, r, table);
    row.zeroth = s_moment_formula(0, m, M, p, r, table);
    if (row.zeroth != 0) {
        const Rational ratio = row.moment / (Rational{ipow(prime_power(p, r), k)} * row.zeroth);
        row.ratio = ratio.get_d();
        row.abs_err = std::fabs(*row.ratio - BigInt{binomial(2 * k, k) / (k + 1)}.get_d());
    }
    return row;
}

/// Row in the ratio CSV shape plus a route column (census or formula).
inline void write_theorem2_csv_header(std::ostream& os) {
    os << "n,k,m,M,moment_num,moment_den,zeroth_num,zeroth_den,ratio,abs_err,route\n";
}

inline void write_theorem2_csv_row(std::ostream& os, const Theorem2Row& r, const std::string& route = "formula") {
    os << prime_power(r.p, r.r) << ',' << r.k << ',' << r.m << ',' << r.M << ',' << r.moment.get_num() << ','
       << r.moment.get_den() << ',' << r.zeroth.get_num() << ',' << r.zeroth.get_den() << ',';
    if (r.ratio) {
        os.precision(17);
        os << *r.ratio << ',' << *r.abs_err;
    } else {
        os << ',';
    }
    os << ',' << route << '\n';
}

}  // namespace hurwitz
