// Truncated q-expansions with exact rational coefficients.
//
// A QSeries of precision N stores c(0..N). Binary operations truncate to the
// smaller precision. The weight is informational metadata only.
#pragma once

#include "hurwitz/arith.hpp"
#include "hurwitz/classnum.hpp"
#include "hurwitz/stats.hpp"

#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hurwitz {

inline constexpr std::size_t default_precision_cap = 100'000;

class QSeries {
public:
    QSeries() : coeffs_(1) {}

    explicit QSeries(std::vector<Rational> coeffs, Rational weight = 0, std::string label = {})
        : coeffs_(std::move(coeffs)), weight_(std::move(weight)), label_(std::move(label)) {
        if (coeffs_.empty()) throw std::invalid_argument("QSeries: at least one coefficient required");
    }

    static QSeries zero(std::size_t precision, Rational weight = 0, std::string label = {}) {
        return QSeries(std::vector<Rational>(precision + 1), std::move(weight), std::move(label));
    }

    std::size_t precision() const { return coeffs_.size() - 1; }
    const Rational& operator[](std::size_t n) const { return coeffs_[n]; }
    Rational& operator[](std::size_t n) { return coeffs_[n]; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    const Rational& weight() const { return weight_; }
    const std::string& label() const { return label_; }
    QSeries& set_weight(Rational w) {
        weight_ = std::move(w);
        return *this;
    }
    QSeries& set_label(std::string l) {
        label_ = std::move(l);
        return *this;
    }

    QSeries truncated(std::size_t precision) const {
        if (precision >= this->precision()) return *this;
        return QSeries({coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(precision) + 1}, weight_,
                       label_);
    }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (c != 0) return false;
        return true;
    }

    QSeries& operator+=(const QSeries& o) {
        coeffs_.resize(std::min(coeffs_.size(), o.coeffs_.size()));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        return *this;
    }
    QSeries& operator-=(const QSeries& o) {
        coeffs_.resize(std::min(coeffs_.size(), o.coeffs_.size()));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        return *this;
    }
    QSeries& operator*=(const Rational& s) {
        for (auto& c : coeffs_) c *= s;
        return *this;
    }

    friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
    friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
    friend QSeries operator*(QSeries a, const Rational& s) { return a *= s; }
    friend QSeries operator*(const Rational& s, QSeries a) { return a *= s; }

    /// Cauchy product truncated to the smaller precision; weights add.
    friend QSeries operator*(const QSeries& a, const QSeries& b) {
        const std::size_t N = std::min(a.precision(), b.precision());
        std::vector<std::size_t> nz_a, nz_b;
        for (std::size_t i = 0; i <= N; ++i) {
            if (a[i] != 0) nz_a.push_back(i);
            if (b[i] != 0) nz_b.push_back(i);
        }
        std::vector<Rational> out(N + 1);
        Rational tmp;
        for (const auto i : nz_a)
            for (const auto j : nz_b) {
                if (i + j > N) break;
                tmp = a[i] * b[j];
                out[i + j] += tmp;
            }
        return QSeries(std::move(out), a.weight_ + b.weight_);
    }

    friend bool operator==(const QSeries& a, const QSeries& b) { return a.coeffs_ == b.coeffs_; }

private:
    std::vector<Rational> coeffs_;
    Rational weight_;
    std::string label_;
};

/// sum_n H(n) q^n, weight 3/2.
inline QSeries hurwitz_gf(std::size_t N, const HurwitzTable& table) {
    table.require(static_cast<std::int64_t>(N), "hurwitz_gf");
    std::vector<Rational> c(N + 1);
    for (std::size_t n = 0; n <= N; ++n) c[n] = make_rational(table[n], 12);
    return QSeries(std::move(c), Rational{3, 2}, "H");
}

/// theta_{kappa,m,M} = sum_{n = m mod M} n^kappa q^(n^2), n over all integers.
inline QSeries theta_series(unsigned kappa, std::int64_t m, std::int64_t M, std::size_t N) {
    if (M < 1) throw std::invalid_argument("theta_series: modulus must be positive");
    if (N < 1) throw std::invalid_argument("theta_series: precision must be positive");
    std::vector<Rational> c(N + 1);
    const auto T = static_cast<std::int64_t>(isqrt(N));
    for (std::int64_t n = -T; n <= T; ++n) {
        if (mod(n - m, M) != 0) continue;
        c[static_cast<std::size_t>(n * n)] += Rational{ipow(n, kappa)};
    }
    Rational w{2 * static_cast<long>(kappa) + 1, 2};
    w.canonicalize();
    return QSeries(std::move(c), w, "theta");
}

/// c'(n) = c(delta n), precision floor(N / delta).
inline QSeries u_operator(const QSeries& F, std::size_t delta) {
    if (delta < 1) throw std::invalid_argument("u_operator: delta must be positive");
    const std::size_t N = F.precision() / delta;
    std::vector<Rational> c(N + 1);
    for (std::size_t n = 0; n <= N; ++n) c[n] = F[delta * n];
    return QSeries(std::move(c), F.weight(), F.label());
}

/// c'(delta n) = c(n), zero elsewhere; precision delta N, capped.
inline QSeries v_operator(const QSeries& F, std::size_t delta, std::size_t cap = default_precision_cap) {
    if (delta < 1) throw std::invalid_argument("v_operator: delta must be positive");
    const std::size_t N = std::min(F.precision() * delta, std::max(cap, F.precision()));
    std::vector<Rational> c(N + 1);
    for (std::size_t n = 0; n * delta <= N; ++n) c[n * delta] = F[n];
    return QSeries(std::move(c), F.weight(), F.label());
}

/// (q d/dq)^j, i.e. c(n) -> n^j c(n).
inline QSeries derivative(const QSeries& F, unsigned j) {
    std::vector<Rational> c(F.coeffs());
    for (std::size_t n = 0; n < c.size(); ++n)
        if (c[n] != 0) c[n] *= Rational{ipow(static_cast<std::int64_t>(n), j)};
    return QSeries(std::move(c), F.weight() + 2 * j);
}

/// binom(alpha, j) = alpha (alpha-1) ... (alpha-j+1) / j!.
inline Rational generalized_binomial(const Rational& alpha, unsigned j) {
    Rational r = 1;
    for (unsigned i = 0; i < j; ++i) r *= alpha - i;
    return r / Rational{factorial(j)};
}

/// [F1, F2]_k = sum_j (-1)^j binom(w1+k-1, k-j) binom(w2+k-1, j) F1^(j) F2^(k-j),
/// with each derivative the coefficient map c(n) -> n c(n).
inline QSeries rankin_cohen(const QSeries& F1, const Rational& w1, const QSeries& F2, const Rational& w2, int k) {
    if (k < 0) throw std::invalid_argument("rankin_cohen: k must be non-negative");
    const auto uk = static_cast<unsigned>(k);
    const std::size_t N = std::min(F1.precision(), F2.precision());
    QSeries out = QSeries::zero(N);
    for (unsigned j = 0; j <= uk; ++j) {
        Rational c = generalized_binomial(w1 + uk - 1, uk - j) * generalized_binomial(w2 + uk - 1, j);
        if (c == 0) continue;
        if (j & 1) c = -c;
        out += c * (derivative(F1, j) * derivative(F2, uk - j));
    }
    out.set_weight(w1 + w2 + 2 * uk);
    return out;
}

struct GrowthReport {
    double exponent = 0;
    std::vector<std::pair<double, double>> points;  // (n, s(n))
    SlopeFit fit;
    bool degenerate = false;  // identically zero on every window
    double max_residual = 0;
};

inline constexpr std::size_t growth_audit_min_precision = 64;
inline constexpr std::size_t growth_audit_first_window = 16;

/// s(n) = max_{n/2 < j <= n} |c(j)| / j^exponent at n = 16, 32, ... and the
/// final precision, fitted log s against log n.
inline GrowthReport growth_audit(const QSeries& F, double exponent) {
    if (F.precision() < growth_audit_min_precision)
        throw std::invalid_argument("growth_audit: precision must be at least 64");
    GrowthReport r;
    r.exponent = exponent;
    std::vector<std::size_t> ends;
    for (std::size_t n = growth_audit_first_window; n <= F.precision(); n *= 2) ends.push_back(n);
    if (ends.back() != F.precision()) ends.push_back(F.precision());
    for (const auto n : ends) {
        double s = 0;
        for (std::size_t j = n / 2 + 1; j <= n; ++j)
            s = std::max(s, std::fabs(F[j].get_d()) / std::pow(static_cast<double>(j), exponent));
        if (s > 0) r.points.emplace_back(static_cast<double>(n), s);
    }
    r.degenerate = r.points.empty();
    r.fit = loglog_fit(r.points);
    if (!r.fit.degenerate())
        for (const auto& [x, y] : r.points)
            r.max_residual =
                std::max(r.max_residual, std::fabs(std::log(y) - (r.fit.intercept + r.fit.slope * std::log(x))));
    return r;
}

/// CSV `n,numerator,denominator`.
inline void write_series_csv(std::ostream& os, const QSeries& F) {
    os << "n,numerator,denominator\n";
    for (std::size_t n = 0; n <= F.precision(); ++n) os << n << ',' << F[n].get_num() << ',' << F[n].get_den() << '\n';
}

inline QSeries read_series_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "n,numerator,denominator")
        throw std::runtime_error("read_series_csv: missing header n,numerator,denominator");
    std::vector<Rational> c;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string n, num, den;
        if (!std::getline(ss, n, ',') || !std::getline(ss, num, ',') || !std::getline(ss, den))
            throw std::runtime_error("read_series_csv: malformed row '" + line + "'");
        const auto idx = std::stoull(n);
        if (idx != c.size()) throw std::runtime_error("read_series_csv: rows must be dense and ordered");
        c.push_back(make_rational(BigInt{num}, BigInt{den}));
    }
    return QSeries(std::move(c));
}

}  // namespace hurwitz
