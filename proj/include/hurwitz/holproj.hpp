// The Rankin-Cohen bracket of the class-number generating function with a
// progression theta series, corrected by the Lambda series so that the
// result (after U_4) has cusp-form growth for k >= 1 and is quasimodular of
// weight two for k = 0.
#pragma once

#include "hurwitz/arith.hpp"
#include "hurwitz/classnum.hpp"
#include "hurwitz/moments.hpp"
#include "hurwitz/qseries.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hurwitz {

/// Lambda_{l,m,M} = sum_{n >= 1} lambda_{l,m,M}(n) q^n, built by walking
/// factor pairs n = d e directly rather than factoring each n.
inline QSeries lambda_series(unsigned ell, std::int64_t m, std::int64_t M, std::size_t N) {
    if (M < 1) throw std::invalid_argument("lambda_series: modulus must be positive");
    std::vector<Rational> c(N + 1);
    const auto sN = static_cast<std::int64_t>(N);
    for (std::int64_t d = 1; d * d <= sN; ++d) {
        const BigInt power = ipow(d, ell);
        for (std::int64_t e = d; d * e <= sN; e += 2) {  // e = d mod 2
            const std::int64_t t = (d + e) / 2;
            const int branches = (mod(t - m, M) == 0) + (mod(t + m, M) == 0);
            if (branches == 0) continue;
            Rational term{power * branches};
            if (e == d) term /= 2;
            c[static_cast<std::size_t>(d * e)] += term;
        }
    }
    Rational w{static_cast<long>(ell) + 1};
    return QSeries(std::move(c), w, "Lambda");
}

/// 2^(-1-2k) binom(2k, k).
inline Rational mertens_constant(unsigned k) { return make_rational(binomial(2 * k, k), ipow(2, 2 * k + 1)); }

/// [H, theta_{m,M}]_k | U_4 to precision N.
inline QSeries bracket_u4(unsigned k, std::int64_t m, std::int64_t M, std::size_t N, const HurwitzTable& table) {
    const std::size_t N4 = 4 * N;
    const QSeries H = hurwitz_gf(N4, table);
    const QSeries theta = theta_series(0, m, M, N4);
    QSeries b = rankin_cohen(H, Rational{3, 2}, theta, Rational{1, 2}, static_cast<int>(k));
    return u_operator(b, 4).set_label("bracket");
}

/// ([H, theta_{m,M}]_k + c Lambda_{2k+1,m,M}) | U_4 to precision N, with c the
/// supplied constant or 2^(-1-2k) binom(2k, k) by default.
inline QSeries mertens_combination(unsigned k, std::int64_t m, std::int64_t M, std::size_t N,
                                   const HurwitzTable& table, std::optional<Rational> constant = std::nullopt) {
    if (N < 16) throw std::invalid_argument("mertens_combination: precision must be at least 16");
    const Rational c = constant.value_or(mertens_constant(k));
    QSeries out = bracket_u4(k, m, M, N, table);
    out += c * u_operator(lambda_series(2 * k + 1, m, M, 4 * N), 4);
    out.set_weight(Rational{2 * static_cast<long>(k) + 2});
    out.set_label("mertens_combination");
    return out;
}

struct BracketConstantAudit {
    std::optional<Rational> constant;  // bracket coefficient / G, when constant in n
    std::size_t compared = 0;          // n with G(n) != 0
    bool constant_in_n = false;
};

/// Compares the n-th coefficient of [H, theta_{m,M}]_k | U_4 with G_{k,m,M}(n)
/// for 1 <= n <= N and reports the common ratio if there is one.
inline BracketConstantAudit audit_bracket_constant(unsigned k, std::int64_t m, std::int64_t M, std::size_t N,
                                                   const HurwitzTable& table) {
    const QSeries b = bracket_u4(k, m, M, N, table);
    BracketConstantAudit r;
    r.constant_in_n = true;
    for (std::size_t n = 1; n <= N; ++n) {
        const Rational g = g_sum(k, m, M, static_cast<std::int64_t>(n), table);
        if (g == 0) {
            if (b[n] != 0) r.constant_in_n = false;
            continue;
        }
        const Rational q = b[n] / g;
        ++r.compared;
        if (!r.constant) r.constant = q;
        else if (*r.constant != q) r.constant_in_n = false;
    }
    if (!r.constant_in_n) r.constant.reset();
    return r;
}

struct LambdaConstantFit {
    double fitted = 0;    // least-squares c
    Rational reference;   // 2^(-1-2k) binom(2k, k)
    double relative_gap = 0;
};

/// Least-squares constant c minimizing sum_n (b(n) + c lambda(4n))^2 / n^(2k+1)
/// over 1 <= n <= N, for comparison against the closed-form constant.
inline LambdaConstantFit fit_lambda_constant(unsigned k, std::int64_t m, std::int64_t M, std::size_t N,
                                             const HurwitzTable& table) {
    const QSeries b = bracket_u4(k, m, M, N, table);
    const QSeries lam = u_operator(lambda_series(2 * k + 1, m, M, 4 * N), 4);
    double num = 0, den = 0;
    for (std::size_t n = 1; n <= N; ++n) {
        const double w = std::pow(static_cast<double>(n), -(2.0 * k + 1));
        const double x = lam[n].get_d(), y = b[n].get_d();
        num += w * x * y;
        den += w * x * x;
    }
    LambdaConstantFit r;
    r.fitted = den > 0 ? -num / den : 0;
    r.reference = mertens_constant(k);
    r.relative_gap = std::fabs(r.fitted - r.reference.get_d()) / r.reference.get_d();
    return r;
}

/// E_2 = 1 - 24 sum sigma(n) q^n.
inline QSeries eisenstein_e2(std::size_t N) {
    std::vector<Rational> c(N + 1);
    c[0] = 1;
    for (std::size_t d = 1; d <= N; ++d)
        for (std::size_t n = d; n <= N; n += d) c[n] -= static_cast<long>(24 * d);
    return QSeries(std::move(c), Rational{2}, "E2");
}

struct LinearFit {
    std::optional<std::vector<Rational>> coefficients;  // empty if the fit system is inconsistent
    std::size_t fit_terms = 0;
    std::size_t verified_to = 0;
    std::size_t mismatches = 0;  // coefficients in (fit_terms, verified_to] not reproduced
    bool exact() const { return coefficients && mismatches == 0; }
};

/// Solves target[n] = sum_i x_i basis_i[n] exactly on 0 <= n < fit_terms, then
/// counts the indices up to the common precision where the combination disagrees.
inline LinearFit fit_linear_combination(const QSeries& target, const std::vector<QSeries>& basis, std::size_t fit_terms) {
    LinearFit r;
    r.fit_terms = fit_terms;
    std::size_t N = target.precision();
    for (const auto& b : basis) N = std::min(N, b.precision());
    r.verified_to = N;
    if (fit_terms > N + 1) throw std::invalid_argument("fit_linear_combination: not enough coefficients");
    const std::size_t cols = basis.size();
    // Augmented matrix, reduced row echelon form over Q.
    std::vector<std::vector<Rational>> A(fit_terms, std::vector<Rational>(cols + 1));
    for (std::size_t i = 0; i < fit_terms; ++i) {
        for (std::size_t j = 0; j < cols; ++j) A[i][j] = basis[j][i];
        A[i][cols] = target[i];
    }
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < fit_terms; ++col) {
        std::size_t piv = row;
        while (piv < fit_terms && A[piv][col] == 0) ++piv;
        if (piv == fit_terms) continue;
        std::swap(A[piv], A[row]);
        const Rational inv = 1 / A[row][col];
        for (auto& x : A[row]) x *= inv;
        for (std::size_t i = 0; i < fit_terms; ++i) {
            if (i == row || A[i][col] == 0) continue;
            const Rational f = A[i][col];
            for (std::size_t j = col; j <= cols; ++j) A[i][j] -= f * A[row][j];
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (std::size_t i = row; i < fit_terms; ++i)
        if (A[i][cols] != 0) return r;  // inconsistent
    std::vector<Rational> x(cols);
    for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = A[i][cols];
    for (std::size_t n = 0; n <= N; ++n) {
        Rational v = 0;
        for (std::size_t j = 0; j < cols; ++j) v += x[j] * basis[j][n];
        if (v != target[n]) ++r.mismatches;
    }
    r.coefficients = std::move(x);
    return r;
}

/// Fits the k = 0 combination against E_2 | V_d for d | 4 from the first
/// fit_terms coefficients and verifies up to precision N.
inline LinearFit quasimodular_fit(std::int64_t m, std::int64_t M, std::size_t N, const HurwitzTable& table,
                                  std::size_t fit_terms = 10) {
    const QSeries target = mertens_combination(0, m, M, N, table);
    const QSeries e2 = eisenstein_e2(N);
    std::vector<QSeries> basis;
    for (std::size_t d : {1, 2, 4}) basis.push_back(v_operator(e2, d).truncated(N));
    return fit_linear_combination(target, basis, fit_terms);
}

}  // namespace hurwitz
