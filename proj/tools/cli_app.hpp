// Command-line driver: subcommands hurwitz, table, verify, ratio, holproj,
// census. run() takes the argument vector and output streams so the test
// suite can call it in-process.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or validation error.
#pragma once

#include "hurwitz/arith.hpp"
#include "hurwitz/classnum.hpp"
#include "hurwitz/ellcurve.hpp"
#include "hurwitz/holproj.hpp"
#include "hurwitz/moments.hpp"
#include "hurwitz/qseries.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace hurwitz {

// JSON conversions for the row types. Rationals are "num/den" strings so
// that values round-trip exactly.

inline void to_json(nlohmann::json& j, const MomentRow& r) {
    j = {{"n", r.n},
         {"k", r.k},
         {"m", r.m},
         {"M", r.M},
         {"moment", r.value.get_str()},
         {"zeroth", r.zeroth.get_str()},
         {"ratio", r.ratio ? nlohmann::json(*r.ratio) : nlohmann::json(nullptr)},
         {"abs_err", r.abs_err ? nlohmann::json(*r.abs_err) : nlohmann::json(nullptr)}};
}

inline std::optional<double> optional_double(const nlohmann::json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

inline void from_json(const nlohmann::json& j, MomentRow& r) {
    r.n = j.at("n").get<std::int64_t>();
    r.k = j.at("k").get<unsigned>();
    r.m = j.at("m").get<std::int64_t>();
    r.M = j.at("M").get<std::int64_t>();
    r.value = Rational{j.at("moment").get<std::string>()};
    r.value.canonicalize();
    r.zeroth = Rational{j.at("zeroth").get<std::string>()};
    r.zeroth.canonicalize();
    r.ratio = optional_double(j.at("ratio"));
    r.abs_err = optional_double(j.at("abs_err"));
}

inline void to_json(nlohmann::json& j, const Theorem2Row& r) {
    j = {{"p", r.p},
         {"r", r.r},
         {"k", r.k},
         {"m", r.m},
         {"M", r.M},
         {"moment", r.moment.get_str()},
         {"zeroth", r.zeroth.get_str()},
         {"ratio", r.ratio ? nlohmann::json(*r.ratio) : nlohmann::json(nullptr)},
         {"abs_err", r.abs_err ? nlohmann::json(*r.abs_err) : nlohmann::json(nullptr)},
         {"gcd_warning", r.gcd_warning}};
}

inline void from_json(const nlohmann::json& j, Theorem2Row& r) {
    r.p = j.at("p").get<std::int64_t>();
    r.r = j.at("r").get<unsigned>();
    r.k = j.at("k").get<unsigned>();
    r.m = j.at("m").get<std::int64_t>();
    r.M = j.at("M").get<std::int64_t>();
    r.moment = Rational{j.at("moment").get<std::string>()};
    r.moment.canonicalize();
    r.zeroth = Rational{j.at("zeroth").get<std::string>()};
    r.zeroth.canonicalize();
    r.ratio = optional_double(j.at("ratio"));
    r.abs_err = optional_double(j.at("abs_err"));
    r.gcd_warning = j.at("gcd_warning").get<bool>();
}

inline bool operator==(const Theorem2Row& a, const Theorem2Row& b) {
    return a.p == b.p && a.r == b.r && a.k == b.k && a.m == b.m && a.M == b.M && a.moment == b.moment &&
           a.zeroth == b.zeroth && a.ratio == b.ratio && a.abs_err == b.abs_err && a.gcd_warning == b.gcd_warning;
}

inline bool operator==(const MomentRow& a, const MomentRow& b) {
    return a.n == b.n && a.k == b.k && a.m == b.m && a.M == b.M && a.value == b.value && a.zeroth == b.zeroth &&
           a.ratio == b.ratio && a.abs_err == b.abs_err;
}

namespace cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_usage = 2;

inline constexpr const char* output_dir_env = "HURWITZ_OUTPUT_DIR";

/// Defaults shared by every subcommand, overridable from a key=value config
/// file (--config) and then by flags.
struct RunConfig {
    std::string subcommand;
    unsigned workers = 1;
    std::string format = "csv";
    std::string output;      // empty: stdout
    std::string output_dir;  // prefix for relative output paths
    std::uint64_t table_bound = default_table_bound;
    std::uint64_t field_bound = default_field_bound;
    std::uint64_t census_bound = default_census_bound;
    std::size_t precision_cap = default_precision_cap;
    double block_start = default_block_start;
};

struct CensusRow {
    std::uint64_t q = 0;
    std::int64_t t = 0;
    std::uint64_t pair_count = 0;
    Rational na;
    friend bool operator==(const CensusRow&, const CensusRow&) = default;
};

inline void to_json(nlohmann::json& j, const CensusRow& r) {
    j = {{"q", r.q}, {"t", r.t}, {"pair_count", r.pair_count}, {"na", r.na.get_str()}};
}

inline void from_json(const nlohmann::json& j, CensusRow& r) {
    r.q = j.at("q").get<std::uint64_t>();
    r.t = j.at("t").get<std::int64_t>();
    r.pair_count = j.at("pair_count").get<std::uint64_t>();
    r.na = Rational{j.at("na").get<std::string>()};
    r.na.canonicalize();
}

class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Splits q into (p, r) with q = p^r, p > 3 prime.
inline std::pair<std::int64_t, unsigned> split_prime_power(std::int64_t q) {
    if (q < 2) throw usage_error("q = " + std::to_string(q) + " is not a prime power");
    const auto f = factorize(static_cast<std::uint64_t>(q));
    if (f.factors.size() != 1) throw usage_error("q = " + std::to_string(q) + " is not a prime power");
    const auto [p, r] = f.factors.front();
    if (p <= 3) throw usage_error("q = " + std::to_string(q) + ": p > 3 required");
    return {static_cast<std::int64_t>(p), static_cast<unsigned>(r)};
}

// Per-case reporting for the verify suites.
class CaseLog {
public:
    CaseLog(std::ostream& os, std::string suite, bool json) : os_(os), suite_(std::move(suite)), json_(json) {}

    void record(const std::string& label, bool pass, const std::string& lhs = {}, const std::string& rhs = {}) {
        (pass ? passed_ : failed_)++;
        emit(label, pass ? "PASS" : "FAIL", lhs, rhs);
    }

    void skip(const std::string& label, const std::string& why) {
        ++skipped_;
        emit(label, "SKIP", why, {});
    }

    int finish() {
        if (json_) {
            os_ << nlohmann::json{{"summary",
                                   {{"suite", suite_}, {"passed", passed_}, {"failed", failed_}, {"skipped", skipped_}}}}
                       .dump()
                << '\n';
        } else {
            os_ << suite_ << ": " << passed_ << " passed, " << failed_ << " failed";
            if (skipped_) os_ << ", " << skipped_ << " skipped";
            os_ << '\n';
        }
        return failed_ == 0 ? exit_ok : exit_failure;
    }

private:
    void emit(const std::string& label, const char* status, const std::string& lhs, const std::string& rhs) {
        if (json_) {
            os_ << nlohmann::json{{"suite", suite_}, {"case", label}, {"status", status}, {"lhs", lhs}, {"rhs", rhs}}
                       .dump()
                << '\n';
        } else {
            os_ << status << ' ' << suite_ << ' ' << label;
            if (!lhs.empty()) os_ << " lhs=" << lhs;
            if (!rhs.empty()) os_ << " rhs=" << rhs;
            os_ << '\n';
        }
    }

    std::ostream& os_;
    std::string suite_;
    bool json_;
    std::size_t passed_ = 0, failed_ = 0, skipped_ = 0;
};

struct VerifyOptions {
    std::string suite;
    std::int64_t pmax = 500;
    std::int64_t nmax = 0;  // suite default when 0
    std::int64_t Dmax = 5000;
    unsigned kmax = 0;  // suite default when 0
    std::int64_t Mmax = 0;
    unsigned rmax = 4;
    std::vector<std::int64_t> qs{5, 7, 11, 13, 25, 49};
    std::vector<std::int64_t> primes;
    unsigned count = 100;
    std::uint64_t seed = 20240611;
};

inline const std::vector<std::string>& verify_suites() {
    static const std::vector<std::string> s{"eichler",      "brown-calkin", "cohen",         "p2-lemma",
                                            "h-from-g",     "catalan",      "splitting",     "kaplan-petrow",
                                            "census-vs-formula", "hp-hrel"};
    return s;
}

inline std::string case_label(std::initializer_list<std::pair<const char*, std::int64_t>> kv) {
    std::string s;
    for (const auto& [k, v] : kv) {
        if (!s.empty()) s += ' ';
        s += std::string(k) + '=' + std::to_string(v);
    }
    return s;
}

inline int cmd_verify(const RunConfig& cfg, const VerifyOptions& o, std::ostream& os) {
    CaseLog log(os, o.suite, cfg.format == "json");
    auto table_for = [&](std::int64_t n) { return hurwitz_table(static_cast<std::uint64_t>(std::max<std::int64_t>(n, 16)), cfg.workers, cfg.table_bound); };

    if (o.suite == "eichler" || o.suite == "brown-calkin") {
        const auto table = table_for(4 * o.pmax);
        for (const auto p : primes_up_to(o.pmax - 1)) {
            if (o.suite == "brown-calkin" && p == 5) continue;
            const auto rep = o.suite == "eichler" ? verify_eichler(p, table) : verify_brown_calkin(p, table);
            log.record(case_label({{"p", p}}), rep.holds, to_string(rep.lhs), to_string(rep.rhs));
        }
    } else if (o.suite == "cohen") {
        const std::int64_t nmax = o.nmax ? o.nmax : 10000;
        const auto table = table_for(nmax);
        for (std::int64_t n = 3; n <= nmax; ++n) {
            if (n % 4 == 1 || n % 4 == 2) continue;
            const Rational c = hurwitz_cohen(n);
            log.record(case_label({{"n", n}}), c == table.value(n), to_string(c), to_string(table.value(n)));
        }
    } else if (o.suite == "p2-lemma") {
        const std::vector<std::int64_t> primes = o.primes.empty() ? std::vector<std::int64_t>{3, 5, 7, 11, 13} : o.primes;
        for (std::int64_t d = 3; d <= o.Dmax; ++d) {
            if (d % 4 == 1 || d % 4 == 2) continue;
            for (const auto p : primes) {
                const auto rep = verify_p2_lemma(-d, p);
                log.record(case_label({{"D", -d}, {"p", p}}), rep.holds, to_string(rep.lhs), to_string(rep.rhs));
            }
        }
    } else if (o.suite == "h-from-g") {
        const unsigned kmax = o.kmax ? o.kmax : 4;
        const std::int64_t Mmax = o.Mmax ? o.Mmax : 6;
        const std::int64_t nmax = o.nmax ? o.nmax : 200;
        const auto table = table_for(4 * nmax);
        for (unsigned k = 0; k <= kmax; ++k)
            for (std::int64_t M = 1; M <= Mmax; ++M)
                for (std::int64_t m = 0; m < M; ++m)
                    for (std::int64_t n = 1; n <= nmax; ++n) {
                        const auto rep = verify_h_from_g(k, m, M, n, table);
                        log.record(case_label({{"k", k}, {"m", m}, {"M", M}, {"n", n}}), rep.holds,
                                   to_string(rep.lhs), to_string(rep.rhs));
                    }
    } else if (o.suite == "catalan") {
        const unsigned kmax = o.kmax ? o.kmax : 50;
        const auto C = catalan(kmax);
        const auto rep = verify_catalan_recursion(kmax);
        for (unsigned k = 1; k <= kmax; ++k) {
            const bool pass = !rep.first_failure || k < *rep.first_failure;
            log.record(case_label({{"k", k}}), pass, {}, to_string(C[k]));
        }
    } else if (o.suite == "splitting") {
        const std::int64_t nmax = o.nmax ? o.nmax : 2000;
        const auto table = table_for(4 * nmax);
        std::mt19937_64 rng(o.seed);
        const std::vector<std::int64_t> primes = o.primes.empty() ? std::vector<std::int64_t>{2, 3, 5, 7, 11, 13} : o.primes;
        auto pick = [&](std::int64_t lo, std::int64_t hi) {
            return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
        };
        for (unsigned i = 0; i < o.count; ++i) {
            const auto kappa = static_cast<unsigned>(pick(0, 4));
            const std::int64_t M = pick(1, 12);
            const std::int64_t m = pick(0, M - 1);
            const std::int64_t p = primes[static_cast<std::size_t>(pick(0, static_cast<std::int64_t>(primes.size()) - 1))];
            const std::int64_t n = pick(1, nmax);
            const auto rep = verify_script_h_splitting(MomentSpec{kappa, m, M}, p, n, table);
            log.record(case_label({{"kappa", kappa}, {"m", m}, {"M", M}, {"p", p}, {"n", n}}), rep.holds,
                       to_string(rep.lhs), to_string(rep.rhs));
        }
    } else if (o.suite == "kaplan-petrow" || o.suite == "census-vs-formula") {
        std::int64_t qmax = 0;
        for (const auto q : o.qs) qmax = std::max(qmax, q);
        const auto table = table_for(4 * qmax);
        const unsigned kmax = o.kmax ? o.kmax : 4;
        const std::int64_t Mmax = o.Mmax ? o.Mmax : 5;
        for (const auto q : o.qs) {
            const auto [p, r] = split_prime_power(q);
            const auto field = build_field(p, r, cfg.field_bound);
            const auto c = census(field, cfg.workers, cfg.census_bound);
            if (o.suite == "kaplan-petrow") {
                for (const auto& w : verify_kaplan_petrow(c, table))
                    log.record(case_label({{"q", q}, {"t", w.t}}), w.matches, to_string(w.census_value),
                               to_string(w.table_value));
                continue;
            }
            for (unsigned kappa = 0; kappa <= kmax; ++kappa)
                for (std::int64_t M = 1; M <= Mmax; ++M)
                    for (std::int64_t m = 0; m < M; ++m) {
                        const Rational lhs = s_moment_census(c, kappa, m, M);
                        const Rational rhs = s_moment_formula(kappa, m, M, p, r, table);
                        log.record(case_label({{"q", q}, {"kappa", kappa}, {"m", m}, {"M", M}}), lhs == rhs,
                                   to_string(lhs), to_string(rhs));
                    }
        }
    } else if (o.suite == "hp-hrel") {
        const unsigned kmax = o.kmax ? o.kmax : 2;
        const std::int64_t Mmax = o.Mmax ? o.Mmax : 5;
        const std::vector<std::int64_t> primes = o.primes.empty() ? std::vector<std::int64_t>{5, 7} : o.primes;
        std::int64_t need = 16;
        for (const auto p : primes) need = std::max(need, 4 * prime_power(p, o.rmax));
        const auto table = table_for(need);
        for (const auto p : primes)
            for (unsigned r = 1; r <= o.rmax; ++r)
                for (unsigned k = 0; k <= kmax; ++k)
                    for (std::int64_t M = 1; M <= Mmax; ++M)
                        for (std::int64_t m = 0; m < M; ++m) {
                            const auto label = case_label({{"k", k}, {"m", m}, {"M", M}, {"p", p}, {"r", r}});
                            if (M % p == 0 && m % p == 0 && r >= 2) {
                                log.skip(label, "p divides both m and M");
                                continue;
                            }
                            const auto rep = verify_hp_hrel(k, m, M, p, r, table);
                            log.record(label + " branch=" + std::to_string(rep.branch), rep.holds, to_string(rep.lhs),
                                       to_string(rep.rhs));
                        }
    } else {
        throw usage_error("unknown verify suite '" + o.suite + "'");
    }
    return log.finish();
}

struct HurwitzOptions {
    std::vector<std::int64_t> range;  // n, or lo hi
};

inline int cmd_hurwitz(const RunConfig& cfg, const HurwitzOptions& o, std::ostream& os) {
    if (o.range.empty() || o.range.size() > 2) throw usage_error("hurwitz: expected n or a range lo hi");
    const std::int64_t lo = o.range.front(), hi = o.range.back();
    if (lo < 0 || hi < lo) throw usage_error("hurwitz: invalid range");
    auto emit = [&](std::int64_t n, std::int64_t h) {
        if (cfg.format == "json") os << nlohmann::json{{"n", n}, {"twelve_h", h}}.dump() << '\n';
        else os << n << ',' << h << '\n';
    };
    if (hi - lo < 64) {
        for (std::int64_t n = lo; n <= hi; ++n) emit(n, hurwitz12(n));
    } else {
        const auto table = hurwitz_table(static_cast<std::uint64_t>(hi), cfg.workers, cfg.table_bound);
        for (std::int64_t n = lo; n <= hi; ++n) emit(n, table.twelve_h(n));
    }
    return exit_ok;
}

inline int cmd_table(const RunConfig& cfg, std::uint64_t N, std::ostream& os) {
    const auto table = hurwitz_table(N, cfg.workers, cfg.table_bound);
    if (cfg.format == "json") {
        for (std::uint64_t n = 0; n <= table.limit(); ++n)
            if (n % 4 == 0 || n % 4 == 3) os << nlohmann::json{{"n", n}, {"twelve_h", table[n]}}.dump() << '\n';
    } else {
        write_table_csv(os, table);
    }
    return exit_ok;
}

struct RatioOptions {
    unsigned k = 1;
    std::int64_t m = 0;
    std::int64_t M = 1;
    std::int64_t nmin = 1;
    std::int64_t nmax = 0;
    std::int64_t p = 0;
    unsigned rmax = 0;
    std::int64_t pmax = 0;
    unsigned r = 1;
};

inline nlohmann::json blocks_json(const std::vector<BlockMedian>& blocks) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& b : blocks) out.push_back({{"lo", b.lo}, {"median", b.median}, {"count", b.count}});
    return out;
}

inline nlohmann::json slope_json(const SlopeFit& f) {
    return f.degenerate() ? nlohmann::json(nullptr) : nlohmann::json(f.slope);
}

inline void emit_summary(const RunConfig& cfg, const nlohmann::json& summary, std::ostream& os) {
    const nlohmann::json record{{"summary", summary}};
    if (cfg.format == "json") os << record.dump() << '\n';
    else os << "# " << record.dump() << '\n';
}

inline int cmd_ratio(const RunConfig& cfg, const RatioOptions& o, std::ostream& os) {
    if (o.M < 1) throw usage_error("ratio: --mod must be positive");
    const int modes = (o.nmax > 0) + (o.p > 0) + (o.pmax > 0);
    if (modes != 1) throw usage_error("ratio: give exactly one of --nmax, --p with --rmax, or --pmax");
    const bool json = cfg.format == "json";

    if (o.nmax > 0) {
        if (o.nmin < 1 || o.nmax < o.nmin) throw usage_error("ratio: need 1 <= --nmin <= --nmax");
        const auto table = hurwitz_table(static_cast<std::uint64_t>(4 * o.nmax), cfg.workers, cfg.table_bound);
        const auto rows = ratio_scan(o.k, o.m, o.M, o.nmin, o.nmax, table, cfg.workers);
        if (!json) write_ratio_csv_header(os);
        for (const auto& r : rows) {
            if (json) os << nlohmann::json(r).dump() << '\n';
            else write_ratio_csv_row(os, r);
        }
        const auto s = summarize_scan(rows, cfg.block_start);
        emit_summary(cfg,
                     {{"k", o.k},
                      {"m", mod(o.m, o.M)},
                      {"M", o.M},
                      {"rows", rows.size()},
                      {"flagged", s.flagged},
                      {"blocks", blocks_json(s.blocks)},
                      {"slope", slope_json(s.fit)},
                      {"top_block_median", s.blocks.empty() ? nlohmann::json(nullptr) : nlohmann::json(s.top_block_median())}},
                     os);
        return exit_ok;
    }

    // Prime-power route through the class-number formula.
    std::vector<std::pair<std::int64_t, unsigned>> points;
    if (o.p > 0) {
        if (o.p <= 3 || !is_prime(static_cast<std::uint64_t>(o.p))) throw usage_error("ratio: --p must be a prime > 3");
        if (o.rmax < 1) throw usage_error("ratio: --rmax must be positive");
        for (unsigned r = 1; r <= o.rmax; ++r) points.emplace_back(o.p, r);
    } else {
        if (o.r < 1) throw usage_error("ratio: --r must be positive");
        for (const auto p : primes_up_to(o.pmax))
            if (p > 3) points.emplace_back(p, o.r);
    }
    std::int64_t qmax = 1;
    for (const auto& [p, r] : points) qmax = std::max(qmax, prime_power(p, r));
    const auto table = hurwitz_table(static_cast<std::uint64_t>(4 * qmax), cfg.workers, cfg.table_bound);
    std::vector<Theorem2Row> rows(points.size());
    parallel_for(std::max(1u, cfg.workers), [&](unsigned w) {
        for (std::size_t i = w; i < points.size(); i += std::max(1u, cfg.workers))
            rows[i] = ratio_theorem2(o.k, o.m, o.M, points[i].first, points[i].second, table);
    });
    if (!json) write_theorem2_csv_header(os);
    std::size_t flagged = 0, warned = 0;
    std::vector<std::pair<double, double>> samples;
    nlohmann::json errors = nlohmann::json::array();
    for (const auto& r : rows) {
        if (json) {
            nlohmann::json j = r;
            j["route"] = "formula";
            os << j.dump() << '\n';
        } else {
            write_theorem2_csv_row(os, r, "formula");
        }
        warned += r.gcd_warning;
        if (!r.abs_err) {
            ++flagged;
            errors.push_back(nullptr);
            continue;
        }
        errors.push_back(*r.abs_err);
        samples.emplace_back(static_cast<double>(prime_power(r.p, r.r)), *r.abs_err);
    }
    nlohmann::json summary{{"k", o.k}, {"m", mod(o.m, o.M)}, {"M", o.M}, {"rows", rows.size()},
                           {"flagged", flagged}, {"gcd_warnings", warned}, {"route", "formula"}};
    if (o.p > 0) {
        bool decreasing = true;
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (!rows[i].abs_err || !rows[i - 1].abs_err || *rows[i].abs_err >= *rows[i - 1].abs_err) decreasing = false;
        summary["p"] = o.p;
        summary["abs_err"] = errors;
        summary["decreasing"] = decreasing;
        summary["final_abs_err"] = errors.empty() ? nlohmann::json(nullptr) : errors.back();
        summary["slope"] = slope_json(loglog_fit(samples));
    } else {
        const auto blocks = dyadic_medians(samples, cfg.block_start);
        const auto fit = fit_block_medians(blocks);
        summary["r"] = o.r;
        summary["blocks"] = blocks_json(blocks);
        summary["slope"] = slope_json(fit);
        summary["top_block_median"] = blocks.empty() ? nlohmann::json(nullptr) : nlohmann::json(blocks.back().median);
    }
    emit_summary(cfg, summary, os);
    return exit_ok;
}

struct HolprojOptions {
    unsigned k = 1;
    std::int64_t m = 0;
    std::int64_t M = 1;
    std::size_t N = 0;
    std::size_t fit_terms = 10;
};

inline int cmd_holproj(const RunConfig& cfg, const HolprojOptions& o, std::ostream& os) {
    if (o.M < 1) throw usage_error("holproj: --mod must be positive");
    if (o.N < 16) throw usage_error("holproj: --N must be at least 16");
    if (4 * o.N > cfg.precision_cap)
        throw usage_error("holproj: 4N = " + std::to_string(4 * o.N) + " exceeds precision cap " +
                          std::to_string(cfg.precision_cap));
    const auto table = hurwitz_table(4 * o.N, cfg.workers, cfg.table_bound);
    const QSeries comb = mertens_combination(o.k, o.m, o.M, o.N, table);
    const QSeries raw = bracket_u4(o.k, o.m, o.M, o.N, table);
    const bool json = cfg.format == "json";
    if (json) {
        for (std::size_t n = 0; n <= comb.precision(); ++n)
            os << nlohmann::json{{"n", n}, {"coefficient", comb[n].get_str()}}.dump() << '\n';
    } else {
        write_series_csv(os, comb);
    }
    const double exponent = o.k + 0.5;
    nlohmann::json summary{{"k", o.k}, {"m", mod(o.m, o.M)}, {"M", o.M}, {"N", o.N}, {"exponent", exponent},
                           {"mertens_constant", mertens_constant(o.k).get_str()}};
    if (o.N >= growth_audit_min_precision) {
        const auto g = growth_audit(comb, exponent);
        const auto gr = growth_audit(raw, exponent);
        summary["slope"] = slope_json(g.fit);
        summary["identically_zero"] = comb.is_zero();
        summary["raw_slope"] = slope_json(gr.fit);
    }
    const auto audit = audit_bracket_constant(o.k, o.m, o.M, std::min<std::size_t>(o.N, 200), table);
    summary["bracket_constant"] = audit.constant ? nlohmann::json(audit.constant->get_str()) : nlohmann::json(nullptr);
    if (o.k == 0) {
        const auto fit = quasimodular_fit(o.m, o.M, o.N, table, o.fit_terms);
        nlohmann::json coeffs = nullptr;
        if (fit.coefficients) {
            coeffs = nlohmann::json::array();
            for (const auto& c : *fit.coefficients) coeffs.push_back(c.get_str());
        }
        summary["quasimodular_fit"] = {{"basis", {"E2|V1", "E2|V2", "E2|V4"}},
                                       {"coefficients", coeffs},
                                       {"fit_terms", fit.fit_terms},
                                       {"verified_to", fit.verified_to},
                                       {"residual", fit.coefficients ? nlohmann::json(fit.mismatches) : nlohmann::json(nullptr)}};
    }
    emit_summary(cfg, summary, os);
    return exit_ok;
}

inline int cmd_census(const RunConfig& cfg, std::int64_t p, unsigned r, std::ostream& os) {
    if (p <= 3 || !is_prime(static_cast<std::uint64_t>(p))) throw usage_error("census: p must be a prime with p > 3");
    if (r < 1) throw usage_error("census: r must be positive");
    const auto field = build_field(p, r, cfg.field_bound);
    const auto c = census(field, cfg.workers, cfg.census_bound);
    if (cfg.format == "json") {
        for (const auto& [t, n] : c.pair_counts) os << nlohmann::json(CensusRow{c.q, t, n, c.counts.at(t)}).dump() << '\n';
    } else {
        write_census_csv(os, c);
    }
    emit_summary(cfg, {{"q", c.q}, {"rows", c.pair_counts.size()}, {"mass", c.mass().get_str()}}, os);
    return exit_ok;
}

inline std::string resolve_output(const RunConfig& cfg) {
    if (cfg.output.empty()) return {};
    std::filesystem::path path(cfg.output);
    std::string dir = cfg.output_dir;
    if (dir.empty())
        if (const char* env = std::getenv(output_dir_env)) dir = env;
    if (path.is_relative() && !dir.empty()) path = std::filesystem::path(dir) / path;
    return path.string();
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Hurwitz class numbers, progression moments and elliptic-curve trace statistics"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key=value file of defaults (workers, table-bound, format, ...)");
    app.add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("-o,--output", cfg.output, "output file (default stdout)");
    app.add_option("--output-dir", cfg.output_dir, "directory for relative output paths");
    app.add_option("--table-bound", cfg.table_bound, "largest class-number table");
    app.add_option("--field-bound", cfg.field_bound, "largest field order");
    app.add_option("--census-bound", cfg.census_bound, "largest field order for the exhaustive census");
    app.add_option("--precision-cap", cfg.precision_cap, "largest q-series precision");
    app.add_option("--block-start", cfg.block_start, "first dyadic block for slope fits");

    HurwitzOptions ho;
    auto* hur = app.add_subcommand("hurwitz", "print n,12H(n) for n or the range lo..hi");
    hur->add_option("n", ho.range, "n, or lo hi")->required()->expected(1, 2);

    std::uint64_t table_N = 0;
    auto* tab = app.add_subcommand("table", "CSV table of 12H(n)");
    tab->add_option("--N", table_N, "table limit")->required()->check(CLI::PositiveNumber);

    VerifyOptions vo;
    auto* ver = app.add_subcommand("verify", "run an exact identity suite");
    ver->add_option("suite", vo.suite, "suite name")->required();
    ver->add_option("--pmax", vo.pmax, "primes below this bound");
    ver->add_option("--nmax", vo.nmax, "largest n");
    ver->add_option("--Dmax", vo.Dmax, "largest |D|");
    ver->add_option("--kmax", vo.kmax, "largest k (or kappa)");
    ver->add_option("--Mmax", vo.Mmax, "largest modulus");
    ver->add_option("--rmax", vo.rmax, "largest exponent r");
    ver->add_option("--q", vo.qs, "field orders")->delimiter(',');
    ver->add_option("--primes", vo.primes, "primes")->delimiter(',');
    ver->add_option("--count", vo.count, "random tuples");
    ver->add_option("--seed", vo.seed, "random seed");

    RatioOptions ro;
    auto* rat = app.add_subcommand("ratio", "normalized moment ratios against C_k");
    rat->add_option("--k", ro.k)->required();
    rat->add_option("--m", ro.m);
    rat->add_option("--mod", ro.M);
    rat->add_option("--nmin", ro.nmin);
    rat->add_option("--nmax", ro.nmax);
    rat->add_option("--p", ro.p);
    rat->add_option("--rmax", ro.rmax);
    rat->add_option("--pmax", ro.pmax);
    rat->add_option("--r", ro.r);

    HolprojOptions po;
    auto* hol = app.add_subcommand("holproj", "bracket plus Lambda correction and its growth audit");
    hol->add_option("--k", po.k)->required();
    hol->add_option("--m", po.m);
    hol->add_option("--mod", po.M);
    hol->add_option("--N", po.N)->required();
    hol->add_option("--fit-terms", po.fit_terms);

    std::int64_t cp = 0;
    unsigned cr = 1;
    auto* cen = app.add_subcommand("census", "exhaustive trace census over F_{p^r}");
    cen->add_option("--p", cp)->required();
    cen->add_option("--r", cr);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }

    cfg.subcommand = app.get_subcommands().front()->get_name();
    if (ver->parsed()) {
        const auto& s = verify_suites();
        if (std::find(s.begin(), s.end(), vo.suite) == s.end()) {
            err << "error: unknown verify suite '" << vo.suite << "'\n";
            return exit_usage;
        }
    }

    std::ofstream file;
    std::ostream* os = &out;
    if (const auto path = resolve_output(cfg); !path.empty()) {
        file.open(path);
        if (!file) {
            err << "error: cannot open " << path << '\n';
            return exit_usage;
        }
        os = &file;
    }

    try {
        if (hur->parsed()) return cmd_hurwitz(cfg, ho, *os);
        if (tab->parsed()) return cmd_table(cfg, table_N, *os);
        if (ver->parsed()) return cmd_verify(cfg, vo, *os);
        if (rat->parsed()) return cmd_ratio(cfg, ro, *os);
        if (hol->parsed()) return cmd_holproj(cfg, po, *os);
        if (cen->parsed()) return cmd_census(cfg, cp, cr, *os);
    } catch (const usage_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const bound_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_failure;
    }
    return exit_usage;
}

inline int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace cli
}  // namespace hurwitz
