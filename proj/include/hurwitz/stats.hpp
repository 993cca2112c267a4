// Dyadic-block medians and log-log slope fits used by the convergence scans.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace hurwitz {

struct BlockMedian {
    double lo = 0;      // block is [lo, 2 lo)
    double center = 0;  // geometric center lo * sqrt(2)
    double median = 0;
    std::size_t count = 0;
};

struct SlopeFit {
    double slope = std::numeric_limits<double>::quiet_NaN();
    double intercept = std::numeric_limits<double>::quiet_NaN();
    std::size_t points = 0;
    bool degenerate() const { return points < 2 || std::isnan(slope); }
};

inline double median(std::vector<double> v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    const auto mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double hi = v[mid];
    if (v.size() % 2 == 1) return hi;
    const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lo + hi);
}

/// Groups (x, y) samples into blocks [2^j, 2^(j+1)) with 2^j >= x_min and
/// returns the median y of every non-empty block, in increasing x.
inline std::vector<BlockMedian> dyadic_medians(const std::vector<std::pair<double, double>>& samples, double x_min) {
    std::vector<BlockMedian> out;
    if (samples.empty()) return out;
    double x_max = 0;
    for (const auto& s : samples) x_max = std::max(x_max, s.first);
    double lo = 1;
    while (lo < x_min) lo *= 2;
    for (; lo <= x_max; lo *= 2) {
        std::vector<double> ys;
        for (const auto& [x, y] : samples)
            if (x >= lo && x < 2 * lo) ys.push_back(y);
        if (ys.empty()) continue;
        out.push_back({lo, lo * std::sqrt(2.0), median(ys), ys.size()});
    }
    return out;
}

/// Least-squares slope of log(y) against log(x); non-positive y are skipped.
inline SlopeFit loglog_fit(const std::vector<std::pair<double, double>>& points) {
    std::vector<std::pair<double, double>> lp;
    for (const auto& [x, y] : points)
        if (x > 0 && y > 0) lp.emplace_back(std::log(x), std::log(y));
    SlopeFit fit;
    fit.points = lp.size();
    if (lp.size() < 2) return fit;
    double sx = 0, sy = 0;
    for (const auto& [x, y] : lp) {
        sx += x;
        sy += y;
    }
    const double n = static_cast<double>(lp.size());
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (const auto& [x, y] : lp) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0) return fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    return fit;
}

inline SlopeFit fit_block_medians(const std::vector<BlockMedian>& blocks) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& b : blocks) pts.emplace_back(b.center, b.median);
    return loglog_fit(pts);
}

}  // namespace hurwitz
