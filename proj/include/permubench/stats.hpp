#pragma once

// Small statistics helpers: the log-log scaling-exponent fit and the sample
// moments used by the sampler-fidelity checks.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace permubench {

struct FitPoint {
    std::size_t n = 0;
    double mean_iterations = 0;
    double success_rate = 1.0;
};

struct FitResult {
    double exponent = 0;   // slope of log mean-runtime vs log n
    double intercept = 0;
    double exponent_se = 0;
    std::vector<double> residuals;
    std::size_t points_used = 0;
};

// OLS on (ln n, ln mean). Cells below the success-rate floor are excluded
// rather than imputed: censoring biases means downward.
inline FitResult fit_exponent(const std::vector<FitPoint>& cells,
                              double success_floor = 0.999) {
    std::vector<double> xs, ys;
    for (const auto& c : cells) {
        if (c.success_rate < success_floor) continue;
        if (c.mean_iterations <= 0)
            throw std::invalid_argument("fit_exponent: non-positive mean");
        xs.push_back(std::log(static_cast<double>(c.n)));
        ys.push_back(std::log(c.mean_iterations));
    }
    const std::size_t k = xs.size();
    if (k < 3) throw std::invalid_argument("fit_exponent: need at least 3 usable cells");

    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < k; ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / static_cast<double>(k);
    const double my = sy / static_cast<double>(k);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < k; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    FitResult r;
    r.exponent = sxy / sxx;
    r.intercept = my - r.exponent * mx;
    r.points_used = k;
    double ssr = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const double res = ys[i] - (r.intercept + r.exponent * xs[i]);
        r.residuals.push_back(res);
        ssr += res * res;
    }
    if (k > 2) r.exponent_se = std::sqrt(ssr / static_cast<double>(k - 2) / sxx);
    return r;
}

inline double sample_moment(const std::vector<double>& xs, int order) {
    double s = 0;
    for (double x : xs) s += std::pow(x, order);
    return s / static_cast<double>(xs.size());
}

}  // namespace permubench
