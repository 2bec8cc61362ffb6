#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"

namespace spinmarket {

struct ReturnSeries {
    std::vector<double> values;
    int resolution = 1; // price samples per entry: 1 = per round, 6 = daily
};

struct AcfReport {
    std::vector<int> lags;      // 0..max_lag
    std::vector<double> values; // normalized autocorrelation per lag
    double mean = 0.0;
    double variance = 0.0;

    // power-law block, filled by the fitting ops
    bool fitted = false;
    double fitted_gamma = 0.0;
    double intercept = 0.0;
    int fit_lo = 0;
    int fit_hi = 0; // effective upper lag actually used
    int fit_points = 0;
    double residual = 0.0; // rms residual in log-log space
    double r_squared = 0.0;
    bool fit_range_shrunk = false;
};

struct HistogramReport {
    std::vector<double> bin_edges; // bins + 1 entries, strictly increasing unless degenerate
    std::vector<std::int64_t> counts;
    bool density = false; // counts are raw occupancy, not normalized
    bool degenerate = false;
    double mean = 0.0;
    double variance = 0.0;
    double excess_kurtosis = 0.0; // 0 under the degenerate flag
};

struct VariogramReport {
    std::vector<double> time_course; // the series itself, as plotted
    std::vector<int> lags;
    std::vector<double> semivariance;
    int resolution = 1;
};

inline ReturnSeries log_returns(const std::vector<double>& prices, int lag, int resolution = 1) {
    if (lag < 1) throw StatsError("lag must be positive");
    for (std::size_t i = 0; i < prices.size(); ++i)
        if (!(prices[i] > 0.0))
            throw DataError("nonpositive price at index " + std::to_string(i));
    if (static_cast<std::size_t>(lag) >= prices.size())
        throw StatsError("lag must be smaller than the price series length");

    ReturnSeries out;
    out.resolution = resolution;
    out.values.resize(prices.size() - static_cast<std::size_t>(lag));
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = std::log(prices[i + static_cast<std::size_t>(lag)] / prices[i]);
    return out;
}

// Every rounds_per_day-th price is a daily close; a trailing partial day is
// dropped.
inline std::vector<double> aggregate_daily(const std::vector<double>& round_prices, int rounds_per_day) {
    if (rounds_per_day < 1) throw ConfigError("rounds_per_day", "must be at least 1");
    if (round_prices.empty()) throw DataError("empty price series");
    std::vector<double> closes;
    closes.reserve(round_prices.size() / static_cast<std::size_t>(rounds_per_day));
    for (std::size_t i = static_cast<std::size_t>(rounds_per_day) - 1; i < round_prices.size();
         i += static_cast<std::size_t>(rounds_per_day))
        closes.push_back(round_prices[i]);
    return closes;
}

// Normalized autocorrelation with full-sample mean and variance; the lag
// product is averaged over its own valid pairs. Under this estimator the
// lag-0 value is exactly 1 and a pure alternating series scores exactly -1
// at lag 1.
inline AcfReport acf(const ReturnSeries& returns, int max_lag) {
    const std::vector<double>& x = returns.values;
    const auto n = static_cast<std::int64_t>(x.size());
    if (max_lag < 1) throw StatsError("max_lag must be positive");
    if (n <= static_cast<std::int64_t>(max_lag) + 1)
        throw StatsError("series too short for the requested maximum lag");

    double sum = 0.0;
    for (const double v : x) sum += v;
    const double mean = sum / static_cast<double>(n);
    double sumsq = 0.0;
    for (const double v : x) sumsq += v * v;
    const double variance = sumsq / static_cast<double>(n) - mean * mean;
    if (!(variance > 0.0)) throw StatsError("degenerate series");

    AcfReport report;
    report.mean = mean;
    report.variance = variance;
    report.lags.resize(static_cast<std::size_t>(max_lag) + 1);
    report.values.resize(static_cast<std::size_t>(max_lag) + 1);
    for (int lag = 0; lag <= max_lag; ++lag) {
        double prod = 0.0;
        for (std::int64_t t = lag; t < n; ++t)
            prod += x[static_cast<std::size_t>(t)] * x[static_cast<std::size_t>(t - lag)];
        const double avg = prod / static_cast<double>(n - lag);
        report.lags[static_cast<std::size_t>(lag)] = lag;
        report.values[static_cast<std::size_t>(lag)] = (avg - mean * mean) / variance;
    }
    return report;
}

struct PowerFit {
    double gamma = 0.0;
    double intercept = 0.0;
    int fit_lo = 0;
    int fit_hi = 0;
    int points = 0;
    double residual = 0.0;
    double r_squared = 0.0;
    bool shrunk = false;
};

// Least squares on ln(value) vs ln(lag). `values` is indexed by lag. A
// nonpositive value inside the range shrinks it to the longest positive
// prefix; fewer than two usable points is an error.
inline PowerFit fit_power_law(const std::vector<double>& values, int fit_lo, int fit_hi) {
    if (fit_lo < 1) throw StatsError("fit range must start at lag 1 or later");
    if (fit_hi < fit_lo) throw StatsError("empty power-law fit range");
    if (static_cast<std::size_t>(fit_hi) >= values.size())
        throw StatsError("fit range exceeds the computed lags");

    PowerFit fit;
    fit.fit_lo = fit_lo;
    std::vector<double> lx, ly;
    for (int lag = fit_lo; lag <= fit_hi; ++lag) {
        const double v = values[static_cast<std::size_t>(lag)];
        if (!(v > 0.0)) {
            fit.shrunk = true;
            break;
        }
        lx.push_back(std::log(static_cast<double>(lag)));
        ly.push_back(std::log(v));
    }
    if (lx.size() < 2) throw StatsError("power-law fit needs at least two positive points");
    fit.points = static_cast<int>(lx.size());
    fit.fit_hi = fit_lo + fit.points - 1;

    const auto m = static_cast<double>(lx.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double dx = lx[i] - mx, dy = ly[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw StatsError("degenerate power-law fit abscissa");
    const double slope = sxy / sxx;
    fit.gamma = -slope;
    fit.intercept = my - slope * mx;

    double ss_res = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (fit.intercept + slope * lx[i]);
        ss_res += r * r;
    }
    fit.residual = std::sqrt(ss_res / m);
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return fit;
}

// Autocorrelation of absolute returns with the power-law fit attached. A head
// without two positive points cannot carry a fit, so the report comes back
// with the curve alone and fitted stays false.
inline AcfReport abs_acf_power_fit(const ReturnSeries& returns, int fit_lo, int fit_hi,
                                   int max_lag = 0) {
    if (fit_lo < 1) throw StatsError("fit range must start at lag 1 or later");
    ReturnSeries magnitudes;
    magnitudes.resolution = returns.resolution;
    magnitudes.values.reserve(returns.values.size());
    for (const double v : returns.values) magnitudes.values.push_back(std::fabs(v));

    const int lag_cap = max_lag > fit_hi ? max_lag : fit_hi;
    AcfReport report = acf(magnitudes, lag_cap);
    int positive_prefix = 0;
    for (int lag = fit_lo; lag <= fit_hi; ++lag) {
        if (!(report.values[static_cast<std::size_t>(lag)] > 0.0)) break;
        ++positive_prefix;
    }
    if (positive_prefix < 2) {
        report.fit_lo = fit_lo;
        report.fit_range_shrunk = true;
        return report;
    }
    const PowerFit fit = fit_power_law(report.values, fit_lo, fit_hi);
    report.fitted = true;
    report.fitted_gamma = fit.gamma;
    report.intercept = fit.intercept;
    report.fit_lo = fit.fit_lo;
    report.fit_hi = fit.fit_hi;
    report.fit_points = fit.points;
    report.residual = fit.residual;
    report.r_squared = fit.r_squared;
    report.fit_range_shrunk = fit.shrunk;
    return report;
}

inline HistogramReport histogram(const ReturnSeries& returns, int bins) {
    if (bins < 2) throw ConfigError("histogram_bins", "need at least 2 bins");
    const std::vector<double>& x = returns.values;
    if (x.empty()) throw StatsError("empty sample");

    HistogramReport report;
    double lo = x[0], hi = x[0];
    double sum = 0.0;
    for (const double v : x) {
        if (v < lo) lo = v;
        if (v > hi) hi = v;
        sum += v;
    }
    const auto n = static_cast<double>(x.size());
    report.mean = sum / n;
    double m2 = 0.0, m4 = 0.0;
    for (const double v : x) {
        const double d = v - report.mean;
        const double d2 = d * d;
        m2 += d2;
        m4 += d2 * d2;
    }
    m2 /= n;
    m4 /= n;
    report.variance = m2;

    if (lo == hi) {
        report.degenerate = true;
        report.bin_edges = {lo, hi};
        report.counts = {static_cast<std::int64_t>(x.size())};
        report.excess_kurtosis = 0.0;
        return report;
    }

    report.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    const double width = (hi - lo) / static_cast<double>(bins);
    report.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
    for (int k = 0; k <= bins; ++k)
        report.bin_edges[static_cast<std::size_t>(k)] = lo + width * static_cast<double>(k);
    report.bin_edges[static_cast<std::size_t>(bins)] = hi;

    report.counts.assign(static_cast<std::size_t>(bins), 0);
    for (const double v : x) {
        int idx = static_cast<int>((v - lo) / width);
        if (idx < 0) idx = 0;
        if (idx >= bins) idx = bins - 1;
        ++report.counts[static_cast<std::size_t>(idx)];
    }
    return report;
}

// The time course is the series itself (clustering is visible to the eye);
// the semivariogram quantifies it per lag.
inline VariogramReport variogram(const ReturnSeries& returns, int max_lag) {
    const std::vector<double>& x = returns.values;
    if (x.empty()) throw StatsError("empty sample");
    VariogramReport report;
    report.resolution = returns.resolution;
    report.time_course = x;
    const auto n = static_cast<std::int64_t>(x.size());
    const std::int64_t cap = std::min<std::int64_t>(max_lag, n - 1);
    for (std::int64_t lag = 1; lag <= cap; ++lag) {
        double acc = 0.0;
        for (std::int64_t t = 0; t + lag < n; ++t) {
            const double d = x[static_cast<std::size_t>(t + lag)] - x[static_cast<std::size_t>(t)];
            acc += d * d;
        }
        report.lags.push_back(static_cast<int>(lag));
        report.semivariance.push_back(0.5 * acc / static_cast<double>(n - lag));
    }
    return report;
}

} // namespace spinmarket
