#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ingest.hpp"
#include "simulation.hpp"
#include "stats.hpp"

namespace spinmarket {

struct StatsOptions {
    int fit_lo = 1;
    int fit_hi = 100;
    int histogram_bins = 64;
    int acf_max_lag = 200;
};

inline StatsOptions stats_options_of(const ScenarioConfig& c) {
    return StatsOptions{c.fit_lo, c.fit_hi, c.histogram_bins, c.acf_max_lag};
}

// Everything derived from one close series. Simulated and ingested data both
// land here, through this one function.
struct SeriesReports {
    ReturnSeries returns; // lag-1 log returns of the closes
    AcfReport raw_acf;
    AcfReport abs_acf; // carries the power-law fit
    HistogramReport histogram;
    VariogramReport variogram;
};

inline SeriesReports compute_series_reports(const std::vector<double>& closes, const StatsOptions& opt,
                                            int resolution) {
    SeriesReports reports;
    reports.returns = log_returns(closes, 1, resolution);
    const int lag_cap = opt.acf_max_lag > opt.fit_hi ? opt.acf_max_lag : opt.fit_hi;
    reports.raw_acf = acf(reports.returns, lag_cap);
    reports.abs_acf = abs_acf_power_fit(reports.returns, opt.fit_lo, opt.fit_hi, lag_cap);
    reports.histogram = histogram(reports.returns, opt.histogram_bins);
    reports.variogram = variogram(reports.returns, lag_cap);
    return reports;
}

struct RunArtifact {
    ScenarioConfig config;
    std::vector<double> prices; // opening price, then one per round
    std::vector<RoundRecord> records;
    std::vector<double> daily_closes;
    SeriesReports reports;
    Diagnostics diagnostics;
};

using RoundObserver = std::function<void(const SimulationState&, const RoundRecord&)>;

// Full run: init, L decision rounds, then the stats pipeline on daily
// closes of the formed prices (the opening draw is not a traded price).
// The observer, when given, sees the state after every completed round.
inline RunArtifact run(const ScenarioConfig& config, const RoundObserver& observer = {}) {
    SimulationState st = init_simulation(config, config.seed);

    RunArtifact artifact;
    artifact.records.reserve(static_cast<std::size_t>(config.rounds));
    for (std::int64_t t = 1; t <= config.rounds; ++t) {
        const ConsultationResult consult = consultation_round(st);
        const RoundRecord record = run_decision_round(st, consult.sweeps);
        if (observer) observer(st, record);
        artifact.records.push_back(record);
    }

    artifact.config = st.config;
    artifact.prices = st.market.price_history;
    artifact.diagnostics = st.diagnostics;

    const std::vector<double> round_prices(artifact.prices.begin() + 1, artifact.prices.end());
    artifact.daily_closes = aggregate_daily(round_prices, config.rounds_per_day);
    artifact.reports =
        compute_series_reports(artifact.daily_closes, stats_options_of(config), config.rounds_per_day);
    return artifact;
}

struct AnalysisArtifact {
    std::string source;
    IngestResult ingest;
    StatsOptions options;
    SeriesReports reports;
};

inline AnalysisArtifact analyze_file(const std::string& path, const StatsOptions& options) {
    AnalysisArtifact artifact;
    artifact.source = path;
    artifact.options = options;
    artifact.ingest = ingest_prices(path);
    artifact.reports = compute_series_reports(artifact.ingest.closes, options, 1);
    return artifact;
}

} // namespace spinmarket
