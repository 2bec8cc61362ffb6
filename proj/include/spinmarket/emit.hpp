#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "artifact.hpp"
#include "text.hpp"

namespace spinmarket {

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open for writing: " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw DataError("write failed: " + path.string());
}

inline std::string acf_table(const AcfReport& raw, const AcfReport& abs) {
    std::string t = "lag\traw\tabsolute\n";
    const std::size_t rows = raw.values.size() < abs.values.size() ? raw.values.size() : abs.values.size();
    for (std::size_t k = 0; k < rows; ++k) {
        t += std::to_string(raw.lags[k]);
        t += '\t';
        t += format_double(raw.values[k]);
        t += '\t';
        t += format_double(abs.values[k]);
        t += '\n';
    }
    return t;
}

inline std::string returns_table(const ReturnSeries& returns, const char* index_name) {
    std::string t = std::string(index_name) + "\tlog_return\n";
    for (std::size_t i = 0; i < returns.values.size(); ++i) {
        t += std::to_string(i + 1);
        t += '\t';
        t += format_double(returns.values[i]);
        t += '\n';
    }
    return t;
}

inline std::string histogram_table(const HistogramReport& h) {
    std::string t = "bin_left\tbin_right\tcount\n";
    for (std::size_t k = 0; k < h.counts.size(); ++k) {
        t += format_double(h.bin_edges[k]);
        t += '\t';
        t += format_double(h.bin_edges[k + 1]);
        t += '\t';
        t += std::to_string(h.counts[k]);
        t += '\n';
    }
    return t;
}

inline std::string variogram_table(const VariogramReport& v) {
    std::string t = "lag\tsemivariance\n";
    for (std::size_t k = 0; k < v.lags.size(); ++k) {
        t += std::to_string(v.lags[k]);
        t += '\t';
        t += format_double(v.semivariance[k]);
        t += '\n';
    }
    return t;
}

inline std::string gamma_summary(const AcfReport& abs) {
    std::string t;
    t += std::string("fitted = ") + (abs.fitted ? "true" : "false") + '\n';
    t += "exponent = " + format_double(abs.fitted_gamma) + '\n';
    t += "fit_lo = " + std::to_string(abs.fit_lo) + '\n';
    t += "fit_hi = " + std::to_string(abs.fit_hi) + '\n';
    t += "points = " + std::to_string(abs.fit_points) + '\n';
    t += "residual = " + format_double(abs.residual) + '\n';
    t += "r_squared = " + format_double(abs.r_squared) + '\n';
    t += std::string("range_shrunk = ") + (abs.fit_range_shrunk ? "true" : "false") + '\n';
    return t;
}

inline nlohmann::json gamma_json(const AcfReport& abs) {
    return nlohmann::json{{"fitted", abs.fitted},          {"exponent", abs.fitted_gamma},
                          {"fit_lo", abs.fit_lo},          {"fit_hi", abs.fit_hi},
                          {"points", abs.fit_points},      {"residual", abs.residual},
                          {"r_squared", abs.r_squared},    {"range_shrunk", abs.fit_range_shrunk}};
}

inline nlohmann::json reports_json(const SeriesReports& reports) {
    return nlohmann::json{{"returns", reports.returns.values.size()},
                          {"resolution", reports.returns.resolution},
                          {"gamma", gamma_json(reports.abs_acf)},
                          {"return_mean", reports.raw_acf.mean},
                          {"return_variance", reports.raw_acf.variance},
                          {"excess_kurtosis", reports.histogram.excess_kurtosis},
                          {"histogram_degenerate", reports.histogram.degenerate}};
}

} // namespace detail

// Writes the full result set for one simulated run. Re-emitting the same
// artifact yields byte-identical files.
inline void emit(const RunArtifact& artifact, const std::string& out_dir) {
    namespace fs = std::filesystem;
    const fs::path dir(out_dir);
    fs::create_directories(dir);

    detail::write_file(dir / "config.txt", serialize(artifact.config));

    std::string rounds = "round\tprice\tdemand\tsupply\tkappa\tmatched\tmaker_filled\tlapsed\tsweeps\n";
    for (const RoundRecord& r : artifact.records) {
        rounds += std::to_string(r.round);
        rounds += '\t';
        rounds += format_double(r.price);
        rounds += '\t';
        rounds += std::to_string(r.demand);
        rounds += '\t';
        rounds += std::to_string(r.supply);
        rounds += '\t';
        rounds += format_double(r.kappa);
        rounds += '\t';
        rounds += std::to_string(r.matched);
        rounds += '\t';
        rounds += std::to_string(r.maker_filled);
        rounds += '\t';
        rounds += std::to_string(r.lapsed);
        rounds += '\t';
        rounds += std::to_string(r.sweeps);
        rounds += '\n';
    }
    detail::write_file(dir / "rounds.tsv", rounds);

    detail::write_file(dir / "daily_returns.tsv", detail::returns_table(artifact.reports.returns, "day"));
    detail::write_file(dir / "acf.tsv", detail::acf_table(artifact.reports.raw_acf, artifact.reports.abs_acf));
    detail::write_file(dir / "histogram.tsv", detail::histogram_table(artifact.reports.histogram));
    detail::write_file(dir / "variogram.tsv", detail::variogram_table(artifact.reports.variogram));
    detail::write_file(dir / "gamma.txt", detail::gamma_summary(artifact.reports.abs_acf));

    const Diagnostics& d = artifact.diagnostics;
    std::string diag;
    diag += "degenerate_price_rounds = " + std::to_string(d.degenerate_price_rounds) + '\n';
    diag += "max_sweep_rounds = " + std::to_string(d.max_sweep_rounds) + '\n';
    diag += "fundamental_window_rounds = " + std::to_string(d.fundamental_window_rounds) + '\n';
    diag += "fundamental_overrides = " + std::to_string(d.fundamental_overrides) + '\n';
    diag += "dropped_buys = " + std::to_string(d.dropped_buys) + '\n';
    diag += "dropped_sells = " + std::to_string(d.dropped_sells) + '\n';
    diag += "matched_trades = " + std::to_string(d.matched_trades) + '\n';
    diag += "maker_fills = " + std::to_string(d.maker_fills) + '\n';
    diag += "lapsed_orders = " + std::to_string(d.lapsed_orders) + '\n';
    diag += "total_sweeps = " + std::to_string(d.total_sweeps) + '\n';
    detail::write_file(dir / "diagnostics.txt", diag);

    nlohmann::json summary;
    summary["seed"] = artifact.config.seed;
    summary["rounds"] = artifact.records.size();
    summary["days"] = artifact.daily_closes.size();
    summary["final_price"] = artifact.prices.empty() ? 0.0 : artifact.prices.back();
    summary["reports"] = detail::reports_json(artifact.reports);
    summary["diagnostics"] = nlohmann::json{{"degenerate_price_rounds", d.degenerate_price_rounds},
                                            {"max_sweep_rounds", d.max_sweep_rounds},
                                            {"fundamental_window_rounds", d.fundamental_window_rounds},
                                            {"fundamental_overrides", d.fundamental_overrides},
                                            {"dropped_buys", d.dropped_buys},
                                            {"dropped_sells", d.dropped_sells},
                                            {"matched_trades", d.matched_trades},
                                            {"maker_fills", d.maker_fills},
                                            {"lapsed_orders", d.lapsed_orders},
                                            {"total_sweeps", d.total_sweeps}};
    detail::write_file(dir / "summary.json", summary.dump(2) + "\n");
}

// Result set for an ingested close series; same tables, same schemas.
inline void emit(const AnalysisArtifact& artifact, const std::string& out_dir) {
    namespace fs = std::filesystem;
    const fs::path dir(out_dir);
    fs::create_directories(dir);

    detail::write_file(dir / "returns.tsv", detail::returns_table(artifact.reports.returns, "index"));
    detail::write_file(dir / "acf.tsv", detail::acf_table(artifact.reports.raw_acf, artifact.reports.abs_acf));
    detail::write_file(dir / "histogram.tsv", detail::histogram_table(artifact.reports.histogram));
    detail::write_file(dir / "variogram.tsv", detail::variogram_table(artifact.reports.variogram));
    detail::write_file(dir / "gamma.txt", detail::gamma_summary(artifact.reports.abs_acf));

    nlohmann::json summary;
    summary["source"] = artifact.source;
    summary["rows"] = artifact.ingest.rows_total;
    summary["closes"] = artifact.ingest.closes.size();
    summary["rejected_lines"] = artifact.ingest.rejected_lines;
    summary["close_column"] = artifact.ingest.close_column;
    summary["reports"] = detail::reports_json(artifact.reports);
    detail::write_file(dir / "summary.json", summary.dump(2) + "\n");
}

} // namespace spinmarket
