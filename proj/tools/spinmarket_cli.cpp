#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include <spinmarket/spinmarket.hpp>

namespace {

void print_run_summary(const spinmarket::RunArtifact& artifact, const std::string& out_dir) {
    const auto& g = artifact.reports.abs_acf;
    std::printf("rounds: %zu\n", artifact.records.size());
    std::printf("days: %zu\n", artifact.daily_closes.size());
    std::printf("final price: %s\n",
                spinmarket::format_double(artifact.prices.empty() ? 0.0 : artifact.prices.back()).c_str());
    std::printf("gamma: %s (lags %d..%d, r^2 %s)\n", spinmarket::format_double(g.fitted_gamma).c_str(),
                g.fit_lo, g.fit_hi, spinmarket::format_double(g.r_squared).c_str());
    std::printf("excess kurtosis: %s\n",
                spinmarket::format_double(artifact.reports.histogram.excess_kurtosis).c_str());
    std::printf("wrote: %s\n", out_dir.c_str());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spin-lattice market simulator and stylized-fact toolkit"};
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand("run", "simulate a scenario and emit its reports");
    std::string preset_name;
    std::string config_path;
    std::string run_out;
    std::uint64_t seed = 0;
    std::int64_t rounds_override = 0;
    int agents_override = 0;
    auto* preset_opt = run_cmd->add_option("--preset", preset_name, "built-in scenario name");
    auto* config_opt = run_cmd->add_option("--config", config_path, "scenario config file");
    preset_opt->excludes(config_opt);
    run_cmd->add_option("--out", run_out, "output directory")->required();
    auto* seed_opt = run_cmd->add_option("--seed", seed, "master seed override");
    auto* rounds_opt = run_cmd->add_option("--rounds", rounds_override, "decision-round override");
    auto* agents_opt = run_cmd->add_option("--agents", agents_override, "agent-count override");

    auto* analyze_cmd = app.add_subcommand("analyze", "stylized-fact reports for a daily close file");
    std::string input_path;
    std::string analyze_out;
    spinmarket::StatsOptions stats;
    analyze_cmd->add_option("--input", input_path, "delimited price file with a close column")->required();
    analyze_cmd->add_option("--out", analyze_out, "output directory")->required();
    analyze_cmd->add_option("--fit-lo", stats.fit_lo, "first lag of the power-law fit");
    analyze_cmd->add_option("--fit-hi", stats.fit_hi, "last lag of the power-law fit");
    analyze_cmd->add_option("--bins", stats.histogram_bins, "histogram bin count");
    analyze_cmd->add_option("--max-lag", stats.acf_max_lag, "highest autocorrelation lag");

    auto* presets_cmd = app.add_subcommand("presets", "list built-in scenario presets");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            if (preset_opt->count() == 0 && config_opt->count() == 0)
                throw spinmarket::ConfigError("run", "give either --preset or --config");
            spinmarket::ScenarioConfig cfg = preset_opt->count() > 0 ? spinmarket::preset(preset_name)
                                                                     : spinmarket::load_config(config_path);
            if (seed_opt->count() > 0) cfg.seed = seed;
            if (rounds_opt->count() > 0) cfg.rounds = rounds_override;
            if (agents_opt->count() > 0) cfg.agents = agents_override;
            spinmarket::validate(cfg);
            const spinmarket::RunArtifact artifact = spinmarket::run(cfg);
            spinmarket::emit(artifact, run_out);
            print_run_summary(artifact, run_out);
        } else if (analyze_cmd->parsed()) {
            const spinmarket::AnalysisArtifact artifact = spinmarket::analyze_file(input_path, stats);
            spinmarket::emit(artifact, analyze_out);
            const auto& g = artifact.reports.abs_acf;
            std::printf("closes: %zu (rejected rows: %zu)\n", artifact.ingest.closes.size(),
                        artifact.ingest.rejected_lines.size());
            std::printf("gamma: %s (lags %d..%d, r^2 %s)\n",
                        spinmarket::format_double(g.fitted_gamma).c_str(), g.fit_lo, g.fit_hi,
                        spinmarket::format_double(g.r_squared).c_str());
            std::printf("excess kurtosis: %s\n",
                        spinmarket::format_double(artifact.reports.histogram.excess_kurtosis).c_str());
            std::printf("wrote: %s\n", analyze_out.c_str());
        } else if (presets_cmd->parsed()) {
            for (const std::string& name : spinmarket::preset_names()) {
                const spinmarket::ScenarioConfig c = spinmarket::preset(name);
                std::printf("%-10s agents=%d rounds=%lld memory_span=%d base_period=%d window=%d obey=%s\n",
                            name.c_str(), c.agents, static_cast<long long>(c.rounds), c.memory_span,
                            c.base_period, c.window_length,
                            spinmarket::format_double(c.obey_probability).c_str());
            }
        }
    } catch (const spinmarket::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const spinmarket::DataError& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return 3;
    } catch (const spinmarket::InternalError& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 4;
    }
    return 0;
}
