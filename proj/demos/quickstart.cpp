// Minimal library tour: run a scaled-down scenario, then read the stylized
// facts straight off the artifact.

#include <cstdio>

#include <spinmarket/spinmarket.hpp>

int main() {
    spinmarket::ScenarioConfig cfg = spinmarket::preset("A-small");
    cfg.rounds = 3000;
    cfg.seed = 7;

    const spinmarket::RunArtifact artifact = spinmarket::run(cfg);

    std::printf("simulated %zu rounds -> %zu trading days\n", artifact.records.size(),
                artifact.daily_closes.size());
    std::printf("final price %.6f after starting at %.6f\n", artifact.prices.back(),
                artifact.prices.front());

    const auto& gamma = artifact.reports.abs_acf;
    std::printf("absolute-return ACF decays with gamma=%.3f over lags %d..%d\n", gamma.fitted_gamma,
                gamma.fit_lo, gamma.fit_hi);
    std::printf("daily log-return excess kurtosis: %.3f\n",
                artifact.reports.histogram.excess_kurtosis);
    std::printf("degenerate price rounds: %lld, sweep-cap hits: %lld\n",
                static_cast<long long>(artifact.diagnostics.degenerate_price_rounds),
                static_cast<long long>(artifact.diagnostics.max_sweep_rounds));

    // the same agent can be inspected directly
    const spinmarket::SimulationState st = spinmarket::init_simulation(cfg, cfg.seed);
    const spinmarket::AgentState a0 = st.agent_state(0);
    std::printf("agent 0 starts with spin %d, threshold %.4f, cash %.1f, shares %lld\n", a0.spin,
                a0.threshold, a0.cash, static_cast<long long>(a0.shares));
    return 0;
}
