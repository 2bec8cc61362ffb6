#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "state.hpp"

namespace spinmarket {

// +1 if the field clears the threshold, -1 if it clears the negated one,
// 0 inside the open band. Both boundaries belong to the active states.
inline int decide_spin(double field, double threshold) {
    if (!(threshold > 0.0)) throw InternalError("decide_spin: threshold must be positive");
    if (field >= threshold) return +1;
    if (field <= -threshold) return -1;
    return 0;
}

// Thresholds track the realized price ratio once per decision round, which
// keeps the band scale-free against the price level.
inline double update_threshold(double threshold, double price, double prev_price) {
    if (!(threshold > 0.0)) throw InternalError("update_threshold: threshold must be positive");
    if (!(price > 0.0) || !(prev_price > 0.0)) throw InternalError("update_threshold: prices must be positive");
    return threshold * (price / prev_price);
}

struct LocalField {
    double value = 0.0;
    std::array<double, 4> contributions{};
    double noise = 0.0;
};

inline LocalField local_field(const std::array<double, 4>& forces, double noise_value) {
    LocalField field;
    field.contributions = forces;
    field.noise = noise_value;
    field.value = forces[0] + forces[1] + forces[2] + forces[3] + noise_value;
    return field;
}

// Trust force exerted by `source_agent` on whichever neighbour holds this
// `background` link: the standing disposition plus one credit per remembered
// epoch, each weighted by the log move from that epoch's price to the newest
// one. The newest epoch contributes nothing (its ratio is 1), so a depth-1
// buffer collapses the force to the background exactly.
inline double coupling_force(const HistoryBuffer& history, double background, int source_agent) {
    const int depth = history.filled();
    if (depth == 0) return background;
    const double latest = history.latest_price();
    double force = background;
    for (int k = 0; k < depth; ++k) {
        const int s = history.spin(source_agent, k);
        if (s != 0) force += static_cast<double>(s) * std::log(latest / history.epoch_price(k));
    }
    return force;
}

inline double coupling_force(const SimulationState& st, int agent, int direction) {
    return coupling_force(st.history, st.couplings.background_of(agent, direction),
                          st.topology.neighbour(agent, direction));
}

// All memory terms depend only on the source agent and on settled prices, so
// the per-neighbour trust coefficients are refreshed in one pass per round
// and frozen while agents consult; only the neighbours' current calls vary
// during relaxation. The accumulation order matches coupling_force term for
// term, which keeps the cached coefficients bit-identical to a pure
// recompute.
inline void refresh_forces(SimulationState& st) {
    const int n = st.topology.size();
    const HistoryBuffer& hist = st.history;
    const int depth = hist.filled();
    st.force_coeff.resize(static_cast<std::size_t>(n) * 4);

    std::vector<int> slots(static_cast<std::size_t>(depth));
    std::vector<double> logret(static_cast<std::size_t>(depth));
    const double latest = depth > 0 ? hist.latest_price() : 0.0;
    for (int k = 0; k < depth; ++k) {
        slots[static_cast<std::size_t>(k)] = hist.slot(k);
        logret[static_cast<std::size_t>(k)] = std::log(latest / hist.epoch_price(k));
    }

    for (int i = 0; i < n; ++i) {
        for (int d = 0; d < 4; ++d) {
            const int j = st.topology.neighbour(i, d);
            const std::int8_t* row = hist.agent_row(j);
            double acc = st.couplings.background_of(i, d);
            for (int k = 0; k < depth; ++k) {
                const int s = row[slots[static_cast<std::size_t>(k)]];
                if (s != 0) acc += static_cast<double>(s) * logret[static_cast<std::size_t>(k)];
            }
            st.force_coeff[static_cast<std::size_t>(i) * 4 + static_cast<std::size_t>(d)] = acc;
        }
    }
}

// Debug cross-check: the cached table must equal a pure per-pair recompute
// exactly, and with a depth-1 memory every pair coefficient must equal its
// background link exactly.
inline void verify_forces(const SimulationState& st) {
    const int n = st.topology.size();
    for (int i = 0; i < n; ++i) {
        for (int d = 0; d < 4; ++d) {
            const double pair = coupling_force(st, i, d);
            if (st.config.memory_span == 1 && pair != st.couplings.background_of(i, d))
                throw InternalError("verify_forces: depth-1 memory must collapse to the background");
            if (pair != st.force_coeff[static_cast<std::size_t>(i) * 4 + static_cast<std::size_t>(d)])
                throw InternalError("verify_forces: cached coefficient deviates from recompute");
        }
    }
}

struct ConsultationResult {
    int sweeps = 0;
    bool relaxed = false;
    std::int64_t flips = 0;
};

// Relaxation phase of one decision round. Each trust coefficient weights the
// neighbour's current call, so a flip changes the field of everyone watching
// the flipped agent and opinion cascades can run until they exhaust
// themselves. Each agent gets one fresh private noise value for the whole
// round, drawn up front in id order; the coefficients are frozen too, so the
// sweeps relax the interacting spin pattern alone. Agents are drawn
// uniformly with replacement in sweeps of n, and the round ends on the first
// sweep with zero changes, or at the sweep cap (recorded as a diagnostic,
// never fatal). Holdings are untouched here.
inline ConsultationResult consultation_round(SimulationState& st) {
    refresh_forces(st);
    if (st.config.check_couplings) verify_forces(st);

    SubStream& select = st.rng.selection();
    SubStream& noise = st.rng.noise();
    const int n = st.topology.size();
    const double sigma = st.config.noise_sigma;

    for (int i = 0; i < n; ++i) st.noise[static_cast<std::size_t>(i)] = noise.normal(sigma);

    ConsultationResult result;
    for (int sweep = 1; sweep <= st.config.max_sweeps; ++sweep) {
        int changes = 0;
        for (int draw = 0; draw < n; ++draw) {
            const int i = static_cast<int>(select.uniform_below(static_cast<std::uint64_t>(n)));
            const auto base = static_cast<std::size_t>(i) * 4;
            double field = st.noise[static_cast<std::size_t>(i)];
            for (int d = 0; d < 4; ++d) {
                const auto j = static_cast<std::size_t>(st.topology.neighbour(i, d));
                field += st.force_coeff[base + static_cast<std::size_t>(d)] *
                         static_cast<double>(st.spins[j]);
            }
            const int spin = decide_spin(field, st.thresholds[static_cast<std::size_t>(i)]);
            if (spin != st.spins[static_cast<std::size_t>(i)]) {
                st.spins[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(spin);
                ++changes;
            }
        }
        result.sweeps = sweep;
        result.flips += changes;
        if (changes == 0) {
            result.relaxed = true;
            break;
        }
    }
    if (!result.relaxed) ++st.diagnostics.max_sweep_rounds;
    st.diagnostics.total_sweeps += result.sweeps;
    return result;
}

enum class FundamentalAction { kNone, kSellAtMarket, kBuyAtMarket };

struct FundamentalPolicy {
    double sell_factor = 1.5;
    double buy_factor = 0.667;
    double obey_probability = 0.70;
    int base_period = 275;
    int jitter_max = 15;
    int window_length = 20;
};

inline FundamentalPolicy policy_of(const ScenarioConfig& c) {
    return FundamentalPolicy{c.sell_factor, c.buy_factor,   c.obey_probability,
                             c.base_period, c.jitter_max,   c.window_length};
}

inline bool fundamental_window_open(std::int64_t round, const FundamentalPolicy& policy, int jitter) {
    const std::int64_t period = policy.base_period + jitter;
    return round % period < policy.window_length;
}

// Value trading overrides herding inside periodic windows: when the window
// is open and the obedience coin allows it, an agent sells above a*F and
// buys below b*F regardless of what its neighbours say.
inline FundamentalAction fundamental_trigger(std::int64_t round, const FundamentalPolicy& policy, int jitter,
                                             double price, double fundamental, double coin) {
    if (!fundamental_window_open(round, policy, jitter)) return FundamentalAction::kNone;
    if (!(coin < policy.obey_probability)) return FundamentalAction::kNone;
    if (price > policy.sell_factor * fundamental) return FundamentalAction::kSellAtMarket;
    if (price < policy.buy_factor * fundamental) return FundamentalAction::kBuyAtMarket;
    return FundamentalAction::kNone;
}

} // namespace spinmarket
