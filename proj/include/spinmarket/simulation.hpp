#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "dynamics.hpp"
#include "market.hpp"
#include "state.hpp"

namespace spinmarket {

// Builds a ready-to-trade state. Draw order is part of the determinism
// contract and must not be reordered:
//   1. per seeded epoch, oldest first: n spins from {-1,0,+1}, then the
//      epoch's price from (0,1)
//   2. background couplings W, agent-major, neighbour order N/S/W/E
//   3. fallback 0/1 links, same order
//   4. per agent: starting threshold |N(0,1)|, redrawn on an exact zero
//   5. per agent: starting noise N(0,1)
// Starting spins then follow from the seeded window, the opening price is
// drawn from (0,1), and that first decision epoch is pushed so the memory
// window ends exactly at the opening price. The fundamental starts there
// too.
inline SimulationState init_simulation(const ScenarioConfig& config, std::uint64_t seed) {
    validate(config);

    SimulationState st(config, seed);
    st.config.seed = seed;
    st.topology = build_lattice(config.agents);
    const int n = st.topology.size();
    const auto nn = static_cast<std::size_t>(n);

    SubStream& init = st.rng.init();

    st.history = HistoryBuffer(n, config.memory_span);
    std::vector<std::int8_t> epoch_spins(nn);
    for (int e = 0; e < config.memory_span; ++e) {
        for (auto& s : epoch_spins) s = static_cast<std::int8_t>(init.spin3());
        st.history.push(epoch_spins, init.uniform_open01());
    }

    st.couplings.connect_probability = config.connect_probability;
    st.couplings.background.resize(nn * 4);
    for (auto& w : st.couplings.background) w = init.uniform_range(-2.0, 2.0);
    st.couplings.initial_force.resize(nn * 4);
    for (auto& f : st.couplings.initial_force)
        f = init.bernoulli(config.connect_probability) ? 1 : 0;

    st.thresholds.resize(nn);
    for (auto& x : st.thresholds) {
        do {
            x = std::fabs(init.normal(1.0));
        } while (x == 0.0);
    }
    st.noise.resize(nn);
    for (auto& e : st.noise) e = init.normal(1.0);

    st.cash.assign(nn, config.endowment_cash);
    st.shares.assign(nn, config.endowment_shares);
    st.market.maker_cash = config.maker_cash;
    st.market.maker_shares = config.maker_shares;

    // starting decisions: each neighbour's newest seeded call, weighted by
    // the chosen starting coefficient rule
    st.spins.resize(nn);
    const int newest = st.history.filled() - 1;
    for (int i = 0; i < n; ++i) {
        double total = 0.0;
        for (int d = 0; d < 4; ++d) {
            const int j = st.topology.neighbour(i, d);
            double coeff;
            if (config.initial_force_rule == InitialForceRule::kMemory)
                coeff = coupling_force(st, i, d);
            else
                coeff = static_cast<double>(st.couplings.initial_force[static_cast<std::size_t>(i) * 4 +
                                                                       static_cast<std::size_t>(d)]);
            total += coeff * static_cast<double>(st.history.spin(j, newest));
        }
        const double field = total + st.noise[static_cast<std::size_t>(i)];
        st.spins[static_cast<std::size_t>(i)] =
            static_cast<std::int8_t>(decide_spin(field, st.thresholds[static_cast<std::size_t>(i)]));
    }

    const double opening_price = init.uniform_open01();
    st.history.push(st.spins, opening_price);
    st.market.price = opening_price;
    st.market.fundamental = opening_price;
    st.market.price_history.push_back(opening_price);
    st.round = 0;
    return st;
}

// One full decision round: relax the spins, then trade on them.
inline RoundRecord step_round(SimulationState& st) {
    const ConsultationResult consult = consultation_round(st);
    return run_decision_round(st, consult.sweeps);
}

} // namespace spinmarket
