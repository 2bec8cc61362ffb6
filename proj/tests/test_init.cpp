#include <cmath>
#include <cstdint>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include <spinmarket/simulation.hpp>

using spinmarket::ConfigError;
using spinmarket::init_simulation;
using spinmarket::InitialForceRule;
using spinmarket::preset;
using spinmarket::RandomSource;
using spinmarket::ScenarioConfig;
using spinmarket::SimulationState;

TEST_CASE("same seed initializes identical states") {
    const ScenarioConfig cfg = preset("A-small");
    const SimulationState a = init_simulation(cfg, 42);
    const SimulationState b = init_simulation(cfg, 42);
    REQUIRE(a.spins == b.spins);
    REQUIRE(a.thresholds == b.thresholds);
    REQUIRE(a.noise == b.noise);
    REQUIRE(a.cash == b.cash);
    REQUIRE(a.shares == b.shares);
    REQUIRE(a.couplings.background == b.couplings.background);
    REQUIRE(a.couplings.initial_force == b.couplings.initial_force);
    REQUIRE(a.market.price == b.market.price);
    REQUIRE(a.market.fundamental == b.market.fundamental);
    for (int k = 0; k < a.history.filled(); ++k)
        REQUIRE(a.history.epoch_price(k) == b.history.epoch_price(k));
}

TEST_CASE("endowments follow the config for agents and the maker") {
    const ScenarioConfig cfg = preset("A");
    const SimulationState st = init_simulation(cfg, 7);
    for (const double c : st.cash) REQUIRE(c == 100.0);
    for (const std::int64_t s : st.shares) REQUIRE(s == 100);
    REQUIRE(st.market.maker_cash == 10240.0);
    REQUIRE(st.market.maker_shares == 10240);
    REQUIRE(st.round == 0);
}

TEST_CASE("memory depth 20 leaves 21 price levels in reach at start") {
    ScenarioConfig cfg = preset("A-small");
    REQUIRE(cfg.memory_span == 20);
    const SimulationState st = init_simulation(cfg, 3);
    REQUIRE(st.history.depth() == 20);
    REQUIRE(st.history.filled() == 20);
    REQUIRE(st.history.stored_prices() == 21);
    REQUIRE(st.history.latest_price() == st.market.price);
    REQUIRE(st.market.price_history.size() == 1);
}

TEST_CASE("drawn quantities live in their documented ranges") {
    const ScenarioConfig cfg = preset("A-small");
    const SimulationState st = init_simulation(cfg, 11);
    for (const double w : st.couplings.background) {
        REQUIRE(w > -2.0);
        REQUIRE(w < 2.0);
    }
    for (const auto f : st.couplings.initial_force) REQUIRE((f == 0 || f == 1));
    for (const double x : st.thresholds) REQUIRE(x > 0.0);
    for (int k = 0; k < st.history.filled(); ++k) {
        REQUIRE(st.history.epoch_price(k) > 0.0);
        REQUIRE(st.history.epoch_price(k) < 1.0);
    }
    REQUIRE(st.history.trailing_price() > 0.0);
    REQUIRE(st.history.trailing_price() < 1.0);
    REQUIRE(st.market.price > 0.0);
    REQUIRE(st.market.price < 1.0);
    REQUIRE(st.market.fundamental == st.market.price);
    for (const auto s : st.spins) {
        REQUIRE(s >= -1);
        REQUIRE(s <= 1);
    }
}

TEST_CASE("couplings are directed") {
    const ScenarioConfig cfg = preset("A-small");
    const SimulationState st = init_simulation(cfg, 13);
    // reverse direction pairs: north<->south, west<->east
    const int reverse[4] = {1, 0, 3, 2};
    bool any_asymmetric = false;
    for (int i = 0; i < st.topology.size() && !any_asymmetric; ++i) {
        for (int d = 0; d < 4; ++d) {
            const int j = st.topology.neighbour(i, d);
            if (st.couplings.background_of(i, d) != st.couplings.background_of(j, reverse[d])) {
                any_asymmetric = true;
                break;
            }
        }
    }
    REQUIRE(any_asymmetric);
}

TEST_CASE("replaying the documented draw order reproduces the state") {
    ScenarioConfig cfg = preset("A-small");
    const std::uint64_t seed = 123;
    const SimulationState st = init_simulation(cfg, seed);

    RandomSource rng(seed);
    spinmarket::SubStream& init = rng.init();
    const int n = cfg.agents;
    const int tau = cfg.memory_span;

    std::vector<std::vector<int>> epoch_spins(static_cast<std::size_t>(tau),
                                              std::vector<int>(static_cast<std::size_t>(n)));
    std::vector<double> epoch_price(static_cast<std::size_t>(tau));
    for (int e = 0; e < tau; ++e) {
        for (int i = 0; i < n; ++i)
            epoch_spins[static_cast<std::size_t>(e)][static_cast<std::size_t>(i)] = init.spin3();
        epoch_price[static_cast<std::size_t>(e)] = init.uniform_open01();
    }
    std::vector<double> background(static_cast<std::size_t>(n) * 4);
    for (auto& w : background) w = init.uniform_range(-2.0, 2.0);
    std::vector<int> fallback(static_cast<std::size_t>(n) * 4);
    for (auto& f : fallback) f = init.bernoulli(cfg.connect_probability) ? 1 : 0;
    std::vector<double> thresholds(static_cast<std::size_t>(n));
    for (auto& x : thresholds) {
        do {
            x = std::fabs(init.normal(1.0));
        } while (x == 0.0);
    }
    std::vector<double> noise(static_cast<std::size_t>(n));
    for (auto& e : noise) e = init.normal(1.0);

    REQUIRE(st.couplings.background == background);
    REQUIRE(st.thresholds == thresholds);
    REQUIRE(st.noise == noise);

    // starting decisions from the seeded window, newest seeded price as
    // reference, each coefficient weighted by the neighbour's newest call
    const double reference = epoch_price[static_cast<std::size_t>(tau - 1)];
    const auto topo = spinmarket::build_lattice(n);
    std::vector<int> expected_spins(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double total = 0.0;
        for (int d = 0; d < 4; ++d) {
            const int j = topo.neighbour(i, d);
            double acc = background[static_cast<std::size_t>(i) * 4 + static_cast<std::size_t>(d)];
            for (int k = 0; k < tau; ++k) {
                const int s = epoch_spins[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
                if (s != 0)
                    acc += static_cast<double>(s) *
                           std::log(reference / epoch_price[static_cast<std::size_t>(k)]);
            }
            const int call = epoch_spins[static_cast<std::size_t>(tau - 1)][static_cast<std::size_t>(j)];
            total += acc * static_cast<double>(call);
        }
        expected_spins[static_cast<std::size_t>(i)] =
            spinmarket::decide_spin(total + noise[static_cast<std::size_t>(i)],
                                    thresholds[static_cast<std::size_t>(i)]);
    }
    for (int i = 0; i < n; ++i)
        REQUIRE(static_cast<int>(st.spins[static_cast<std::size_t>(i)]) ==
                expected_spins[static_cast<std::size_t>(i)]);

    const double opening = init.uniform_open01();
    REQUIRE(st.market.price == opening);

    // after the opening push the oldest seeded epoch price is only retained
    // as the trailing level, and the newest epoch is the starting decision
    REQUIRE(st.history.trailing_price() == epoch_price[0]);
    for (int k = 0; k + 1 < tau; ++k)
        REQUIRE(st.history.epoch_price(k) == epoch_price[static_cast<std::size_t>(k + 1)]);
    REQUIRE(st.history.epoch_price(tau - 1) == opening);
    for (int i = 0; i < n; ++i)
        REQUIRE(st.history.spin(i, tau - 1) == st.spins[static_cast<std::size_t>(i)]);
}

TEST_CASE("bernoulli start rule uses the fallback links for the first field") {
    ScenarioConfig cfg = preset("A-small");
    cfg.initial_force_rule = InitialForceRule::kBernoulli;
    const SimulationState st = init_simulation(cfg, 55);
    const auto topo = spinmarket::build_lattice(cfg.agents);
    const int newest = st.history.filled() - 1;
    for (int i = 0; i < cfg.agents; ++i) {
        double total = 0.0;
        for (int d = 0; d < 4; ++d) {
            const int j = topo.neighbour(i, d);
            // the opening epoch already holds the decided spins, so the
            // neighbour call has to come from the epoch seeded before it
            total += static_cast<double>(
                         st.couplings.initial_force[static_cast<std::size_t>(i) * 4 +
                                                    static_cast<std::size_t>(d)]) *
                     static_cast<double>(st.history.spin(j, newest - 1));
        }
        const int expected =
            spinmarket::decide_spin(total + st.noise[static_cast<std::size_t>(i)],
                                    st.thresholds[static_cast<std::size_t>(i)]);
        REQUIRE(static_cast<int>(st.spins[static_cast<std::size_t>(i)]) == expected);
    }

    ScenarioConfig memory_cfg = preset("A-small");
    const SimulationState memory_state = init_simulation(memory_cfg, 55);
    REQUIRE(memory_state.spins != st.spins);
}

TEST_CASE("invalid configs are rejected with the field name") {
    ScenarioConfig cfg = preset("A-small");
    cfg.agents = 63;
    try {
        init_simulation(cfg, 1);
        FAIL("expected a config error");
    } catch (const ConfigError& e) {
        REQUIRE(e.field() == "agents");
    }
}
