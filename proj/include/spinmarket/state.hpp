#pragma once

#include <cstdint>
#include <vector>

#include "config.hpp"
#include "errors.hpp"
#include "lattice.hpp"
#include "random.hpp"

namespace spinmarket {

// Rolling window of the last `depth` decision epochs: the spin every agent
// posted in that epoch, paired with the price that epoch settled at. The
// price evicted most recently is retained too, so the buffer covers depth+1
// price levels once warm. The newest epoch's price is what agents currently
// mark against, which makes the newest memory term vanish by construction.
class HistoryBuffer {
public:
    HistoryBuffer() = default;

    HistoryBuffer(int agents, int depth) : agents_(agents), depth_(depth) {
        if (agents < 1 || depth < 1) throw InternalError("history buffer needs agents >= 1, depth >= 1");
        spins_.assign(static_cast<std::size_t>(agents) * static_cast<std::size_t>(depth), 0);
        prices_.assign(static_cast<std::size_t>(depth), 0.0);
    }

    int agents() const noexcept { return agents_; }
    int depth() const noexcept { return depth_; }
    int filled() const noexcept { return filled_; }
    bool full() const noexcept { return filled_ == depth_; }

    // Price levels currently held, counting the retained pre-window one.
    int stored_prices() const noexcept { return filled_ + (has_trailing_ ? 1 : 0); }

    // Record one epoch, evicting the oldest once full.
    void push(const std::vector<std::int8_t>& spins, double price) {
        if (static_cast<int>(spins.size()) != agents_) throw InternalError("history push: wrong spin count");
        if (!(price > 0.0)) throw InternalError("history push: price must be positive");
        const int slot = head_;
        if (full()) {
            trailing_price_ = prices_[static_cast<std::size_t>(slot)];
            has_trailing_ = true;
        }
        for (int i = 0; i < agents_; ++i)
            spins_[static_cast<std::size_t>(i) * depth_ + slot] = spins[static_cast<std::size_t>(i)];
        prices_[static_cast<std::size_t>(slot)] = price;
        head_ = (head_ + 1) % depth_;
        if (filled_ < depth_) ++filled_;
    }

    double latest_price() const {
        if (filled_ == 0) throw InternalError("history: empty buffer has no latest price");
        return prices_[static_cast<std::size_t>(slot(filled_ - 1))];
    }

    double trailing_price() const {
        if (!has_trailing_) throw InternalError("history: no trailing price retained yet");
        return trailing_price_;
    }

    // Epoch k counts from the oldest stored (k = 0) to the newest.
    std::int8_t spin(int agent, int k) const {
        return spins_[static_cast<std::size_t>(agent) * depth_ + slot(k)];
    }

    double epoch_price(int k) const { return prices_[static_cast<std::size_t>(slot(k))]; }

    int slot(int k) const {
        if (k < 0 || k >= filled_) throw InternalError("history: epoch index out of range");
        const int oldest = full() ? head_ : 0;
        return (oldest + k) % depth_;
    }

    const std::int8_t* agent_row(int agent) const {
        return spins_.data() + static_cast<std::size_t>(agent) * depth_;
    }

private:
    int agents_ = 0;
    int depth_ = 0;
    int head_ = 0;   // next slot to overwrite
    int filled_ = 0;
    bool has_trailing_ = false;
    double trailing_price_ = 0.0;
    std::vector<std::int8_t> spins_; // agent-major, depth entries each
    std::vector<double> prices_;
};

// Static part of the directed influence network. background[4i + d] is the
// standing disposition of agent i toward its d-th neighbour; initial_force
// holds the 0/1 fallback links used when no price memory is trusted yet.
struct CouplingState {
    std::vector<double> background;
    std::vector<std::uint8_t> initial_force;
    double connect_probability = 0.5;

    double background_of(int agent, int direction) const {
        return background[static_cast<std::size_t>(agent) * 4 + static_cast<std::size_t>(direction)];
    }
};

struct MarketState {
    double price = 0.0;
    double fundamental = 0.0;
    double maker_cash = 0.0;
    std::int64_t maker_shares = 0;
    std::int64_t demand = 0; // of the last completed round
    std::int64_t supply = 0;
    std::vector<double> price_history; // opening price, then one entry per round
};

struct Diagnostics {
    std::int64_t degenerate_price_rounds = 0; // one side of the book empty
    std::int64_t max_sweep_rounds = 0;        // consultation used its whole sweep budget
    std::int64_t fundamental_window_rounds = 0;
    std::int64_t fundamental_overrides = 0;
    std::int64_t dropped_buys = 0; // insolvent orders removed before matching
    std::int64_t dropped_sells = 0;
    std::int64_t matched_trades = 0;
    std::int64_t maker_fills = 0;
    std::int64_t lapsed_orders = 0;
    std::int64_t total_sweeps = 0;
};

struct RoundRecord {
    std::int64_t round = 0;
    double price = 0.0;
    std::int64_t demand = 0;
    std::int64_t supply = 0;
    double kappa = 0.0;
    std::int64_t matched = 0;
    std::int64_t maker_filled = 0;
    std::int64_t lapsed = 0;
    int sweeps = 0;
};

// Convenience view of one agent; storage is column-wise in SimulationState.
struct AgentState {
    int spin = 0;
    double threshold = 0.0;
    double noise = 0.0;
    double cash = 0.0;
    std::int64_t shares = 0;
};

struct SimulationState {
    ScenarioConfig config;
    LatticeTopology topology;
    RandomSource rng;
    std::int64_t round = 0; // completed decision rounds

    std::vector<std::int8_t> spins;
    std::vector<double> thresholds;
    std::vector<double> noise;
    std::vector<double> cash;
    std::vector<std::int64_t> shares;

    CouplingState couplings;
    HistoryBuffer history;
    MarketState market;
    Diagnostics diagnostics;

    // trust coefficients toward each neighbour for the round being consulted,
    // 4 per agent, refreshed once per round
    std::vector<double> force_coeff;

    explicit SimulationState(const ScenarioConfig& cfg, std::uint64_t master_seed)
        : config(cfg), rng(master_seed) {}

    AgentState agent_state(int i) const {
        const auto idx = static_cast<std::size_t>(i);
        return AgentState{spins[idx], thresholds[idx], noise[idx], cash[idx], shares[idx]};
    }

    double total_cash() const {
        double sum = market.maker_cash;
        for (double c : cash) sum += c;
        return sum;
    }

    std::int64_t total_shares() const {
        std::int64_t sum = market.maker_shares;
        for (std::int64_t s : shares) sum += s;
        return sum;
    }
};

} // namespace spinmarket
