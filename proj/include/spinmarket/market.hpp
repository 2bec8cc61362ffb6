#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "dynamics.hpp"
#include "state.hpp"

namespace spinmarket {

// One-share orders for one round, by agent id. An agent can sit on one side
// at most, since both sides derive from its single spin.
struct OrderBookRound {
    std::vector<std::int32_t> buyers;
    std::vector<std::int32_t> sellers;
};

struct SettlementReport {
    std::int64_t matched = 0;
    std::int64_t maker_filled = 0;
    std::int64_t lapsed = 0;
    std::int64_t dropped_buys = 0;
    std::int64_t dropped_sells = 0;
};

// Maker rule: the excess of demand over supply moves the price, scaled by
// how active the crowd is. An empty side leaves the price unchanged; the
// caller counts those rounds.
inline double form_price(double prev_price, std::int64_t demand, std::int64_t supply, int agents,
                         double activity_coeff) {
    if (!(prev_price > 0.0)) throw InternalError("form_price: price must be positive");
    if (demand <= 0 || supply <= 0) return prev_price;
    const double kappa =
        activity_coeff * static_cast<double>(demand + supply) / static_cast<double>(agents);
    return prev_price * std::pow(static_cast<double>(demand) / static_cast<double>(supply), kappa);
}

// Settlement at one fixed price. Orders from agents who cannot cover them
// are dropped up front; survivors are paired uniformly at random, and the
// leftover side trades with the maker one share at a time until the maker
// itself runs dry. Whatever remains lapses. No balance ever goes negative.
inline SettlementReport settle_trades(const OrderBookRound& orders, double price,
                                      std::vector<double>& cash, std::vector<std::int64_t>& shares,
                                      MarketState& market, SubStream& matching) {
    if (!(price > 0.0)) throw InternalError("settle_trades: price must be positive");

    SettlementReport report;
    std::vector<std::int32_t> buyers;
    buyers.reserve(orders.buyers.size());
    for (const std::int32_t id : orders.buyers) {
        if (cash[static_cast<std::size_t>(id)] >= price) buyers.push_back(id);
        else ++report.dropped_buys;
    }
    std::vector<std::int32_t> sellers;
    sellers.reserve(orders.sellers.size());
    for (const std::int32_t id : orders.sellers) {
        if (shares[static_cast<std::size_t>(id)] >= 1) sellers.push_back(id);
        else ++report.dropped_sells;
    }

    shuffle(buyers, matching);
    shuffle(sellers, matching);

    const std::size_t pairs = buyers.size() < sellers.size() ? buyers.size() : sellers.size();
    for (std::size_t k = 0; k < pairs; ++k) {
        const auto b = static_cast<std::size_t>(buyers[k]);
        const auto s = static_cast<std::size_t>(sellers[k]);
        cash[b] -= price;
        cash[s] += price;
        shares[b] += 1;
        shares[s] -= 1;
    }
    report.matched = static_cast<std::int64_t>(pairs);

    for (std::size_t k = pairs; k < buyers.size(); ++k) {
        if (market.maker_shares >= 1) {
            const auto b = static_cast<std::size_t>(buyers[k]);
            cash[b] -= price;
            shares[b] += 1;
            market.maker_cash += price;
            market.maker_shares -= 1;
            ++report.maker_filled;
        } else {
            ++report.lapsed;
        }
    }
    for (std::size_t k = pairs; k < sellers.size(); ++k) {
        if (market.maker_cash >= price) {
            const auto s = static_cast<std::size_t>(sellers[k]);
            cash[s] += price;
            shares[s] -= 1;
            market.maker_cash -= price;
            market.maker_shares += 1;
            ++report.maker_filled;
        } else {
            ++report.lapsed;
        }
    }
    return report;
}

inline double advance_fundamental(double fundamental, double growth) {
    if (!(fundamental > 0.0)) throw InternalError("advance_fundamental: fundamental must be positive");
    if (!(1.0 + growth > 0.0)) throw ConfigError("fundamental_growth", "growth factor must stay positive");
    return fundamental * (1.0 + growth);
}

// The trading phase of one decision round, entered with relaxed spins.
// Order of events: redraw the period jitter, apply value-trading overrides
// while the window is open, count the book, form the price, settle at it,
// rescale every threshold by the realized ratio, grow the fundamental, and
// roll the history window forward.
inline RoundRecord run_decision_round(SimulationState& st, int sweeps_used) {
    const std::int64_t t = st.round + 1;
    const ScenarioConfig& cfg = st.config;
    const int n = st.topology.size();
    SubStream& fnd = st.rng.fundamental();

    const FundamentalPolicy policy = policy_of(cfg);
    const int jitter = 1 + static_cast<int>(fnd.uniform_below(static_cast<std::uint64_t>(cfg.jitter_max)));

    const double price = st.market.price;
    const double fundamental = st.market.fundamental;
    if (fundamental_window_open(t, policy, jitter)) {
        ++st.diagnostics.fundamental_window_rounds;
        for (int i = 0; i < n; ++i) {
            const double coin = fnd.uniform01();
            switch (fundamental_trigger(t, policy, jitter, price, fundamental, coin)) {
            case FundamentalAction::kSellAtMarket:
                st.spins[static_cast<std::size_t>(i)] = -1;
                ++st.diagnostics.fundamental_overrides;
                break;
            case FundamentalAction::kBuyAtMarket:
                st.spins[static_cast<std::size_t>(i)] = +1;
                ++st.diagnostics.fundamental_overrides;
                break;
            case FundamentalAction::kNone:
                break;
            }
        }
    }

    OrderBookRound book;
    for (int i = 0; i < n; ++i) {
        const std::int8_t s = st.spins[static_cast<std::size_t>(i)];
        if (s > 0) book.buyers.push_back(static_cast<std::int32_t>(i));
        else if (s < 0) book.sellers.push_back(static_cast<std::int32_t>(i));
    }
    const auto demand = static_cast<std::int64_t>(book.buyers.size());
    const auto supply = static_cast<std::int64_t>(book.sellers.size());
    const double kappa =
        cfg.activity_coeff * static_cast<double>(demand + supply) / static_cast<double>(n);
    const double new_price = form_price(price, demand, supply, n, cfg.activity_coeff);
    if (demand == 0 || supply == 0) ++st.diagnostics.degenerate_price_rounds;

    const SettlementReport report =
        settle_trades(book, new_price, st.cash, st.shares, st.market, st.rng.matching());

    for (int i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        st.thresholds[idx] = update_threshold(st.thresholds[idx], new_price, price);
    }
    st.market.fundamental = advance_fundamental(st.market.fundamental, cfg.fundamental_growth);

    st.history.push(st.spins, new_price);
    st.market.price = new_price;
    st.market.price_history.push_back(new_price);
    st.market.demand = demand;
    st.market.supply = supply;
    st.round = t;

    st.diagnostics.dropped_buys += report.dropped_buys;
    st.diagnostics.dropped_sells += report.dropped_sells;
    st.diagnostics.matched_trades += report.matched;
    st.diagnostics.maker_fills += report.maker_filled;
    st.diagnostics.lapsed_orders += report.lapsed;

    return RoundRecord{t,      new_price,           demand, supply, kappa,
                       report.matched, report.maker_filled, report.lapsed, sweeps_used};
}

} // namespace spinmarket
