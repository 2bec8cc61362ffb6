#include <cmath>
#include <cstdint>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include <spinmarket/simulation.hpp>

using namespace spinmarket;

TEST_CASE("balanced books and zero activity leave the price unchanged") {
    REQUIRE(form_price(3.7, 300, 300, 1024, 0.01) == 3.7);
    REQUIRE(form_price(3.7, 512, 256, 1024, 0.0) == 3.7);
}

TEST_CASE("an empty side is a guarded no-move") {
    REQUIRE(form_price(2.0, 0, 100, 1024, 0.01) == 2.0);
    REQUIRE(form_price(2.0, 100, 0, 1024, 0.01) == 2.0);
    REQUIRE(form_price(2.0, 0, 0, 1024, 0.01) == 2.0);
}

TEST_CASE("the reference imbalance moves the price by 2^0.0075") {
    // kappa = 0.01 * 768 / 1024 = 0.0075, ratio 2
    const double oracle = 1.00521214004147591243074771519; // 2^0.0075 to 30 digits
    const double price = form_price(1.0, 512, 256, 1024, 0.01);
    REQUIRE(std::fabs(price - oracle) < 1e-12);
}

TEST_CASE("price is nondecreasing in demand") {
    for (std::int64_t supply : {1, 17, 256, 900}) {
        double last = 0.0;
        for (std::int64_t demand = 1; demand <= 1000; demand += 7) {
            const double p = form_price(1.0, demand, supply, 1024, 0.01);
            REQUIRE(p >= last);
            last = p;
        }
    }
}

TEST_CASE("swapping demand and supply mirrors the log move") {
    RandomSource src(41);
    for (int k = 0; k < 2000; ++k) {
        const auto d = static_cast<std::int64_t>(src.init().uniform_below(1000) + 1);
        const auto s = static_cast<std::int64_t>(src.init().uniform_below(1000) + 1);
        const double p = src.init().uniform_open01() * 10.0 + 0.1;
        const double up = form_price(p, d, s, 1024, 0.01);
        const double down = form_price(p, s, d, 1024, 0.01);
        REQUIRE(std::fabs(up * down - p * p) <= 1e-12 * p * p);
    }
}

TEST_CASE("kappa stays within its band over live rounds") {
    ScenarioConfig cfg = preset("A-small");
    cfg.rounds = 0;
    SimulationState st = init_simulation(cfg, 47);
    for (int t = 0; t < 200; ++t) {
        const RoundRecord rec = step_round(st);
        REQUIRE(rec.kappa >= 0.0);
        REQUIRE(rec.kappa <= cfg.activity_coeff);
        REQUIRE(rec.demand + rec.supply <= cfg.agents);
        REQUIRE(rec.price > 0.0);
    }
}

TEST_CASE("fundamental growth compounds multiplicatively") {
    REQUIRE(advance_fundamental(1.0, 0.0) == 1.0);
    REQUIRE(std::fabs(advance_fundamental(1.0, 1.05 / 1500.0) - 1.0007) < 1e-15);
    double f = 1.0;
    for (int k = 0; k < 1500; ++k) f = advance_fundamental(f, 1.05 / 1500.0);
    REQUIRE(std::fabs(f - 2.8566016138755381) < 1e-9); // (1 + 1.05/1500)^1500
    const double e105 = 2.85765111806316378986431221625;  // e^1.05
    REQUIRE(std::fabs(f - e105) / e105 < 0.005);
    REQUIRE_THROWS_AS(advance_fundamental(1.0, -1.0), ConfigError);
    REQUIRE_THROWS_AS(advance_fundamental(1.0, -2.0), ConfigError);
}

TEST_CASE("the default growth rate compounds to 5 percent per 1500 rounds") {
    const ScenarioConfig c;
    double f = 1.0;
    for (int k = 0; k < 1500; ++k) f = advance_fundamental(f, c.fundamental_growth);
    REQUIRE(std::fabs(f - 1.05) < 1e-12);
}

namespace {

struct Desk {
    std::vector<double> cash;
    std::vector<std::int64_t> shares;
    MarketState market;

    double total_cash() const {
        double t = market.maker_cash;
        for (const double c : cash) t += c;
        return t;
    }
    std::int64_t total_shares() const {
        std::int64_t t = market.maker_shares;
        for (const std::int64_t s : shares) t += s;
        return t;
    }
};

Desk make_desk(std::size_t agents, double cash, std::int64_t shares, double maker_cash,
               std::int64_t maker_shares) {
    Desk d;
    d.cash.assign(agents, cash);
    d.shares.assign(agents, shares);
    d.market.maker_cash = maker_cash;
    d.market.maker_shares = maker_shares;
    return d;
}

} // namespace

TEST_CASE("one buyer and one seller close a conserving transfer") {
    Desk d = make_desk(2, 100.0, 1, 0.0, 0);
    OrderBookRound book;
    book.buyers = {0};
    book.sellers = {1};
    RandomSource src(51);
    const SettlementReport rep = settle_trades(book, 2.0, d.cash, d.shares, d.market, src.matching());
    REQUIRE(rep.matched == 1);
    REQUIRE(rep.maker_filled == 0);
    REQUIRE(rep.lapsed == 0);
    REQUIRE(d.cash[0] == 98.0);
    REQUIRE(d.cash[1] == 102.0);
    REQUIRE(d.shares[0] == 2);
    REQUIRE(d.shares[1] == 0);
    REQUIRE(d.total_cash() == 200.0);
    REQUIRE(d.total_shares() == 2);
}

TEST_CASE("insolvent orders are dropped untouched") {
    Desk d = make_desk(2, 0.0, 0, 100.0, 100);
    OrderBookRound book;
    book.buyers = {0};  // no cash
    book.sellers = {1}; // no shares
    RandomSource src(52);
    const SettlementReport rep = settle_trades(book, 2.0, d.cash, d.shares, d.market, src.matching());
    REQUIRE(rep.matched == 0);
    REQUIRE(rep.dropped_buys == 1);
    REQUIRE(rep.dropped_sells == 1);
    REQUIRE(rep.lapsed == 0);
    REQUIRE(d.cash[0] == 0.0);
    REQUIRE(d.shares[1] == 0);
    REQUIRE(d.market.maker_cash == 100.0);
    REQUIRE(d.market.maker_shares == 100);
}

TEST_CASE("three buyers against one seller with a one-share maker") {
    Desk d = make_desk(4, 100.0, 5, 100.0, 1);
    OrderBookRound book;
    book.buyers = {0, 1, 2};
    book.sellers = {3};
    RandomSource src(53);
    const SettlementReport rep = settle_trades(book, 2.0, d.cash, d.shares, d.market, src.matching());
    REQUIRE(rep.matched == 1);
    REQUIRE(rep.maker_filled == 1);
    REQUIRE(rep.lapsed == 1);
    REQUIRE(d.market.maker_shares == 0);
    REQUIRE(d.market.maker_cash == 102.0);
    REQUIRE(d.total_shares() == 21);
    REQUIRE(d.total_cash() == 500.0);
}

TEST_CASE("the maker buys the unmatched sell side while cash lasts") {
    Desk d = make_desk(3, 0.0, 4, 5.0, 0);
    OrderBookRound book;
    book.sellers = {0, 1, 2};
    RandomSource src(54);
    const SettlementReport rep = settle_trades(book, 2.0, d.cash, d.shares, d.market, src.matching());
    // maker cash 5.0 covers two orders at price 2
    REQUIRE(rep.matched == 0);
    REQUIRE(rep.maker_filled == 2);
    REQUIRE(rep.lapsed == 1);
    REQUIRE(d.market.maker_cash == 1.0);
    REQUIRE(d.market.maker_shares == 2);
    REQUIRE(d.total_shares() == 12);
}

TEST_CASE("settlement conserves wealth over random books") {
    RandomSource src(55);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 40;
        Desk d = make_desk(n, 0.0, 0, 50.0, 25);
        for (std::size_t i = 0; i < n; ++i) {
            d.cash[i] = src.init().uniform01() * 10.0;
            d.shares[i] = static_cast<std::int64_t>(src.init().uniform_below(4));
        }
        OrderBookRound book;
        for (std::size_t i = 0; i < n; ++i) {
            const auto side = src.init().uniform_below(3);
            if (side == 0) book.buyers.push_back(static_cast<std::int32_t>(i));
            else if (side == 1) book.sellers.push_back(static_cast<std::int32_t>(i));
        }
        const double price = src.init().uniform_open01() * 4.0 + 0.05;
        const double cash_before = d.total_cash();
        const std::int64_t shares_before = d.total_shares();

        settle_trades(book, price, d.cash, d.shares, d.market, src.matching());

        REQUIRE(d.total_shares() == shares_before);
        REQUIRE(std::fabs(d.total_cash() - cash_before) <= 1e-9 * (std::fabs(cash_before) + 1.0));
        for (const double c : d.cash) REQUIRE(c >= 0.0);
        for (const std::int64_t s : d.shares) REQUIRE(s >= 0);
        REQUIRE(d.market.maker_cash >= 0.0);
        REQUIRE(d.market.maker_shares >= 0);
    }
}

TEST_CASE("an all-passive round trades nothing and keeps the price") {
    ScenarioConfig cfg = preset("A-small");
    SimulationState st = init_simulation(cfg, 61);
    std::fill(st.spins.begin(), st.spins.end(), static_cast<std::int8_t>(0));
    const double price_before = st.market.price;
    const RoundRecord rec = run_decision_round(st, 1);
    REQUIRE(rec.demand == 0);
    REQUIRE(rec.supply == 0);
    REQUIRE(rec.price == price_before);
    REQUIRE(rec.matched == 0);
    REQUIRE(rec.maker_filled == 0);
    REQUIRE(st.diagnostics.degenerate_price_rounds >= 1);
}

TEST_CASE("decision rounds conserve shares exactly and cash tightly") {
    ScenarioConfig cfg = preset("A-small");
    SimulationState st = init_simulation(cfg, 62);
    const std::int64_t shares0 = st.total_shares();
    const double cash0 = st.total_cash();
    for (int t = 0; t < 120; ++t) {
        step_round(st);
        REQUIRE(st.total_shares() == shares0);
        REQUIRE(std::fabs(st.total_cash() - cash0) <= 1e-9 * cash0);
        for (const double c : st.cash) REQUIRE(c >= 0.0);
        for (const std::int64_t s : st.shares) REQUIRE(s >= 0);
    }
}

TEST_CASE("threshold rescaling tracks the formed price each round") {
    ScenarioConfig cfg = preset("A-small");
    SimulationState st = init_simulation(cfg, 63);
    for (int t = 0; t < 20; ++t) {
        const std::vector<double> before = st.thresholds;
        const double price_before = st.market.price;
        const ConsultationResult consult = consultation_round(st);
        const std::vector<double> relaxed = st.thresholds; // unchanged by consultation
        REQUIRE(relaxed == before);
        const RoundRecord rec = run_decision_round(st, consult.sweeps);
        const double ratio = rec.price / price_before;
        for (std::size_t i = 0; i < before.size(); ++i)
            REQUIRE(st.thresholds[i] == before[i] * ratio);
    }
}

TEST_CASE("a full-size opening round reproduces frozen values") {
    ScenarioConfig cfg = preset("A");
    cfg.seed = 42;
    SimulationState st = init_simulation(cfg, cfg.seed);
    const ConsultationResult consult = consultation_round(st);
    const RoundRecord rec = run_decision_round(st, consult.sweeps);
    REQUIRE(rec.demand == 456);
    REQUIRE(rec.supply == 475);
    REQUIRE(rec.matched == 456);
    REQUIRE(rec.maker_filled == 19);
    REQUIRE(rec.lapsed == 0);
    REQUIRE(rec.sweeps == 1);
    REQUIRE(std::fabs(rec.kappa - 0.009091796875) <= 1e-12);
    REQUIRE(std::fabs(rec.price - 0.9668880328203624) <= 1e-12);
}
