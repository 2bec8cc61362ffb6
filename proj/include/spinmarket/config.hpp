#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "text.hpp"

namespace spinmarket {

// How the very first decision round is coupled before any price memory
// exists: reuse the seeded history window, or fall back to 0/1 link draws.
enum class InitialForceRule { kMemory, kBernoulli };

struct ScenarioConfig {
    // population and horizon
    int agents = 1024;
    std::int64_t rounds = 80000;
    int memory_span = 20; // trust memory depth, in decision rounds

    // field and noise
    double activity_coeff = 0.01;
    double noise_sigma = 1.0;
    double connect_probability = 0.5; // weight of 1 vs 0 in the fallback link draws

    // endowments
    double endowment_cash = 100.0;
    std::int64_t endowment_shares = 100;
    double maker_cash = 10240.0;
    std::int64_t maker_shares = 10240;

    // fundamental policy
    double sell_factor = 1.5;
    double buy_factor = 0.667;
    double obey_probability = 0.70;
    int base_period = 275;
    int jitter_max = 15; // period jitter drawn from 1..jitter_max each round
    int window_length = 20;
    // per-round growth; compounds to +5% per 1500-round year (250 days x 6)
    double fundamental_growth = std::pow(1.05, 1.0 / 1500.0) - 1.0;

    // reporting
    int rounds_per_day = 6;
    int fit_lo = 1;
    int fit_hi = 100;
    int histogram_bins = 64;
    int acf_max_lag = 200;

    // run discipline
    std::uint64_t seed = 1;
    // one sweep per consultation round; raise to let a round iterate toward a fixed point
    int max_sweeps = 1;
    InitialForceRule initial_force_rule = InitialForceRule::kMemory;
    bool check_couplings = false;
};

inline void validate(const ScenarioConfig& c) {
    const auto fail = [](const char* field, const char* what) { throw ConfigError(field, what); };

    if (c.agents < 16) fail("agents", "need at least 16 agents for a 4x4 lattice");
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(c.agents))));
    if (side * side != c.agents) fail("agents", "agent count must be a perfect square");
    if (c.rounds < 0) fail("rounds", "round count cannot be negative");
    if (c.memory_span < 1) fail("memory_span", "memory depth must be at least 1");

    if (!(c.activity_coeff > 0.0)) fail("activity_coeff", "must be positive");
    if (!(c.noise_sigma >= 0.0)) fail("noise_sigma", "cannot be negative");
    if (!(c.connect_probability >= 0.0 && c.connect_probability <= 1.0))
        fail("connect_probability", "must lie in [0, 1]");

    if (!(c.endowment_cash >= 0.0)) fail("endowment_cash", "cannot be negative");
    if (c.endowment_shares < 0) fail("endowment_shares", "cannot be negative");
    if (!(c.maker_cash >= 0.0)) fail("maker_cash", "cannot be negative");
    if (c.maker_shares < 0) fail("maker_shares", "cannot be negative");

    if (!(c.sell_factor > 1.0)) fail("sell_factor", "must exceed 1");
    if (!(c.buy_factor > 0.0 && c.buy_factor < 1.0)) fail("buy_factor", "must lie in (0, 1)");
    if (!(c.obey_probability >= 0.0 && c.obey_probability <= 1.0))
        fail("obey_probability", "must lie in [0, 1]");
    if (c.base_period < 1) fail("base_period", "must be at least 1");
    if (c.jitter_max < 1) fail("jitter_max", "must be at least 1");
    if (c.window_length < 0) fail("window_length", "cannot be negative");
    if (c.window_length >= c.base_period) fail("window_length", "must be shorter than base_period");
    if (!(1.0 + c.fundamental_growth > 0.0)) fail("fundamental_growth", "growth factor must stay positive");

    if (c.rounds_per_day < 1) fail("rounds_per_day", "must be at least 1");
    if (c.fit_lo < 1) fail("fit_lo", "must be at least 1");
    if (c.fit_hi < c.fit_lo) fail("fit_hi", "cannot be below fit_lo");
    if (c.histogram_bins < 2) fail("histogram_bins", "need at least 2 bins");
    if (c.acf_max_lag < 1) fail("acf_max_lag", "must be at least 1");
    if (c.max_sweeps < 1) fail("max_sweeps", "must be at least 1");
}

// Named parameter sets. "A" is the reference crowd, "B" a longer-memory
// variant with stricter fundamentalists, "no-esteem" switches the trust
// memory off (depth 1 makes every memory term vanish), "A-small" is a
// scaled-down A for fast deterministic checks.
inline ScenarioConfig preset(std::string_view name) {
    ScenarioConfig c; // defaults are preset A
    if (name == "A") return c;
    if (name == "B") {
        c.memory_span = 40;
        c.base_period = 200;
        c.jitter_max = 10;
        c.window_length = 30;
        c.obey_probability = 0.90;
        return c;
    }
    if (name == "no-esteem") {
        c.memory_span = 1;
        return c;
    }
    if (name == "A-small") {
        c.agents = 64;
        c.rounds = 6000;
        c.maker_cash = 640.0;
        c.maker_shares = 640;
        return c;
    }
    throw ConfigError("preset", "unknown preset '" + std::string(name) +
                                    "' (expected A, B, no-esteem or A-small)");
}

inline std::vector<std::string> preset_names() { return {"A", "B", "no-esteem", "A-small"}; }

inline std::string to_string(InitialForceRule rule) {
    return rule == InitialForceRule::kMemory ? "memory" : "bernoulli";
}

// key = value lines, one per field, in a fixed order.
inline std::string serialize(const ScenarioConfig& c) {
    std::string out;
    const auto put = [&out](const char* key, const std::string& value) {
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    };
    put("agents", std::to_string(c.agents));
    put("rounds", std::to_string(c.rounds));
    put("memory_span", std::to_string(c.memory_span));
    put("activity_coeff", format_double(c.activity_coeff));
    put("noise_sigma", format_double(c.noise_sigma));
    put("connect_probability", format_double(c.connect_probability));
    put("endowment_cash", format_double(c.endowment_cash));
    put("endowment_shares", std::to_string(c.endowment_shares));
    put("maker_cash", format_double(c.maker_cash));
    put("maker_shares", std::to_string(c.maker_shares));
    put("sell_factor", format_double(c.sell_factor));
    put("buy_factor", format_double(c.buy_factor));
    put("obey_probability", format_double(c.obey_probability));
    put("base_period", std::to_string(c.base_period));
    put("jitter_max", std::to_string(c.jitter_max));
    put("window_length", std::to_string(c.window_length));
    put("fundamental_growth", format_double(c.fundamental_growth));
    put("rounds_per_day", std::to_string(c.rounds_per_day));
    put("fit_lo", std::to_string(c.fit_lo));
    put("fit_hi", std::to_string(c.fit_hi));
    put("histogram_bins", std::to_string(c.histogram_bins));
    put("acf_max_lag", std::to_string(c.acf_max_lag));
    put("seed", std::to_string(c.seed));
    put("max_sweeps", std::to_string(c.max_sweeps));
    put("initial_force_rule", to_string(c.initial_force_rule));
    put("check_couplings", c.check_couplings ? "true" : "false");
    return out;
}

// Accepts the serialize() format plus blank lines and '#' comments. Unknown
// keys are rejected; omitted keys keep their defaults.
inline ScenarioConfig parse_config(std::string_view content) {
    ScenarioConfig c;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= content.size()) {
        const std::size_t eol = content.find('\n', pos);
        std::string_view line = content.substr(pos, eol == std::string_view::npos ? content.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? content.size() + 1 : eol + 1;
        ++line_no;

        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no), "expected key = value");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));

        const auto want_int = [&](std::int64_t lo, std::int64_t hi) {
            std::int64_t v;
            if (!parse_int(value, v) || v < lo || v > hi)
                throw ConfigError(key, "not a valid integer value");
            return v;
        };
        const auto want_double = [&] {
            double v;
            if (!parse_double(value, v)) throw ConfigError(key, "not a valid numeric value");
            return v;
        };

        if (key == "agents") c.agents = static_cast<int>(want_int(0, 1 << 30));
        else if (key == "rounds") c.rounds = want_int(0, INT64_MAX);
        else if (key == "memory_span") c.memory_span = static_cast<int>(want_int(0, 1 << 30));
        else if (key == "activity_coeff") c.activity_coeff = want_double();
        else if (key == "noise_sigma") c.noise_sigma = want_double();
        else if (key == "connect_probability") c.connect_probability = want_double();
        else if (key == "endowment_cash") c.endowment_cash = want_double();
        else if (key == "endowment_shares") c.endowment_shares = want_int(0, INT64_MAX);
        else if (key == "maker_cash") c.maker_cash = want_double();
        else if (key == "maker_shares") c.maker_shares = want_int(0, INT64_MAX);
        else if (key == "sell_factor") c.sell_factor = want_double();
        else if (key == "buy_factor") c.buy_factor = want_double();
        else if (key == "obey_probability") c.obey_probability = want_double();
        else if (key == "base_period") c.base_period = static_cast<int>(want_int(0, 1 << 30));
        else if (key == "jitter_max") c.jitter_max = static_cast<int>(want_int(0, 1 << 30));
        else if (key == "window_length") c.window_length = static_cast<int>(want_int(0, 1 << 30));
        else if (key == "fundamental_growth") c.fundamental_growth = want_double();
        else if (key == "rounds_per_day") c.rounds_per_day = static_cast<int>(want_int(0, 1 << 30));
        else if (key == "fit_lo") c.fit_lo = static_cast<int>(want_int(0, 1 << 30));
        else if (key == "fit_hi") c.fit_hi = static_cast<int>(want_int(0, 1 << 30));
        else if (key == "histogram_bins") c.histogram_bins = static_cast<int>(want_int(0, 1 << 30));
        else if (key == "acf_max_lag") c.acf_max_lag = static_cast<int>(want_int(0, 1 << 30));
        else if (key == "seed") {
            std::uint64_t v;
            if (!parse_uint(value, v)) throw ConfigError(key, "not a valid unsigned integer");
            c.seed = v;
        } else if (key == "max_sweeps") c.max_sweeps = static_cast<int>(want_int(0, 1 << 30));
        else if (key == "initial_force_rule") {
            if (value == "memory") c.initial_force_rule = InitialForceRule::kMemory;
            else if (value == "bernoulli") c.initial_force_rule = InitialForceRule::kBernoulli;
            else throw ConfigError(key, "expected 'memory' or 'bernoulli'");
        } else if (key == "check_couplings") {
            if (value == "true") c.check_couplings = true;
            else if (value == "false") c.check_couplings = false;
            else throw ConfigError(key, "expected 'true' or 'false'");
        } else {
            throw ConfigError(key, "unknown configuration key");
        }
    }
    return c;
}

inline ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace spinmarket
