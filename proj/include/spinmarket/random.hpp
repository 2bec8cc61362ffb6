#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace spinmarket {

// One named stream of a RandomSource. All distribution mappings are written
// out here rather than taken from <random> so that a given seed produces the
// same draws on every standard library.
class SubStream {
public:
    void seed(std::seed_seq& seq) {
        engine_.seed(seq);
        has_spare_ = false;
        spare_ = 0.0;
    }

    std::uint64_t bits() { return engine_(); }

    // [0, 1), 53-bit resolution
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // (0, 1)
    double uniform_open01() {
        double u;
        do {
            u = uniform01();
        } while (u == 0.0);
        return u;
    }

    // (lo, hi)
    double uniform_range(double lo, double hi) { return lo + (hi - lo) * uniform_open01(); }

    // [0, n), unbiased via rejection of the uneven tail
    std::uint64_t uniform_below(std::uint64_t n) {
        if (n == 0) throw InternalError("uniform_below: empty range");
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = engine_();
            if (r >= threshold) return r % n;
        }
    }

    // Marsaglia polar method; the spare deviate is kept so draws come in pairs.
    double normal(double sigma = 1.0) {
        if (has_spare_) {
            has_spare_ = false;
            return spare_ * sigma;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m * sigma;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // {-1, 0, +1} with equal weight
    int spin3() { return static_cast<int>(uniform_below(3)) - 1; }

private:
    std::mt19937_64 engine_{};
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Seedable source with order-isolated named substreams. Each stream owns its
// own engine, so consumption on one never shifts the sequence of another.
class RandomSource {
public:
    enum Stream {
        kInit = 0,    // lattice couplings, endowment-time draws, starting prices
        kNoise,       // per-update idiosyncratic noise
        kSelection,   // which agent is consulted next
        kFundamental, // period jitter and obedience coins
        kMatching,    // order shuffles at settlement
        kStreamCount
    };

    explicit RandomSource(std::uint64_t master_seed) : master_seed_(master_seed) {
        for (std::uint32_t s = 0; s < kStreamCount; ++s) {
            std::seed_seq seq{static_cast<std::uint32_t>(master_seed_ & 0xffffffffu),
                              static_cast<std::uint32_t>(master_seed_ >> 32),
                              0x9e3779b9u * (s + 1u)};
            streams_[s].seed(seq);
        }
    }

    std::uint64_t master_seed() const noexcept { return master_seed_; }

    SubStream& init() { return streams_[kInit]; }
    SubStream& noise() { return streams_[kNoise]; }
    SubStream& selection() { return streams_[kSelection]; }
    SubStream& fundamental() { return streams_[kFundamental]; }
    SubStream& matching() { return streams_[kMatching]; }

private:
    std::uint64_t master_seed_;
    std::array<SubStream, kStreamCount> streams_;
};

// Fisher-Yates with the stream's own integer draws, so shuffles are portable.
template <typename T>
void shuffle(std::vector<T>& values, SubStream& stream) {
    for (std::size_t i = values.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(stream.uniform_below(i));
        std::swap(values[i - 1], values[j]);
    }
}

} // namespace spinmarket
