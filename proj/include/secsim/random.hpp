#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>

namespace secsim {

/// Identifies the (seed, stream_index) pair a draw sequence came from.
struct StreamId {
    std::uint64_t seed = 0;
    std::uint64_t stream_index = 0;

    friend bool operator==(const StreamId&, const StreamId&) = default;
};

/// Deterministic random stream.
///
/// Equal (seed, stream_index) pairs reproduce the identical draw sequence;
/// distinct stream indices produce independent sequences, so stochastic code
/// hands one stream per trial index to parallel workers and stays
/// reproducible regardless of execution order.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream_index = 0)
        : id_{seed, stream_index}, engine_(derive_state(seed, stream_index)) {}

    explicit RandomStream(StreamId id) : RandomStream(id.seed, id.stream_index) {}

    const StreamId& id() const noexcept { return id_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform draw in [0, 1) with 53-bit resolution.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal draw (Box-Muller; draws are generated in pairs).
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform(); // (0, 1], keeps log finite
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    double exponential(double mean) {
        if (!(mean > 0.0)) {
            throw std::domain_error("exponential mean must be positive");
        }
        return -mean * std::log(1.0 - uniform());
    }

    /// Poisson count via unit-rate arrival accumulation; cost grows linearly
    /// with the mean.
    std::uint64_t poisson(double mean) {
        if (!(mean >= 0.0)) {
            throw std::domain_error("poisson mean must be non-negative");
        }
        std::uint64_t count = 0;
        double acc = -std::log(1.0 - uniform());
        while (acc < mean) {
            ++count;
            acc += -std::log(1.0 - uniform());
        }
        return count;
    }

private:
    static std::uint64_t derive_state(std::uint64_t seed, std::uint64_t index) {
        return mix(mix(seed) ^ mix(index + 0x9e3779b97f4a7c15ULL));
    }

    // splitmix64 finalizer; decorrelates nearby (seed, index) pairs.
    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    StreamId id_;
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace secsim
