#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace demosim {

/// The single per-run random stream. Every stochastic decision in a run
/// draws from one instance in a fixed order; copying it forks the stream.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_{seed} {}

    /// Uniform on [0,1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Uniform integer in [0, n). n must be positive.
    std::size_t index(std::size_t n);

    /// Uniform integer in [lo, hi].
    int uniform_int(int lo, int hi) { return lo + static_cast<int>(index(static_cast<std::size_t>(hi - lo) + 1)); }

    double normal(double mean, double stddev) {
        return std::normal_distribution<double>{mean, stddev}(engine_);
    }

    std::uint64_t next_u64() { return engine_(); }

    friend bool operator==(const Rng&, const Rng&) = default;

private:
    std::mt19937_64 engine_;
};

/// Draws an index with probability weights[i] / sum(weights). Negative
/// weights count as zero; returns nullopt when no weight is positive.
std::optional<std::size_t> weighted_index(std::span<const double> weights, Rng& rng);

/// k distinct indices from [0, n), returned in ascending order (Floyd's
/// algorithm). k is clamped to n.
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k, Rng& rng);

} // namespace demosim
