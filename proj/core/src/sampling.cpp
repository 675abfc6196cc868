#include "demosim/sampling.h"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace demosim {

std::size_t Rng::index(std::size_t n) {
    if (n == 0) throw std::invalid_argument("Rng::index: empty range");
    // Rejection sampling keeps the draw exactly uniform.
    const std::uint64_t range = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return static_cast<std::size_t>(x % range);
}

std::optional<std::size_t> weighted_index(std::span<const double> weights, Rng& rng) {
    double total = 0.0;
    std::optional<std::size_t> last_positive;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] > 0.0) {
            total += weights[i];
            last_positive = i;
        }
    }
    if (!last_positive) return std::nullopt;

    const double target = rng.uniform01() * total;
    double cumulative = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (!(weights[i] > 0.0)) continue;
        cumulative += weights[i];
        if (target < cumulative) return i;
    }
    // Rounding can leave target == total; the last positive weight owns it.
    return last_positive;
}

std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k, Rng& rng) {
    k = std::min(k, n);
    std::vector<std::size_t> out;
    out.reserve(k);
    if (k == n) {
        for (std::size_t i = 0; i < n; ++i) out.push_back(i);
        return out;
    }
    std::unordered_set<std::size_t> chosen;
    chosen.reserve(k * 2);
    for (std::size_t j = n - k; j < n; ++j) {
        const std::size_t t = rng.index(j + 1);
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    out.assign(chosen.begin(), chosen.end());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace demosim
