#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <span>

namespace netrewire {

using Rng = std::mt19937_64;

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent stream seed for a cell identified by `path` under `master`.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) noexcept {
    std::uint64_t s = mix64(master);
    for (auto p : path) s = mix64(s ^ mix64(p + 0x632be59bd9b4e019ULL));
    return s;
}

inline std::size_t uniform_index(std::size_t n, Rng& rng) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline double uniform01(Rng& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

// Draws an index with probability proportional to `weights`. Returns nullopt
// when no weight is positive.
inline std::optional<std::size_t> sample_weighted(std::span<const double> weights, Rng& rng) {
    double total = 0.0;
    for (double w : weights)
        if (w > 0.0) total += w;
    if (!(total > 0.0)) return std::nullopt;
    double r = uniform01(rng) * total;
    std::size_t last = weights.size();
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (!(weights[i] > 0.0)) continue;
        last = i;
        if (r < weights[i]) return i;
        r -= weights[i];
    }
    return last;
}

} // namespace netrewire
