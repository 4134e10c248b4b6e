#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "dialoglab/error.hpp"

namespace dialoglab {

// Seeded random stream. std::mt19937_64 output is pinned by the standard,
// but the std distributions are not, so the helpers here draw directly from
// the engine. Same seed -> same sequence on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0,1), 53-bit resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * (1.0 / 9007199254740992.0); }

    bool bernoulli(double p) { return uniform01() < p; }

    // Uniform integer in [0,n). Rejection keeps it unbiased.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw ValidationError("Rng::below: n must be positive");
        const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
        const std::uint64_t limit = max - max % n;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % n;
    }

    // Inclusive range.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[below(v.size())];
    }

    // Index draw proportional to w[i]; weights need not be normalized.
    std::size_t pick_weighted(const std::vector<double>& w) {
        double total = 0.0;
        for (double x : w) total += x;
        if (total <= 0.0) throw ValidationError("Rng::pick_weighted: weights sum to zero");
        double r = uniform01() * total;
        double acc = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            acc += w[i];
            if (r < acc) return i;
        }
        return w.size() - 1;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace dialoglab
