#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

namespace hpsim {

namespace detail {

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view text) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace detail

/**
 * Seeded, splittable random stream (SplitMix64 core).
 *
 * Satisfies UniformRandomBitGenerator, so the <random> distributions work on
 * it directly. A child stream obtained with split() depends only on the key
 * the parent was constructed with and the label, never on how many values the
 * parent has already produced; per-entity traces therefore do not depend on
 * the order in which entities are scheduled.
 */
class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t seed) noexcept : key_(detail::mix64(seed)), state_(key_) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    [[nodiscard]] RandomStream split(std::string_view label) const noexcept {
        return from_key(detail::mix64(key_ ^ detail::fnv1a(label)));
    }

    [[nodiscard]] RandomStream split(std::uint64_t index) const noexcept {
        return from_key(detail::mix64(key_ ^ detail::mix64(index ^ 0x5851f42d4c957f2dULL)));
    }

    [[nodiscard]] std::uint64_t key() const noexcept { return key_; }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) noexcept { return uniform() < p; }

    /// Uniform integer in [lo, hi].
    template <typename Int>
    Int uniform_int(Int lo, Int hi) {
        return std::uniform_int_distribution<Int>(lo, hi)(*this);
    }

    int poisson(double mean) {
        if (mean <= 0.0) return 0;
        return std::poisson_distribution<int>(mean)(*this);
    }

    double normal(double mean, double sd) { return std::normal_distribution<double>(mean, sd)(*this); }

    double beta(double a, double b) {
        const double x = std::gamma_distribution<double>(a, 1.0)(*this);
        const double y = std::gamma_distribution<double>(b, 1.0)(*this);
        return (x + y) > 0.0 ? x / (x + y) : 0.5;
    }

private:
    static RandomStream from_key(std::uint64_t key) noexcept {
        RandomStream s(0);
        s.key_ = key;
        s.state_ = key;
        return s;
    }

    std::uint64_t key_;
    std::uint64_t state_;
};

}  // namespace hpsim
