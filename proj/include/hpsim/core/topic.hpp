#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hpsim/core/error.hpp"

namespace hpsim {

enum class CoverageClass { High, Medium, Low };

constexpr std::string_view to_string(CoverageClass c) noexcept {
    switch (c) {
        case CoverageClass::High: return "High";
        case CoverageClass::Medium: return "Medium";
        case CoverageClass::Low: return "Low";
    }
    return "?";
}

inline constexpr std::int64_t kHighCoverageThreshold = 400'000'000;
inline constexpr std::int64_t kMediumCoverageThreshold = 150'000'000;

/// Coverage = number of posts carrying the topic's main hashtag.
inline CoverageClass classify_coverage(std::int64_t coverage_count) {
    if (coverage_count <= 0) {
        throw Error(ErrorCode::NonPositiveCoverage, "coverage must be positive, got " + std::to_string(coverage_count));
    }
    if (coverage_count >= kHighCoverageThreshold) return CoverageClass::High;
    if (coverage_count >= kMediumCoverageThreshold) return CoverageClass::Medium;
    return CoverageClass::Low;
}

struct Hashtag {
    std::string tag;
    std::int64_t coverage_count = 0;

    bool operator==(const Hashtag&) const = default;
};

struct Topic {
    std::string name;
    std::int64_t coverage_count = 0;
    CoverageClass coverage_class = CoverageClass::Low;
    /// Ranked pool, rank 1 (index 0) is the most used tag.
    std::vector<Hashtag> hashtag_pool;
};

/// Builds a topic, sorting the pool by coverage (descending, stable on ties).
inline Topic make_topic(std::string name, std::int64_t coverage_count, std::vector<Hashtag> pool) {
    Topic t;
    t.name = std::move(name);
    t.coverage_count = coverage_count;
    t.coverage_class = classify_coverage(coverage_count);
    std::stable_sort(pool.begin(), pool.end(),
                     [](const Hashtag& a, const Hashtag& b) { return a.coverage_count > b.coverage_count; });
    t.hashtag_pool = std::move(pool);
    return t;
}

}  // namespace hpsim
