#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hpsim/analytics/metrics.hpp"
#include "hpsim/analytics/run_view.hpp"

namespace hpsim::analytics {

inline constexpr int kInsightsThreshold = 100;

struct Share {
    std::string label;
    int count = 0;
    double percent = 0.0;  // rounded to 1 decimal
};

struct Insights {
    int followers = 0;
    std::vector<Share> gender;
    std::vector<Share> age;
    std::vector<Share> region;  // descending by count, ties by label

    [[nodiscard]] const Share& top_region() const { return region.front(); }

    [[nodiscard]] const Share& age_share(AgeBucket a) const {
        const auto label = std::string(to_string(a));
        for (const auto& s : age) {
            if (s.label == label) return s;
        }
        throw Error(ErrorCode::ValidationError, "no age bucket " + label);
    }
};

namespace detail {

inline Share share(std::string label, int count, int total) {
    return {std::move(label), count, round_to(100.0 * count / total, 1)};
}

}  // namespace detail

/**
 * Gender, age and region distribution of the non-purchased followers.
 * Empty until the honeypot has at least 100 of them.
 */
inline std::optional<Insights> audience_insights(const std::vector<FollowerView>& followers) {
    std::vector<const FollowerView*> real;
    for (const auto& f : followers) {
        if (!f.purchased) real.push_back(&f);
    }
    const int n = static_cast<int>(real.size());
    if (n < kInsightsThreshold) return std::nullopt;

    Insights out;
    out.followers = n;
    for (Gender g : {Gender::F, Gender::M, Gender::Unspecified}) {
        const auto c = std::count_if(real.begin(), real.end(), [&](const FollowerView* f) { return f->gender == g; });
        out.gender.push_back(detail::share(std::string(to_string(g)), static_cast<int>(c), n));
    }
    for (AgeBucket a : detail::kAges) {
        const auto c = std::count_if(real.begin(), real.end(), [&](const FollowerView* f) { return f->age == a; });
        out.age.push_back(detail::share(std::string(to_string(a)), static_cast<int>(c), n));
    }
    std::map<std::string, int> regions;
    for (const auto* f : real) ++regions[f->region];
    for (const auto& [r, c] : regions) out.region.push_back(detail::share(r, c, n));
    std::stable_sort(out.region.begin(), out.region.end(),
                     [](const Share& a, const Share& b) { return a.count > b.count; });
    return out;
}

inline std::optional<Insights> audience_insights(const HoneypotView& h) { return audience_insights(h.followers); }

}  // namespace hpsim::analytics
