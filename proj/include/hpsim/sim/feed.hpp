#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <vector>

#include "hpsim/core/random.hpp"
#include "hpsim/core/time.hpp"
#include "hpsim/core/types.hpp"
#include "hpsim/sim/population.hpp"

namespace hpsim::sim {

inline constexpr std::size_t kTopFeedSize = 25;
inline constexpr int kBackgroundPostsPerDay = 30;
inline constexpr int kBackgroundRetentionDays = 10;

/// A post by an ordinary account carrying a topic's main hashtag.
struct BackgroundPost {
    std::uint32_t id = 0;
    AgentId author = 0;
    SimTime published_at;
    int likes = 0;
    int comments = 0;
};

inline double feed_score(const BackgroundPost& p, SimTime now) {
    const double age_days = static_cast<double>(now.total_minutes() - p.published_at.total_minutes()) / kMinutesPerDay;
    return (p.likes + 2.0 * p.comments) * std::exp(-age_days / 3.0);
}

/// Top 25 by score; equal scores keep the lower (older) id first.
inline std::vector<BackgroundPost> rank_top25(std::vector<BackgroundPost> posts, SimTime now) {
    std::vector<std::pair<double, std::size_t>> scored;
    scored.reserve(posts.size());
    for (std::size_t i = 0; i < posts.size(); ++i) scored.emplace_back(feed_score(posts[i], now), i);
    std::sort(scored.begin(), scored.end(), [&](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return posts[a.second].id < posts[b.second].id;
    });
    std::vector<BackgroundPost> out;
    for (std::size_t i = 0; i < scored.size() && i < kTopFeedSize; ++i) out.push_back(posts[scored[i].second]);
    return out;
}

/**
 * Rolling store of background posts for one topic. Each day adds
 * kBackgroundPostsPerDay posts by interested agents with log-normal like
 * counts and drops those older than the retention window.
 */
class TopicFeed {
public:
    explicit TopicFeed(std::size_t topic) : topic_(topic) {}

    void advance(int day, const Population& pop, std::uint32_t& next_id, RandomStream rng) {
        while (!posts_.empty() && posts_.front().published_at.day <= day - kBackgroundRetentionDays) posts_.pop_front();
        for (int i = 0; i < kBackgroundPostsPerDay; ++i) {
            BackgroundPost p;
            p.id = next_id++;
            p.author = pop.sample_interested(topic_, rng);
            p.published_at = SimTime{day, rng.uniform_int(0, kMinutesPerDay - 1)};
            p.likes = static_cast<int>(std::exp(rng.normal(3.5, 1.0)));
            p.comments = rng.poisson(0.1 * p.likes);
            posts_.push_back(p);
        }
    }

    [[nodiscard]] std::vector<BackgroundPost> top25(SimTime now) const {
        std::vector<BackgroundPost> visible;
        for (const auto& p : posts_) {
            if (p.published_at <= now) visible.push_back(p);
        }
        return rank_top25(std::move(visible), now);
    }

    [[nodiscard]] std::size_t size() const { return posts_.size(); }

    /// Writes the author of every retained post into `by_id`.
    void authors(std::vector<AgentId>& by_id) const {
        for (const auto& p : posts_) {
            if (p.id < by_id.size()) by_id[p.id] = p.author;
        }
    }

private:
    std::size_t topic_;
    std::deque<BackgroundPost> posts_;
};

}  // namespace hpsim::sim
