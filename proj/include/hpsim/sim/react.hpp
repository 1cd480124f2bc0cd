#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hpsim/core/error.hpp"
#include "hpsim/core/fixtures.hpp"
#include "hpsim/core/random.hpp"
#include "hpsim/core/time.hpp"
#include "hpsim/core/types.hpp"
#include "hpsim/sim/profile.hpp"

namespace hpsim::sim {

inline constexpr int kMinPostGapMinutes = 8 * 60;

/// Number of (t1, t2) minute pairs in a day with t2 - t1 >= 8 h.
inline constexpr std::int64_t feasible_pair_count() {
    const std::int64_t m = kMinutesPerDay - kMinPostGapMinutes;  // t1 in [0, m - 1]
    return m * (m + 1) / 2;
}

/**
 * Two publication times on `day`, at least 8 hours apart, uniform over all
 * feasible minute pairs. Deterministic mode returns 09:00 and 17:00.
 */
inline std::pair<SimTime, SimTime> schedule_posts(int day, RandomStream& rng, bool deterministic = false) {
    if (deterministic) return {SimTime{day, 9 * 60}, SimTime{day, 17 * 60}};
    // Pairs with first time t1 number (1440 - 480 - t1); walk the triangle.
    std::int64_t k = rng.uniform_int<std::int64_t>(0, feasible_pair_count() - 1);
    int t1 = 0;
    for (;; ++t1) {
        const std::int64_t row = kMinutesPerDay - kMinPostGapMinutes - t1;
        if (k < row) break;
        k -= row;
    }
    const int t2 = t1 + kMinPostGapMinutes + static_cast<int>(k);
    return {SimTime{day, t1}, SimTime{day, t2}};
}

/// Modifiers of one exposure.
struct ExposureContext {
    bool sponsored = false;
    /// Multiplier applied to the follow probability (profile visits).
    double follow_boost = 1.0;
};

struct Reaction {
    bool like = false;
    bool comment = false;
    bool follow = false;
};

inline double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

/**
 * Independent like, comment and follow draws for an exposure of agent `a` to
 * post `p`. Each probability is base * affinity * appeal * (1 + cta bonus) *
 * (1 + sponsor boost), clamped to [0, 1]; follow also takes the context's boost
 * and is skipped when the agent already follows.
 */
inline Reaction agent_react(const Agent& a, const Post& p, std::size_t topic, const BehaviorProfile& prof,
                            const ExposureContext& ctx, bool already_following, RandomStream& rng) {
    Reaction r;
    if (a.passive || a.category == AgentCategory::SpamBot) return r;
    const double base = a.affinity(topic) * p.content.appeal * (1.0 + prof.cta_bonus * (p.content.caption.cta ? 1.0 : 0.0)) *
                        (1.0 + prof.sponsor_boost * (ctx.sponsored ? 1.0 : 0.0));
    const double u_like = rng.uniform();
    const double u_comment = rng.uniform();
    const double u_follow = rng.uniform();
    r.like = u_like < clamp01(prof.base_like * base);
    r.comment = u_comment < clamp01(prof.base_comment * base);
    r.follow = !already_following && u_follow < clamp01(prof.base_follow * base * ctx.follow_boost);
    return r;
}

/// Bit per hashtag rank of the topic pool carried by the post.
inline std::uint64_t tag_mask(const Caption& c, const Topic& topic) {
    std::uint64_t mask = 0;
    for (const auto& tag : c.hashtags) {
        for (std::size_t r = 0; r < topic.hashtag_pool.size() && r < 64; ++r) {
            if (topic.hashtag_pool[r].tag == tag) {
                mask |= std::uint64_t{1} << r;
                break;
            }
        }
    }
    return mask;
}

/// Fills "@{h}" placeholders of a spam template with a handle.
inline std::string fill_template(std::string tmpl, const std::string& handle) {
    const std::string key = "@{h}";
    for (auto pos = tmpl.find(key); pos != std::string::npos; pos = tmpl.find(key, pos)) {
        tmpl.replace(pos, key.size(), "@" + handle);
        pos += handle.size() + 1;
    }
    return tmpl;
}

/**
 * Spam-bot trigger: when the post's tags meet the bot's trigger tags, with
 * probability `spambot_trigger_p` the bot posts a templated comment with a
 * mention and a spam pattern, 5 to 120 seconds after publication.
 */
inline std::optional<Comment> spambot_react(const Agent& bot, std::uint64_t bot_mask, const Post& p,
                                            std::uint64_t post_mask, const BehaviorProfile& prof, const Fixtures& fx,
                                            RandomStream& rng) {
    if ((bot_mask & post_mask) == 0) return std::nullopt;
    if (!rng.bernoulli(prof.spambot_trigger_p)) return std::nullopt;
    if (fx.spam_templates.empty() || fx.spam_handles.empty()) {
        throw Error(ErrorCode::EmptyPool, "spam template or handle pool is empty");
    }
    Comment c;
    c.author = bot.id;
    const auto& tmpl = fx.spam_templates[rng.uniform_int<std::size_t>(0, fx.spam_templates.size() - 1)];
    const auto& handle = fx.spam_handles[rng.uniform_int<std::size_t>(0, fx.spam_handles.size() - 1)];
    c.text = fill_template(tmpl, handle);
    c.latency_seconds = rng.uniform_int<std::int64_t>(5, 120);
    c.posted_at = p.published_at.plus_minutes(c.latency_seconds / 60);
    return c;
}

}  // namespace hpsim::sim
