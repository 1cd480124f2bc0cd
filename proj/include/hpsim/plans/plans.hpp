#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hpsim/classify/classifiers.hpp"
#include "hpsim/core/error.hpp"
#include "hpsim/core/random.hpp"
#include "hpsim/core/time.hpp"
#include "hpsim/core/types.hpp"

namespace hpsim::plans {

enum class ActionKind : std::uint8_t {
    LikeTop25,
    CommentTop25,
    FollowBack,
    ProactiveFollow,
    Unfollow,
    BuyFollowers,
    SponsorPost,
    ReplyToComment,
};

constexpr std::string_view to_string(ActionKind k) noexcept {
    switch (k) {
        case ActionKind::LikeTop25: return "LikeTop25";
        case ActionKind::CommentTop25: return "CommentTop25";
        case ActionKind::FollowBack: return "FollowBack";
        case ActionKind::ProactiveFollow: return "ProactiveFollow";
        case ActionKind::Unfollow: return "Unfollow";
        case ActionKind::BuyFollowers: return "BuyFollowers";
        case ActionKind::SponsorPost: return "SponsorPost";
        case ActionKind::ReplyToComment: return "ReplyToComment";
    }
    return "?";
}

struct PlanAction {
    ActionKind kind = ActionKind::ReplyToComment;
    EntityRef target;
    SimTime at;
    /// Number of followers for BuyFollowers, comment index for ReplyToComment.
    int amount = 0;
};

/// What a honeypot can see when it plans its day.
struct DayInputs {
    int day = 0;
    /// Top-25 posts of the honeypot's main hashtag (background post refs), best first.
    std::vector<EntityRef> feed;
    /// Accounts that recently engaged with that feed; F&U picks from them.
    std::vector<AgentId> fu_candidates;
    /// Patterns used to skip replying to spam.
    const std::vector<std::string>* spam_patterns = nullptr;
};

[[nodiscard]] inline bool does_spamming(PlanKind p) noexcept { return p != PlanKind::Plan0; }
[[nodiscard]] inline bool does_follow_back(PlanKind p) noexcept { return p != PlanKind::Plan0; }
[[nodiscard]] inline bool does_follow_unfollow(PlanKind p) noexcept { return p == PlanKind::Plan1; }
[[nodiscard]] inline bool buys_and_sponsors(PlanKind p) noexcept { return p == PlanKind::Plan2; }

inline bool follow_back_decision(RandomStream& rng, double p = 0.5) { return rng.uniform() < p; }

inline const std::string& spam_comment_text(const std::vector<std::string>& pool, RandomStream& rng) {
    if (pool.empty()) throw Error(ErrorCode::EmptyPool, "spam comment pool is empty");
    return pool[rng.uniform_int<std::size_t>(0, pool.size() - 1)];
}

/// Non-purchased followers; the F&U balance is measured against this.
inline int balance_followers(const Honeypot& h) { return h.analytic_follower_count(); }

/// True when one more following keeps |followings| < |non-purchased followers|.
inline bool balance_allows_follow(int followings_after_unfollows, int non_purchased_followers) {
    return followings_after_unfollows + 1 < non_purchased_followers;
}

struct FuStep {
    std::vector<AgentId> follows;
    std::vector<AgentId> unfollows;
};

/**
 * One Follow&Unfollow step at `now`: unfollow every due following, then follow
 * candidates while the balance holds, at most `cfg.fu_follows_per_day`.
 * Candidates already followed, or already following the honeypot, are skipped.
 */
inline FuStep fu_step(const Honeypot& h, std::vector<AgentId> candidates, SimTime now, RandomStream& rng) {
    FuStep step;
    for (const auto& [id, f] : h.followings) {
        if (f.unfollow_at && *f.unfollow_at <= now) step.unfollows.push_back(id);
    }
    int followings = static_cast<int>(h.followings.size() - step.unfollows.size());
    const int followers = balance_followers(h);
    std::shuffle(candidates.begin(), candidates.end(), rng);
    for (AgentId id : candidates) {
        if (static_cast<int>(step.follows.size()) >= h.plan.fu_follows_per_day) break;
        if (!balance_allows_follow(followings, followers)) break;
        if (h.followings.count(id) > 0 || h.followers.count(id) > 0) continue;
        if (std::find(step.follows.begin(), step.follows.end(), id) != step.follows.end()) continue;
        step.follows.push_back(id);
        ++followings;
    }
    return step;
}

/// Follow-back answer to a new follower; nullopt when the plan, the coin or the balance says no.
inline std::optional<PlanAction> react_to_follow(const Honeypot& h, AgentId follower, SimTime now, RandomStream& rng) {
    if (!does_follow_back(h.plan.plan)) return std::nullopt;
    if (h.followings.count(follower) > 0) return std::nullopt;
    if (!follow_back_decision(rng, h.plan.follow_back_p)) return std::nullopt;
    if (!balance_allows_follow(static_cast<int>(h.followings.size()), balance_followers(h))) return std::nullopt;
    return PlanAction{ActionKind::FollowBack, EntityRef::agent(follower), now, 0};
}

/// Indices of the `count` posts with most likes; ties go to the earlier post.
inline std::vector<std::size_t> most_liked_posts(const std::vector<Post>& posts, int count) {
    std::vector<std::size_t> idx(posts.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (posts[a].likes != posts[b].likes) return posts[a].likes > posts[b].likes;
        return posts[a].published_at < posts[b].published_at;
    });
    idx.resize(std::min<std::size_t>(idx.size(), static_cast<std::size_t>(std::max(0, count))));
    return idx;
}

/**
 * The honeypot's scheduled actions for one day.
 *
 * Every plan answers the previous day's legit comments. PLAN 1 and PLAN 2
 * like and comment each feed entry. From the aggressive start day PLAN 1 runs
 * Follow&Unfollow; PLAN 2 buys followers on day 0 and sponsors its two most
 * liked posts on the aggressive start day.
 */
inline std::vector<PlanAction> plan_daily_actions(const Honeypot& h, const DayInputs& in, RandomStream& rng) {
    std::vector<PlanAction> out;
    const auto& cfg = h.plan;
    const SimTime morning{in.day, 0};

    if (in.day > 0) {
        for (const auto& post : h.posts) {
            for (std::size_t i = 0; i < post.comments.size(); ++i) {
                const auto& c = post.comments[i];
                if (c.posted_at.day != in.day - 1) continue;
                if (in.spam_patterns != nullptr && classify::classify_comment(c, *in.spam_patterns).is_spam) continue;
                out.push_back({ActionKind::ReplyToComment, EntityRef::post(h.index, post.ordinal),
                               SimTime{in.day, 8 * 60 + static_cast<int>(out.size() % 60)}, static_cast<int>(i)});
            }
        }
    }

    if (buys_and_sponsors(cfg.plan) && in.day == 0 && cfg.purchased_followers_n > 0) {
        out.push_back({ActionKind::BuyFollowers, EntityRef::honeypot(h.index), morning, cfg.purchased_followers_n});
    }

    if (does_spamming(cfg.plan)) {
        // One browsing session per day, one minute per feed entry.
        const int start = rng.uniform_int(10 * 60, 20 * 60);
        int minute = start;
        for (const auto& entry : in.feed) {
            const SimTime at{in.day, std::min(minute, kMinutesPerDay - 1)};
            out.push_back({ActionKind::LikeTop25, entry, at, 0});
            out.push_back({ActionKind::CommentTop25, entry, at, 0});
            ++minute;
        }
    }

    if (in.day >= cfg.aggressive_start_day()) {
        if (does_follow_unfollow(cfg.plan)) {
            const SimTime at{in.day, 12 * 60};
            const auto step = fu_step(h, in.fu_candidates, at, rng);
            for (AgentId id : step.unfollows) out.push_back({ActionKind::Unfollow, EntityRef::agent(id), at, 0});
            for (AgentId id : step.follows) out.push_back({ActionKind::ProactiveFollow, EntityRef::agent(id), at, 0});
        }
        if (buys_and_sponsors(cfg.plan) && in.day == cfg.aggressive_start_day()) {
            for (std::size_t i : most_liked_posts(h.posts, cfg.sponsored_post_count)) {
                out.push_back({ActionKind::SponsorPost, EntityRef::post(h.index, h.posts[i].ordinal), morning, 0});
            }
        }
    }
    return out;
}

/// Sets a [start, start + duration) window at the plan's daily budget.
inline void sponsor_post(Post& p, PlanKind plan, SimTime start, const EngagementPlanConfig& cfg) {
    if (plan != PlanKind::Plan2) throw Error(ErrorCode::WrongPlan, "only PLAN2 honeypots sponsor posts");
    if (p.sponsored_window) throw Error(ErrorCode::AlreadySponsored, "post " + std::to_string(p.ordinal) + " is already sponsored");
    p.sponsored_window = SponsoredWindow{start, start.plus_days(cfg.sponsor_duration_days), cfg.sponsor_daily_budget};
}

/**
 * Adds `n` purchased followers drawn from `pool` (passive accounts). Accounts
 * that already follow are skipped. Returns the ids added.
 */
inline std::vector<AgentId> buy_followers(Honeypot& h, int n, const std::vector<AgentId>& pool, SimTime now,
                                          RandomStream& rng) {
    if (n < 0) throw Error(ErrorCode::ValidationError, "cannot buy a negative number of followers");
    std::vector<AgentId> available;
    for (AgentId id : pool) {
        if (h.followers.count(id) == 0) available.push_back(id);
    }
    if (available.size() < static_cast<std::size_t>(n)) {
        throw Error(ErrorCode::InsufficientPool, "passive pool has " + std::to_string(available.size()) +
                                                     " accounts, need " + std::to_string(n));
    }
    std::vector<AgentId> chosen;
    std::sample(available.begin(), available.end(), std::back_inserter(chosen), n, rng);
    for (AgentId id : chosen) h.followers[id] = FollowerEntry{true, now};
    return chosen;
}

}  // namespace hpsim::plans
