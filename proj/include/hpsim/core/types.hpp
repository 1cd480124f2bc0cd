#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hpsim/core/time.hpp"

namespace hpsim {

using AgentId = std::uint32_t;
using HoneypotIndex = std::uint32_t;

// ---------------------------------------------------------------------------
// Agents

enum class AgentCategory : std::uint8_t { RealPerson, PageInfluencer, SpamBot };
enum class Gender : std::uint8_t { F, M, Unspecified };
enum class AgeBucket : std::uint8_t { A13_17, A18_24, A25_34, A35_44, A45_54, A55_64, A65Plus };

inline constexpr int kAgeBucketCount = 7;
inline constexpr int kGenderCount = 3;

constexpr std::string_view to_string(AgentCategory c) noexcept {
    switch (c) {
        case AgentCategory::RealPerson: return "RealPerson";
        case AgentCategory::PageInfluencer: return "PageInfluencer";
        case AgentCategory::SpamBot: return "SpamBot";
    }
    return "?";
}

constexpr std::string_view to_string(Gender g) noexcept {
    switch (g) {
        case Gender::F: return "F";
        case Gender::M: return "M";
        case Gender::Unspecified: return "U";
    }
    return "?";
}

constexpr std::string_view to_string(AgeBucket a) noexcept {
    switch (a) {
        case AgeBucket::A13_17: return "13-17";
        case AgeBucket::A18_24: return "18-24";
        case AgeBucket::A25_34: return "25-34";
        case AgeBucket::A35_44: return "35-44";
        case AgeBucket::A45_54: return "45-54";
        case AgeBucket::A55_64: return "55-64";
        case AgeBucket::A65Plus: return "65+";
    }
    return "?";
}

/// A hashtag reference inside a run: topic index plus rank index in that topic's pool.
struct TagRef {
    std::uint16_t topic = 0;
    std::uint16_t rank = 0;

    auto operator<=>(const TagRef&) const = default;
};

struct Agent {
    AgentId id = 0;
    AgentCategory category = AgentCategory::RealPerson;
    Gender gender = Gender::Unspecified;
    AgeBucket age = AgeBucket::A25_34;
    std::string region;
    std::string username;
    int follower_count = 0;
    int following_count = 0;
    int post_count = 0;
    bool has_real_picture = true;
    bool posts_topic_specific = false;
    double username_entropy = 0.0;
    /// Affinity per topic index of the run, each in [0, 1].
    std::vector<double> interests;
    double activity_rate = 0.0;
    /// Inactive accounts that can only be bought as followers.
    bool passive = false;
    /// Spam bots react to posts carrying any of these tags.
    std::vector<TagRef> trigger_tags;

    [[nodiscard]] double affinity(std::size_t topic) const noexcept {
        return topic < interests.size() ? interests[topic] : 0.0;
    }
};

// ---------------------------------------------------------------------------
// Content

enum class StrategyKind : std::uint8_t { InstaModel, ArtModel, UnsplashModel, QuotesModel };
enum class AiClass : std::uint8_t { AI, NonAI };

inline constexpr StrategyKind kAllStrategies[] = {StrategyKind::InstaModel, StrategyKind::ArtModel,
                                                  StrategyKind::UnsplashModel, StrategyKind::QuotesModel};

constexpr AiClass ai_class(StrategyKind k) noexcept {
    return (k == StrategyKind::InstaModel || k == StrategyKind::ArtModel) ? AiClass::AI : AiClass::NonAI;
}

constexpr std::string_view to_string(StrategyKind k) noexcept {
    switch (k) {
        case StrategyKind::InstaModel: return "InstaModel";
        case StrategyKind::ArtModel: return "ArtModel";
        case StrategyKind::UnsplashModel: return "UnsplashModel";
        case StrategyKind::QuotesModel: return "QuotesModel";
    }
    return "?";
}

constexpr std::string_view to_string(AiClass c) noexcept { return c == AiClass::AI ? "AI" : "NonAI"; }

struct GenerationStrategy {
    StrategyKind kind = StrategyKind::UnsplashModel;

    [[nodiscard]] AiClass ai() const noexcept { return ai_class(kind); }
    bool operator==(const GenerationStrategy&) const = default;
};

struct Caption {
    std::string body;
    std::vector<std::string> hashtags;
    std::optional<std::string> cta;
    int emoji_count = 0;
    bool is_quote = false;

    /// Full caption text as it would be published.
    [[nodiscard]] std::string render() const {
        std::string out = body;
        if (cta) {
            out += ' ';
            out += *cta;
        }
        for (const auto& tag : hashtags) {
            out += " #";
            out += tag;
        }
        return out;
    }
};

struct ContentDescriptor {
    double appeal = 0.0;
    double topic_affinity = 0.0;
    Caption caption;
    StrategyKind provenance = StrategyKind::UnsplashModel;
    /// Generated-image reference or stock-library id.
    std::string image_ref;
};

// ---------------------------------------------------------------------------
// Posts, comments, events

struct Comment {
    AgentId author = 0;
    std::string text;
    SimTime posted_at;
    std::int64_t latency_seconds = 0;
};

struct SponsoredWindow {
    SimTime start;
    SimTime end;  // exclusive
    double daily_budget = 0.0;

    [[nodiscard]] int days() const noexcept { return end.day - start.day; }
    [[nodiscard]] double total_cost() const noexcept { return daily_budget * days(); }
    [[nodiscard]] bool contains(SimTime t) const noexcept { return start <= t && t < end; }
};

struct Post {
    std::uint32_t ordinal = 0;  // publication order within the honeypot, from 0
    HoneypotIndex author = 0;
    SimTime published_at;
    ContentDescriptor content;
    std::optional<SponsoredWindow> sponsored_window;
    int likes = 0;
    std::vector<Comment> comments;
};

enum class EntityKind : std::uint8_t { Agent, Honeypot, Post, BackgroundPost };

/// Compact reference to anything that can act or be acted upon.
struct EntityRef {
    EntityKind kind = EntityKind::Agent;
    std::uint32_t index = 0;  // agent id, honeypot index, background post id
    std::uint32_t sub = 0;    // post ordinal for EntityKind::Post

    auto operator<=>(const EntityRef&) const = default;

    static constexpr EntityRef agent(AgentId id) noexcept { return {EntityKind::Agent, id, 0}; }
    static constexpr EntityRef honeypot(HoneypotIndex h) noexcept { return {EntityKind::Honeypot, h, 0}; }
    static constexpr EntityRef post(HoneypotIndex h, std::uint32_t ordinal) noexcept {
        return {EntityKind::Post, h, ordinal};
    }
    static constexpr EntityRef background_post(std::uint32_t id) noexcept { return {EntityKind::BackgroundPost, id, 0}; }
};

enum class EventKind : std::uint8_t { Like, Comment, Follow, Unfollow, FollowBack, PurchasedFollow, SponsoredImpression };

constexpr std::string_view to_string(EventKind k) noexcept {
    switch (k) {
        case EventKind::Like: return "Like";
        case EventKind::Comment: return "Comment";
        case EventKind::Follow: return "Follow";
        case EventKind::Unfollow: return "Unfollow";
        case EventKind::FollowBack: return "FollowBack";
        case EventKind::PurchasedFollow: return "PurchasedFollow";
        case EventKind::SponsoredImpression: return "SponsoredImpression";
    }
    return "?";
}

struct EngagementEvent {
    std::uint64_t seq = 0;
    EventKind kind = EventKind::Like;
    EntityRef actor;
    EntityRef target;
    SimTime at;
    HoneypotIndex honeypot = 0;

    bool operator==(const EngagementEvent&) const = default;
};

// ---------------------------------------------------------------------------
// Honeypots

enum class PlanKind : std::uint8_t { Plan0, Plan1, Plan2 };

constexpr std::string_view to_string(PlanKind p) noexcept {
    switch (p) {
        case PlanKind::Plan0: return "PLAN0";
        case PlanKind::Plan1: return "PLAN1";
        case PlanKind::Plan2: return "PLAN2";
    }
    return "?";
}

struct EngagementPlanConfig {
    PlanKind plan = PlanKind::Plan0;
    double follow_back_p = 0.5;
    int purchased_followers_n = 100;
    double sponsor_daily_budget = 2.0;
    int sponsor_duration_days = 7;
    int sponsored_post_count = 2;
    int fu_unfollow_delay_days = 2;
    int fu_follows_per_day = 10;
    /// 1-based week in which the aggressive tactics start (week 9 = day 56).
    int aggressive_start_week = 9;

    [[nodiscard]] int aggressive_start_day() const noexcept { return (aggressive_start_week - 1) * kDaysPerWeek; }
};

struct FollowerEntry {
    bool purchased = false;
    SimTime since;
};

struct FollowingEntry {
    SimTime since;
    std::optional<SimTime> unfollow_at;
};

struct PostCounts {
    std::uint32_t ordinal = 0;
    int likes = 0;
    int comments = 0;

    bool operator==(const PostCounts&) const = default;
};

struct MetricsSnapshot {
    int day = 0;
    int followers_analytic = 0;
    std::int64_t cumulative_likes = 0;
    std::int64_t cumulative_comments = 0;
    std::vector<PostCounts> per_post;

    bool operator==(const MetricsSnapshot&) const = default;
};

struct Honeypot {
    std::string id;
    HoneypotIndex index = 0;
    std::size_t topic = 0;  // index into the run's topic list
    std::vector<StrategyKind> strategy_mix;
    EngagementPlanConfig plan;
    std::map<AgentId, FollowerEntry> followers;
    std::map<AgentId, FollowingEntry> followings;
    std::vector<Post> posts;
    std::vector<MetricsSnapshot> daily_snapshots;

    [[nodiscard]] int raw_follower_count() const noexcept { return static_cast<int>(followers.size()); }

    [[nodiscard]] int purchased_follower_count() const noexcept {
        int n = 0;
        for (const auto& [id, f] : followers) n += f.purchased ? 1 : 0;
        return n;
    }

    /// Followers that count for analytics (purchased ones are excluded).
    [[nodiscard]] int analytic_follower_count() const noexcept {
        return raw_follower_count() - purchased_follower_count();
    }
};

}  // namespace hpsim
