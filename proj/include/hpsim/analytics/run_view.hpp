#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "hpsim/classify/classifiers.hpp"
#include "hpsim/core/csv.hpp"
#include "hpsim/core/error.hpp"
#include "hpsim/core/types.hpp"
#include "hpsim/experiment/config.hpp"
#include "hpsim/sim/engine.hpp"
#include "hpsim/sim/export.hpp"

namespace hpsim::analytics {

struct FollowerView {
    AgentId agent = 0;
    bool purchased = false;
    int since_day = 0;
    AgentCategory category = AgentCategory::RealPerson;
    Gender gender = Gender::Unspecified;
    AgeBucket age = AgeBucket::A25_34;
    std::string region;
    classify::ProfileView profile;
    bool topic_specific = false;
};

struct PostView {
    std::uint32_t ordinal = 0;
    int day = 0;
    StrategyKind strategy = StrategyKind::UnsplashModel;
    int likes = 0;
    int comments = 0;
    bool sponsored = false;
};

/// What the analytics need from one honeypot; built from a RunRecord or from exported CSVs.
struct HoneypotView {
    std::string id;
    std::string topic;
    std::vector<StrategyKind> strategy_mix;
    PlanKind plan = PlanKind::Plan0;
    std::vector<int> followers_daily;
    std::vector<PostView> posts;
    std::vector<Comment> comments;
    std::vector<FollowerView> followers;

    [[nodiscard]] int final_followers() const { return followers_daily.empty() ? 0 : followers_daily.back(); }

    [[nodiscard]] long total_likes() const {
        long n = 0;
        for (const auto& p : posts) n += p.likes;
        return n;
    }

    [[nodiscard]] long total_comments() const {
        long n = 0;
        for (const auto& p : posts) n += p.comments;
        return n;
    }
};

struct RunView {
    std::uint64_t seed = 0;
    int horizon_days = 0;
    std::vector<HoneypotView> honeypots;
};

/// "AI" when every strategy of the mix is AI-based, "non-AI" when none is, else "Mixed".
inline std::string strategy_group(const std::vector<StrategyKind>& mix) {
    bool ai = false;
    bool non_ai = false;
    for (auto k : mix) (ai_class(k) == AiClass::AI ? ai : non_ai) = true;
    if (ai && !non_ai) return "AI";
    if (non_ai && !ai) return "non-AI";
    return "Mixed";
}

inline std::string plan_label(PlanKind p) {
    switch (p) {
        case PlanKind::Plan0: return "PLAN 0";
        case PlanKind::Plan1: return "PLAN 1";
        case PlanKind::Plan2: return "PLAN 2";
    }
    return "?";
}

inline RunView view_of(const sim::RunRecord& rec) {
    RunView v;
    v.seed = rec.seed;
    v.horizon_days = rec.horizon_days;
    for (const auto& h : rec.honeypots) {
        HoneypotView hv;
        hv.id = h.id;
        hv.topic = rec.topics.at(h.topic).name;
        hv.strategy_mix = h.strategy_mix;
        hv.plan = h.plan.plan;
        for (const auto& s : h.daily_snapshots) hv.followers_daily.push_back(s.followers_analytic);
        for (const auto& p : h.posts) {
            hv.posts.push_back({p.ordinal, p.published_at.day, p.content.provenance, p.likes,
                                static_cast<int>(p.comments.size()), p.sponsored_window.has_value()});
            for (const auto& c : p.comments) hv.comments.push_back(c);
        }
        for (const auto& [id, f] : h.followers) {
            const auto& a = rec.agents.at(id);
            FollowerView fv;
            fv.agent = id;
            fv.purchased = f.purchased;
            fv.since_day = f.since.day;
            fv.category = a.category;
            fv.gender = a.gender;
            fv.age = a.age;
            fv.region = a.region;
            fv.profile = classify::ProfileView::of(a);
            fv.topic_specific = a.posts_topic_specific;
            hv.followers.push_back(std::move(fv));
        }
        v.honeypots.push_back(std::move(hv));
    }
    return v;
}

namespace detail {

template <typename Enum, std::size_t N>
Enum parse_enum(const std::string& s, const Enum (&values)[N], const char* what) {
    for (Enum e : values) {
        if (to_string(e) == s) return e;
    }
    throw Error(ErrorCode::ParseError, std::string("unknown ") + what + " '" + s + "'");
}

inline constexpr AgentCategory kCategories[] = {AgentCategory::RealPerson, AgentCategory::PageInfluencer,
                                                AgentCategory::SpamBot};
inline constexpr Gender kGenders[] = {Gender::F, Gender::M, Gender::Unspecified};
inline constexpr AgeBucket kAges[] = {AgeBucket::A13_17, AgeBucket::A18_24, AgeBucket::A25_34, AgeBucket::A35_44,
                                      AgeBucket::A45_54, AgeBucket::A55_64, AgeBucket::A65Plus};
inline constexpr PlanKind kPlans[] = {PlanKind::Plan0, PlanKind::Plan1, PlanKind::Plan2};

inline int to_int(const std::string& s) { return csv::to_number<int>(s); }

}  // namespace detail

/// Rebuilds the analytics view from the files written by sim::write_run.
inline RunView read_run(const std::filesystem::path& dir) {
    using detail::to_int;
    RunView v;
    try {
        const auto meta = nlohmann::json::parse(csv::read_file(dir / "run.json"));
        v.seed = meta.at("seed").get<std::uint64_t>();
        v.horizon_days = meta.at("horizon_days").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, (dir / "run.json").string() + ": " + e.what());
    }
    std::map<std::string, std::size_t> index;
    for (const auto& r : csv::read(dir / "honeypots.csv", sim::kHoneypotColumns)) {
        HoneypotView h;
        h.id = r[0];
        h.topic = r[1];
        std::size_t start = 0;
        while (start <= r[2].size()) {
            const auto end = std::min(r[2].find('+', start), r[2].size());
            h.strategy_mix.push_back(experiment::parse_strategy(r[2].substr(start, end - start)));
            start = end + 1;
        }
        h.plan = detail::parse_enum(r[3], detail::kPlans, "plan");
        index[h.id] = v.honeypots.size();
        v.honeypots.push_back(std::move(h));
    }
    auto at = [&](const std::string& id) -> HoneypotView& {
        auto it = index.find(id);
        if (it == index.end()) throw Error(ErrorCode::ParseError, "unknown honeypot '" + id + "'");
        return v.honeypots[it->second];
    };
    for (auto& h : v.honeypots) {
        for (const auto& r : csv::read(dir / "snapshots" / (h.id + ".csv"), sim::kSnapshotColumns)) {
            h.followers_daily.push_back(to_int(r[2]));
        }
    }
    for (const auto& r : csv::read(dir / "posts.csv", sim::kPostColumns)) {
        PostView p;
        p.ordinal = static_cast<std::uint32_t>(to_int(r[1]));
        p.day = to_int(r[2]);
        p.strategy = experiment::parse_strategy(r[4]);
        p.likes = to_int(r[7]);
        p.comments = to_int(r[8]);
        p.sponsored = !r[9].empty();
        at(r[0]).posts.push_back(p);
    }
    for (const auto& r : csv::read(dir / "comments.csv", sim::kCommentColumns)) {
        Comment c;
        c.author = static_cast<AgentId>(csv::to_number<std::uint32_t>(r[2]));
        c.posted_at = SimTime{to_int(r[3]), to_int(r[4])};
        c.latency_seconds = csv::to_number<std::int64_t>(r[5]);
        c.text = r[6];
        at(r[0]).comments.push_back(std::move(c));
    }
    for (const auto& r : csv::read(dir / "followers.csv", sim::kFollowerColumns)) {
        FollowerView f;
        f.agent = csv::to_number<std::uint32_t>(r[1]);
        f.purchased = r[2] == "1";
        f.since_day = to_int(r[3]);
        f.category = detail::parse_enum(r[5], detail::kCategories, "category");
        f.gender = detail::parse_enum(r[6], detail::kGenders, "gender");
        f.age = detail::parse_enum(r[7], detail::kAges, "age bucket");
        f.region = r[8];
        f.profile.follower_count = to_int(r[9]);
        f.profile.following_count = to_int(r[10]);
        f.profile.post_count = to_int(r[11]);
        f.profile.has_real_picture = r[12] == "1";
        f.profile.username_entropy = csv::to_number<double>(r[13]);
        f.topic_specific = r[14] == "1";
        at(r[0]).followers.push_back(std::move(f));
    }
    return v;
}

}  // namespace hpsim::analytics
