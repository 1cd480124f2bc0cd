#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "hpsim/core/csv.hpp"
#include "hpsim/core/types.hpp"
#include "hpsim/sim/engine.hpp"

namespace hpsim::sim {

inline const std::vector<std::string> kEventColumns{"seq", "day", "minute", "kind", "actor", "target", "honeypot"};
inline const std::vector<std::string> kSnapshotColumns{"honeypot", "day", "followers", "cum_likes", "cum_comments"};
inline const std::vector<std::string> kHoneypotColumns{"honeypot", "topic", "strategy_mix", "plan"};
inline const std::vector<std::string> kPostColumns{"honeypot", "post", "day", "minute", "strategy", "appeal",
                                                   "has_cta", "likes", "comments", "sponsored_from", "sponsored_to",
                                                   "daily_budget"};
inline const std::vector<std::string> kCommentColumns{"honeypot", "post", "author", "day", "minute",
                                                      "latency_seconds", "text"};
inline const std::vector<std::string> kFollowerColumns{
    "honeypot", "agent",     "purchased",       "since_day",  "since_minute",    "category",
    "gender",   "age",       "region",          "followers",  "following",       "posts",
    "real_picture", "username_entropy", "topic_specific"};

/// agent:ID, honeypot:ID, post:ID/ORDINAL or bg:ID.
inline std::string entity_string(const EntityRef& r, const std::vector<Honeypot>& hps) {
    switch (r.kind) {
        case EntityKind::Agent: return "agent:" + std::to_string(r.index);
        case EntityKind::Honeypot: return "honeypot:" + hps.at(r.index).id;
        case EntityKind::Post: return "post:" + hps.at(r.index).id + "/" + std::to_string(r.sub);
        case EntityKind::BackgroundPost: return "bg:" + std::to_string(r.index);
    }
    return "?";
}

inline std::string events_csv(const RunRecord& rec) {
    std::string out = csv::header(kEventColumns);
    out.reserve(rec.events.size() * 48);
    for (const auto& e : rec.events) {
        out += csv::row(std::to_string(e.seq), std::to_string(e.at.day), std::to_string(e.at.minute_of_day),
                        std::string(to_string(e.kind)), entity_string(e.actor, rec.honeypots),
                        entity_string(e.target, rec.honeypots), rec.honeypots.at(e.honeypot).id);
    }
    return out;
}

inline std::string snapshot_csv(const Honeypot& h) {
    std::string out = csv::header(kSnapshotColumns);
    for (const auto& s : h.daily_snapshots) {
        out += csv::row(h.id, std::to_string(s.day), std::to_string(s.followers_analytic),
                        std::to_string(s.cumulative_likes), std::to_string(s.cumulative_comments));
    }
    return out;
}

inline std::string strategy_mix_string(const std::vector<StrategyKind>& mix) {
    std::string s;
    for (auto k : mix) s += (s.empty() ? "" : "+") + std::string(to_string(k));
    return s;
}

/**
 * Writes the run as CSV files plus run.json:
 * events.csv, snapshots/<honeypot>.csv, honeypots.csv, posts.csv,
 * comments.csv and followers.csv (current followers with their profiles).
 */
inline void write_run(const RunRecord& rec, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir / "snapshots");
    csv::write_file(dir / "events.csv", events_csv(rec));

    std::string hps = csv::header(kHoneypotColumns);
    std::string posts = csv::header(kPostColumns);
    std::string comments = csv::header(kCommentColumns);
    std::string followers = csv::header(kFollowerColumns);
    for (const auto& h : rec.honeypots) {
        csv::write_file(dir / "snapshots" / (h.id + ".csv"), snapshot_csv(h));
        hps += csv::row(h.id, rec.topics.at(h.topic).name, strategy_mix_string(h.strategy_mix),
                        std::string(to_string(h.plan.plan)));
        for (const auto& p : h.posts) {
            const auto& w = p.sponsored_window;
            posts += csv::row(h.id, std::to_string(p.ordinal), std::to_string(p.published_at.day),
                              std::to_string(p.published_at.minute_of_day), std::string(to_string(p.content.provenance)),
                              csv::real(p.content.appeal), p.content.caption.cta ? "1" : "0", std::to_string(p.likes),
                              std::to_string(p.comments.size()), w ? std::to_string(w->start.day) : "",
                              w ? std::to_string(w->end.day) : "", w ? csv::real(w->daily_budget) : "");
            for (const auto& c : p.comments) {
                comments += csv::row(h.id, std::to_string(p.ordinal), std::to_string(c.author),
                                     std::to_string(c.posted_at.day), std::to_string(c.posted_at.minute_of_day),
                                     std::to_string(c.latency_seconds), csv::field(c.text));
            }
        }
        for (const auto& [id, f] : h.followers) {
            const auto& a = rec.agents.at(id);
            followers += csv::row(h.id, std::to_string(id), f.purchased ? "1" : "0", std::to_string(f.since.day),
                                  std::to_string(f.since.minute_of_day), std::string(to_string(a.category)),
                                  std::string(to_string(a.gender)), std::string(to_string(a.age)), csv::field(a.region),
                                  std::to_string(a.follower_count), std::to_string(a.following_count),
                                  std::to_string(a.post_count), a.has_real_picture ? "1" : "0",
                                  csv::real(a.username_entropy), a.posts_topic_specific ? "1" : "0");
        }
    }
    csv::write_file(dir / "honeypots.csv", hps);
    csv::write_file(dir / "posts.csv", posts);
    csv::write_file(dir / "comments.csv", comments);
    csv::write_file(dir / "followers.csv", followers);

    nlohmann::json meta = {{"seed", rec.seed},
                           {"config_hash", rec.config_hash},
                           {"horizon_days", rec.horizon_days},
                           {"profile", rec.profile_name},
                           {"replies", rec.replies},
                           {"events", rec.events.size()}};
    csv::write_file(dir / "run.json", meta.dump(2) + "\n");
}

}  // namespace hpsim::sim
