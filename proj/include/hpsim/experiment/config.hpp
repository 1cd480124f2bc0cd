#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hpsim/content/generator.hpp"
#include "hpsim/core/error.hpp"
#include "hpsim/core/fixtures.hpp"
#include "hpsim/core/topic.hpp"
#include "hpsim/core/types.hpp"

namespace hpsim::experiment {

inline constexpr const char* kConfigSchema = "honeypot-experiment/1";

struct HoneypotSpec {
    std::string id;
    std::string topic;
    std::vector<StrategyKind> strategy_mix;
    EngagementPlanConfig plan;

    bool operator==(const HoneypotSpec& o) const {
        return id == o.id && topic == o.topic && strategy_mix == o.strategy_mix && plan.plan == o.plan.plan;
    }
};

struct ExperimentConfig {
    std::vector<Topic> topics;
    std::vector<HoneypotSpec> honeypots;
    int horizon_days = 63;
    int replicates = 1;
    std::uint64_t seed = 1;
    std::string profile = "paper-calibrated";
    int population_size = 10000;
    int passive_pool_size = 1000;
    bool deterministic_schedule = false;
    content::ReviewPolicy review = content::ReviewPolicy::auto_approve();

    [[nodiscard]] std::size_t topic_index(const std::string& name) const {
        for (std::size_t i = 0; i < topics.size(); ++i) {
            if (topics[i].name == name) return i;
        }
        throw Error(ErrorCode::ValidationError, "unknown topic '" + name + "'");
    }
};

inline StrategyKind parse_strategy(const std::string& s) {
    for (StrategyKind k : kAllStrategies) {
        if (to_string(k) == s) return k;
    }
    throw Error(ErrorCode::ValidationError, "unknown strategy '" + s + "'");
}

inline PlanKind parse_plan(const std::string& s) {
    for (PlanKind p : {PlanKind::Plan0, PlanKind::Plan1, PlanKind::Plan2}) {
        if (to_string(p) == s) return p;
    }
    throw Error(ErrorCode::ValidationError, "unknown plan '" + s + "'");
}

/// Topic from the shipped hashtag fixture; coverage is the main tag's count.
inline Topic fixture_topic(const std::string& name, const Fixtures& fx = default_fixtures()) {
    auto it = fx.hashtag_pools.find(name);
    if (it == fx.hashtag_pools.end() || it->second.empty()) {
        throw Error(ErrorCode::ValidationError, "no hashtag fixture for topic '" + name + "'");
    }
    auto pool = it->second;
    std::int64_t coverage = 0;
    for (const auto& h : pool) coverage = std::max(coverage, h.coverage_count);
    return make_topic(name, coverage, std::move(pool));
}

/// Checks every invariant of the config and names the offending field.
inline void validate(const ExperimentConfig& c) {
    auto fail = [](const std::string& path, const std::string& msg) {
        throw Error(ErrorCode::ValidationError, path + ": " + msg);
    };
    if (c.horizon_days < 1) fail("horizon_days", "must be >= 1");
    if (c.replicates < 1) fail("replicates", "must be >= 1");
    if (c.population_size < 1) fail("population_size", "must be >= 1");
    if (c.passive_pool_size < 0) fail("passive_pool_size", "must be >= 0");
    if (c.topics.empty()) fail("topics", "at least one topic is required");
    if (c.honeypots.empty()) fail("honeypots", "at least one honeypot is required");
    std::set<std::string> topic_names;
    for (std::size_t i = 0; i < c.topics.size(); ++i) {
        if (!topic_names.insert(c.topics[i].name).second) {
            fail("topics[" + std::to_string(i) + "].name", "duplicate topic '" + c.topics[i].name + "'");
        }
    }
    std::set<std::string> seen;
    std::set<std::string> dups;
    for (std::size_t i = 0; i < c.honeypots.size(); ++i) {
        const auto& h = c.honeypots[i];
        const std::string path = "honeypots[" + std::to_string(i) + "]";
        if (h.id.empty()) fail(path + ".id", "must not be empty");
        if (!seen.insert(h.id).second) dups.insert(h.id);
        if (topic_names.count(h.topic) == 0) fail(path + ".topic", "unknown topic '" + h.topic + "'");
        if (h.strategy_mix.empty()) fail(path + ".strategy_mix", "must not be empty");
        const auto& p = h.plan;
        if (p.follow_back_p < 0.0 || p.follow_back_p > 1.0) fail(path + ".follow_back_p", "must be in [0, 1]");
        if (p.purchased_followers_n < 0) fail(path + ".purchased_followers_n", "must be >= 0");
        if (p.sponsor_daily_budget < 0.0) fail(path + ".sponsor_daily_budget", "must be >= 0");
        if (p.sponsor_duration_days < 1) fail(path + ".sponsor_duration_days", "must be >= 1");
        if (p.fu_unfollow_delay_days < 0) fail(path + ".fu_unfollow_delay_days", "must be >= 0");
        if (p.fu_follows_per_day < 0) fail(path + ".fu_follows_per_day", "must be >= 0");
        if (p.aggressive_start_week < 1) fail(path + ".aggressive_start_week", "must be >= 1");
    }
    if (!dups.empty()) {
        std::string ids;
        for (const auto& d : dups) ids += (ids.empty() ? "" : ", ") + d;
        fail("honeypots", "duplicate honeypot ids: " + ids);
    }
    for (const auto& t : c.topics) {
        if (t.hashtag_pool.size() < content::kHashtagsPerPost) {
            fail("topics." + t.name, "hashtag pool needs at least " + std::to_string(content::kHashtagsPerPost) + " tags");
        }
    }
}

/**
 * The 21-honeypot testbed: seven honeypots per topic (food, cat, car), each
 * topic laid out as UQ/P0, UQ/P1, UQ/P2, IA/P0, IA/P1, IA/P2, All/P2.
 */
inline ExperimentConfig preset_paper_testbed() {
    ExperimentConfig c;
    const std::vector<StrategyKind> uq{StrategyKind::UnsplashModel, StrategyKind::QuotesModel};
    const std::vector<StrategyKind> ia{StrategyKind::InstaModel, StrategyKind::ArtModel};
    const std::vector<StrategyKind> all{kAllStrategies, kAllStrategies + 4};
    const std::pair<const std::vector<StrategyKind>*, PlanKind> layout[] = {
        {&uq, PlanKind::Plan0}, {&uq, PlanKind::Plan1}, {&uq, PlanKind::Plan2}, {&ia, PlanKind::Plan0},
        {&ia, PlanKind::Plan1}, {&ia, PlanKind::Plan2}, {&all, PlanKind::Plan2},
    };
    int n = 1;
    for (const char* topic : {"food", "cat", "car"}) {
        c.topics.push_back(fixture_topic(topic));
        for (const auto& [mix, plan] : layout) {
            HoneypotSpec h;
            h.id = "h" + std::to_string(n++);
            h.topic = topic;
            h.strategy_mix = *mix;
            h.plan.plan = plan;
            c.honeypots.push_back(std::move(h));
        }
    }
    return c;
}

/// Honeypots used as baselines: UnsplashModel + QuotesModel with PLAN0.
inline std::vector<std::string> baseline_ids(const ExperimentConfig& c) {
    std::vector<std::string> out;
    for (const auto& h : c.honeypots) {
        const bool uq = h.strategy_mix.size() == 2 &&
                        std::count(h.strategy_mix.begin(), h.strategy_mix.end(), StrategyKind::UnsplashModel) == 1 &&
                        std::count(h.strategy_mix.begin(), h.strategy_mix.end(), StrategyKind::QuotesModel) == 1;
        if (uq && h.plan.plan == PlanKind::Plan0) out.push_back(h.id);
    }
    return out;
}

namespace detail {

using nlohmann::json;

inline void reject_unknown(const json& j, const std::string& path, std::initializer_list<const char*> known) {
    if (!j.is_object()) throw Error(ErrorCode::ValidationError, path + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; })) {
            throw Error(ErrorCode::ValidationError, (path.empty() ? key : path + "." + key) + ": unknown key");
        }
    }
}

template <typename T>
T get(const json& j, const char* key, const std::string& path) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ValidationError, (path.empty() ? "" : path + ".") + key + ": " + e.what());
    }
}

inline EngagementPlanConfig parse_plan_config(const json& j, const std::string& path) {
    EngagementPlanConfig p;
    if (j.is_string()) {
        p.plan = parse_plan(j.get<std::string>());
        return p;
    }
    reject_unknown(j, path, {"kind", "follow_back_p", "purchased_followers_n", "sponsor_daily_budget",
                             "sponsor_duration_days", "sponsored_post_count", "fu_unfollow_delay_days",
                             "fu_follows_per_day", "aggressive_start_week"});
    p.plan = parse_plan(get<std::string>(j, "kind", path));
    if (j.contains("follow_back_p")) p.follow_back_p = get<double>(j, "follow_back_p", path);
    if (j.contains("purchased_followers_n")) p.purchased_followers_n = get<int>(j, "purchased_followers_n", path);
    if (j.contains("sponsor_daily_budget")) p.sponsor_daily_budget = get<double>(j, "sponsor_daily_budget", path);
    if (j.contains("sponsor_duration_days")) p.sponsor_duration_days = get<int>(j, "sponsor_duration_days", path);
    if (j.contains("sponsored_post_count")) p.sponsored_post_count = get<int>(j, "sponsored_post_count", path);
    if (j.contains("fu_unfollow_delay_days")) p.fu_unfollow_delay_days = get<int>(j, "fu_unfollow_delay_days", path);
    if (j.contains("fu_follows_per_day")) p.fu_follows_per_day = get<int>(j, "fu_follows_per_day", path);
    if (j.contains("aggressive_start_week")) p.aggressive_start_week = get<int>(j, "aggressive_start_week", path);
    return p;
}

inline json plan_to_json(const EngagementPlanConfig& p) {
    return {{"kind", std::string(to_string(p.plan))},
            {"follow_back_p", p.follow_back_p},
            {"purchased_followers_n", p.purchased_followers_n},
            {"sponsor_daily_budget", p.sponsor_daily_budget},
            {"sponsor_duration_days", p.sponsor_duration_days},
            {"sponsored_post_count", p.sponsored_post_count},
            {"fu_unfollow_delay_days", p.fu_unfollow_delay_days},
            {"fu_follows_per_day", p.fu_follows_per_day},
            {"aggressive_start_week", p.aggressive_start_week}};
}

}  // namespace detail

/**
 * Parses the JSON config. A "preset" key expands the named preset first;
 * the remaining keys override its fields. Unknown keys are rejected with
 * the path of the offending field.
 */
inline ExperimentConfig config_from_json(const nlohmann::json& j) {
    using detail::get;
    detail::reject_unknown(j, "", {"schema", "preset", "topics", "honeypots", "horizon_days", "replicates", "seed",
                                   "profile", "population_size", "passive_pool_size", "deterministic_schedule",
                                   "review"});
    if (!j.contains("schema")) throw Error(ErrorCode::ValidationError, "schema: missing");
    if (get<std::string>(j, "schema", "") != kConfigSchema) {
        throw Error(ErrorCode::ValidationError, std::string("schema: expected '") + kConfigSchema + "'");
    }
    ExperimentConfig c;
    if (j.contains("preset")) {
        const auto name = get<std::string>(j, "preset", "");
        if (name != "paper-testbed") throw Error(ErrorCode::ValidationError, "preset: unknown preset '" + name + "'");
        c = preset_paper_testbed();
    }
    if (j.contains("topics")) {
        c.topics.clear();
        const auto& arr = j.at("topics");
        if (!arr.is_array()) throw Error(ErrorCode::ValidationError, "topics: expected an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string path = "topics[" + std::to_string(i) + "]";
            const auto& t = arr[i];
            if (t.is_string()) {
                c.topics.push_back(fixture_topic(t.get<std::string>()));
                continue;
            }
            detail::reject_unknown(t, path, {"name", "coverage", "hashtags"});
            const auto name = get<std::string>(t, "name", path);
            if (!t.contains("hashtags")) {
                auto topic = fixture_topic(name);
                if (t.contains("coverage")) topic = make_topic(name, get<std::int64_t>(t, "coverage", path), topic.hashtag_pool);
                c.topics.push_back(std::move(topic));
                continue;
            }
            std::vector<Hashtag> pool;
            const auto& tags = t.at("hashtags");
            for (std::size_t k = 0; k < tags.size(); ++k) {
                const std::string tpath = path + ".hashtags[" + std::to_string(k) + "]";
                if (!tags[k].is_array() || tags[k].size() != 2) {
                    throw Error(ErrorCode::ValidationError, tpath + ": expected [tag, coverage]");
                }
                pool.push_back({tags[k][0].get<std::string>(), tags[k][1].get<std::int64_t>()});
            }
            std::int64_t coverage = 0;
            for (const auto& h : pool) coverage = std::max(coverage, h.coverage_count);
            if (t.contains("coverage")) coverage = get<std::int64_t>(t, "coverage", path);
            try {
                c.topics.push_back(make_topic(name, coverage, std::move(pool)));
            } catch (const Error& e) {
                throw Error(ErrorCode::ValidationError, path + ".coverage: " + e.what());
            }
        }
    }
    if (j.contains("honeypots")) {
        c.honeypots.clear();
        const auto& arr = j.at("honeypots");
        if (!arr.is_array()) throw Error(ErrorCode::ValidationError, "honeypots: expected an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string path = "honeypots[" + std::to_string(i) + "]";
            const auto& h = arr[i];
            detail::reject_unknown(h, path, {"id", "topic", "strategy_mix", "plan"});
            HoneypotSpec spec;
            spec.id = get<std::string>(h, "id", path);
            spec.topic = get<std::string>(h, "topic", path);
            for (const auto& s : get<std::vector<std::string>>(h, "strategy_mix", path)) {
                try {
                    spec.strategy_mix.push_back(parse_strategy(s));
                } catch (const Error& e) {
                    throw Error(ErrorCode::ValidationError, path + ".strategy_mix: " + e.what());
                }
            }
            if (!h.contains("plan")) throw Error(ErrorCode::ValidationError, path + ".plan: missing");
            try {
                spec.plan = detail::parse_plan_config(h.at("plan"), path + ".plan");
            } catch (const Error& e) {
                if (std::string(e.what()).rfind(path, 0) == 0) throw;
                throw Error(ErrorCode::ValidationError, path + ".plan: " + e.what());
            }
            c.honeypots.push_back(std::move(spec));
        }
    }
    if (j.contains("horizon_days")) c.horizon_days = get<int>(j, "horizon_days", "");
    if (j.contains("replicates")) c.replicates = get<int>(j, "replicates", "");
    if (j.contains("seed")) c.seed = get<std::uint64_t>(j, "seed", "");
    if (j.contains("profile")) c.profile = get<std::string>(j, "profile", "");
    if (j.contains("population_size")) c.population_size = get<int>(j, "population_size", "");
    if (j.contains("passive_pool_size")) c.passive_pool_size = get<int>(j, "passive_pool_size", "");
    if (j.contains("deterministic_schedule")) c.deterministic_schedule = get<bool>(j, "deterministic_schedule", "");
    if (j.contains("review")) {
        const auto& r = j.at("review");
        detail::reject_unknown(r, "review", {"policy", "threshold", "max_drafts"});
        const auto policy = get<std::string>(r, "policy", "review");
        if (policy == "auto") {
            c.review = content::ReviewPolicy::auto_approve();
        } else if (policy == "reject_below") {
            c.review = content::ReviewPolicy::reject_below(get<double>(r, "threshold", "review"));
        } else {
            throw Error(ErrorCode::ValidationError, "review.policy: unknown policy '" + policy + "'");
        }
        if (r.contains("max_drafts")) c.review.max_drafts = get<int>(r, "max_drafts", "review");
    }
    validate(c);
    return c;
}

inline nlohmann::json config_to_json(const ExperimentConfig& c) {
    nlohmann::json topics = nlohmann::json::array();
    for (const auto& t : c.topics) {
        nlohmann::json tags = nlohmann::json::array();
        for (const auto& h : t.hashtag_pool) tags.push_back({h.tag, h.coverage_count});
        topics.push_back({{"name", t.name}, {"coverage", t.coverage_count}, {"hashtags", tags}});
    }
    nlohmann::json hps = nlohmann::json::array();
    for (const auto& h : c.honeypots) {
        std::vector<std::string> mix;
        for (auto k : h.strategy_mix) mix.emplace_back(to_string(k));
        hps.push_back({{"id", h.id}, {"topic", h.topic}, {"strategy_mix", mix}, {"plan", detail::plan_to_json(h.plan)}});
    }
    nlohmann::json review = {{"policy", c.review.kind == content::ReviewPolicy::Kind::AutoApprove ? "auto" : "reject_below"},
                             {"max_drafts", c.review.max_drafts}};
    if (c.review.kind == content::ReviewPolicy::Kind::RejectBelowAppeal) review["threshold"] = c.review.threshold;
    return {{"schema", kConfigSchema},
            {"topics", topics},
            {"honeypots", hps},
            {"horizon_days", c.horizon_days},
            {"replicates", c.replicates},
            {"seed", c.seed},
            {"profile", c.profile},
            {"population_size", c.population_size},
            {"passive_pool_size", c.passive_pool_size},
            {"deterministic_schedule", c.deterministic_schedule},
            {"review", review}};
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open config " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
    }
    return config_from_json(j);
}

/// Stable 64-bit digest of the normalized config.
inline std::uint64_t config_hash(const ExperimentConfig& c) {
    return hpsim::detail::fnv1a(config_to_json(c).dump());
}

}  // namespace hpsim::experiment
