#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <string>

#include <json.hpp>

#include "hpsim/content/generator.hpp"
#include "hpsim/core/error.hpp"
#include "hpsim/core/fixtures.hpp"
#include "hpsim/core/types.hpp"

namespace hpsim::sim {

/**
 * Free parameters of the agent behaviour model.
 *
 * Probabilities are per exposure unless stated otherwise. The products used
 * by the reaction model are clamped to [0, 1].
 */
struct BehaviorProfile {
    std::string calibration_name = "default";

    double base_like = 0.5;
    double base_comment = 0.01;
    double base_follow = 0.02;
    double cta_bonus = 0.1;
    double sponsor_boost = 1.0;

    /// Expected hashtag-feed exposures of one post per 1000 interested agents.
    double discovery_rate = 3.0;
    /// Feed competition: exposure scales with (coverage / 1e8)^-elasticity.
    double coverage_elasticity = 0.3;
    /// Exposure multiplier ((1 + analytic followers) / (1 + raw followers))^penalty.
    double purchased_penalty = 0.15;

    double spambot_trigger_p = 0.006;
    double bot_follow_p = 0.02;

    /// Chance that the author of a post liked and commented by a honeypot visits it.
    double visit_p = 0.15;
    /// Chance that an account followed through F&U visits the honeypot.
    double fu_visit_p = 0.6;
    /// Chance that an account followed through F&U follows the honeypot back.
    double fu_follow_back_p = 0.3;
    /// Follow-probability multiplier during a visit.
    double reciprocity_boost = 8.0;

    /// Share of the observed sponsored reach that is delivered to simulated agents.
    double sponsor_reach_scale = 0.1;
    double sponsor_reach_cv = 0.3;

    /// Share of active non-bot agents interested in each topic.
    std::map<std::string, double> topic_interest{{"food", 0.30}, {"cat", 0.30}, {"car", 0.20}};
    /// Share of spam bots hunting each topic's hashtags.
    std::map<std::string, double> bot_topic_share{{"food", 0.28}, {"cat", 0.24}, {"car", 0.48}};

    content::AppealModel appeal{{{2.0, 3.0}, {2.0, 3.0}, {3.0, 2.0}, {3.0, 2.0}}};

    [[nodiscard]] double interest(const std::string& topic) const {
        auto it = topic_interest.find(topic);
        return it == topic_interest.end() ? 0.2 : it->second;
    }

    [[nodiscard]] double bot_share(const std::string& topic) const {
        auto it = bot_topic_share.find(topic);
        return it == bot_topic_share.end() ? 0.0 : it->second;
    }
};

inline nlohmann::json to_json(const BehaviorProfile& p) {
    nlohmann::json appeal;
    for (StrategyKind k : kAllStrategies) {
        const auto& b = p.appeal[static_cast<std::size_t>(k)];
        appeal[std::string(to_string(k))] = {b.alpha, b.beta};
    }
    return {
        {"calibration_name", p.calibration_name},
        {"base_like", p.base_like},
        {"base_comment", p.base_comment},
        {"base_follow", p.base_follow},
        {"cta_bonus", p.cta_bonus},
        {"sponsor_boost", p.sponsor_boost},
        {"discovery_rate", p.discovery_rate},
        {"coverage_elasticity", p.coverage_elasticity},
        {"purchased_penalty", p.purchased_penalty},
        {"spambot_trigger_p", p.spambot_trigger_p},
        {"bot_follow_p", p.bot_follow_p},
        {"visit_p", p.visit_p},
        {"fu_visit_p", p.fu_visit_p},
        {"fu_follow_back_p", p.fu_follow_back_p},
        {"reciprocity_boost", p.reciprocity_boost},
        {"sponsor_reach_scale", p.sponsor_reach_scale},
        {"sponsor_reach_cv", p.sponsor_reach_cv},
        {"topic_interest", p.topic_interest},
        {"bot_topic_share", p.bot_topic_share},
        {"appeal", appeal},
    };
}

inline void validate(const BehaviorProfile& p) {
    auto prob = [](const char* name, double v) {
        if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorCode::ValidationError, std::string("profile.") + name + ": not in [0, 1]");
    };
    auto nonneg = [](const char* name, double v) {
        if (!(v >= 0.0)) throw Error(ErrorCode::ValidationError, std::string("profile.") + name + ": negative");
    };
    prob("base_like", p.base_like);
    prob("base_comment", p.base_comment);
    prob("base_follow", p.base_follow);
    prob("spambot_trigger_p", p.spambot_trigger_p);
    prob("bot_follow_p", p.bot_follow_p);
    prob("visit_p", p.visit_p);
    prob("fu_visit_p", p.fu_visit_p);
    prob("fu_follow_back_p", p.fu_follow_back_p);
    nonneg("cta_bonus", p.cta_bonus);
    nonneg("sponsor_boost", p.sponsor_boost);
    nonneg("discovery_rate", p.discovery_rate);
    nonneg("coverage_elasticity", p.coverage_elasticity);
    nonneg("purchased_penalty", p.purchased_penalty);
    nonneg("reciprocity_boost", p.reciprocity_boost);
    nonneg("sponsor_reach_scale", p.sponsor_reach_scale);
    nonneg("sponsor_reach_cv", p.sponsor_reach_cv);
    for (const auto& [t, v] : p.topic_interest) prob(("topic_interest." + t).c_str(), v);
    for (const auto& [t, v] : p.bot_topic_share) prob(("bot_topic_share." + t).c_str(), v);
}

inline BehaviorProfile profile_from_json(const nlohmann::json& j) {
    BehaviorProfile p;
    auto num = [&](const char* key, double& field) {
        if (j.contains(key)) field = j.at(key).get<double>();
    };
    try {
        for (const auto& [key, value] : j.items()) {
            static const char* known[] = {"calibration_name", "base_like", "base_comment", "base_follow",
                                          "cta_bonus", "sponsor_boost", "discovery_rate", "coverage_elasticity",
                                          "purchased_penalty", "spambot_trigger_p", "bot_follow_p", "visit_p",
                                          "fu_visit_p", "fu_follow_back_p", "reciprocity_boost", "sponsor_reach_scale",
                                          "sponsor_reach_cv", "topic_interest", "bot_topic_share", "appeal", "loss"};
            if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return key == k; }) ==
                std::end(known)) {
                throw Error(ErrorCode::ValidationError, "profile: unknown key '" + key + "'");
            }
            (void)value;
        }
        if (j.contains("calibration_name")) p.calibration_name = j.at("calibration_name").get<std::string>();
        num("base_like", p.base_like);
        num("base_comment", p.base_comment);
        num("base_follow", p.base_follow);
        num("cta_bonus", p.cta_bonus);
        num("sponsor_boost", p.sponsor_boost);
        num("discovery_rate", p.discovery_rate);
        num("coverage_elasticity", p.coverage_elasticity);
        num("purchased_penalty", p.purchased_penalty);
        num("spambot_trigger_p", p.spambot_trigger_p);
        num("bot_follow_p", p.bot_follow_p);
        num("visit_p", p.visit_p);
        num("fu_visit_p", p.fu_visit_p);
        num("fu_follow_back_p", p.fu_follow_back_p);
        num("reciprocity_boost", p.reciprocity_boost);
        num("sponsor_reach_scale", p.sponsor_reach_scale);
        num("sponsor_reach_cv", p.sponsor_reach_cv);
        if (j.contains("topic_interest")) p.topic_interest = j.at("topic_interest").get<std::map<std::string, double>>();
        if (j.contains("bot_topic_share")) {
            p.bot_topic_share = j.at("bot_topic_share").get<std::map<std::string, double>>();
        }
        if (j.contains("appeal")) {
            for (StrategyKind k : kAllStrategies) {
                const auto name = std::string(to_string(k));
                if (!j.at("appeal").contains(name)) continue;
                const auto ab = j.at("appeal").at(name).get<std::vector<double>>();
                if (ab.size() != 2 || ab[0] <= 0.0 || ab[1] <= 0.0) {
                    throw Error(ErrorCode::ValidationError, "profile.appeal." + name + ": need two positive numbers");
                }
                p.appeal[static_cast<std::size_t>(k)] = {ab[0], ab[1]};
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("profile: ") + e.what());
    }
    validate(p);
    return p;
}

/// Loads data/profiles/<name>.json, or `name` itself when it is a path to a file.
inline BehaviorProfile load_profile(const std::string& name) {
    std::filesystem::path path = name;
    if (!std::filesystem::exists(path)) path = data_dir() / "profiles" / (name + ".json");
    if (name == "default" && !std::filesystem::exists(path)) return BehaviorProfile{};
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open profile " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
    }
    return profile_from_json(j);
}

}  // namespace hpsim::sim
