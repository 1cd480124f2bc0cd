#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "hpsim/analytics/trend.hpp"
#include "hpsim/core/csv.hpp"
#include "hpsim/core/random.hpp"
#include "hpsim/experiment/config.hpp"
#include "hpsim/experiment/runner.hpp"
#include "hpsim/sim/profile.hpp"

namespace hpsim::experiment {

/// Group means to fit: group label -> (followers, comments, likes).
struct CalibrationTargets {
    std::map<std::string, std::array<double, 3>> groups;
};

/// {"groups": {"cat": {"followers": 47.4, "comments": 182.1, "likes": 923.1}, ...}}
inline CalibrationTargets targets_from_json(const nlohmann::json& j) {
    CalibrationTargets t;
    try {
        for (const auto& [group, v] : j.at("groups").items()) {
            std::array<double, 3> m{v.at("followers").get<double>(), v.at("comments").get<double>(),
                                    v.at("likes").get<double>()};
            for (double x : m) {
                if (!(x > 0.0)) throw Error(ErrorCode::ValidationError, "targets.groups." + group + ": means must be > 0");
            }
            t.groups[group] = m;
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("targets: ") + e.what());
    }
    if (t.groups.empty()) throw Error(ErrorCode::ValidationError, "targets.groups: empty");
    return t;
}

inline CalibrationTargets load_targets(const std::filesystem::path& path) {
    try {
        return targets_from_json(nlohmann::json::parse(csv::read_file(path)));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
    }
}

/// Sum of squared relative errors of the simulated group means.
inline double calibration_loss(const std::vector<analytics::TrendRow>& rows, const CalibrationTargets& t) {
    double loss = 0.0;
    for (const auto& [group, target] : t.groups) {
        const analytics::TrendRow* row = nullptr;
        for (const auto& r : rows) {
            if (r.group == group) row = &r;
        }
        if (!row) throw Error(ErrorCode::ValidationError, "targets: simulated runs have no group '" + group + "'");
        const std::array<double, 3> sim{row->followers_mean, row->comments_mean, row->likes_mean};
        for (std::size_t i = 0; i < 3; ++i) {
            const double rel = (sim[i] - target[i]) / target[i];
            loss += rel * rel;
        }
    }
    return loss;
}

/// One searchable profile parameter.
struct Knob {
    std::string name;
    double lo;
    double hi;
    bool log_scale;
    std::function<double&(sim::BehaviorProfile&)> ref;
};

inline std::vector<Knob> default_knobs() {
    using P = sim::BehaviorProfile;
    std::vector<Knob> k{
        {"base_like", 0.05, 1.0, true, [](P& p) -> double& { return p.base_like; }},
        {"base_comment", 0.001, 0.2, true, [](P& p) -> double& { return p.base_comment; }},
        {"base_follow", 0.002, 0.2, true, [](P& p) -> double& { return p.base_follow; }},
        {"cta_bonus", 0.0, 1.0, false, [](P& p) -> double& { return p.cta_bonus; }},
        {"sponsor_boost", 0.0, 3.0, false, [](P& p) -> double& { return p.sponsor_boost; }},
        {"discovery_rate", 0.3, 30.0, true, [](P& p) -> double& { return p.discovery_rate; }},
        {"coverage_elasticity", 0.0, 0.6, false, [](P& p) -> double& { return p.coverage_elasticity; }},
        {"purchased_penalty", 0.0, 1.0, false, [](P& p) -> double& { return p.purchased_penalty; }},
        {"spambot_trigger_p", 0.0005, 0.05, true, [](P& p) -> double& { return p.spambot_trigger_p; }},
        {"bot_follow_p", 0.001, 0.2, true, [](P& p) -> double& { return p.bot_follow_p; }},
        {"visit_p", 0.01, 0.6, true, [](P& p) -> double& { return p.visit_p; }},
        {"fu_visit_p", 0.05, 1.0, true, [](P& p) -> double& { return p.fu_visit_p; }},
        {"fu_follow_back_p", 0.02, 0.8, true, [](P& p) -> double& { return p.fu_follow_back_p; }},
        {"reciprocity_boost", 1.0, 20.0, true, [](P& p) -> double& { return p.reciprocity_boost; }},
        {"sponsor_reach_scale", 0.01, 1.0, true, [](P& p) -> double& { return p.sponsor_reach_scale; }},
    };
    for (const char* t : {"food", "cat", "car"}) {
        const std::string topic = t;
        k.push_back({"topic_interest." + topic, 0.05, 0.6, false,
                     [topic](P& p) -> double& { return p.topic_interest[topic]; }});
        k.push_back({"bot_topic_share." + topic, 0.05, 0.7, false,
                     [topic](P& p) -> double& { return p.bot_topic_share[topic]; }});
    }
    for (StrategyKind s : kAllStrategies) {
        const auto i = static_cast<std::size_t>(s);
        const std::string name(to_string(s));
        k.push_back({"appeal." + name + ".alpha", 1.0, 8.0, true, [i](P& p) -> double& { return p.appeal[i].alpha; }});
        k.push_back({"appeal." + name + ".beta", 1.0, 8.0, true, [i](P& p) -> double& { return p.appeal[i].beta; }});
    }
    return k;
}

/// Mean appeal of the non-AI strategies must stay above the AI ones.
inline bool appeal_order_holds(const sim::BehaviorProfile& p) {
    double ai = 0.0;
    double non_ai = 0.0;
    for (StrategyKind s : kAllStrategies) {
        const auto& b = p.appeal[static_cast<std::size_t>(s)];
        (ai_class(s) == AiClass::AI ? ai : non_ai) += b.alpha / (b.alpha + b.beta);
    }
    return non_ai > ai;
}

struct CalibrationOptions {
    int replicates = 10;
    std::uint64_t seed = 1;
    int threads = 1;
    /// Probability of a fresh draw from the whole box instead of a step around the best point.
    double global_p = 0.2;
    double step = 0.35;
    std::function<void(int evaluation, double loss, double best)> on_evaluation;
};

struct CalibrationResult {
    sim::BehaviorProfile profile;
    double loss = 0.0;
    double start_loss = 0.0;
    int evaluations = 0;
    /// BudgetExhausted when the search stopped because the budget ran out.
    std::optional<ErrorCode> status;
};

/// Loss of one profile: group means over `replicates` paper-testbed runs with fixed seeds.
inline double evaluate_profile(const sim::BehaviorProfile& p, const CalibrationTargets& t, const CalibrationOptions& opt) {
    auto cfg = preset_paper_testbed();
    cfg.replicates = opt.replicates;
    cfg.seed = opt.seed;
    RunOptions ro;
    ro.threads = opt.threads;
    ro.write_runs = false;
    const auto views = simulate_replicates(cfg, p, {}, ro);
    std::vector<analytics::TrendEntry> entries;
    for (const auto& v : views) {
        for (auto& e : analytics::trend_entries(v)) entries.push_back(std::move(e));
    }
    return calibration_loss(analytics::trend_table(entries), t);
}

/**
 * Random search from `start`: each candidate is either a fresh uniform draw
 * over the knob box or a log-normal step around the best point so far. The
 * start profile counts as the first evaluation.
 */
inline CalibrationResult calibrate(const sim::BehaviorProfile& start, const CalibrationTargets& targets, int budget,
                                   const CalibrationOptions& opt = {}, const std::vector<Knob>& knobs = default_knobs()) {
    if (budget < 1) throw Error(ErrorCode::ValidationError, "budget must be >= 1");
    CalibrationResult res;
    res.profile = start;
    res.loss = evaluate_profile(start, targets, opt);
    res.start_loss = res.loss;
    res.evaluations = 1;
    if (opt.on_evaluation) opt.on_evaluation(1, res.loss, res.loss);

    RandomStream rng = RandomStream(opt.seed).split("calibrate");
    while (res.evaluations < budget) {
        sim::BehaviorProfile cand = res.profile;
        const bool global = rng.bernoulli(opt.global_p);
        for (const auto& k : knobs) {
            double& v = k.ref(cand);
            if (global) {
                v = k.log_scale ? std::exp(std::log(k.lo) + rng.uniform() * (std::log(k.hi) - std::log(k.lo)))
                                : k.lo + rng.uniform() * (k.hi - k.lo);
            } else if (rng.bernoulli(0.3)) {
                const double z = rng.normal(0.0, opt.step);
                v = k.log_scale ? v * std::exp(z) : v + z * (k.hi - k.lo) * 0.25;
            }
            v = std::clamp(v, k.lo, k.hi);
        }
        if (!appeal_order_holds(cand)) continue;
        const double loss = evaluate_profile(cand, targets, opt);
        ++res.evaluations;
        if (loss < res.loss) {
            res.loss = loss;
            res.profile = cand;
        }
        if (opt.on_evaluation) opt.on_evaluation(res.evaluations, loss, res.loss);
    }
    res.status = ErrorCode::BudgetExhausted;
    return res;
}

inline nlohmann::json calibrated_profile_json(const CalibrationResult& r, const std::string& name) {
    auto p = r.profile;
    p.calibration_name = name;
    auto j = sim::to_json(p);
    j["loss"] = r.loss;
    return j;
}

}  // namespace hpsim::experiment
