#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hpsim/analytics/metrics.hpp"
#include "hpsim/analytics/run_view.hpp"
#include "hpsim/core/csv.hpp"
#include "hpsim/stats/adf.hpp"

namespace hpsim::analytics {

/// ADF verdict that never throws: constant or too-short series count as Stationary and are flagged.
struct SeriesVerdict {
    stats::Stationarity classification = stats::Stationarity::Stationary;
    bool degenerate = false;
    bool too_short = false;
    double statistic = 0.0;
    double p_value = 0.0;

    [[nodiscard]] bool non_stationary() const { return classification == stats::Stationarity::NonStationary; }
};

inline SeriesVerdict classify_series(const std::vector<double>& series, int lag = 1) {
    SeriesVerdict v;
    try {
        const auto r = stats::adf_test(series, lag);
        v.classification = r.classification;
        v.statistic = r.statistic;
        v.p_value = r.p_value;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::DegenerateSeries) {
            v.degenerate = true;
        } else if (e.code() == ErrorCode::SeriesTooShort) {
            v.too_short = true;
        } else {
            throw;
        }
    }
    return v;
}

struct HoneypotTrend {
    std::string id;
    SeriesVerdict followers;
    SeriesVerdict comments;
    SeriesVerdict likes;
};

inline HoneypotTrend honeypot_trend(const HoneypotView& h, int horizon_days) {
    const auto s = daily_series(h, horizon_days);
    return {h.id, classify_series(s.followers), classify_series(s.comments), classify_series(s.likes)};
}

struct TrendRow {
    std::string block;  // topic, strategy or plan
    std::string group;
    int n = 0;
    double followers_mean = 0.0;
    double followers_std = 0.0;
    double comments_mean = 0.0;
    double comments_std = 0.0;
    double likes_mean = 0.0;
    double likes_std = 0.0;
    int ns_followers = 0;
    int ns_comments = 0;
    int ns_likes = 0;
};

struct TrendEntry {
    const HoneypotView* honeypot = nullptr;
    HoneypotTrend trend;
};

namespace detail {

inline TrendRow make_row(const std::string& block, const std::string& group, const std::vector<const TrendEntry*>& members) {
    TrendRow r;
    r.block = block;
    r.group = group;
    r.n = static_cast<int>(members.size());
    std::vector<double> f;
    std::vector<double> c;
    std::vector<double> l;
    for (const auto* m : members) {
        f.push_back(m->honeypot->final_followers());
        c.push_back(static_cast<double>(m->honeypot->total_comments()));
        l.push_back(static_cast<double>(m->honeypot->total_likes()));
        r.ns_followers += m->trend.followers.non_stationary() ? 1 : 0;
        r.ns_comments += m->trend.comments.non_stationary() ? 1 : 0;
        r.ns_likes += m->trend.likes.non_stationary() ? 1 : 0;
    }
    r.followers_mean = mean(f);
    r.followers_std = sample_std(f);
    r.comments_mean = mean(c);
    r.comments_std = sample_std(c);
    r.likes_mean = mean(l);
    r.likes_std = sample_std(l);
    return r;
}

inline void add_block(std::vector<TrendRow>& rows, const std::string& block, const std::vector<TrendEntry>& entries,
                      const std::vector<std::string>& order,
                      const std::function<std::string(const HoneypotView&)>& key) {
    for (const auto& g : order) {
        std::vector<const TrendEntry*> members;
        for (const auto& e : entries) {
            if (key(*e.honeypot) == g) members.push_back(&e);
        }
        if (!members.empty()) rows.push_back(make_row(block, g, members));
    }
}

}  // namespace detail

/**
 * Table of group means (sample std) of final followers, total comments and
 * total likes, with the number of honeypots whose daily series is
 * NonStationary. Rows: topics in first-seen order, then AI / non-AI / Mixed,
 * then PLAN 0 / 1 / 2.
 */
inline std::vector<TrendRow> trend_table(const std::vector<TrendEntry>& entries) {
    std::vector<std::string> topics;
    for (const auto& e : entries) {
        if (std::find(topics.begin(), topics.end(), e.honeypot->topic) == topics.end()) topics.push_back(e.honeypot->topic);
    }
    std::vector<TrendRow> rows;
    detail::add_block(rows, "topic", entries, topics, [](const HoneypotView& h) { return h.topic; });
    detail::add_block(rows, "strategy", entries, {"AI", "non-AI", "Mixed"},
                      [](const HoneypotView& h) { return strategy_group(h.strategy_mix); });
    detail::add_block(rows, "plan", entries, {"PLAN 0", "PLAN 1", "PLAN 2"},
                      [](const HoneypotView& h) { return plan_label(h.plan); });
    return rows;
}

inline std::vector<TrendEntry> trend_entries(const RunView& v) {
    std::vector<TrendEntry> out;
    for (const auto& h : v.honeypots) out.push_back({&h, honeypot_trend(h, v.horizon_days)});
    return out;
}

inline std::string trend_table_csv(const std::vector<TrendRow>& rows) {
    std::string out = csv::row(std::string("group"), std::string("followers_mean"), std::string("followers_std"),
                               std::string("comments_mean"), std::string("comments_std"), std::string("likes_mean"),
                               std::string("likes_std"), std::string("ns_followers"), std::string("ns_comments"),
                               std::string("ns_likes"));
    for (const auto& r : rows) {
        const auto n = "/" + std::to_string(r.n);
        out += csv::row(csv::field(r.group), csv::fixed(r.followers_mean, 1), csv::fixed(r.followers_std, 1),
                        csv::fixed(r.comments_mean, 1), csv::fixed(r.comments_std, 1), csv::fixed(r.likes_mean, 1),
                        csv::fixed(r.likes_std, 1), std::to_string(r.ns_followers) + n,
                        std::to_string(r.ns_comments) + n, std::to_string(r.ns_likes) + n);
    }
    return out;
}

/// Trend-table cell, e.g. "47.4 ± 17.5".
inline std::string mean_std_cell(double m, double s) { return csv::fixed(m, 1) + " ± " + csv::fixed(s, 1); }

}  // namespace hpsim::analytics
