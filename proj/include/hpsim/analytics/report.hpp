#pragma once

#include <array>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hpsim/analytics/insights.hpp"
#include "hpsim/analytics/metrics.hpp"
#include "hpsim/analytics/run_view.hpp"
#include "hpsim/analytics/trend.hpp"
#include "hpsim/classify/classifiers.hpp"
#include "hpsim/core/csv.hpp"
#include "hpsim/core/fixtures.hpp"
#include "hpsim/stats/anova.hpp"
#include "hpsim/stats/tukey.hpp"

namespace hpsim::analytics {

inline constexpr double kPValueResolution = 0.001;
inline constexpr const char* kFactorNames[3] = {"topic", "strategy", "plan"};

/// Statistical test outcome, or the reason it could not be computed.
template <typename T>
struct Maybe {
    std::optional<T> value;
    std::string error;
};

template <typename T, typename F>
Maybe<T> attempt(F&& f) {
    Maybe<T> m;
    try {
        m.value = f();
    } catch (const Error& e) {
        m.error = e.what();
    }
    return m;
}

struct FactorTukey {
    std::string factor;
    Maybe<stats::TukeyResult> result;
};

struct FollowerMix {
    std::string topic;
    std::string honeypot;  // best honeypot of the topic (most followers); empty when pooled
    int followers = 0;
    double real_pct = 0.0;
    double pages_pct = 0.0;
    double bots_pct = 0.0;
};

struct HoneypotInsights {
    std::string honeypot;
    Insights insights;
};

struct PlotPoint {
    std::string plan;
    int week = 0;
    double likes_per_post = 0.0;
};

/// Everything the report files are rendered from.
struct Report {
    int runs = 0;
    RunTotals totals;
    double interactions_per_week = 0.0;
    double accounts_per_week = 0.0;
    std::vector<TrendRow> trend;
    Maybe<stats::AnovaTable> likes_anova;
    std::vector<FactorTukey> likes_tukey;
    Maybe<stats::AnovaTable> followers_anova;
    std::vector<FactorTukey> followers_tukey;
    long comments_classified = 0;
    std::optional<double> spam_fraction;
    long followers_classified = 0;
    std::optional<double> follower_accuracy;
    std::vector<FollowerMix> best_mix;
    std::vector<HoneypotInsights> insights;  // first run only
    std::vector<PlotPoint> plot;

    [[nodiscard]] const FactorTukey& likes_tukey_for(const std::string& factor) const {
        for (const auto& t : likes_tukey) {
            if (t.factor == factor) return t;
        }
        throw Error(ErrorCode::ValidationError, "no Tukey result for " + factor);
    }
};

namespace detail {

inline std::array<std::string, 3> factor_levels(const HoneypotView& h) {
    return {h.topic, strategy_group(h.strategy_mix), plan_label(h.plan)};
}

inline std::vector<std::string> level_order(const std::vector<RunView>& runs, int factor) {
    if (factor == 1) return {"AI", "non-AI", "Mixed"};
    if (factor == 2) return {"PLAN 0", "PLAN 1", "PLAN 2"};
    std::vector<std::string> out;
    for (const auto& r : runs) {
        for (const auto& h : r.honeypots) {
            if (std::find(out.begin(), out.end(), h.topic) == out.end()) out.push_back(h.topic);
        }
    }
    return out;
}

inline std::vector<FactorTukey> tukey_by_factor(const std::vector<RunView>& runs,
                                                const std::function<void(const HoneypotView&, std::vector<double>&)>& values) {
    std::vector<FactorTukey> out;
    for (int f = 0; f < 3; ++f) {
        std::vector<stats::SampleGroup> groups;
        for (const auto& level : level_order(runs, f)) {
            stats::SampleGroup g{level, {}};
            for (const auto& r : runs) {
                for (const auto& h : r.honeypots) {
                    if (factor_levels(h)[static_cast<std::size_t>(f)] == level) values(h, g.observations);
                }
            }
            if (!g.observations.empty()) groups.push_back(std::move(g));
        }
        out.push_back({kFactorNames[f], attempt<stats::TukeyResult>([&] { return stats::tukey_hsd(groups); })});
    }
    return out;
}

inline FollowerMix follower_mix(const std::vector<const FollowerView*>& fs) {
    FollowerMix m;
    std::array<int, 3> counts{};
    for (const auto* f : fs) {
        ++counts[static_cast<std::size_t>(classify::classify_follower(f->profile, f->topic_specific))];
    }
    const int n = static_cast<int>(fs.size());
    m.followers = n;
    if (n > 0) {
        m.real_pct = round_to(100.0 * counts[0] / n, 2);
        m.pages_pct = round_to(100.0 * counts[1] / n, 2);
        m.bots_pct = round_to(100.0 * counts[2] / n, 2);
    }
    return m;
}

}  // namespace detail

/**
 * Analyses one or more replicate runs of the same design. Totals, trend
 * table, tests and classifier summaries pool all runs; insights cover the
 * first run.
 */
inline Report build_report(const std::vector<RunView>& runs, const std::vector<std::string>& spam_patterns) {
    if (runs.empty()) throw Error(ErrorCode::EmptyInput, "no runs to analyse");
    Report rep;
    rep.runs = static_cast<int>(runs.size());

    std::vector<TrendEntry> entries;
    for (const auto& r : runs) {
        const auto t = run_totals(r);
        rep.totals.honeypots += t.honeypots;
        rep.totals.posts += t.posts;
        rep.totals.likes += t.likes;
        rep.totals.comments += t.comments;
        rep.totals.followers += t.followers;
        rep.totals.weeks = t.weeks;
        for (auto& e : trend_entries(r)) entries.push_back(std::move(e));
    }
    rep.interactions_per_week =
        interactions_per_week(static_cast<double>(rep.totals.interactions()), rep.totals.honeypots, rep.totals.weeks);
    rep.accounts_per_week =
        interactions_per_week(static_cast<double>(rep.totals.followers), rep.totals.honeypots, rep.totals.weeks);
    rep.trend = trend_table(entries);

    std::vector<stats::FactorialObservation> post_obs;
    std::vector<stats::FactorialObservation> follower_obs;
    for (const auto& r : runs) {
        for (const auto& h : r.honeypots) {
            const auto lv = detail::factor_levels(h);
            for (const auto& p : h.posts) post_obs.push_back({static_cast<double>(p.likes), lv[0], lv[1], lv[2]});
            follower_obs.push_back({static_cast<double>(h.final_followers()), lv[0], lv[1], lv[2]});
        }
    }
    rep.likes_anova = attempt<stats::AnovaTable>([&] { return stats::anova3(post_obs, stats::AnovaModel::Full); });
    rep.followers_anova =
        attempt<stats::AnovaTable>([&] { return stats::anova3(follower_obs, stats::AnovaModel::MainEffects); });
    rep.likes_tukey = detail::tukey_by_factor(runs, [](const HoneypotView& h, std::vector<double>& out) {
        for (const auto& p : h.posts) out.push_back(p.likes);
    });
    rep.followers_tukey = detail::tukey_by_factor(
        runs, [](const HoneypotView& h, std::vector<double>& out) { out.push_back(h.final_followers()); });

    std::vector<Comment> comments;
    long correct = 0;
    for (const auto& r : runs) {
        for (const auto& h : r.honeypots) {
            comments.insert(comments.end(), h.comments.begin(), h.comments.end());
            for (const auto& f : h.followers) {
                ++rep.followers_classified;
                correct += classify::classify_follower(f.profile, f.topic_specific) ==
                                   classify::expected_category(f.category)
                               ? 1
                               : 0;
            }
        }
    }
    rep.comments_classified = static_cast<long>(comments.size());
    if (!comments.empty()) rep.spam_fraction = classify::spam_fraction(comments, spam_patterns);
    if (rep.followers_classified > 0) {
        rep.follower_accuracy = static_cast<double>(correct) / static_cast<double>(rep.followers_classified);
    }

    // Follower mix of each topic's best honeypot, pooled over runs.
    for (const auto& topic : detail::level_order(runs, 0)) {
        std::vector<const FollowerView*> pooled;
        std::string best_id;
        for (const auto& r : runs) {
            const HoneypotView* best = nullptr;
            for (const auto& h : r.honeypots) {
                if (h.topic == topic && (!best || h.final_followers() > best->final_followers())) best = &h;
            }
            if (!best) continue;
            if (best_id.empty()) best_id = best->id;
            for (const auto& f : best->followers) {
                if (!f.purchased) pooled.push_back(&f);
            }
        }
        auto mix = detail::follower_mix(pooled);
        mix.topic = topic;
        mix.honeypot = runs.size() == 1 ? best_id : "";
        rep.best_mix.push_back(mix);
    }

    for (const auto& h : runs.front().honeypots) {
        if (auto in = audience_insights(h)) rep.insights.push_back({h.id, std::move(*in)});
    }

    const int weeks = (runs.front().horizon_days + kDaysPerWeek - 1) / kDaysPerWeek;
    for (const auto& plan : detail::level_order(runs, 2)) {
        std::vector<double> likes(static_cast<std::size_t>(weeks), 0.0);
        std::vector<int> posts(likes.size(), 0);
        bool any = false;
        for (const auto& r : runs) {
            for (const auto& h : r.honeypots) {
                if (plan_label(h.plan) != plan) continue;
                any = true;
                for (const auto& p : h.posts) {
                    const auto w = static_cast<std::size_t>(p.day / kDaysPerWeek);
                    if (w >= likes.size()) continue;
                    likes[w] += p.likes;
                    ++posts[w];
                }
            }
        }
        if (!any) continue;
        for (std::size_t w = 0; w < likes.size(); ++w) {
            rep.plot.push_back({plan, static_cast<int>(w) + 1, posts[w] > 0 ? likes[w] / posts[w] : 0.0});
        }
    }
    return rep;
}

inline Report build_report(const std::vector<RunView>& runs) {
    return build_report(runs, default_fixtures().spam_patterns);
}

/// "≤ 0.001" below the printed resolution, otherwise three decimals.
inline std::string format_p(double p) { return p < kPValueResolution ? "≤ 0.001" : csv::fixed(p, 3); }

inline std::string percent2(double fraction) { return csv::fixed(round_to(100.0 * fraction, 2), 2) + "%"; }

inline nlohmann::json to_json(const stats::AnovaTable& t) {
    auto rows = nlohmann::json::array();
    for (const auto& r : t.rows) {
        rows.push_back({{"effect", r.effect}, {"sum_of_squares", r.sum_of_squares}, {"df", r.df}, {"F", r.F},
                        {"p_value", r.p_value}});
    }
    return rows;
}

inline nlohmann::json to_json(const stats::TukeyResult& t) {
    auto pairs = nlohmann::json::array();
    for (const auto& p : t.pairs) {
        pairs.push_back({{"group_a", p.group_a}, {"group_b", p.group_b}, {"mean_diff", p.mean_diff},
                         {"q_stat", p.q_stat}, {"p_value", p.p_value}, {"significant", p.significant}});
    }
    return {{"alpha", t.alpha}, {"k", t.k}, {"df", t.df}, {"msw", t.msw}, {"pairs", pairs}};
}

template <typename T>
nlohmann::json to_json(const Maybe<T>& m) {
    if (m.value) return to_json(*m.value);
    return {{"unavailable", m.error}};
}

inline nlohmann::json to_json(const std::vector<FactorTukey>& ts) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& t : ts) j[t.factor] = to_json(t.result);
    return j;
}

inline nlohmann::json report_json(const Report& r) {
    nlohmann::json j;
    j["runs"] = r.runs;
    j["totals"] = {{"honeypots", r.totals.honeypots}, {"posts", r.totals.posts},       {"likes", r.totals.likes},
                   {"comments", r.totals.comments},   {"followers", r.totals.followers}, {"weeks", r.totals.weeks},
                   {"interactions", r.totals.interactions()}};
    j["interactions_per_week"] = round_to(r.interactions_per_week, 1);
    j["accounts_per_week"] = round_to(r.accounts_per_week, 2);
    auto trend = nlohmann::json::array();
    for (const auto& t : r.trend) {
        trend.push_back({{"block", t.block},
                         {"group", t.group},
                         {"n", t.n},
                         {"followers_mean", t.followers_mean},
                         {"followers_std", t.followers_std},
                         {"comments_mean", t.comments_mean},
                         {"comments_std", t.comments_std},
                         {"likes_mean", t.likes_mean},
                         {"likes_std", t.likes_std},
                         {"ns_followers", t.ns_followers},
                         {"ns_comments", t.ns_comments},
                         {"ns_likes", t.ns_likes}});
    }
    j["trend_table"] = trend;
    j["likes_anova"] = to_json(r.likes_anova);
    j["likes_tukey"] = to_json(r.likes_tukey);
    j["followers_anova"] = to_json(r.followers_anova);
    j["followers_tukey"] = to_json(r.followers_tukey);
    j["classifiers"] = {
        {"comments", r.comments_classified},
        {"spam_percent", r.spam_fraction ? nlohmann::json(round_to(100.0 * *r.spam_fraction, 2)) : nlohmann::json()},
        {"followers", r.followers_classified},
        {"follower_accuracy", r.follower_accuracy ? nlohmann::json(*r.follower_accuracy) : nlohmann::json()},
        {"proxies", "profile picture and general-topic posts are read from measurable profile fields"}};
    auto mix = nlohmann::json::array();
    for (const auto& m : r.best_mix) {
        mix.push_back({{"topic", m.topic}, {"honeypot", m.honeypot}, {"followers", m.followers},
                       {"real_pct", m.real_pct}, {"pages_pct", m.pages_pct}, {"bots_pct", m.bots_pct}});
    }
    j["best_honeypot_follower_mix"] = mix;
    auto ins = nlohmann::json::array();
    for (const auto& h : r.insights) {
        auto shares = [](const std::vector<Share>& v) {
            auto a = nlohmann::json::array();
            for (const auto& s : v) a.push_back({{"label", s.label}, {"count", s.count}, {"percent", s.percent}});
            return a;
        };
        ins.push_back({{"honeypot", h.honeypot}, {"followers", h.insights.followers},
                       {"gender", shares(h.insights.gender)}, {"age", shares(h.insights.age)},
                       {"region", shares(h.insights.region)}});
    }
    j["audience_insights"] = ins;
    return j;
}

inline std::string report_text(const Report& r) {
    std::ostringstream out;
    out << "runs: " << r.runs << "\n";
    out << "honeypots: " << r.totals.honeypots << "\n";
    out << "posts: " << r.totals.posts << "\n";
    out << "likes: " << r.totals.likes << "\n";
    out << "comments: " << r.totals.comments << "\n";
    out << "followers: " << r.totals.followers << "\n";
    out << "interactions: " << r.totals.interactions() << "\n";
    out << "interactions_per_week: " << csv::fixed(round_to(r.interactions_per_week, 1), 1) << "\n";
    out << "accounts_per_week: " << csv::fixed(round_to(r.accounts_per_week, 2), 2) << "\n\n";

    out << "trend table (mean ± std, NonStationary count)\n";
    for (const auto& t : r.trend) {
        out << "  " << t.group << ": followers " << mean_std_cell(t.followers_mean, t.followers_std) << ", comments "
            << mean_std_cell(t.comments_mean, t.comments_std) << ", likes " << mean_std_cell(t.likes_mean, t.likes_std)
            << ", ns " << t.ns_followers << "/" << t.n << " " << t.ns_comments << "/" << t.n << " " << t.ns_likes
            << "/" << t.n << "\n";
    }

    auto anova = [&](const char* title, const Maybe<stats::AnovaTable>& m) {
        out << "\n" << title << "\n";
        if (!m.value) {
            out << "  unavailable: " << m.error << "\n";
            return;
        }
        for (const auto& row : m.value->rows) {
            out << "  " << row.effect << ": SS " << csv::fixed(row.sum_of_squares, 3) << ", df " << row.df;
            if (row.effect != "Residual") out << ", F " << csv::fixed(row.F, 3) << ", p " << format_p(row.p_value);
            out << "\n";
        }
    };
    auto tukey = [&](const char* title, const std::vector<FactorTukey>& ts) {
        out << "\n" << title << "\n";
        for (const auto& t : ts) {
            if (!t.result.value) {
                out << "  " << t.factor << ": unavailable: " << t.result.error << "\n";
                continue;
            }
            for (const auto& p : t.result.value->pairs) {
                out << "  " << t.factor << " " << p.group_a << " vs " << p.group_b << ": diff "
                    << csv::fixed(p.mean_diff, 3) << ", q " << csv::fixed(p.q_stat, 3) << ", p " << format_p(p.p_value)
                    << (p.significant ? ", significant" : "") << "\n";
            }
        }
    };
    anova("ANOVA on per-post likes", r.likes_anova);
    tukey("Tukey HSD on per-post likes", r.likes_tukey);
    anova("ANOVA on final followers (main effects)", r.followers_anova);
    tukey("Tukey HSD on final followers", r.followers_tukey);

    out << "\nclassifiers\n";
    out << "  spam comments: " << (r.spam_fraction ? percent2(*r.spam_fraction) : std::string("n/a")) << " of "
        << r.comments_classified << "\n";
    out << "  follower accuracy: " << (r.follower_accuracy ? percent2(*r.follower_accuracy) : std::string("n/a"))
        << " of " << r.followers_classified << "\n";
    out << "  note: picture and topic signals are measurable proxies\n";
    for (const auto& m : r.best_mix) {
        out << "  " << m.topic << (m.honeypot.empty() ? "" : " (" + m.honeypot + ")") << ": real "
            << csv::fixed(m.real_pct, 2) << "%, pages " << csv::fixed(m.pages_pct, 2) << "%, bots "
            << csv::fixed(m.bots_pct, 2) << "% of " << m.followers << "\n";
    }

    out << "\naudience insights\n";
    if (r.insights.empty()) out << "  none (no honeypot reached " << kInsightsThreshold << " followers)\n";
    for (const auto& h : r.insights) {
        const auto& in = h.insights;
        out << "  " << h.honeypot << " (" << in.followers << " followers)\n    gender:";
        for (const auto& s : in.gender) out << " " << s.label << " " << csv::fixed(s.percent, 1) << "%";
        out << "\n    age:";
        for (const auto& s : in.age) out << " " << s.label << " " << csv::fixed(s.percent, 1) << "%";
        out << "\n    top region: " << in.top_region().label << " " << csv::fixed(in.top_region().percent, 1) << "%\n";
    }
    return out.str();
}

inline std::string plot_csv(const Report& r) {
    std::string out = csv::header({"plan", "week", "likes_per_post"});
    for (const auto& p : r.plot) out += csv::row(csv::field(p.plan), std::to_string(p.week), csv::real(p.likes_per_post));
    return out;
}

/// report.json, report.txt, trend_table.csv and plot_likes_per_week.csv.
inline void write_report(const Report& r, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    csv::write_file(dir / "report.json", report_json(r).dump(2) + "\n");
    csv::write_file(dir / "report.txt", report_text(r));
    csv::write_file(dir / "trend_table.csv", trend_table_csv(r.trend));
    csv::write_file(dir / "plot_likes_per_week.csv", plot_csv(r));
}

}  // namespace hpsim::analytics
