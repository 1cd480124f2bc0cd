#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "hpsim/analytics/run_view.hpp"
#include "hpsim/core/csv.hpp"
#include "hpsim/core/error.hpp"

namespace hpsim::analytics {

/// Interactions per honeypot per week.
inline double interactions_per_week(double total_interactions, int honeypots, double weeks) {
    if (honeypots < 1) throw Error(ErrorCode::DivisionDomain, "honeypots must be >= 1");
    if (!(weeks > 0.0)) throw Error(ErrorCode::DivisionDomain, "weeks must be > 0");
    return total_interactions / (static_cast<double>(honeypots) * weeks);
}

/// Value rounded half away from zero to `decimals` places.
inline double round_to(double x, int decimals) {
    const double scale = std::pow(10.0, decimals);
    return std::round(x * scale) / scale;
}

inline double mean(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
inline double sample_std(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

struct DailySeries {
    std::vector<double> followers;
    std::vector<double> likes;
    std::vector<double> comments;
};

/**
 * Per-day series of one honeypot: analytic followers at the end of the day,
 * and mean final likes and comments of the posts published that day. Days
 * without posts repeat the previous value.
 */
inline DailySeries daily_series(const HoneypotView& h, int horizon_days) {
    DailySeries s;
    std::vector<double> like_sum(static_cast<std::size_t>(horizon_days), 0.0);
    std::vector<double> comment_sum(like_sum.size(), 0.0);
    std::vector<int> count(like_sum.size(), 0);
    for (const auto& p : h.posts) {
        if (p.day < 0 || p.day >= horizon_days) continue;
        like_sum[static_cast<std::size_t>(p.day)] += p.likes;
        comment_sum[static_cast<std::size_t>(p.day)] += p.comments;
        ++count[static_cast<std::size_t>(p.day)];
    }
    double last_like = 0.0;
    double last_comment = 0.0;
    for (std::size_t d = 0; d < like_sum.size(); ++d) {
        if (count[d] > 0) {
            last_like = like_sum[d] / count[d];
            last_comment = comment_sum[d] / count[d];
        }
        s.likes.push_back(last_like);
        s.comments.push_back(last_comment);
        s.followers.push_back(d < h.followers_daily.size() ? h.followers_daily[d] : 0.0);
    }
    return s;
}

struct RunTotals {
    int honeypots = 0;
    long posts = 0;
    long likes = 0;
    long comments = 0;
    long followers = 0;
    double weeks = 0.0;

    [[nodiscard]] long interactions() const { return likes + comments + followers; }
};

inline RunTotals run_totals(const RunView& v) {
    RunTotals t;
    t.honeypots = static_cast<int>(v.honeypots.size());
    t.weeks = static_cast<double>(v.horizon_days) / kDaysPerWeek;
    for (const auto& h : v.honeypots) {
        t.posts += static_cast<long>(h.posts.size());
        t.likes += h.total_likes();
        t.comments += h.total_comments();
        t.followers += h.final_followers();
    }
    return t;
}

}  // namespace hpsim::analytics
