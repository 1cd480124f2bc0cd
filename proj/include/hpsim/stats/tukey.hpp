#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "hpsim/core/error.hpp"
#include "hpsim/stats/studentized_range.hpp"

namespace hpsim::stats {

struct SampleGroup {
    std::string label;
    std::vector<double> observations;
};

struct TukeyPair {
    std::string group_a;
    std::string group_b;
    double mean_diff = 0.0;  // mean_b - mean_a
    double q_stat = 0.0;
    double p_value = 1.0;
    bool significant = false;
};

struct TukeyResult {
    std::vector<TukeyPair> pairs;
    double alpha = 0.05;
    double msw = 0.0;
    int k = 0;
    int df = 0;

    [[nodiscard]] bool any_significant() const noexcept {
        for (const auto& p : pairs)
            if (p.significant) return true;
        return false;
    }
};

/// Tukey-Kramer all-pairs comparison with pooled within-group variance.
inline TukeyResult tukey_hsd(std::span<const SampleGroup> groups, double alpha = 0.05) {
    if (groups.size() < 2) throw Error(ErrorCode::TooFewGroups, "need at least two groups");
    std::vector<double> means;
    double ssw = 0.0;
    std::size_t total = 0;
    for (const auto& g : groups) {
        if (g.observations.size() < 2) {
            throw Error(ErrorCode::TooFewGroups, "group '" + g.label + "' needs at least two observations");
        }
        double m = 0.0;
        for (double v : g.observations) m += v;
        m /= static_cast<double>(g.observations.size());
        for (double v : g.observations) ssw += (v - m) * (v - m);
        means.push_back(m);
        total += g.observations.size();
    }

    TukeyResult res;
    res.alpha = alpha;
    res.k = static_cast<int>(groups.size());
    res.df = static_cast<int>(total) - res.k;
    res.msw = ssw / res.df;
    if (!(res.msw > 0.0)) throw Error(ErrorCode::DegenerateData, "zero within-group variance");

    for (std::size_t a = 0; a < groups.size(); ++a) {
        for (std::size_t b = a + 1; b < groups.size(); ++b) {
            TukeyPair p;
            p.group_a = groups[a].label;
            p.group_b = groups[b].label;
            p.mean_diff = means[b] - means[a];
            const double se = std::sqrt(res.msw / 2.0 *
                                        (1.0 / static_cast<double>(groups[a].observations.size()) +
                                         1.0 / static_cast<double>(groups[b].observations.size())));
            p.q_stat = std::abs(p.mean_diff) / se;
            p.p_value = studentized_range_sf(p.q_stat, res.k, res.df);
            p.significant = p.p_value < alpha;
            res.pairs.push_back(std::move(p));
        }
    }
    return res;
}

}  // namespace hpsim::stats
