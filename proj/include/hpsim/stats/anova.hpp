#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/distributions/fisher_f.hpp>

#include "hpsim/core/error.hpp"
#include "hpsim/stats/ols.hpp"

namespace hpsim::stats {

struct FactorialObservation {
    double value = 0.0;
    std::string topic;
    std::string strategy;
    std::string plan;
};

struct AnovaRow {
    std::string effect;
    double sum_of_squares = 0.0;
    int df = 0;
    double F = 0.0;
    double p_value = 1.0;
};

struct AnovaTable {
    /// topic, strategy, plan, the two-way and three-way interactions, then Residual.
    std::vector<AnovaRow> rows;

    [[nodiscard]] const AnovaRow& row(const std::string& effect) const {
        for (const auto& r : rows)
            if (r.effect == effect) return r;
        throw Error(ErrorCode::MissingLevels, "no ANOVA row named " + effect);
    }
    [[nodiscard]] const AnovaRow& residual() const { return rows.back(); }
};

enum class AnovaModel { Full, MainEffects };

namespace detail {

// A term is a set of factors, encoded as a bitmask over {topic=1, strategy=2, plan=4}.
using TermMask = unsigned;

inline std::string term_name(TermMask t) {
    static constexpr std::array<const char*, 3> names{"topic", "strategy", "plan"};
    std::string out;
    for (unsigned f = 0; f < 3; ++f) {
        if (t & (1u << f)) {
            if (!out.empty()) out += ':';
            out += names[f];
        }
    }
    return out;
}

struct CodedFactors {
    std::array<std::vector<int>, 3> level;  // per factor, per observation
    std::array<int, 3> level_count{};
};

inline CodedFactors code_factors(std::span<const FactorialObservation> obs) {
    CodedFactors coded;
    std::array<std::map<std::string, int>, 3> maps;
    for (const auto& o : obs) {
        maps[0].emplace(o.topic, 0);
        maps[1].emplace(o.strategy, 0);
        maps[2].emplace(o.plan, 0);
    }
    for (unsigned f = 0; f < 3; ++f) {
        int i = 0;
        for (auto& [label, idx] : maps[f]) idx = i++;
        coded.level_count[f] = i;
        coded.level[f].reserve(obs.size());
    }
    for (const auto& o : obs) {
        coded.level[0].push_back(maps[0].at(o.topic));
        coded.level[1].push_back(maps[1].at(o.strategy));
        coded.level[2].push_back(maps[2].at(o.plan));
    }
    return coded;
}

// Treatment-coded columns for one term: products of the factors' non-reference dummies.
inline std::vector<Eigen::VectorXd> term_columns(const CodedFactors& coded, TermMask term, Eigen::Index n) {
    std::vector<Eigen::VectorXd> cols{Eigen::VectorXd::Ones(n)};
    for (unsigned f = 0; f < 3; ++f) {
        if (!(term & (1u << f))) continue;
        std::vector<Eigen::VectorXd> next;
        for (const auto& base : cols) {
            for (int lvl = 1; lvl < coded.level_count[f]; ++lvl) {
                Eigen::VectorXd c = base;
                for (Eigen::Index i = 0; i < n; ++i)
                    if (coded.level[f][static_cast<std::size_t>(i)] != lvl) c(i) = 0.0;
                next.push_back(std::move(c));
            }
        }
        cols = std::move(next);
    }
    return cols;
}

struct ModelFit {
    double rss = 0.0;
    Eigen::Index rank = 0;
};

inline ModelFit fit_terms(const CodedFactors& coded, const std::vector<TermMask>& terms, const Eigen::VectorXd& y) {
    const Eigen::Index n = y.size();
    std::vector<Eigen::VectorXd> cols{Eigen::VectorXd::Ones(n)};
    for (TermMask t : terms) {
        auto tc = term_columns(coded, t, n);
        cols.insert(cols.end(), std::make_move_iterator(tc.begin()), std::make_move_iterator(tc.end()));
    }
    Eigen::MatrixXd X(n, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) X.col(static_cast<Eigen::Index>(j)) = cols[j];
    const auto fit = ols_fit(X, y);
    return {fit.rss, fit.rank};
}

}  // namespace detail

/**
 * Three-way ANOVA with Type II sums of squares.
 *
 * Each effect is tested after every term that does not contain it, so the
 * table stays meaningful for unbalanced layouts. Degrees of freedom are rank
 * differences, which handles empty cells. A factor observed at a single level
 * contributes no columns, so its terms end up with zero df; such rows are
 * reported with F = 0 and p = 1.
 */
inline AnovaTable anova3(std::span<const FactorialObservation> obs, AnovaModel model = AnovaModel::Full) {
    const auto coded = detail::code_factors(obs);
    if (std::all_of(coded.level_count.begin(), coded.level_count.end(), [](int c) { return c < 2; })) {
        throw Error(ErrorCode::MissingLevels, "no factor has two or more levels");
    }

    const auto n = static_cast<Eigen::Index>(obs.size());
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) y(i) = obs[static_cast<std::size_t>(i)].value;

    std::vector<detail::TermMask> terms{1, 2, 4};
    if (model == AnovaModel::Full) terms.insert(terms.end(), {3, 5, 6, 7});

    const auto full = detail::fit_terms(coded, terms, y);
    const auto df_resid = static_cast<int>(n - full.rank);
    const double total_ss = (y.array() - y.mean()).matrix().squaredNorm();
    if (df_resid < 1 || total_ss <= 0.0 || full.rss <= 1e-12 * total_ss) {
        throw Error(ErrorCode::DegenerateData, "zero residual variance or no residual degrees of freedom");
    }
    const double ms_resid = full.rss / df_resid;

    AnovaTable table;
    for (detail::TermMask term : terms) {
        std::vector<detail::TermMask> reduced;
        for (detail::TermMask other : terms)
            if ((other & term) != term) reduced.push_back(other);
        auto augmented = reduced;
        augmented.push_back(term);

        const auto without = detail::fit_terms(coded, reduced, y);
        const auto with = detail::fit_terms(coded, augmented, y);

        AnovaRow row;
        row.effect = detail::term_name(term);
        row.df = static_cast<int>(with.rank - without.rank);
        row.sum_of_squares = std::max(0.0, without.rss - with.rss);
        if (row.df > 0) {
            row.F = (row.sum_of_squares / row.df) / ms_resid;
            const boost::math::fisher_f_distribution<double> dist(row.df, df_resid);
            row.p_value = boost::math::cdf(boost::math::complement(dist, row.F));
        }
        table.rows.push_back(std::move(row));
    }
    table.rows.push_back({"Residual", full.rss, df_resid, 0.0, 1.0});
    return table;
}

}  // namespace hpsim::stats
