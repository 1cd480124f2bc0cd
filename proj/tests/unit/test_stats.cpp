#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "hpsim/core/random.hpp"
#include "hpsim/stats/adf.hpp"
#include "hpsim/stats/anova.hpp"
#include "hpsim/stats/studentized_range.hpp"
#include "hpsim/stats/tukey.hpp"
#include "test_support.hpp"

using namespace hpsim;
using namespace hpsim::stats;

namespace {

std::vector<double> to_vector(const nlohmann::json& arr) { return arr.get<std::vector<double>>(); }

std::vector<FactorialObservation> to_observations(const nlohmann::json& rows) {
    std::vector<FactorialObservation> out;
    for (const auto& r : rows) {
        out.push_back({r["value"].get<double>(), r["topic"].get<std::string>(), r["strategy"].get<std::string>(),
                       r["plan"].get<std::string>()});
    }
    return out;
}

std::vector<SampleGroup> to_groups(const nlohmann::json& groups) {
    std::vector<SampleGroup> out;
    for (const auto& g : groups) out.push_back({g["label"].get<std::string>(), to_vector(g["observations"])});
    return out;
}

std::vector<double> random_walk(RandomStream rng, int n) {
    std::vector<double> y(static_cast<std::size_t>(n));
    double acc = 0.0;
    for (auto& v : y) v = (acc += rng.normal(0.0, 1.0));
    return y;
}

std::vector<double> white_noise(RandomStream rng, int n) {
    std::vector<double> y(static_cast<std::size_t>(n));
    for (auto& v : y) v = rng.normal(0.0, 1.0);
    return y;
}

// Closed-form main-effect F for a balanced three-factor layout with r replicates per cell.
double balanced_main_effect_f(const std::vector<std::vector<std::vector<std::vector<double>>>>& cells) {
    const std::size_t a = cells.size(), b = cells[0].size(), c = cells[0][0].size(), r = cells[0][0][0].size();
    double grand = 0.0;
    for (const auto& i : cells)
        for (const auto& j : i)
            for (const auto& k : j)
                for (double v : k) grand += v;
    grand /= static_cast<double>(a * b * c * r);
    double ss_a = 0.0;
    double sse = 0.0;
    for (const auto& i : cells) {
        double level_mean = 0.0;
        for (const auto& j : i)
            for (const auto& k : j) {
                double cell_mean = 0.0;
                for (double v : k) {
                    level_mean += v;
                    cell_mean += v;
                }
                cell_mean /= static_cast<double>(r);
                for (double v : k) sse += (v - cell_mean) * (v - cell_mean);
            }
        level_mean /= static_cast<double>(b * c * r);
        ss_a += static_cast<double>(b * c * r) * (level_mean - grand) * (level_mean - grand);
    }
    const double df_e = static_cast<double>(a * b * c * (r - 1));
    return (ss_a / static_cast<double>(a - 1)) / (sse / df_e);
}

double one_way_f(const std::vector<std::vector<double>>& groups) {
    double grand = 0.0;
    std::size_t n = 0;
    for (const auto& g : groups) {
        for (double v : g) grand += v;
        n += g.size();
    }
    grand /= static_cast<double>(n);
    double ssb = 0.0, ssw = 0.0;
    for (const auto& g : groups) {
        double m = 0.0;
        for (double v : g) m += v;
        m /= static_cast<double>(g.size());
        ssb += static_cast<double>(g.size()) * (m - grand) * (m - grand);
        for (double v : g) ssw += (v - m) * (v - m);
    }
    return (ssb / static_cast<double>(groups.size() - 1)) / (ssw / static_cast<double>(n - groups.size()));
}

}  // namespace

// ---------------------------------------------------------------------------
// ADF

TEST(Adf, RandomWalkSeed42IsNonStationaryAndMatchesReference) {
    const auto& ex = hpsim::testing::stats_reference()["examples"]["random_walk_seed42"];
    const auto series = to_vector(ex["series"]);
    const auto res = adf_test(series, 1);
    EXPECT_NEAR(res.statistic, ex["adf"]["statistic"].get<double>(), 1e-6);
    EXPECT_EQ(res.classification, Stationarity::NonStationary);
}

TEST(Adf, WhiteNoiseSeed42IsStationaryAndMatchesReference) {
    const auto& ex = hpsim::testing::stats_reference()["examples"]["white_noise_seed42"];
    const auto series = to_vector(ex["series"]);
    const auto res = adf_test(series, 1);
    EXPECT_NEAR(res.statistic, ex["adf"]["statistic"].get<double>(), 1e-6);
    EXPECT_EQ(res.classification, Stationarity::Stationary);
}

TEST(Adf, ConstantSeriesIsDegenerate) {
    const std::vector<double> flat(63, 5.0);
    try {
        adf_test(flat, 1);
        FAIL() << "expected DegenerateSeries";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateSeries);
    }
}

TEST(Adf, ShortSeriesIsRejected) {
    const std::vector<double> s{1, 2, 4, 3, 5, 7, 6, 8, 9, 8};
    try {
        adf_test(s, 1);
        FAIL() << "expected SeriesTooShort";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SeriesTooShort);
    }
}

TEST(Adf, PValuesAndCriticalValuesMatchReference) {
    for (const auto& d : hpsim::testing::stats_reference()["datasets"]) {
        const auto series = to_vector(d["series"]);
        const auto res = adf_test(series, 1);
        EXPECT_NEAR(res.statistic, d["adf"]["statistic"].get<double>(), 1e-6) << "dataset " << d["id"];
        EXPECT_NEAR(res.p_value, d["adf"]["p_value"].get<double>(), 1e-9) << "dataset " << d["id"];
        EXPECT_EQ(res.nobs, d["adf"]["nobs"].get<int>());
        EXPECT_NEAR(res.critical_values[0], d["adf"]["crit_1"].get<double>(), 1e-9);
        EXPECT_NEAR(res.critical_values[1], d["adf"]["crit_5"].get<double>(), 1e-9);
        EXPECT_NEAR(res.critical_values[2], d["adf"]["crit_10"].get<double>(), 1e-9);
        EXPECT_EQ(res.classification == Stationarity::NonStationary, res.p_value > 0.05);
    }
}

TEST(Adf, AicLagSelectionMatchesReference) {
    for (const auto& d : hpsim::testing::stats_reference()["datasets"]) {
        const auto series = to_vector(d["series"]);
        const auto res = adf_test_aic(series, d["adf"]["aic_max_lag"].get<int>());
        EXPECT_EQ(res.lag, d["adf"]["aic_lag"].get<int>()) << "dataset " << d["id"];
        EXPECT_NEAR(res.statistic, d["adf"]["aic_statistic"].get<double>(), 1e-6) << "dataset " << d["id"];
    }
}

TEST(Adf, SizeAndPowerBand) {
    const RandomStream root(2024);
    int walks_ns = 0;
    int noise_s = 0;
    for (int i = 0; i < 200; ++i) {
        if (adf_test(random_walk(root.split("walk").split(static_cast<std::uint64_t>(i)), 63)).classification ==
            Stationarity::NonStationary)
            ++walks_ns;
        if (adf_test(white_noise(root.split("noise").split(static_cast<std::uint64_t>(i)), 63)).classification ==
            Stationarity::Stationary)
            ++noise_s;
    }
    EXPECT_GE(walks_ns, 170);
    EXPECT_GE(noise_s, 170);
}

// ---------------------------------------------------------------------------
// ANOVA

TEST(Anova, TypeTwoMatchesReferenceOnAllDatasets) {
    for (const auto& d : hpsim::testing::stats_reference()["datasets"]) {
        const auto obs = to_observations(d["anova"]["observations"]);
        const auto table = anova3(obs);
        for (const auto& [name, eff] : d["anova"]["effects"].items()) {
            const auto& row = table.row(name);
            EXPECT_NEAR(row.sum_of_squares, eff["sum_sq"].get<double>(), 1e-8 * std::max(1.0, eff["sum_sq"].get<double>()))
                << name;
            EXPECT_EQ(row.df, static_cast<int>(eff["df"].get<double>())) << name;
            if (!eff["F"].is_null()) {
                EXPECT_NEAR(row.F, eff["F"].get<double>(), 1e-8) << "dataset " << d["id"] << " " << name;
                EXPECT_NEAR(row.p_value, eff["p_value"].get<double>(), 1e-9) << name;
            }
        }
    }
}

TEST(Anova, BalancedInjectedMainEffectMatchesClosedForm) {
    RandomStream rng(7);
    std::vector<std::vector<std::vector<std::vector<double>>>> cells(
        3, std::vector<std::vector<std::vector<double>>>(3, std::vector<std::vector<double>>(3)));
    std::vector<FactorialObservation> obs;
    const char* t[] = {"food", "cat", "car"};
    const char* s[] = {"AI", "NonAI", "Mixed"};
    const char* p[] = {"PLAN0", "PLAN1", "PLAN2"};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int r = 0; r < 4; ++r) {
                    const double v = 3.0 * i + rng.normal(0.0, 1.0);
                    cells[i][j][k].push_back(v);
                    obs.push_back({v, t[i], s[j], p[k]});
                }
    const auto table = anova3(obs);
    // Levels are coded alphabetically; the F statistic is coding invariant.
    EXPECT_NEAR(table.row("topic").F, balanced_main_effect_f(cells), 1e-8);

    double effects = 0.0;
    double total = 0.0;
    double mean = 0.0;
    for (const auto& o : obs) mean += o.value;
    mean /= static_cast<double>(obs.size());
    for (const auto& o : obs) total += (o.value - mean) * (o.value - mean);
    for (const auto& r : table.rows) {
        EXPECT_GE(r.sum_of_squares, 0.0);
        effects += r.sum_of_squares;
    }
    EXPECT_NEAR(effects, total, 1e-9 * total);
}

TEST(Anova, AllEqualObservationsAreDegenerate) {
    std::vector<FactorialObservation> obs;
    for (const char* t : {"a", "b"})
        for (const char* s : {"x", "y"})
            for (const char* p : {"u", "v"})
                for (int r = 0; r < 2; ++r) obs.push_back({4.0, t, s, p});
    try {
        anova3(obs);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateData);
    }
}

TEST(Anova, TwoConstantFactorsReduceToOneWay) {
    RandomStream rng(11);
    std::vector<FactorialObservation> obs;
    std::vector<std::vector<double>> groups(3);
    const char* levels[] = {"PLAN0", "PLAN1", "PLAN2"};
    for (int g = 0; g < 3; ++g)
        for (int r = 0; r < 5 + g; ++r) {
            const double v = g + rng.normal(0.0, 1.0);
            groups[static_cast<std::size_t>(g)].push_back(v);
            obs.push_back({v, "cat", "AI", levels[g]});
        }
    const auto table = anova3(obs);
    EXPECT_NEAR(table.row("plan").F, one_way_f(groups), 1e-8);
    EXPECT_EQ(table.row("topic").df, 0);
}

TEST(Anova, NoVaryingFactorIsMissingLevels) {
    std::vector<FactorialObservation> obs{{1.0, "a", "x", "u"}, {2.0, "a", "x", "u"}};
    try {
        anova3(obs);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MissingLevels);
    }
}

// ---------------------------------------------------------------------------
// Studentized range and Tukey HSD

TEST(StudentizedRange, PublishedTableValue) {
    // Tabulated q(0.05; 3, 18) = 3.61.
    EXPECT_NEAR(studentized_range_quantile(0.05, 3, 18), 3.61, 0.01);
}

TEST(StudentizedRange, MatchesReferenceGrid) {
    for (const auto& q : hpsim::testing::stats_reference()["studentized_range_quantiles"]) {
        const double expected = q["q"].get<double>();
        const double got = studentized_range_quantile(q["alpha"].get<double>(), q["k"].get<int>(), q["df"].get<int>());
        EXPECT_NEAR(got, expected, 1e-4 * expected) << "k=" << q["k"] << " df=" << q["df"] << " alpha=" << q["alpha"];
    }
    for (const auto& c : hpsim::testing::stats_reference()["studentized_range_cdf"]) {
        EXPECT_NEAR(studentized_range_cdf(c["q"].get<double>(), c["k"].get<int>(), c["df"].get<int>()),
                    c["cdf"].get<double>(), 1e-7);
    }
}

TEST(StudentizedRange, TwoGroupsReduceToStudentT) {
    for (int df : {1, 3, 10, 18, 60}) {
        for (double alpha : {0.01, 0.05, 0.1}) {
            const boost::math::students_t dist(df);
            const double t = boost::math::quantile(boost::math::complement(dist, alpha / 2.0));
            EXPECT_NEAR(studentized_range_quantile(alpha, 2, df), std::sqrt(2.0) * t, 1e-4 * t) << df << " " << alpha;
        }
    }
}

TEST(StudentizedRange, MonotoneInDfAndK) {
    for (int k : {2, 3, 5, 8}) {
        double prev = std::numeric_limits<double>::infinity();
        for (int df : {2, 5, 10, 30, 120}) {
            const double q = studentized_range_quantile(0.05, k, df);
            EXPECT_LT(q, prev);
            prev = q;
        }
    }
    for (int df : {5, 18, 60}) {
        double prev = 0.0;
        for (int k : {2, 3, 4, 6, 10}) {
            const double q = studentized_range_quantile(0.05, k, df);
            EXPECT_GT(q, prev);
            prev = q;
        }
    }
}

TEST(Tukey, MatchesReferenceOnAllDatasets) {
    for (const auto& d : hpsim::testing::stats_reference()["datasets"]) {
        const auto groups = to_groups(d["tukey"]["groups"]);
        const auto res = tukey_hsd(groups);
        EXPECT_EQ(res.df, d["tukey"]["df"].get<int>());
        EXPECT_NEAR(res.msw, d["tukey"]["msw"].get<double>(), 1e-12);
        const auto& pairs = d["tukey"]["pairs"];
        ASSERT_EQ(res.pairs.size(), pairs.size());
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            EXPECT_EQ(res.pairs[i].group_a, pairs[i]["group_a"].get<std::string>());
            EXPECT_NEAR(res.pairs[i].mean_diff, pairs[i]["mean_diff"].get<double>(), 1e-9);
            EXPECT_NEAR(res.pairs[i].q_stat, pairs[i]["q_stat"].get<double>(), 1e-6);
            EXPECT_NEAR(res.pairs[i].p_value, pairs[i]["p_value"].get<double>(), 1e-6);
        }
    }
}

TEST(Tukey, IdenticalMeansAreNotSignificant) {
    const std::vector<SampleGroup> groups{{"a", {1, 2, 3, 4}}, {"b", {1, 2, 3, 4}}, {"c", {4, 3, 2, 1}}};
    const auto res = tukey_hsd(groups);
    for (const auto& p : res.pairs) {
        EXPECT_EQ(p.mean_diff, 0.0);
        EXPECT_FALSE(p.significant);
    }
}

TEST(Tukey, WellSeparatedGroupsAreAllSignificant) {
    RandomStream rng(5);
    std::vector<SampleGroup> groups;
    for (double shift : {0.0, 5.0, 10.0}) {
        SampleGroup g{"s" + std::to_string(static_cast<int>(shift)), {}};
        for (int i = 0; i < 7; ++i) g.observations.push_back(shift + rng.normal(0.0, 1.0));
        groups.push_back(g);
    }
    const auto res = tukey_hsd(groups);
    const double q_crit = studentized_range_quantile(0.05, 3, 18);
    for (const auto& p : res.pairs) {
        EXPECT_TRUE(p.significant);
        EXPECT_GT(p.q_stat, q_crit);
        EXPECT_EQ(p.significant, p.p_value < res.alpha);
    }
}

TEST(Tukey, ShiftInvariantAndScaleEquivariant) {
    RandomStream rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<SampleGroup> base;
        for (int g = 0; g < 4; ++g) {
            SampleGroup grp{"g" + std::to_string(g), {}};
            const int n = rng.uniform_int(3, 9);
            const double mu = rng.normal(0.0, 1.0);
            for (int i = 0; i < n; ++i) grp.observations.push_back(mu + rng.normal(0.0, 1.0));
            base.push_back(grp);
        }
        const double shift = rng.normal(0.0, 100.0);
        const double scale = 0.1 + 10.0 * rng.uniform();
        auto moved = base;
        for (auto& g : moved)
            for (auto& v : g.observations) v = scale * v + shift;
        const auto a = tukey_hsd(base);
        const auto b = tukey_hsd(moved);
        for (std::size_t i = 0; i < a.pairs.size(); ++i) {
            EXPECT_NEAR(a.pairs[i].q_stat, b.pairs[i].q_stat, 1e-8 * a.pairs[i].q_stat + 1e-10);
            EXPECT_EQ(a.pairs[i].significant, b.pairs[i].significant);
        }
    }
}

TEST(Tukey, ErrorPaths) {
    const std::vector<SampleGroup> one{{"a", {1, 2, 3}}};
    const std::vector<SampleGroup> tiny{{"a", {1, 2, 3}}, {"b", {1}}};
    const std::vector<SampleGroup> flat{{"a", {1, 1}}, {"b", {2, 2}}};
    auto code_of = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::IoError;
    };
    EXPECT_EQ(code_of([&] { tukey_hsd(one); }), ErrorCode::TooFewGroups);
    EXPECT_EQ(code_of([&] { tukey_hsd(tiny); }), ErrorCode::TooFewGroups);
    EXPECT_EQ(code_of([&] { tukey_hsd(flat); }), ErrorCode::DegenerateData);
    EXPECT_EQ(code_of([&] { studentized_range_quantile(0.0, 3, 10); }), ErrorCode::ConvergenceFailure);
}
