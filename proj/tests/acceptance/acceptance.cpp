// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hpsim/analytics/insights.hpp"
#include "hpsim/analytics/metrics.hpp"
#include "hpsim/analytics/report.hpp"
#include "hpsim/analytics/trend.hpp"
#include "hpsim/classify/classifiers.hpp"
#include "hpsim/content/caption.hpp"
#include "hpsim/experiment/config.hpp"
#include "hpsim/experiment/runner.hpp"
#include "hpsim/sim/audience.hpp"
#include "hpsim/sim/engine.hpp"
#include "hpsim/stats/adf.hpp"
#include "hpsim/stats/anova.hpp"
#include "hpsim/stats/studentized_range.hpp"
#include "hpsim/stats/tukey.hpp"
#include "test_support.hpp"

using namespace hpsim;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances.
constexpr double kAdfTol = 1e-6;
constexpr double kAnovaFTol = 1e-8;
constexpr double kTukeyQTol = 1e-6;
constexpr double kQTableTol = 0.01;
constexpr double kQTable_05_3_18 = 3.61;
constexpr int kStatsDatasets = 20;
constexpr int kAdfSeries = 200;
constexpr double kAdfBand = 0.85;
constexpr int kHashtagCalls = 10000;
constexpr int kCalibratedReplicates = 30;
constexpr std::uint64_t kCalibratedSeed = 2024;
constexpr double kReplicateShare = 0.80;
constexpr int kMinNsFollowers = 16;
constexpr int kMaxNsComments = 8;
constexpr double kSpamPercent = 95.33;
constexpr double kFollowerAccuracy = 0.90;
constexpr int kAudienceDraws = 10000;
constexpr double kAudienceTolPp = 2.0;

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Check {
    Outcome* out;
    void operator()(bool ok, const std::string& what) const {
        if (ok) return;
        out->pass = false;
        if (!out->detail.empty()) out->detail += "; ";
        out->detail += what;
    }
};

std::string fmt(double x, int decimals = 4) { return csv::fixed(x, decimals); }

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// 1 ---------------------------------------------------------------------------
Outcome metric_arithmetic() {
    Outcome o;
    Check c{&o};
    const auto a = csv::fixed(analytics::round_to(analytics::interactions_per_week(21870, 21, 9), 1), 1);
    const auto b = csv::fixed(analytics::round_to(analytics::interactions_per_week(753, 21, 9), 2), 2);
    c(a == "115.7", "interactions " + a);
    c(b == "3.98", "accounts " + b);
    o.detail = o.pass ? "115.7 and 3.98" : o.detail;
    return o;
}

// 2 ---------------------------------------------------------------------------
Outcome stats_oracle() {
    Outcome o;
    Check c{&o};
    const auto& ref = hpsim::testing::stats_reference();
    const auto& datasets = ref["datasets"];
    c(static_cast<int>(datasets.size()) >= kStatsDatasets, "only " + std::to_string(datasets.size()) + " datasets");
    double adf_err = 0.0;
    double f_err = 0.0;
    double q_err = 0.0;
    for (const auto& d : datasets) {
        const auto res = stats::adf_test(d["series"].get<std::vector<double>>(), 1);
        adf_err = std::max(adf_err, std::abs(res.statistic - d["adf"]["statistic"].get<double>()));

        std::vector<stats::FactorialObservation> obs;
        for (const auto& r : d["anova"]["observations"]) {
            obs.push_back({r["value"].get<double>(), r["topic"].get<std::string>(), r["strategy"].get<std::string>(),
                           r["plan"].get<std::string>()});
        }
        const auto table = stats::anova3(obs);
        for (const auto& [name, eff] : d["anova"]["effects"].items()) {
            if (eff["F"].is_null()) continue;
            f_err = std::max(f_err, std::abs(table.row(name).F - eff["F"].get<double>()));
        }

        std::vector<stats::SampleGroup> groups;
        for (const auto& g : d["tukey"]["groups"]) {
            groups.push_back({g["label"].get<std::string>(), g["observations"].get<std::vector<double>>()});
        }
        const auto tk = stats::tukey_hsd(groups);
        const auto& pairs = d["tukey"]["pairs"];
        if (tk.pairs.size() != pairs.size()) {
            c(false, "tukey pair count differs");
            continue;
        }
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            q_err = std::max(q_err, std::abs(tk.pairs[i].q_stat - pairs[i]["q_stat"].get<double>()));
        }
    }
    const double q = stats::studentized_range_quantile(0.05, 3, 18);
    c(adf_err <= kAdfTol, "ADF err " + std::to_string(adf_err));
    c(f_err <= kAnovaFTol, "ANOVA F err " + std::to_string(f_err));
    c(q_err <= kTukeyQTol, "Tukey q err " + std::to_string(q_err));
    c(std::abs(q - kQTable_05_3_18) <= kQTableTol, "q(0.05,3,18) = " + fmt(q));
    if (o.pass) {
        char buf[200];
        std::snprintf(buf, sizeof buf, "%zu datasets, max err adf %.1e F %.1e q %.1e; q(0.05,3,18) = %.4f",
                      datasets.size(), adf_err, f_err, q_err, q);
        o.detail = buf;
    }
    return o;
}

// 3 ---------------------------------------------------------------------------
Outcome adf_behavior() {
    Outcome o;
    Check c{&o};
    const RandomStream root(31337);
    int walks_ns = 0;
    int noise_s = 0;
    for (int i = 0; i < kAdfSeries; ++i) {
        auto rw = root.split("walk").split(static_cast<std::uint64_t>(i));
        auto wn = root.split("noise").split(static_cast<std::uint64_t>(i));
        std::vector<double> walk(63);
        std::vector<double> noise(63);
        double acc = 0.0;
        for (int t = 0; t < 63; ++t) {
            walk[t] = (acc += rw.normal(0.0, 1.0));
            noise[t] = wn.normal(0.0, 1.0);
        }
        walks_ns += stats::adf_test(walk).classification == stats::Stationarity::NonStationary ? 1 : 0;
        noise_s += stats::adf_test(noise).classification == stats::Stationarity::Stationary ? 1 : 0;
    }
    c(walks_ns >= kAdfBand * kAdfSeries, "random walks " + std::to_string(walks_ns) + "/200");
    c(noise_s >= kAdfBand * kAdfSeries, "white noise " + std::to_string(noise_s) + "/200");
    o.detail = "random walks NonStationary " + std::to_string(walks_ns) + "/200, white noise Stationary " +
               std::to_string(noise_s) + "/200" + (o.pass ? "" : " (" + o.detail + ")");
    return o;
}

// 4 ---------------------------------------------------------------------------
Outcome pipeline_invariants() {
    Outcome o;
    Check c{&o};
    std::vector<Hashtag> pool;
    std::map<std::string, int> rank;
    for (int r = 1; r <= 30; ++r) {
        pool.push_back({"t" + std::to_string(r), 1'000'000 - r});
        rank["t" + std::to_string(r)] = r;
    }
    RandomStream rng(4);
    int bad = 0;
    for (int i = 0; i < kHashtagCalls; ++i) {
        const auto tags = content::select_hashtags(pool, rng);
        int top = 0;
        for (const auto& t : tags) top += rank.at(t) <= 15 ? 1 : 0;
        const bool distinct = std::set<std::string>(tags.begin(), tags.end()).size() == tags.size();
        if (tags.size() != 15 || top != 8 || !distinct) ++bad;
    }
    c(bad == 0, std::to_string(bad) + " hashtag draws broke the 8/7 split");

    const auto keep = content::keyword_filter({{"cat", 0.25}});
    c(keep && *keep == std::vector<std::string>{"cat"}, "top 0.25 not kept");
    c(!content::keyword_filter({{"cat", 0.24}}), "top 0.24 not discarded");
    const auto ex = content::keyword_filter({{"cat", 0.9}, {"bowl", 0.05}});
    c(ex && *ex == std::vector<std::string>{"cat"}, "0.05 not excluded");

    auto cfg = experiment::preset_paper_testbed();
    for (auto& h : cfg.honeypots) h.plan.plan = PlanKind::Plan1;
    const auto rec = sim::run(cfg, sim::load_profile("paper-calibrated"), 41);
    std::vector<int> followers(rec.honeypots.size(), 0);
    std::vector<std::set<AgentId>> followings(rec.honeypots.size());
    long checked = 0;
    long violations = 0;
    for (const auto& e : rec.events) {
        const auto h = e.honeypot;
        const bool by_agent = e.actor.kind == EntityKind::Agent;
        if (e.kind == EventKind::Follow && by_agent) ++followers[h];
        if (e.kind == EventKind::Unfollow) followings[h].erase(e.target.index);
        if (e.kind == EventKind::FollowBack || (e.kind == EventKind::Follow && !by_agent)) {
            followings[h].insert(e.target.index);
        }
        ++checked;
        for (std::size_t k = 0; k < followings.size(); ++k) {
            if (!followings[k].empty() && static_cast<int>(followings[k].size()) >= followers[k]) ++violations;
        }
    }
    c(violations == 0, std::to_string(violations) + " balance violations");
    if (o.pass) {
        o.detail = std::to_string(kHashtagCalls) + " hashtag draws 8/7, keyword boundaries ok, balance held over " +
                   std::to_string(checked) + " events";
    }
    return o;
}

// 5 ---------------------------------------------------------------------------
Outcome testbed_fidelity() {
    Outcome o;
    Check c{&o};
    struct Row {
        const char* id;
        const char* topic;
        int mix;  // 0 Unsplash+Quotes, 1 Insta+Art, 2 all four
        PlanKind plan;
    };
    const Row table[] = {
        {"h1", "food", 0, PlanKind::Plan0}, {"h2", "food", 0, PlanKind::Plan1}, {"h3", "food", 0, PlanKind::Plan2},
        {"h4", "food", 1, PlanKind::Plan0}, {"h5", "food", 1, PlanKind::Plan1}, {"h6", "food", 1, PlanKind::Plan2},
        {"h7", "food", 2, PlanKind::Plan2}, {"h8", "cat", 0, PlanKind::Plan0},  {"h9", "cat", 0, PlanKind::Plan1},
        {"h10", "cat", 0, PlanKind::Plan2}, {"h11", "cat", 1, PlanKind::Plan0}, {"h12", "cat", 1, PlanKind::Plan1},
        {"h13", "cat", 1, PlanKind::Plan2}, {"h14", "cat", 2, PlanKind::Plan2}, {"h15", "car", 0, PlanKind::Plan0},
        {"h16", "car", 0, PlanKind::Plan1}, {"h17", "car", 0, PlanKind::Plan2}, {"h18", "car", 1, PlanKind::Plan0},
        {"h19", "car", 1, PlanKind::Plan1}, {"h20", "car", 1, PlanKind::Plan2}, {"h21", "car", 2, PlanKind::Plan2},
    };
    const std::set<StrategyKind> mixes[] = {
        {StrategyKind::UnsplashModel, StrategyKind::QuotesModel},
        {StrategyKind::InstaModel, StrategyKind::ArtModel},
        {StrategyKind::InstaModel, StrategyKind::ArtModel, StrategyKind::UnsplashModel, StrategyKind::QuotesModel},
    };
    const auto cfg = experiment::preset_paper_testbed();
    c(cfg.honeypots.size() == 21, "grid has " + std::to_string(cfg.honeypots.size()) + " rows");
    for (std::size_t i = 0; i < std::min<std::size_t>(21, cfg.honeypots.size()); ++i) {
        const auto& h = cfg.honeypots[i];
        const std::set<StrategyKind> mix(h.strategy_mix.begin(), h.strategy_mix.end());
        c(h.id == table[i].id && h.topic == table[i].topic && mix == mixes[table[i].mix] &&
              mix.size() == h.strategy_mix.size() && h.plan.plan == table[i].plan,
          "row " + std::to_string(i + 1) + " differs");
    }

    const auto rec = sim::run(cfg, sim::load_profile("paper-calibrated"), 5);
    std::map<HoneypotIndex, int> purchased_day0;
    for (const auto& e : rec.events) {
        if (e.kind == EventKind::PurchasedFollow && e.at.day == 0) ++purchased_day0[e.honeypot];
    }
    for (const auto& h : rec.honeypots) {
        c(h.posts.size() == 126, h.id + " has " + std::to_string(h.posts.size()) + " posts");
        int sponsored = 0;
        for (const auto& p : h.posts) {
            if (!p.sponsored_window) continue;
            ++sponsored;
            const auto& w = *p.sponsored_window;
            c(w.start.day == 56 && w.days() == 7 && w.daily_budget == 2.0 && w.total_cost() == 14.0,
              h.id + " window off");
        }
        const bool p2 = h.plan.plan == PlanKind::Plan2;
        c(sponsored == (p2 ? 2 : 0), h.id + " sponsored " + std::to_string(sponsored));
        c(h.purchased_follower_count() == (p2 ? 100 : 0), h.id + " purchased " + std::to_string(h.purchased_follower_count()));
        c(purchased_day0[h.index] == (p2 ? 100 : 0), h.id + " purchases not on day 0");
    }
    if (o.pass) o.detail = "21-row grid, 126 posts each, 9 x (100 bought on day 0, 2 sponsored from day 56 at 7 x 2 = 14)";
    return o;
}

// 6 ---------------------------------------------------------------------------
Outcome calibrated_reproduction() {
    Outcome o;
    auto cfg = experiment::preset_paper_testbed();
    cfg.seed = kCalibratedSeed;
    cfg.replicates = kCalibratedReplicates;
    const auto profile = sim::load_profile("paper-calibrated");
    experiment::RunOptions opt;
    opt.write_runs = false;
    opt.threads = experiment::default_threads();
    const auto runs = experiment::simulate_replicates(cfg, profile, {}, opt);

    int a = 0, b = 0, cc = 0, d = 0, e = 0;
    for (const auto& run : runs) {
        const auto rows = analytics::trend_table(analytics::trend_entries(run));
        std::map<std::string, analytics::TrendRow> by_group;
        int ns_followers = 0;
        int ns_comments = 0;
        for (const auto& r : rows) {
            by_group[r.group] = r;
            if (r.block == "topic") {
                ns_followers += r.ns_followers;
                ns_comments += r.ns_comments;
            }
        }
        const double p0 = by_group["PLAN 0"].followers_mean;
        const double p1 = by_group["PLAN 1"].followers_mean;
        const double p2 = by_group["PLAN 2"].followers_mean;
        a += (p1 > p2 && p2 > p0) ? 1 : 0;

        const auto& cat = by_group["cat"];
        bool cat_top = true;
        for (const char* t : {"food", "car"}) {
            cat_top = cat_top && cat.followers_mean > by_group[t].followers_mean && cat.likes_mean > by_group[t].likes_mean;
        }
        b += cat_top ? 1 : 0;
        cc += by_group["non-AI"].likes_mean > by_group["AI"].likes_mean ? 1 : 0;

        const auto report = analytics::build_report({run});
        auto any_significant = [&](const std::string& factor) {
            const auto& t = report.likes_tukey_for(factor).result;
            if (!t.value) return false;
            return std::any_of(t.value->pairs.begin(), t.value->pairs.end(), [](const auto& p) { return p.significant; });
        };
        d += (any_significant("plan") && any_significant("topic")) ? 1 : 0;
        e += (ns_followers >= kMinNsFollowers && ns_comments <= kMaxNsComments) ? 1 : 0;
    }
    const int n = static_cast<int>(runs.size());
    const int need = static_cast<int>(std::ceil(kReplicateShare * n));
    const std::pair<const char*, int> parts[] = {{"a", a}, {"b", b}, {"c", cc}, {"d", d}, {"e", e}};
    for (const auto& [name, hits] : parts) {
        if (hits < need) o.pass = false;
        o.detail += std::string(o.detail.empty() ? "" : ", ") + name + " " + std::to_string(hits) + "/" + std::to_string(n);
    }
    o.detail += " (need " + std::to_string(need) + ")";
    return o;
}

// 7 ---------------------------------------------------------------------------
Outcome classifier_suite() {
    Outcome o;
    Check c{&o};
    const auto& patterns = default_fixtures().spam_patterns;
    const auto labeled = classify::load_labeled_comments(data_dir() / "fixtures" / "labeled_comments.csv");
    int agree = 0;
    std::vector<Comment> comments;
    for (const auto& lc : labeled) {
        agree += classify::classify_comment(lc.comment, patterns).is_spam == lc.spam ? 1 : 0;
        comments.push_back(lc.comment);
    }
    const double spam_pct = 100.0 * classify::spam_fraction(comments, patterns);
    c(agree == static_cast<int>(labeled.size()), "fixture agreement " + std::to_string(agree));
    c(csv::fixed(analytics::round_to(spam_pct, 2), 2) == csv::fixed(kSpamPercent, 2), "spam " + fmt(spam_pct, 2));

    const auto rec = sim::run(experiment::preset_paper_testbed(), sim::load_profile("paper-calibrated"), 7);
    long total = 0;
    long correct = 0;
    for (const auto& a : rec.agents) {
        ++total;
        correct += classify::classify_follower(a) == classify::expected_category(a.category) ? 1 : 0;
    }
    const double acc = static_cast<double>(correct) / static_cast<double>(total);
    c(acc >= kFollowerAccuracy, "follower accuracy " + fmt(acc));

    using classify::FollowerCategory;
    c(classify::classify_follower({500, 300, 50, true, 0.3}, false) == FollowerCategory::RealPerson, "real profile");
    c(classify::classify_follower({5000, 200, 300, true, 0.3}, true) == FollowerCategory::PageInfluencer, "page profile");
    c(classify::classify_follower({10, 2000, 2, false, 0.95}, false) == FollowerCategory::Bot, "bot profile");
    if (o.pass) {
        o.detail = "fixture " + std::to_string(agree) + "/" + std::to_string(labeled.size()) + ", spam " +
                   fmt(spam_pct, 2) + "%, follower accuracy " + fmt(100 * acc, 2) + "% over " + std::to_string(total) +
                   " agents, 3 profiles ok";
    }
    return o;
}

// 8 ---------------------------------------------------------------------------
Outcome audience_insights() {
    Outcome o;
    Check c{&o};
    auto people = [](int n) {
        std::vector<analytics::FollowerView> fs(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) fs[i].agent = static_cast<AgentId>(i);
        return fs;
    };
    c(!analytics::audience_insights(people(99)), "99 followers opened the gate");
    c(analytics::audience_insights(people(100)).has_value(), "100 followers kept the gate shut");

    auto h9 = people(103);
    const std::pair<const char*, int> regions[] = {{"India", 12}, {"Bangladesh", 11}, {"Japan", 10}, {"Italy", 10},
                                                   {"Brazil", 10}, {"Egypt", 10},     {"Turkey", 10}, {"Iran", 10},
                                                   {"Mexico", 10}, {"Nigeria", 10}};
    std::size_t i = 0;
    for (const auto& [name, n] : regions) {
        for (int k = 0; k < n; ++k) h9[i++].region = name;
    }
    for (std::size_t k = 0; k < h9.size(); ++k) h9[k].age = k < 33 ? AgeBucket::A25_34 : AgeBucket::A35_44;
    const auto ins = analytics::audience_insights(h9);
    c(ins && ins->age_share(AgeBucket::A25_34).percent == 32.0, "25-34 share");
    c(ins && ins->top_region().label == "India" && ins->top_region().percent == 11.7, "top region share");

    // Sponsored-audience marginals, averaged over the three posts of each topic.
    struct Marginal {
        const char* topic;
        double women, men;
        double age[7];
    };
    const Marginal expected[] = {
        {"food", (42.2 + 60.0 + 87.8) / 3, (57.0 + 38.7 + 11.7) / 3,
         {0.2 / 3, (39.1 + 37.7 + 35.9) / 3, (29.8 + 12.9 + 36.0) / 3, (14.5 + 11.6 + 14.3) / 3, (9.0 + 18.3 + 8.2) / 3,
          (4.7 + 12.9 + 3.8) / 3, (2.5 + 6.0 + 1.3) / 3}},
        {"cat", (67.2 + 67.7 + 59.0) / 3, (31.5 + 30.7 + 39.3) / 3,
         {0.1 / 3, (20.8 + 33.8 + 38.6) / 3, (21.2 + 25.2 + 15.2) / 3, (15.6 + 13.0 + 12.4) / 3, (18.7 + 14.0 + 13.7) / 3,
          (15.8 + 9.3 + 12.4) / 3, (7.5 + 4.3 + 7.2) / 3}},
        {"car", (8.6 + 8.7 + 5.6) / 3, (89.5 + 90.7 + 93.6) / 3,
         {0.4 / 3, (64.3 + 45.7 + 52.5) / 3, (12.7 + 31.8 + 26.8) / 3, (6.5 + 10.8 + 9.4) / 3, (8.1 + 5.1 + 6.1) / 3,
          (5.0 + 3.6 + 3.0) / 3, (2.9 + 2.6 + 1.8) / 3}},
    };
    const auto model = sim::testbed_audience_model();
    RandomStream rng(88);
    double worst = 0.0;
    for (const auto& m : expected) {
        const auto& aud = model.at(m.topic);
        double age_sum = 0.0;
        for (double v : m.age) age_sum += v;
        int women = 0;
        int men = 0;
        std::vector<int> ages(7, 0);
        for (int k = 0; k < kAudienceDraws; ++k) {
            const auto who = sim::sample_demographics(aud, rng);
            women += who.gender == Gender::F ? 1 : 0;
            men += who.gender == Gender::M ? 1 : 0;
            ++ages[static_cast<std::size_t>(who.age)];
        }
        auto pct = [](int n) { return 100.0 * n / kAudienceDraws; };
        worst = std::max({worst, std::abs(pct(women) - m.women), std::abs(pct(men) - m.men)});
        for (std::size_t k = 0; k < 7; ++k) worst = std::max(worst, std::abs(pct(ages[k]) - 100.0 * m.age[k] / age_sum));
    }
    c(worst <= kAudienceTolPp, "audience marginal off by " + fmt(worst, 2) + " pp");
    if (o.pass) o.detail = "gate at 100, h9 fixture 32.0% / India 11.7%, worst marginal gap " + fmt(worst, 2) + " pp";
    return o;
}

// 9 ---------------------------------------------------------------------------
Outcome determinism() {
    Outcome o;
    Check c{&o};
    auto cfg = experiment::preset_paper_testbed();
    cfg.seed = 99;
    cfg.replicates = 2;
    const auto profile = sim::load_profile("paper-calibrated");
    const auto base = fs::temp_directory_path() / "hpsim_acceptance_determinism";
    fs::remove_all(base);
    const std::pair<const char*, int> variants[] = {{"a", 1}, {"b", 1}, {"c", 2}};
    for (const auto& [name, threads] : variants) {
        experiment::RunOptions opt;
        opt.threads = threads;
        experiment::run_experiment(cfg, profile, base / name, opt);
    }
    int files = 0;
    for (int rep = 0; rep < cfg.replicates; ++rep) {
        const auto d = experiment::replicate_dir_name(rep);
        std::vector<fs::path> rel{fs::path(d) / "events.csv"};
        for (const auto& h : cfg.honeypots) rel.push_back(fs::path(d) / "snapshots" / (h.id + ".csv"));
        for (const auto& r : rel) {
            const auto ref = slurp(base / "a" / r);
            c(!ref.empty(), r.string() + " missing");
            c(ref == slurp(base / "b" / r), r.string() + " differs between invocations");
            c(ref == slurp(base / "c" / r), r.string() + " differs across thread counts");
            ++files;
        }
    }
    fs::remove_all(base);
    if (o.pass) o.detail = std::to_string(files) + " CSVs byte-identical across 2 invocations and 1 vs 2 threads";
    return o;
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"metric arithmetic", metric_arithmetic},
        {"statistics oracle equivalence", stats_oracle},
        {"ADF behavior", adf_behavior},
        {"pipeline invariants", pipeline_invariants},
        {"testbed fidelity", testbed_fidelity},
        {"calibrated reproduction", calibrated_reproduction},
        {"classifier suite", classifier_suite},
        {"audience insights", audience_insights},
        {"determinism", determinism},
    };
    int failed = 0;
    int index = 1;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", index++, name, o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
