#pragma once

#include <array>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "hpsim/core/error.hpp"
#include "hpsim/core/random.hpp"
#include "hpsim/core/types.hpp"

namespace hpsim::sim {

/// Categorical distribution over string labels.
struct Categorical {
    std::vector<std::string> labels;
    std::vector<double> probs;

    [[nodiscard]] double sum() const {
        double s = 0.0;
        for (double p : probs) s += p;
        return s;
    }

    [[nodiscard]] std::size_t sample(RandomStream& rng) const {
        double u = rng.uniform();
        for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
            if (u < probs[i]) return i;
            u -= probs[i];
        }
        return probs.size() - 1;
    }
};

/// Who a sponsored post of one topic reaches.
struct TopicAudience {
    std::array<double, kGenderCount> gender{};    // F, M, Unspecified
    std::array<double, kAgeBucketCount> age{};
    Categorical region;
    /// Mean accounts reached by one sponsored post over its whole window.
    double reach_mean = 0.0;
};

struct SponsorAudienceModel {
    std::map<std::string, TopicAudience> topics;

    [[nodiscard]] const TopicAudience& at(const std::string& topic) const {
        auto it = topics.find(topic);
        if (it == topics.end()) throw Error(ErrorCode::ValidationError, "no sponsored audience for topic " + topic);
        return it->second;
    }
};

namespace detail {

template <std::size_t N>
std::array<double, N> normalized(const std::array<double, N>& a) {
    double s = 0.0;
    for (double v : a) s += v;
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) out[i] = a[i] / s;
    return out;
}

/// Averages per-post percentage columns; a missing value counts as 0.
inline std::vector<double> column_mean(const std::vector<std::vector<double>>& cols) {
    std::vector<double> m(cols.front().size(), 0.0);
    for (const auto& c : cols)
        for (std::size_t i = 0; i < c.size(); ++i) m[i] += c[i] / static_cast<double>(cols.size());
    return m;
}

/**
 * Builds one topic from three observed sponsored posts. Gender shares not
 * attributed to women or men go to Unspecified; region shares not listed go
 * to "Other"; age shares are renormalized to sum to one.
 */
inline TopicAudience topic_from_posts(const std::vector<std::vector<double>>& women_men,
                                      const std::vector<std::vector<double>>& ages,
                                      const std::vector<std::string>& region_names,
                                      const std::vector<std::vector<double>>& regions,
                                      const std::vector<double>& reach) {
    TopicAudience t;
    const auto wm = column_mean(women_men);
    t.gender = {wm[0] / 100.0, wm[1] / 100.0, std::max(0.0, 1.0 - (wm[0] + wm[1]) / 100.0)};
    const auto ag = column_mean(ages);
    std::array<double, kAgeBucketCount> a{};
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = ag[i];
    t.age = normalized(a);
    const auto rg = column_mean(regions);
    double listed = 0.0;
    for (std::size_t i = 0; i < region_names.size(); ++i) {
        if (rg[i] <= 0.0) continue;
        t.region.labels.push_back(region_names[i]);
        t.region.probs.push_back(rg[i] / 100.0);
        listed += rg[i] / 100.0;
    }
    t.region.labels.push_back("Other");
    t.region.probs.push_back(1.0 - listed);
    double r = 0.0;
    for (double v : reach) r += v / static_cast<double>(reach.size());
    t.reach_mean = r;
    return t;
}

}  // namespace detail

inline const std::vector<std::string>& sponsored_regions() {
    static const std::vector<std::string> names{"Campania", "Emilia-Romagna", "Lazio",  "Lombardia", "Piemonte",
                                                "Puglia",   "Sicilia",        "Tuscany", "Veneto"};
    return names;
}

/// Audience of the testbed's sponsored posts, three posts per topic, shares in percent.
inline SponsorAudienceModel testbed_audience_model() {
    SponsorAudienceModel m;
    const auto& names = sponsored_regions();
    m.topics["food"] = detail::topic_from_posts(
        {{42.2, 57.0}, {60.0, 38.7}, {87.8, 11.7}},
        {{0.1, 39.1, 29.8, 14.5, 9.0, 4.7, 2.5}, {0.1, 37.7, 12.9, 11.6, 18.3, 12.9, 6.0}, {0, 35.9, 36.0, 14.3, 8.2, 3.8, 1.3}},
        names,
        {{14.7, 0, 0, 12.4, 0, 12.5, 9.0, 0, 9.0}, {11.3, 0, 7.9, 12.0, 0, 10.9, 10.0, 0, 0}, {9.1, 0, 8.3, 13.2, 0, 8.9, 9.2, 0, 0}},
        {3126, 3412, 5337});
    m.topics["cat"] = detail::topic_from_posts(
        {{67.2, 31.5}, {67.7, 30.7}, {59.0, 39.3}},
        {{0, 20.8, 21.2, 15.6, 18.7, 15.8, 7.5}, {0, 33.8, 25.2, 13.0, 14.0, 9.3, 4.3}, {0.1, 38.6, 15.2, 12.4, 13.7, 12.4, 7.2}},
        names,
        {{0, 9.7, 9.4, 19.6, 9.0, 0, 0, 7.2, 0}, {0, 8.7, 10.5, 18.8, 8.5, 0, 0, 0, 7.7}, {8.7, 9.2, 0, 17.2, 7.5, 0, 0, 0, 8.4}},
        {3245, 4597, 2863});
    m.topics["car"] = detail::topic_from_posts(
        {{8.6, 89.5}, {8.7, 90.7}, {5.6, 93.6}},
        {{0.2, 64.3, 12.7, 6.5, 8.1, 5.0, 2.9}, {0.1, 45.7, 31.8, 10.8, 5.1, 3.6, 2.6}, {0.1, 52.5, 26.8, 9.4, 6.1, 3.0, 1.8}},
        names,
        {{7.8, 0, 8.2, 14.0, 0, 8.9, 10.4, 0, 0}, {8.7, 8.6, 11.1, 19.0, 0, 0, 0, 0, 8.8}, {0, 9.2, 9.5, 20.9, 8.0, 0, 0, 0, 10.1}},
        {10698, 6824, 9633});
    return m;
}

struct Demographics {
    Gender gender = Gender::Unspecified;
    AgeBucket age = AgeBucket::A25_34;
    std::string region;
};

inline Demographics sample_demographics(const TopicAudience& t, RandomStream& rng) {
    Demographics d;
    const Categorical g{{"F", "M", "U"}, {t.gender.begin(), t.gender.end()}};
    d.gender = static_cast<Gender>(g.sample(rng));
    const Categorical a{{}, {t.age.begin(), t.age.end()}};
    d.age = static_cast<AgeBucket>(a.sample(rng));
    d.region = t.region.labels[t.region.sample(rng)];
    return d;
}

struct Impression {
    SimTime at;
    Demographics who;
};

/**
 * One day of delivery for a sponsored post: the day's reach is drawn from a
 * gamma law with the configured mean and coefficient of variation (exact when
 * cv = 0), and every impression gets demographics from the topic audience.
 */
inline std::vector<Impression> deliver_sponsorship(const Post& p, const TopicAudience& audience, int day,
                                                   double reach_scale, double reach_cv, RandomStream& rng) {
    if (!p.sponsored_window || !p.sponsored_window->contains(SimTime{day, 0})) {
        throw Error(ErrorCode::WindowClosed, "post " + std::to_string(p.ordinal) + " is not sponsored on day " +
                                                 std::to_string(day));
    }
    const double mean = audience.reach_mean * reach_scale / static_cast<double>(p.sponsored_window->days());
    double reach = mean;
    if (reach_cv > 0.0 && mean > 0.0) {
        const double shape = 1.0 / (reach_cv * reach_cv);
        reach = std::gamma_distribution<double>(shape, mean / shape)(rng);
    }
    const auto n = static_cast<std::size_t>(std::llround(reach));
    std::vector<Impression> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Impression im;
        im.at = SimTime{day, rng.uniform_int(0, kMinutesPerDay - 1)};
        im.who = sample_demographics(audience, rng);
        out.push_back(std::move(im));
    }
    std::stable_sort(out.begin(), out.end(), [](const Impression& a, const Impression& b) { return a.at < b.at; });
    return out;
}

}  // namespace hpsim::sim
