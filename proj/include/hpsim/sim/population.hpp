#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hpsim/classify/classifiers.hpp"
#include "hpsim/core/random.hpp"
#include "hpsim/core/topic.hpp"
#include "hpsim/core/types.hpp"
#include "hpsim/sim/profile.hpp"

namespace hpsim::sim {

inline constexpr double kRealShare = 0.60;
inline constexpr double kPageShare = 0.25;

/// Region mix of the simulated population; the remainder of each list is "Other".
inline const std::vector<std::pair<std::string, double>>& population_regions() {
    static const std::vector<std::pair<std::string, double>> regions{
        {"Lombardia", 0.12}, {"Lazio", 0.09},   {"Campania", 0.09},   {"Sicilia", 0.07},       {"Veneto", 0.07},
        {"Emilia-Romagna", 0.06}, {"Piemonte", 0.06}, {"Puglia", 0.06}, {"Tuscany", 0.05},   {"India", 0.08},
        {"Bangladesh", 0.04}, {"Japan", 0.03}, {"United States", 0.06}, {"Brazil", 0.04},   {"Other", 0.08},
    };
    return regions;
}

inline constexpr std::array<double, kGenderCount> kPopulationGender{0.48, 0.48, 0.04};
inline constexpr std::array<double, kAgeBucketCount> kPopulationAge{0.05, 0.30, 0.30, 0.16, 0.10, 0.06, 0.03};

namespace detail {

template <typename Container>
std::size_t pick_weighted(const Container& probs, RandomStream& rng) {
    double u = rng.uniform();
    std::size_t i = 0;
    for (double p : probs) {
        if (u < p) return i;
        u -= p;
        ++i;
    }
    return i - 1;
}

inline double lognormal(RandomStream& rng, double median, double sigma) {
    return median * std::exp(sigma * rng.normal(0.0, 1.0));
}

/// Handle built from consonant-vowel syllables, sometimes with a short number.
inline std::string human_username(RandomStream& rng) {
    static const std::string consonants = "bcdfglmnprstvz";
    static const std::string vowels = "aeiou";
    std::string name;
    const int syllables = rng.uniform_int(3, 5);
    for (int s = 0; s < syllables; ++s) {
        name += consonants[rng.uniform_int<std::size_t>(0, consonants.size() - 1)];
        name += vowels[rng.uniform_int<std::size_t>(0, vowels.size() - 1)];
        if (s == 1 && rng.bernoulli(0.4)) name += '.';
    }
    if (rng.bernoulli(0.3)) name += std::to_string(rng.uniform_int(1, 99));
    return name;
}

/// Handle whose characters pick vowel, consonant and digit classes uniformly.
inline std::string random_username(RandomStream& rng) {
    static const std::string classes[3] = {"aeiouy", "bcdfghjklmnpqrstvwxz", "0123456789"};
    std::string name;
    const int len = rng.uniform_int(16, 20);
    for (int i = 0; i < len; ++i) {
        const auto& cls = classes[rng.uniform_int(0, 2)];
        name += cls[rng.uniform_int<std::size_t>(0, cls.size() - 1)];
    }
    return name;
}

}  // namespace detail

/**
 * The simulated accounts.
 *
 * Active agents come first (ids 0..active-1), then the passive pool that can
 * only be bought as followers. Per-topic indexes support the sampling done by
 * the engine: interested agents weighted by activity, spam bots by trigger
 * tag mask, and agents by (gender, age) for sponsored delivery.
 */
struct Population {
    std::vector<Agent> agents;
    std::size_t active_count = 0;
    std::vector<AgentId> passive_pool;

    /// Per topic: interested non-bot agents and the running sum of their activity.
    std::vector<std::vector<AgentId>> interested;
    std::vector<std::vector<double>> interested_cum;
    /// Per topic: spam bots hunting it, with a bit per trigger tag rank.
    std::vector<std::vector<AgentId>> bots;
    std::vector<std::uint64_t> trigger_mask;  // indexed by agent id
    /// Active non-bot agents by gender * kAgeBucketCount + age.
    std::array<std::vector<AgentId>, kGenderCount * kAgeBucketCount> by_demo;

    [[nodiscard]] const Agent& at(AgentId id) const { return agents.at(id); }

    [[nodiscard]] AgentId sample_interested(std::size_t topic, RandomStream& rng) const {
        const auto& cum = interested_cum[topic];
        const double u = rng.uniform() * cum.back();
        const auto it = std::upper_bound(cum.begin(), cum.end(), u);
        return interested[topic][std::min<std::size_t>(static_cast<std::size_t>(it - cum.begin()), cum.size() - 1)];
    }
};

namespace detail {

inline void fill_profile(Agent& a, RandomStream& rng) {
    switch (a.category) {
        case AgentCategory::RealPerson: {
            a.follower_count = static_cast<int>(std::min(980.0, lognormal(rng, 220.0, 0.7)));
            if (rng.bernoulli(0.03)) a.follower_count = rng.uniform_int(1001, 3000);
            a.following_count = static_cast<int>(lognormal(rng, 300.0, 0.5));
            a.post_count = rng.bernoulli(0.03) ? rng.uniform_int(0, 4) : static_cast<int>(5 + lognormal(rng, 60.0, 0.8));
            a.has_real_picture = !rng.bernoulli(0.05);
            a.username = human_username(rng);
            a.posts_topic_specific = false;
            break;
        }
        case AgentCategory::PageInfluencer: {
            a.posts_topic_specific = !rng.bernoulli(0.15);
            a.follower_count = static_cast<int>(a.posts_topic_specific ? lognormal(rng, 1500.0, 1.0)
                                                                         : 1001.0 + lognormal(rng, 4000.0, 0.8));
            a.following_count = static_cast<int>(lognormal(rng, 400.0, 0.6));
            a.post_count = static_cast<int>(20 + lognormal(rng, 300.0, 0.8));
            a.has_real_picture = true;
            a.username = human_username(rng) + (rng.bernoulli(0.5) ? "_official" : "_page");
            break;
        }
        case AgentCategory::SpamBot: {
            a.has_real_picture = rng.bernoulli(0.2);
            a.username = rng.bernoulli(0.8) ? random_username(rng) : human_username(rng);
            if (rng.bernoulli(0.8)) {
                a.following_count = rng.uniform_int(1000, 7000);
                a.follower_count = static_cast<int>(a.following_count * 0.05 * rng.uniform());
            } else {
                a.following_count = rng.uniform_int(50, 400);
                a.follower_count = rng.uniform_int(50, 400);
            }
            a.post_count = rng.bernoulli(0.7) ? rng.uniform_int(0, 4) : rng.uniform_int(5, 40);
            a.posts_topic_specific = false;
            break;
        }
    }
    a.username_entropy = classify::username_entropy(a.username);
}

}  // namespace detail

/**
 * Builds `active` agents plus `passive` purchasable accounts. Every agent is
 * drawn from its own child stream, so agent i does not depend on the others.
 */
inline Population make_population(std::size_t active, std::size_t passive, const std::vector<Topic>& topics,
                                  const BehaviorProfile& profile, const RandomStream& root) {
    Population pop;
    pop.active_count = active;
    const auto& regions = population_regions();
    std::vector<double> region_probs;
    for (const auto& r : regions) region_probs.push_back(r.second);

    std::vector<double> bot_share;
    for (const auto& t : topics) bot_share.push_back(profile.bot_share(t.name));
    double share_sum = 0.0;
    for (double s : bot_share) share_sum += s;
    if (share_sum <= 0.0) {
        std::fill(bot_share.begin(), bot_share.end(), 1.0);
        share_sum = static_cast<double>(bot_share.size());
    }
    for (double& s : bot_share) s /= share_sum;

    pop.interested.assign(topics.size(), {});
    pop.interested_cum.assign(topics.size(), {});
    pop.bots.assign(topics.size(), {});
    pop.trigger_mask.assign(active + passive, 0);
    pop.agents.reserve(active + passive);

    for (std::size_t i = 0; i < active + passive; ++i) {
        auto rng = root.split(static_cast<std::uint64_t>(i));
        Agent a;
        a.id = static_cast<AgentId>(i);
        a.passive = i >= active;
        const double u = rng.uniform();
        a.category = a.passive                      ? AgentCategory::SpamBot
                     : u < kRealShare               ? AgentCategory::RealPerson
                     : u < kRealShare + kPageShare ? AgentCategory::PageInfluencer
                                                    : AgentCategory::SpamBot;
        a.gender = static_cast<Gender>(detail::pick_weighted(kPopulationGender, rng));
        a.age = static_cast<AgeBucket>(detail::pick_weighted(kPopulationAge, rng));
        a.region = regions[detail::pick_weighted(region_probs, rng)].first;
        detail::fill_profile(a, rng);
        a.activity_rate = detail::lognormal(rng, 1.0, 0.5);
        a.interests.assign(topics.size(), 0.0);

        if (!a.passive && a.category != AgentCategory::SpamBot) {
            std::size_t page_topic = topics.size();
            if (a.category == AgentCategory::PageInfluencer && a.posts_topic_specific) {
                std::vector<double> w;
                for (const auto& t : topics) w.push_back(profile.interest(t.name));
                double s = 0.0;
                for (double x : w) s += x;
                for (double& x : w) x /= s;
                page_topic = detail::pick_weighted(w, rng);
            }
            for (std::size_t t = 0; t < topics.size(); ++t) {
                if (t == page_topic) {
                    a.interests[t] = rng.beta(5.0, 2.0);
                } else if (rng.bernoulli(profile.interest(topics[t].name))) {
                    a.interests[t] = rng.beta(3.0, 2.0);
                } else {
                    a.interests[t] = 0.05 * rng.uniform();
                }
            }
        } else if (!a.passive) {
            const std::size_t t = detail::pick_weighted(bot_share, rng);
            const auto& pool = topics[t].hashtag_pool;
            const int ntags = rng.uniform_int(2, 4);
            for (int k = 0; k < ntags && !pool.empty(); ++k) {
                std::vector<double> w(std::min<std::size_t>(pool.size(), 64));
                for (std::size_t r = 0; r < w.size(); ++r) w[r] = 1.0 / static_cast<double>(r + 1);
                double s = 0.0;
                for (double x : w) s += x;
                for (double& x : w) x /= s;
                const auto rank = static_cast<std::uint16_t>(detail::pick_weighted(w, rng));
                const TagRef tag{static_cast<std::uint16_t>(t), rank};
                if (std::find(a.trigger_tags.begin(), a.trigger_tags.end(), tag) == a.trigger_tags.end()) {
                    a.trigger_tags.push_back(tag);
                    pop.trigger_mask[i] |= std::uint64_t{1} << rank;
                }
            }
            pop.bots[t].push_back(a.id);
        }

        if (a.passive) {
            pop.passive_pool.push_back(a.id);
        } else if (a.category != AgentCategory::SpamBot) {
            pop.by_demo[static_cast<std::size_t>(a.gender) * kAgeBucketCount + static_cast<std::size_t>(a.age)]
                .push_back(a.id);
            for (std::size_t t = 0; t < topics.size(); ++t) {
                if (a.interests[t] < 0.05) continue;
                pop.interested[t].push_back(a.id);
                const double prev = pop.interested_cum[t].empty() ? 0.0 : pop.interested_cum[t].back();
                pop.interested_cum[t].push_back(prev + a.activity_rate);
            }
        }
        pop.agents.push_back(std::move(a));
    }
    for (std::size_t t = 0; t < topics.size(); ++t) {
        if (pop.interested[t].empty()) {
            throw Error(ErrorCode::ValidationError, "population too small: nobody is interested in " + topics[t].name);
        }
    }
    return pop;
}

}  // namespace hpsim::sim
