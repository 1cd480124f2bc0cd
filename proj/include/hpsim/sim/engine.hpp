#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <queue>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "hpsim/content/generator.hpp"
#include "hpsim/core/error.hpp"
#include "hpsim/core/fixtures.hpp"
#include "hpsim/core/random.hpp"
#include "hpsim/core/types.hpp"
#include "hpsim/experiment/config.hpp"
#include "hpsim/plans/plans.hpp"
#include "hpsim/sim/audience.hpp"
#include "hpsim/sim/feed.hpp"
#include "hpsim/sim/population.hpp"
#include "hpsim/sim/profile.hpp"
#include "hpsim/sim/react.hpp"

namespace hpsim::sim {

inline constexpr int kFuCandidatesPerDay = 200;
inline constexpr int kFuCandidateWindowDays = 7;
inline constexpr int kVisitPosts = 3;
inline constexpr double kFollowerExposureDelay = 180.0;  // minutes, mean
inline constexpr double kDiscoveryDelay = 360.0;
inline constexpr double kVisitDelay = 120.0;

/// Everything one run produced.
struct RunRecord {
    std::uint64_t seed = 0;
    std::uint64_t config_hash = 0;
    int horizon_days = 0;
    std::string profile_name;
    std::vector<Topic> topics;
    std::vector<experiment::HoneypotSpec> specs;
    std::vector<Honeypot> honeypots;
    std::vector<EngagementEvent> events;
    std::vector<Agent> agents;
    /// Background posts the honeypots interacted with, by id.
    std::vector<AgentId> background_authors;
    int replies = 0;

    [[nodiscard]] const Topic& topic_of(const Honeypot& h) const { return topics.at(h.topic); }
};

namespace detail {

inline int exp_delay(RandomStream& rng, double mean) {
    const double d = std::exponential_distribution<double>(1.0 / mean)(rng);
    return std::max(1, static_cast<int>(std::lround(d)));
}

}  // namespace detail

/**
 * Discrete-event engine for one run. Days are processed in order; at the
 * start of each day the background feeds advance, every honeypot plans its
 * actions and schedules its two posts, and sponsored posts get the day's
 * impressions. Queued tasks are then drained up to the end of the day in
 * (time, insertion) order and a snapshot is taken.
 */
class Simulation {
public:
    Simulation(const experiment::ExperimentConfig& cfg, const BehaviorProfile& profile, std::uint64_t seed,
               const Fixtures& fx = default_fixtures(),
               const SponsorAudienceModel& audience = testbed_audience_model())
        : cfg_(cfg),
          prof_(profile),
          fx_(fx),
          audience_(audience),
          root_(seed),
          env_(RandomStream(seed).split("environment").key()) {
        experiment::validate(cfg_);
        rec_.seed = seed;
        rec_.config_hash = experiment::config_hash(cfg_);
        rec_.horizon_days = cfg_.horizon_days;
        rec_.profile_name = prof_.calibration_name;
        rec_.topics = cfg_.topics;
        rec_.specs = cfg_.honeypots;

        pop_ = make_population(static_cast<std::size_t>(cfg_.population_size),
                               static_cast<std::size_t>(cfg_.passive_pool_size), cfg_.topics, prof_,
                               root_.split("population"));
        for (std::size_t t = 0; t < cfg_.topics.size(); ++t) {
            feeds_.emplace_back(t);
            coverage_factor_.push_back(std::pow(static_cast<double>(cfg_.topics[t].coverage_count) / 1e8,
                                                -prof_.coverage_elasticity));
        }
        fu_ring_.assign(cfg_.topics.size(), {});
        for (std::size_t i = 0; i < cfg_.honeypots.size(); ++i) {
            const auto& s = cfg_.honeypots[i];
            Honeypot h;
            h.id = s.id;
            h.index = static_cast<HoneypotIndex>(i);
            h.topic = cfg_.topic_index(s.topic);
            h.strategy_mix = s.strategy_mix;
            h.plan = s.plan;
            hps_.push_back(std::move(h));
        }
        masks_.assign(hps_.size(), {});
        seen_.assign(hps_.size(), {});
        pending_.assign(hps_.size(), {});
    }

    RunRecord run() {
        for (int day = 0; day < cfg_.horizon_days; ++day) {
            start_day(day);
            drain(SimTime{day + 1, 0});
            for (auto& h : hps_) h.daily_snapshots.push_back(snapshot(h, day));
        }
        rec_.honeypots = std::move(hps_);
        rec_.events = std::move(events_);
        rec_.agents = std::move(pop_.agents);
        rec_.background_authors = std::move(bg_author_);
        return std::move(rec_);
    }

private:
    enum class TaskKind : std::uint8_t { Publish, Exposure, Visit, SpamComment, Action, FollowBack, DirectFollow, Impression };

    struct Task {
        SimTime at;
        std::uint64_t order = 0;
        TaskKind kind = TaskKind::Exposure;
        HoneypotIndex h = 0;
        std::uint32_t post = 0;
        AgentId agent = 0;
        ExposureContext ctx;
        plans::PlanAction action;
        std::size_t payload = 0;
    };

    struct Later {
        bool operator()(const Task& a, const Task& b) const {
            if (a.at != b.at) return a.at > b.at;
            return a.order > b.order;
        }
    };

    void push(Task t) {
        if (t.at.day >= cfg_.horizon_days) return;
        t.order = next_order_++;
        queue_.push(std::move(t));
    }

    void emit(EventKind kind, EntityRef actor, EntityRef target, SimTime at, HoneypotIndex h) {
        EngagementEvent e;
        e.seq = events_.size();
        e.kind = kind;
        e.actor = actor;
        e.target = target;
        e.at = at;
        e.honeypot = h;
        events_.push_back(e);
    }

    [[nodiscard]] RandomStream post_stream(HoneypotIndex h, std::uint32_t ordinal) const {
        return root_.split("post").split(static_cast<std::uint64_t>(h)).split(static_cast<std::uint64_t>(ordinal));
    }

    [[nodiscard]] double penalty(const Honeypot& h) const {
        if (h.raw_follower_count() == 0) return 1.0;
        return std::pow((1.0 + h.analytic_follower_count()) / (1.0 + h.raw_follower_count()), prof_.purchased_penalty);
    }

    // ----- day start -------------------------------------------------------

    void start_day(int day) {
        const SimTime morning{day, 0};
        auto bg = root_.split("background").split(static_cast<std::uint64_t>(day));
        std::vector<std::vector<EntityRef>> top(cfg_.topics.size());
        for (std::size_t t = 0; t < cfg_.topics.size(); ++t) {
            auto rng = bg.split(static_cast<std::uint64_t>(t));
            feeds_[t].advance(day, pop_, next_bg_id_, rng);
            for (const auto& p : feeds_[t].top25(morning)) {
                top[t].push_back(EntityRef::background_post(p.id));
            }
            auto cand_rng = rng.split("fu-candidates");
            std::vector<AgentId> engagers;
            engagers.reserve(kFuCandidatesPerDay);
            for (int i = 0; i < kFuCandidatesPerDay; ++i) engagers.push_back(pop_.sample_interested(t, cand_rng));
            fu_ring_[t].push_back(std::move(engagers));
            while (fu_ring_[t].size() > static_cast<std::size_t>(kFuCandidateWindowDays)) fu_ring_[t].pop_front();
        }
        bg_author_.resize(next_bg_id_);
        for (std::size_t t = 0; t < cfg_.topics.size(); ++t) feeds_[t].authors(bg_author_);

        for (auto& h : hps_) {
            auto prng = root_.split("plan").split(static_cast<std::uint64_t>(h.index)).split(static_cast<std::uint64_t>(day));
            plans::DayInputs in;
            in.day = day;
            in.feed = top[h.topic];
            for (const auto& d : fu_ring_[h.topic]) in.fu_candidates.insert(in.fu_candidates.end(), d.begin(), d.end());
            in.spam_patterns = &fx_.spam_patterns;
            for (const auto& a : plans::plan_daily_actions(h, in, prng)) {
                if (a.kind == plans::ActionKind::BuyFollowers) {
                    buy(h, a, prng);
                } else if (a.kind == plans::ActionKind::SponsorPost) {
                    plans::sponsor_post(h.posts.at(a.target.sub), h.plan.plan, a.at, h.plan);
                } else {
                    Task t;
                    t.at = a.at;
                    t.kind = TaskKind::Action;
                    t.h = h.index;
                    t.action = a;
                    push(t);
                }
            }
            schedule_day_posts(h, day);
            deliver(h, day);
        }
    }

    void buy(Honeypot& h, const plans::PlanAction& a, RandomStream& rng) {
        for (AgentId id : plans::buy_followers(h, a.amount, pop_.passive_pool, a.at, rng)) {
            emit(EventKind::PurchasedFollow, EntityRef::honeypot(h.index), EntityRef::agent(id), a.at, h.index);
        }
    }

    void schedule_day_posts(Honeypot& h, int day) {
        auto srng = root_.split("schedule").split(static_cast<std::uint64_t>(h.index)).split(static_cast<std::uint64_t>(day));
        const auto [t1, t2] = schedule_posts(day, srng, cfg_.deterministic_schedule);
        const auto& topic = cfg_.topics[h.topic];
        for (int k = 0; k < 2; ++k) {
            const auto ordinal = static_cast<std::uint32_t>(2 * day + k);
            auto crng = root_.split("content").split(static_cast<std::uint64_t>(h.index)).split(static_cast<std::uint64_t>(ordinal));
            auto draft = content::reviewed_post(
                [&] {
                    const GenerationStrategy s{h.strategy_mix[crng.uniform_int<std::size_t>(0, h.strategy_mix.size() - 1)]};
                    return content::generate_post(s, topic, env_, fx_, prof_.appeal, crng);
                },
                cfg_.review);
            Post p;
            p.ordinal = ordinal;
            p.author = h.index;
            p.published_at = k == 0 ? t1 : t2;
            p.content = std::move(draft.content);
            pending_[h.index].push_back(std::move(p));
            Task t;
            t.at = k == 0 ? t1 : t2;
            t.kind = TaskKind::Publish;
            t.h = h.index;
            t.post = ordinal;
            push(t);
        }
    }

    [[nodiscard]] AgentId match_agent(const Demographics& who, RandomStream& rng) const {
        const auto& bucket =
            pop_.by_demo[static_cast<std::size_t>(who.gender) * kAgeBucketCount + static_cast<std::size_t>(who.age)];
        const std::vector<AgentId>* pool = &bucket;
        if (pool->empty()) {
            for (const auto& b : pop_.by_demo) {
                if (!b.empty()) {
                    pool = &b;
                    break;
                }
            }
        }
        AgentId first = (*pool)[rng.uniform_int<std::size_t>(0, pool->size() - 1)];
        if (pop_.agents[first].region == who.region) return first;
        for (int attempt = 0; attempt < 8; ++attempt) {
            const AgentId id = (*pool)[rng.uniform_int<std::size_t>(0, pool->size() - 1)];
            if (pop_.agents[id].region == who.region) return id;
        }
        return first;
    }

    void deliver(const Honeypot& h, int day) {
        for (const auto& p : h.posts) {
            if (!p.sponsored_window || !p.sponsored_window->contains(SimTime{day, 0})) continue;
            auto rng = root_.split("sponsor").split(static_cast<std::uint64_t>(h.index)).split(static_cast<std::uint64_t>(p.ordinal))
                           .split(static_cast<std::uint64_t>(day));
            const auto& aud = audience_.at(cfg_.topics[h.topic].name);
            for (const auto& im : deliver_sponsorship(p, aud, day, prof_.sponsor_reach_scale, prof_.sponsor_reach_cv, rng)) {
                Task t;
                t.at = im.at;
                t.kind = TaskKind::Impression;
                t.h = h.index;
                t.post = p.ordinal;
                t.agent = match_agent(im.who, rng);
                push(t);
            }
        }
    }

    // ----- task processing -------------------------------------------------

    void drain(SimTime until) {
        while (!queue_.empty() && queue_.top().at < until) {
            const Task t = queue_.top();
            queue_.pop();
            switch (t.kind) {
                case TaskKind::Publish: publish(t); break;
                case TaskKind::Exposure: expose(t.agent, t.h, t.post, t.at, t.ctx); break;
                case TaskKind::Visit: visit(t.agent, t.h, t.at); break;
                case TaskKind::SpamComment: spam_comment(t); break;
                case TaskKind::Action: act(t); break;
                case TaskKind::FollowBack: follow_back(t); break;
                case TaskKind::DirectFollow: agent_follows(t.agent, hps_[t.h], t.at); break;
                case TaskKind::Impression: impression(t); break;
            }
        }
    }

    void publish(const Task& t) {
        auto& h = hps_[t.h];
        auto& pend = pending_[t.h];
        auto it = std::find_if(pend.begin(), pend.end(), [&](const Post& p) { return p.ordinal == t.post; });
        h.posts.push_back(std::move(*it));
        pend.erase(it);
        const Post& p = h.posts.back();
        const auto& topic = cfg_.topics[h.topic];
        const std::uint64_t mask = tag_mask(p.content.caption, topic);
        masks_[t.h].push_back(mask);
        seen_[t.h].emplace_back();
        auto rng = post_stream(t.h, t.post);

        for (const auto& [id, f] : h.followers) {
            if (f.purchased) continue;
            Task e;
            e.at = t.at.plus_minutes(detail::exp_delay(rng, kFollowerExposureDelay));
            e.kind = TaskKind::Exposure;
            e.h = t.h;
            e.post = t.post;
            e.agent = id;
            push(e);
        }

        const double lambda = prof_.discovery_rate * static_cast<double>(pop_.interested[h.topic].size()) / 1000.0 *
                              coverage_factor_[h.topic] * penalty(h);
        const int n = rng.poisson(lambda);
        for (int i = 0; i < n; ++i) {
            Task e;
            e.agent = pop_.sample_interested(h.topic, rng);
            e.at = t.at.plus_minutes(detail::exp_delay(rng, kDiscoveryDelay));
            e.kind = TaskKind::Exposure;
            e.h = t.h;
            e.post = t.post;
            push(e);
        }

        auto brng = rng.split("bots");
        for (AgentId b : pop_.bots[h.topic]) {
            auto c = spambot_react(pop_.agents[b], pop_.trigger_mask[b], p, mask, prof_, fx_, brng);
            if (!c) continue;
            Task e;
            e.at = c->posted_at;
            e.kind = TaskKind::SpamComment;
            e.h = t.h;
            e.post = t.post;
            e.agent = b;
            e.payload = spam_.size();
            spam_.push_back(std::move(*c));
            push(e);
            if (brng.bernoulli(prof_.bot_follow_p)) {
                Task f;
                f.at = e.at.plus_minutes(1);
                f.kind = TaskKind::DirectFollow;
                f.h = t.h;
                f.agent = b;
                push(f);
            }
        }
    }

    void expose(AgentId agent, HoneypotIndex hi, std::uint32_t ordinal, SimTime at, const ExposureContext& ctx) {
        auto& h = hps_[hi];
        if (!seen_[hi][ordinal].insert(agent).second) return;
        Post& p = h.posts[ordinal];
        const Agent& a = pop_.agents[agent];
        auto rng = post_stream(hi, ordinal).split("react").split(static_cast<std::uint64_t>(agent));
        const bool following = h.followers.count(agent) > 0;
        const auto r = agent_react(a, p, h.topic, prof_, ctx, following, rng);
        if (r.like) {
            ++p.likes;
            emit(EventKind::Like, EntityRef::agent(agent), EntityRef::post(hi, ordinal), at, hi);
        }
        if (r.comment && !fx_.legit_comments.empty()) {
            Comment c;
            c.author = agent;
            c.text = fx_.legit_comments[rng.uniform_int<std::size_t>(0, fx_.legit_comments.size() - 1)];
            c.posted_at = at;
            c.latency_seconds = (at.total_minutes() - p.published_at.total_minutes()) * 60 + rng.uniform_int(0, 59);
            p.comments.push_back(std::move(c));
            emit(EventKind::Comment, EntityRef::agent(agent), EntityRef::post(hi, ordinal), at, hi);
        }
        if (r.follow) agent_follows(agent, h, at);
    }

    void agent_follows(AgentId agent, Honeypot& h, SimTime at) {
        if (h.followers.count(agent) > 0) return;
        h.followers[agent] = FollowerEntry{false, at};
        emit(EventKind::Follow, EntityRef::agent(agent), EntityRef::honeypot(h.index), at, h.index);
        auto rng = root_.split("follow-back").split(static_cast<std::uint64_t>(h.index)).split(static_cast<std::uint64_t>(agent));
        if (plans::react_to_follow(h, agent, at, rng)) {
            Task t;
            t.at = at.plus_minutes(rng.uniform_int(5, 240));
            t.kind = TaskKind::FollowBack;
            t.h = h.index;
            t.agent = agent;
            push(t);
        }
    }

    void follow_back(const Task& t) {
        auto& h = hps_[t.h];
        if (h.followings.count(t.agent) > 0) return;
        if (!plans::balance_allows_follow(static_cast<int>(h.followings.size()), plans::balance_followers(h))) return;
        h.followings[t.agent] = FollowingEntry{t.at, std::nullopt};
        emit(EventKind::FollowBack, EntityRef::honeypot(t.h), EntityRef::agent(t.agent), t.at, t.h);
    }

    void visit(AgentId agent, HoneypotIndex hi, SimTime at) {
        const auto& h = hps_[hi];
        ExposureContext ctx;
        ctx.follow_boost = prof_.reciprocity_boost;
        const std::size_t n = h.posts.size();
        for (std::size_t k = 0; k < static_cast<std::size_t>(kVisitPosts) && k < n; ++k) {
            expose(agent, hi, static_cast<std::uint32_t>(n - 1 - k), at, ctx);
        }
    }

    void spam_comment(const Task& t) {
        auto& p = hps_[t.h].posts[t.post];
        p.comments.push_back(spam_[t.payload]);
        emit(EventKind::Comment, EntityRef::agent(t.agent), EntityRef::post(t.h, t.post), t.at, t.h);
    }

    void impression(const Task& t) {
        emit(EventKind::SponsoredImpression, EntityRef::agent(t.agent), EntityRef::post(t.h, t.post), t.at, t.h);
        ExposureContext ctx;
        ctx.sponsored = true;
        expose(t.agent, t.h, t.post, t.at, ctx);
    }

    void act(const Task& t) {
        auto& h = hps_[t.h];
        const auto& a = t.action;
        auto rng = root_.split("action").split(static_cast<std::uint64_t>(t.order));
        switch (a.kind) {
            case plans::ActionKind::LikeTop25:
                emit(EventKind::Like, EntityRef::honeypot(t.h), a.target, t.at, t.h);
                break;
            case plans::ActionKind::CommentTop25: {
                (void)plans::spam_comment_text(fx_.honeypot_comments, rng);
                emit(EventKind::Comment, EntityRef::honeypot(t.h), a.target, t.at, t.h);
                if (rng.bernoulli(prof_.visit_p * penalty(h))) {
                    Task v;
                    v.at = t.at.plus_minutes(detail::exp_delay(rng, kVisitDelay));
                    v.kind = TaskKind::Visit;
                    v.h = t.h;
                    v.agent = bg_author_.at(a.target.index);
                    push(v);
                }
                break;
            }
            case plans::ActionKind::ProactiveFollow: {
                const AgentId id = a.target.index;
                if (h.followings.count(id) > 0 || h.followers.count(id) > 0) break;
                if (!plans::balance_allows_follow(static_cast<int>(h.followings.size()), plans::balance_followers(h))) break;
                h.followings[id] = FollowingEntry{t.at, t.at.plus_days(h.plan.fu_unfollow_delay_days)};
                emit(EventKind::Follow, EntityRef::honeypot(t.h), a.target, t.at, t.h);
                if (rng.bernoulli(prof_.fu_visit_p)) {
                    Task v;
                    v.at = t.at.plus_minutes(detail::exp_delay(rng, kVisitDelay));
                    v.kind = TaskKind::Visit;
                    v.h = t.h;
                    v.agent = id;
                    push(v);
                }
                if (rng.bernoulli(prof_.fu_follow_back_p)) {
                    Task f;
                    f.at = t.at.plus_minutes(detail::exp_delay(rng, kVisitDelay));
                    f.kind = TaskKind::DirectFollow;
                    f.h = t.h;
                    f.agent = id;
                    push(f);
                }
                break;
            }
            case plans::ActionKind::Unfollow:
                if (h.followings.erase(a.target.index) > 0) {
                    emit(EventKind::Unfollow, EntityRef::honeypot(t.h), a.target, t.at, t.h);
                }
                break;
            case plans::ActionKind::ReplyToComment:
                ++rec_.replies;
                break;
            case plans::ActionKind::FollowBack:
            case plans::ActionKind::BuyFollowers:
            case plans::ActionKind::SponsorPost:
                break;
        }
    }

    [[nodiscard]] static MetricsSnapshot snapshot(const Honeypot& h, int day) {
        MetricsSnapshot s;
        s.day = day;
        s.followers_analytic = h.analytic_follower_count();
        for (const auto& p : h.posts) {
            s.cumulative_likes += p.likes;
            s.cumulative_comments += static_cast<std::int64_t>(p.comments.size());
            s.per_post.push_back({p.ordinal, p.likes, static_cast<int>(p.comments.size())});
        }
        return s;
    }

    const experiment::ExperimentConfig& cfg_;
    BehaviorProfile prof_;
    const Fixtures& fx_;
    const SponsorAudienceModel& audience_;
    RandomStream root_;
    content::StubEnvironment env_;
    Population pop_;
    std::vector<TopicFeed> feeds_;
    std::vector<double> coverage_factor_;
    std::vector<std::deque<std::vector<AgentId>>> fu_ring_;
    std::vector<Honeypot> hps_;
    std::vector<std::vector<std::uint64_t>> masks_;
    std::vector<std::vector<std::unordered_set<AgentId>>> seen_;
    std::vector<std::vector<Post>> pending_;
    std::vector<Comment> spam_;
    std::vector<AgentId> bg_author_;
    std::uint32_t next_bg_id_ = 0;
    std::priority_queue<Task, std::vector<Task>, Later> queue_;
    std::uint64_t next_order_ = 0;
    std::vector<EngagementEvent> events_;
    RunRecord rec_;
};

inline RunRecord run(const experiment::ExperimentConfig& cfg, const BehaviorProfile& profile, std::uint64_t seed) {
    return Simulation(cfg, profile, seed).run();
}

}  // namespace hpsim::sim
