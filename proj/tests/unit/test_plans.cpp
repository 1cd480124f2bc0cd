#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "hpsim/core/fixtures.hpp"
#include "hpsim/plans/plans.hpp"

using namespace hpsim;
using namespace hpsim::plans;

namespace {

Honeypot honeypot(PlanKind plan) {
    Honeypot h;
    h.id = "h";
    h.plan.plan = plan;
    return h;
}

std::vector<EntityRef> feed(int n) {
    std::vector<EntityRef> f;
    for (int i = 0; i < n; ++i) f.push_back(EntityRef::background_post(static_cast<std::uint32_t>(i)));
    return f;
}

int count(const std::vector<PlanAction>& acts, ActionKind k) {
    return static_cast<int>(std::count_if(acts.begin(), acts.end(), [&](const PlanAction& a) { return a.kind == k; }));
}

void add_followers(Honeypot& h, int n, bool purchased = false, AgentId first = 1000) {
    for (int i = 0; i < n; ++i) h.followers[first + static_cast<AgentId>(i)] = FollowerEntry{purchased, {}};
}

void add_followings(Honeypot& h, int n, AgentId first = 5000) {
    for (int i = 0; i < n; ++i) h.followings[first + static_cast<AgentId>(i)] = FollowingEntry{{}, std::nullopt};
}

std::vector<AgentId> ids(int n, AgentId first = 9000) {
    std::vector<AgentId> out;
    for (int i = 0; i < n; ++i) out.push_back(first + static_cast<AgentId>(i));
    return out;
}

template <typename F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an hpsim::Error";
    return ErrorCode::IoError;
}

}  // namespace

TEST(PlanDailyActions, Plan0NeverInteracts) {
    auto h = honeypot(PlanKind::Plan0);
    add_followers(h, 50);
    RandomStream rng(1);
    for (int day = 0; day < 63; ++day) {
        const auto acts = plan_daily_actions(h, {day, feed(25), ids(30), nullptr}, rng);
        for (const auto& a : acts) ASSERT_EQ(a.kind, ActionKind::ReplyToComment);
    }
}

TEST(PlanDailyActions, Plan1SpamsWholeFeed) {
    auto h = honeypot(PlanKind::Plan1);
    RandomStream rng(2);
    const auto acts = plan_daily_actions(h, {3, feed(25), {}, nullptr}, rng);
    EXPECT_EQ(count(acts, ActionKind::LikeTop25), 25);
    EXPECT_EQ(count(acts, ActionKind::CommentTop25), 25);
    EXPECT_EQ(count(acts, ActionKind::ProactiveFollow), 0);
    for (const auto& a : acts) EXPECT_EQ(a.at.day, 3);
}

TEST(PlanDailyActions, Plan1FollowUnfollowOnlyFromWeekNine) {
    auto h = honeypot(PlanKind::Plan1);
    add_followers(h, 40);
    RandomStream rng(3);
    EXPECT_EQ(count(plan_daily_actions(h, {55, feed(25), ids(30), nullptr}, rng), ActionKind::ProactiveFollow), 0);
    EXPECT_GT(count(plan_daily_actions(h, {56, feed(25), ids(30), nullptr}, rng), ActionKind::ProactiveFollow), 0);
}

TEST(PlanDailyActions, Plan2BuysOnceOnDayZero) {
    auto h = honeypot(PlanKind::Plan2);
    RandomStream rng(4);
    const auto day0 = plan_daily_actions(h, {0, feed(25), {}, nullptr}, rng);
    ASSERT_EQ(count(day0, ActionKind::BuyFollowers), 1);
    const auto buy = std::find_if(day0.begin(), day0.end(), [](const PlanAction& a) { return a.kind == ActionKind::BuyFollowers; });
    EXPECT_EQ(buy->amount, 100);
    for (int day = 1; day < 63; ++day) {
        ASSERT_EQ(count(plan_daily_actions(h, {day, feed(25), {}, nullptr}, rng), ActionKind::BuyFollowers), 0);
    }
}

TEST(PlanDailyActions, Plan2NoFollowUnfollow) {
    auto h = honeypot(PlanKind::Plan2);
    add_followers(h, 40);
    RandomStream rng(5);
    for (int day = 56; day < 63; ++day) {
        ASSERT_EQ(count(plan_daily_actions(h, {day, feed(25), ids(30), nullptr}, rng), ActionKind::ProactiveFollow), 0);
    }
}

TEST(PlanDailyActions, Plan2SponsorsTwoMostLiked) {
    auto h = honeypot(PlanKind::Plan2);
    const std::vector<int> likes{3, 9, 1, 9, 7, 2};
    for (std::size_t i = 0; i < likes.size(); ++i) {
        Post p;
        p.ordinal = static_cast<std::uint32_t>(i);
        p.published_at = {static_cast<int>(i), 0};
        p.likes = likes[i];
        h.posts.push_back(p);
    }
    RandomStream rng(6);
    EXPECT_EQ(count(plan_daily_actions(h, {55, {}, {}, nullptr}, rng), ActionKind::SponsorPost), 0);
    const auto acts = plan_daily_actions(h, {56, {}, {}, nullptr}, rng);
    std::vector<std::uint32_t> sponsored;
    for (const auto& a : acts) {
        if (a.kind == ActionKind::SponsorPost) sponsored.push_back(a.target.sub);
    }
    // Tie on 9 likes goes to the earlier post, both 9s win over 7.
    EXPECT_EQ(sponsored, (std::vector<std::uint32_t>{1, 3}));
    EXPECT_EQ(count(plan_daily_actions(h, {57, {}, {}, nullptr}, rng), ActionKind::SponsorPost), 0);
}

TEST(PlanDailyActions, RepliesSkipSpam) {
    auto h = honeypot(PlanKind::Plan0);
    Post p;
    p.comments.push_back({1, "So pretty!", {4, 100}, 5000});
    p.comments.push_back({2, "@promo DM us", {4, 101}, 30});
    p.comments.push_back({3, "Nice one", {3, 10}, 5000});
    h.posts.push_back(p);
    RandomStream rng(7);
    const auto acts = plan_daily_actions(h, {5, {}, {}, &default_fixtures().spam_patterns}, rng);
    ASSERT_EQ(count(acts, ActionKind::ReplyToComment), 1);
    EXPECT_EQ(acts.front().amount, 0);
}

TEST(SpamCommentText, FixturePool) {
    const auto& pool = default_fixtures().honeypot_comments;
    EXPECT_NE(std::find(pool.begin(), pool.end(), "So pretty!"), pool.end());
    EXPECT_EQ(std::find(pool.begin(), pool.end(), "Follow my page!"), pool.end());
    RandomStream rng(8);
    const std::vector<std::string> one{"Nice!"};
    EXPECT_EQ(spam_comment_text(one, rng), "Nice!");
    EXPECT_EQ(code_of([&] { spam_comment_text({}, rng); }), ErrorCode::EmptyPool);
}

TEST(FollowBackDecision, DegenerateAndHalf) {
    RandomStream rng(9);
    for (int i = 0; i < 1000; ++i) {
        ASSERT_FALSE(follow_back_decision(rng, 0.0));
        ASSERT_TRUE(follow_back_decision(rng, 1.0));
    }
    int yes = 0;
    for (int i = 0; i < 10000; ++i) yes += follow_back_decision(rng, 0.5) ? 1 : 0;
    EXPECT_GE(yes, 4800);
    EXPECT_LE(yes, 5200);
}

TEST(FuStep, BalanceBoundary) {
    auto h = honeypot(PlanKind::Plan1);
    add_followers(h, 10);
    add_followings(h, 9);
    RandomStream rng(10);
    EXPECT_TRUE(fu_step(h, ids(5), {56, 720}, rng).follows.empty());
}

TEST(FuStep, SlackAllowsAllCandidates) {
    auto h = honeypot(PlanKind::Plan1);
    add_followers(h, 10);
    add_followings(h, 4);
    RandomStream rng(11);
    EXPECT_EQ(fu_step(h, ids(3), {56, 720}, rng).follows.size(), 3u);
}

TEST(FuStep, PurchasedFollowersDoNotCount) {
    auto h = honeypot(PlanKind::Plan1);
    add_followers(h, 2);
    add_followers(h, 100, true, 20000);
    RandomStream rng(12);
    EXPECT_EQ(fu_step(h, ids(10), {56, 720}, rng).follows.size(), 1u);
}

TEST(FuStep, UnfollowWhenDue) {
    auto h = honeypot(PlanKind::Plan1);
    add_followers(h, 10);
    h.followings[77] = FollowingEntry{{56, 720}, SimTime{58, 720}};
    RandomStream rng(13);
    EXPECT_TRUE(fu_step(h, {}, {57, 720}, rng).unfollows.empty());
    EXPECT_EQ(fu_step(h, {}, {58, 720}, rng).unfollows, std::vector<AgentId>{77});
}

TEST(FuStep, PropertyBalanceNeverBroken) {
    RandomStream rng(14);
    for (int trial = 0; trial < 2000; ++trial) {
        auto h = honeypot(PlanKind::Plan1);
        const int followers = rng.uniform_int(0, 30);
        add_followers(h, followers);
        add_followers(h, rng.uniform_int(0, 50), true, 30000);
        add_followings(h, rng.uniform_int(0, std::max(0, followers - 1)));
        const auto step = fu_step(h, ids(rng.uniform_int(0, 40)), {56, 720}, rng);
        const int after = static_cast<int>(h.followings.size() - step.unfollows.size() + step.follows.size());
        if (!step.follows.empty()) ASSERT_LT(after, std::max(1, h.analytic_follower_count()));
        ASSERT_LE(static_cast<int>(step.follows.size()), h.plan.fu_follows_per_day);
    }
}

TEST(ReactToFollow, GatedByPlanAndBalance) {
    RandomStream rng(15);
    auto p0 = honeypot(PlanKind::Plan0);
    add_followers(p0, 20);
    EXPECT_FALSE(react_to_follow(p0, 1000, {1, 0}, rng));

    auto p1 = honeypot(PlanKind::Plan1);
    p1.plan.follow_back_p = 1.0;
    add_followers(p1, 20);
    EXPECT_TRUE(react_to_follow(p1, 1000, {1, 0}, rng));
    add_followings(p1, 19);
    EXPECT_FALSE(react_to_follow(p1, 1000, {1, 0}, rng));
}

TEST(BuyFollowers, AddsPurchasedOnly) {
    auto h = honeypot(PlanKind::Plan2);
    add_followers(h, 5);
    RandomStream rng(16);
    const auto pool = ids(300, 40000);
    const auto added = buy_followers(h, 100, pool, {0, 0}, rng);
    EXPECT_EQ(added.size(), 100u);
    EXPECT_EQ(h.raw_follower_count(), 105);
    EXPECT_EQ(h.analytic_follower_count(), 5);
    EXPECT_TRUE(buy_followers(h, 0, pool, {0, 0}, rng).empty());
    EXPECT_EQ(h.raw_follower_count(), 105);
    EXPECT_EQ(code_of([&] { buy_followers(h, 500, pool, {0, 0}, rng); }), ErrorCode::InsufficientPool);
}

TEST(SponsorPost, WindowAndGuards) {
    EngagementPlanConfig cfg;
    cfg.plan = PlanKind::Plan2;
    Post p;
    sponsor_post(p, PlanKind::Plan2, {56, 0}, cfg);
    ASSERT_TRUE(p.sponsored_window);
    EXPECT_EQ(p.sponsored_window->start, (SimTime{56, 0}));
    EXPECT_EQ(p.sponsored_window->end, (SimTime{63, 0}));
    EXPECT_DOUBLE_EQ(p.sponsored_window->total_cost(), 14.0);
    EXPECT_EQ(code_of([&] { sponsor_post(p, PlanKind::Plan2, {56, 0}, cfg); }), ErrorCode::AlreadySponsored);
    Post q;
    EXPECT_EQ(code_of([&] { sponsor_post(q, PlanKind::Plan1, {56, 0}, cfg); }), ErrorCode::WrongPlan);
}
