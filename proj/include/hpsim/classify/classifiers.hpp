#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hpsim/core/error.hpp"
#include "hpsim/core/fixtures.hpp"
#include "hpsim/core/types.hpp"

namespace hpsim::classify {

inline constexpr std::int64_t kImmediacySeconds = 120;
inline constexpr int kNanoInfluencerFollowers = 1000;

struct SpamVerdict {
    bool is_spam = false;
    std::vector<std::string> matched_patterns;
    bool mention_flag = false;
    bool immediacy_flag = false;
};

namespace detail {

inline std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace detail

/// Spam iff a pattern matches (case-insensitive) or the text mentions someone within the immediacy window.
inline SpamVerdict classify_comment(const Comment& c, const std::vector<std::string>& patterns,
                                    std::int64_t immediacy_threshold_s = kImmediacySeconds) {
    SpamVerdict v;
    const auto text = detail::lower(c.text);
    for (const auto& p : patterns) {
        if (!p.empty() && text.find(detail::lower(p)) != std::string::npos) v.matched_patterns.push_back(p);
    }
    v.mention_flag = c.text.find('@') != std::string::npos;
    v.immediacy_flag = c.latency_seconds <= immediacy_threshold_s;
    v.is_spam = !v.matched_patterns.empty() || (v.mention_flag && v.immediacy_flag);
    return v;
}

/// Share of spam verdicts in [0, 1].
inline double spam_fraction(const std::vector<Comment>& comments, const std::vector<std::string>& patterns) {
    if (comments.empty()) throw Error(ErrorCode::EmptyInput, "spam_fraction needs at least one comment");
    std::size_t spam = 0;
    for (const auto& c : comments) spam += classify_comment(c, patterns).is_spam ? 1 : 0;
    return static_cast<double>(spam) / static_cast<double>(comments.size());
}

enum class FollowerCategory : std::uint8_t { RealPerson, PageInfluencer, Bot };

constexpr std::string_view to_string(FollowerCategory c) noexcept {
    switch (c) {
        case FollowerCategory::RealPerson: return "RealPerson";
        case FollowerCategory::PageInfluencer: return "PageInfluencer";
        case FollowerCategory::Bot: return "Bot";
    }
    return "?";
}

constexpr FollowerCategory expected_category(AgentCategory c) noexcept {
    switch (c) {
        case AgentCategory::RealPerson: return FollowerCategory::RealPerson;
        case AgentCategory::PageInfluencer: return FollowerCategory::PageInfluencer;
        case AgentCategory::SpamBot: return FollowerCategory::Bot;
    }
    return FollowerCategory::RealPerson;
}

/// The measurable fields the follower rules look at.
struct ProfileView {
    int follower_count = 0;
    int following_count = 0;
    int post_count = 0;
    bool has_real_picture = true;
    double username_entropy = 0.0;

    static ProfileView of(const Agent& a) {
        return {a.follower_count, a.following_count, a.post_count, a.has_real_picture, a.username_entropy};
    }
};

struct BotSignals {
    bool no_picture = false;
    bool random_username = false;
    bool imbalanced = false;
    bool few_posts = false;

    [[nodiscard]] int count() const noexcept { return int(no_picture) + int(random_username) + int(imbalanced) + int(few_posts); }
};

inline BotSignals bot_signals(const ProfileView& p) {
    BotSignals s;
    s.no_picture = !p.has_real_picture;
    s.random_username = p.username_entropy > 0.8;
    s.imbalanced = p.following_count > 500 &&
                   static_cast<double>(p.follower_count) < 0.1 * static_cast<double>(p.following_count);
    s.few_posts = p.post_count < 5;
    return s;
}

inline FollowerCategory classify_follower(const ProfileView& p, bool topic_specific) {
    if (bot_signals(p).count() >= 2) return FollowerCategory::Bot;
    if (topic_specific || p.follower_count > kNanoInfluencerFollowers) return FollowerCategory::PageInfluencer;
    return FollowerCategory::RealPerson;
}

inline FollowerCategory classify_follower(const Agent& a) {
    return classify_follower(ProfileView::of(a), a.posts_topic_specific);
}

/**
 * Normalized entropy of character-class bigrams (vowel, consonant, digit),
 * in [0, 1]. Separators such as '.' and '_' are skipped. Human-looking
 * handles alternate classes regularly and score low; random strings score high.
 */
inline double username_entropy(std::string_view name) {
    std::vector<int> classes;
    for (char ch : name) {
        const auto c = static_cast<unsigned char>(std::tolower(static_cast<unsigned char>(ch)));
        if (std::isdigit(c)) {
            classes.push_back(2);
        } else if (std::isalpha(c)) {
            classes.push_back(std::string_view("aeiouy").find(static_cast<char>(c)) != std::string_view::npos ? 0 : 1);
        }
    }
    if (classes.size() < 2) return 0.0;
    std::array<double, 9> counts{};
    for (std::size_t i = 1; i < classes.size(); ++i) counts[static_cast<std::size_t>(classes[i - 1] * 3 + classes[i])] += 1.0;
    const double n = static_cast<double>(classes.size() - 1);
    double h = 0.0;
    for (double k : counts) {
        if (k > 0.0) h -= (k / n) * std::log2(k / n);
    }
    return h / std::log2(9.0);
}

struct LabeledComment {
    Comment comment;
    bool spam = false;
};

/// CSV with header "text,latency_seconds,label"; label is spam or legit; text holds no commas.
inline std::vector<LabeledComment> load_labeled_comments(const std::filesystem::path& path) {
    std::vector<LabeledComment> out;
    const auto lines = read_lines(path);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& line = lines[i];
        const auto c2 = line.rfind(',');
        const auto c1 = c2 == std::string::npos ? std::string::npos : line.rfind(',', c2 - 1);
        if (c1 == std::string::npos) throw Error(ErrorCode::ParseError, path.string() + ": bad row " + std::to_string(i + 1));
        LabeledComment lc;
        lc.comment.text = line.substr(0, c1);
        lc.comment.latency_seconds = std::stoll(line.substr(c1 + 1, c2 - c1 - 1));
        const auto label = line.substr(c2 + 1);
        if (label != "spam" && label != "legit") {
            throw Error(ErrorCode::ParseError, path.string() + ": unknown label '" + label + "'");
        }
        lc.spam = label == "spam";
        out.push_back(std::move(lc));
    }
    return out;
}

}  // namespace hpsim::classify
