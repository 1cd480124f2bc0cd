#pragma once

#include <array>
#include <cstdint>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hpsim/content/caption.hpp"
#include "hpsim/core/error.hpp"
#include "hpsim/core/fixtures.hpp"
#include "hpsim/core/random.hpp"
#include "hpsim/core/topic.hpp"
#include "hpsim/core/types.hpp"

namespace hpsim::content {

inline constexpr std::size_t kFeedSize = 25;

struct FeedItem {
    std::string caption;
    std::vector<Detection> detections;
};

enum class StockLibrary : std::uint8_t { Unsplash, Pixabay };

struct StockImage {
    std::string id;
    std::string description;
};

namespace detail {

inline const std::map<std::string, std::vector<std::string>>& topic_nouns() {
    static const std::map<std::string, std::vector<std::string>> nouns{
        {"food", {"pasta", "pizza", "salad", "cake", "bread", "coffee", "burger", "fruit"}},
        {"cat", {"cat", "kitten", "kitty", "cat"}},
        {"car", {"car", "engine", "road", "race", "cars"}},
    };
    return nouns;
}

inline const std::vector<std::string>& nouns_for(const std::string& topic) {
    const auto& all = topic_nouns();
    if (auto it = all.find(topic); it != all.end()) return it->second;
    static const std::vector<std::string> fallback{"thing"};
    return fallback;
}

inline const std::vector<std::string>& scene_words() {
    static const std::vector<std::string> words{"table", "window", "garden", "street", "sofa", "beach", "kitchen",
                                                "city", "field", "sunset"};
    return words;
}

inline const std::vector<std::string>& adjectives() {
    static const std::vector<std::string> words{"beautiful", "sunny", "cozy", "fresh", "sweet", "quiet",
                                                "colorful", "happy", "warm", "lovely"};
    return words;
}

template <typename T>
const T& pick(const std::vector<T>& v, RandomStream& rng) {
    return v[rng.uniform_int<std::size_t>(0, v.size() - 1)];
}

inline std::string hex_digest(std::string_view text) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hpsim::detail::fnv1a(text)));
    return buf;
}

inline std::string capitalize(std::string s) {
    if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    return s;
}

}  // namespace detail

/**
 * Deterministic stand-ins for the platform feed, the object detector, the
 * keyword-to-text and rephrase models, and the two stock-image libraries.
 *
 * One instance per run. Stock ids handed out are remembered, so no image is
 * ever used twice within the run, whichever honeypot asks.
 */
class StubEnvironment {
public:
    explicit StubEnvironment(std::uint64_t seed, std::size_t stock_capacity = 2000)
        : rng_(RandomStream(seed).split("stub-environment")), stock_capacity_(stock_capacity) {}

    /// Top-25 feed for the topic; generated once from the seed and the topic name.
    const std::vector<FeedItem>& feed(const Topic& topic) {
        auto it = feeds_.find(topic.name);
        if (it == feeds_.end()) it = feeds_.emplace(topic.name, make_feed(topic.name)).first;
        return it->second;
    }

    void set_feed(const std::string& topic, std::vector<FeedItem> items) { feeds_[topic] = std::move(items); }

    [[nodiscard]] std::string keyword_to_text(const std::vector<std::string>& keywords) const {
        if (keywords.empty()) return "A lovely moment.";
        std::string text = "A " + keywords[0];
        if (keywords.size() > 1) {
            text += " with ";
            for (std::size_t i = 1; i < keywords.size() && i < 4; ++i) {
                if (i > 1) text += (i + 1 == std::min<std::size_t>(keywords.size(), 4)) ? " and " : ", ";
                text += keywords[i];
            }
        }
        text += " makes the day better. Simple things are the best.";
        return normalize_articles(text);
    }

    [[nodiscard]] std::string rephrase(const std::string& text) const {
        static const std::map<std::string, std::string> swaps{
            {"beautiful", "lovely"}, {"sunny", "bright"}, {"cozy", "snug"},  {"fresh", "crisp"},
            {"sweet", "charming"},   {"quiet", "calm"},   {"happy", "joyful"}, {"warm", "gentle"},
        };
        std::string out;
        std::string word;
        auto flush = [&] {
            if (word.empty()) return;
            auto it = swaps.find(hpsim::content::detail::lower(word));
            out += it == swaps.end() ? word : it->second;
            word.clear();
        };
        for (char c : text) {
            if (std::isalpha(static_cast<unsigned char>(c))) {
                word += c;
            } else {
                flush();
                out += c;
            }
        }
        flush();
        return "Just captured this: " + out;
    }

    /// Next unused image of the library for the topic.
    StockImage next_stock_image(StockLibrary lib, const Topic& topic, RandomStream& rng) {
        const std::string prefix = (lib == StockLibrary::Unsplash ? "unsplash-" : "pixabay-") + topic.name + "-";
        auto& used = used_[prefix];
        if (used.size() >= stock_capacity_) {
            throw Error(ErrorCode::ExhaustedStockLibrary, "no unused images left in " + prefix + "*");
        }
        std::size_t n = rng.uniform_int<std::size_t>(0, stock_capacity_ - 1);
        while (used.count(n) > 0) n = (n + 1) % stock_capacity_;
        used.insert(n);
        char num[16];
        std::snprintf(num, sizeof num, "%05zu", n);
        StockImage img;
        img.id = prefix + num;
        RandomStream desc(hpsim::detail::fnv1a(img.id));
        img.description = "A " + detail::pick(detail::adjectives(), desc) + " " +
                          detail::pick(detail::nouns_for(topic.name), desc) + " near the " +
                          detail::pick(detail::scene_words(), desc) + ".";
        return img;
    }

    [[nodiscard]] std::size_t stock_used(StockLibrary lib, const std::string& topic) const {
        const std::string prefix = (lib == StockLibrary::Unsplash ? "unsplash-" : "pixabay-") + topic + "-";
        auto it = used_.find(prefix);
        return it == used_.end() ? 0 : it->second.size();
    }

private:
    std::vector<FeedItem> make_feed(const std::string& topic) const {
        auto rng = rng_.split(topic);
        static const std::vector<std::string> foreign{
            "Questa e la mia cena preferita con gli amici",
            "Que rico esta el plato de hoy con mi familia",
            "Mein Auto ist heute frisch gewaschen worden",
        };
        static const std::vector<std::string> secondary{"bowl", "table", "grass", "plate", "window", "wheel", "sofa",
                                                        "tree"};
        std::vector<FeedItem> feed;
        for (std::size_t i = 0; i < kFeedSize; ++i) {
            FeedItem item;
            const auto& noun = detail::pick(detail::nouns_for(topic), rng);
            if (rng.bernoulli(0.2)) {
                item.caption = detail::pick(foreign, rng);
            } else {
                item.caption = "Look at this " + detail::pick(detail::adjectives(), rng) + " " + noun + " on the " +
                               detail::pick(detail::scene_words(), rng) + " today. Credits to my friend, DM for more!";
            }
            item.detections.push_back({noun, 0.1 + 0.85 * rng.uniform()});
            const int extra = rng.uniform_int(1, 3);
            for (int e = 0; e < extra; ++e) item.detections.push_back({detail::pick(secondary, rng), 0.15 * rng.uniform()});
            feed.push_back(std::move(item));
        }
        return feed;
    }

    RandomStream rng_;
    std::size_t stock_capacity_;
    std::map<std::string, std::vector<FeedItem>> feeds_;
    std::map<std::string, std::set<std::size_t>> used_;
};

struct BetaParams {
    double alpha = 2.0;
    double beta = 2.0;

    [[nodiscard]] double mean() const noexcept { return alpha / (alpha + beta); }
};

/// Appeal distribution per strategy kind, indexed by StrategyKind.
using AppealModel = std::array<BetaParams, 4>;

struct PostDraft {
    ContentDescriptor content;
    /// Text handed to the image generator (generated strategies only).
    std::string prompt;
};

namespace detail {

inline void finish_caption(Caption& caption, const std::string& text, bool add_emojis, const Topic& topic,
                           const Fixtures& fx, RandomStream& rng) {
    if (add_emojis) {
        auto em = insert_emojis(text, fx.emoji_map, fx.joy_emojis, rng);
        caption.body = std::move(em.text);
        caption.emoji_count = em.emoji_count;
    } else {
        caption.body = text;
        caption.emoji_count = 0;
    }
    std::string cta;
    attach_cta(caption.body, fx.ctas, rng, &cta);
    caption.cta = cta;
    caption.hashtags = select_hashtags(topic.hashtag_pool, rng);
}

}  // namespace detail

/**
 * Runs one generation pipeline and returns the draft.
 *
 * InstaModel and ArtModel write the caption first and derive the image from
 * it; UnsplashModel and QuotesModel start from a stock image.
 */
inline PostDraft generate_post(const GenerationStrategy& strategy, const Topic& topic, StubEnvironment& env,
                               const Fixtures& fx, const AppealModel& appeal, RandomStream& rng) {
    PostDraft draft;
    auto& c = draft.content;
    c.provenance = strategy.kind;
    switch (strategy.kind) {
        case StrategyKind::InstaModel: {
            const auto& feed = env.feed(topic);
            std::vector<std::size_t> order(feed.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            std::shuffle(order.begin(), order.end(), rng);
            bool found = false;
            for (std::size_t idx : order) {
                const auto& item = feed[idx];
                if (!is_english(item.caption, fx.stopwords)) continue;
                auto kept = keyword_filter(item.detections);
                if (!kept) continue;
                auto keywords = *kept;
                for (auto& w : caption_keywords(item.caption, fx.stopwords, fx.keyword_exclusions)) {
                    if (std::find(keywords.begin(), keywords.end(), w) == keywords.end()) keywords.push_back(w);
                }
                draft.prompt = env.keyword_to_text(keywords);
                found = true;
                break;
            }
            if (!found) throw Error(ErrorCode::ExhaustedFeed, "every top-25 item for #" + topic.name + " was discarded");
            detail::finish_caption(c.caption, draft.prompt, true, topic, fx, rng);
            c.image_ref = "gen-" + detail::hex_digest(draft.prompt);
            break;
        }
        case StrategyKind::ArtModel: {
            if (fx.styles.empty() || fx.mediums.empty()) throw Error(ErrorCode::EmptyPool, "style or medium pool is empty");
            const auto& style = detail::pick(fx.styles, rng);
            const auto& medium = detail::pick(fx.mediums, rng);
            draft.prompt = art_prompt(topic.name, style, medium, fx.styles, fx.mediums);
            detail::finish_caption(c.caption, detail::capitalize(draft.prompt) + ".", true, topic, fx, rng);
            c.image_ref = "gen-" + detail::hex_digest(draft.prompt);
            break;
        }
        case StrategyKind::UnsplashModel: {
            const auto img = env.next_stock_image(StockLibrary::Unsplash, topic, rng);
            detail::finish_caption(c.caption, env.rephrase(img.description), true, topic, fx, rng);
            c.image_ref = img.id;
            break;
        }
        case StrategyKind::QuotesModel: {
            const auto img = env.next_stock_image(StockLibrary::Pixabay, topic, rng);
            const auto& q = sample_quote(fx.quotes, rng);
            detail::finish_caption(c.caption, q.text + " (" + q.author + ")", false, topic, fx, rng);
            c.caption.is_quote = true;
            c.image_ref = img.id;
            break;
        }
    }
    const auto& ap = appeal[static_cast<std::size_t>(strategy.kind)];
    c.appeal = rng.beta(ap.alpha, ap.beta);
    c.topic_affinity = rng.beta(8.0, 2.0);
    return draft;
}

struct ReviewPolicy {
    enum class Kind : std::uint8_t { AutoApprove, RejectBelowAppeal };
    Kind kind = Kind::AutoApprove;
    double threshold = 0.0;
    int max_drafts = 5;

    static ReviewPolicy auto_approve() { return {}; }
    static ReviewPolicy reject_below(double tau, int max_drafts = 5) { return {Kind::RejectBelowAppeal, tau, max_drafts}; }
};

enum class ReviewOutcome : std::uint8_t { Approved, Regenerate };

inline ReviewOutcome owner_review(const PostDraft& draft, const ReviewPolicy& policy) {
    if (policy.kind == ReviewPolicy::Kind::AutoApprove) return ReviewOutcome::Approved;
    return draft.content.appeal < policy.threshold ? ReviewOutcome::Regenerate : ReviewOutcome::Approved;
}

/// Generates drafts until the owner approves one; at most `policy.max_drafts` drafts in total.
template <typename MakeDraft>
PostDraft reviewed_post(MakeDraft&& make_draft, const ReviewPolicy& policy) {
    for (int attempt = 0; attempt < policy.max_drafts; ++attempt) {
        PostDraft draft = make_draft();
        if (owner_review(draft, policy) == ReviewOutcome::Approved) return draft;
    }
    throw Error(ErrorCode::RetriesExhausted,
                "owner rejected " + std::to_string(policy.max_drafts) + " drafts in a row");
}

}  // namespace hpsim::content
