#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hpsim/core/error.hpp"
#include "hpsim/core/fixtures.hpp"
#include "hpsim/core/random.hpp"
#include "hpsim/core/topic.hpp"

namespace hpsim::content {

inline constexpr std::size_t kHashtagsPerPost = 15;
inline constexpr std::size_t kBroadHashtags = 8;
inline constexpr std::size_t kSpecificHashtags = 7;
inline constexpr double kTopDetectionMin = 0.25;
inline constexpr double kKeywordMin = 0.05;

namespace detail {

/// Draws `count` distinct positions from `weights` without replacement.
inline std::vector<std::size_t> weighted_sample(std::vector<double> weights, std::size_t count, RandomStream& rng) {
    std::vector<std::size_t> picked;
    picked.reserve(count);
    double total = 0.0;
    for (double w : weights) total += w;
    for (std::size_t n = 0; n < count; ++n) {
        double u = rng.uniform() * total;
        std::size_t chosen = weights.size();
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (weights[i] <= 0.0) continue;
            chosen = i;
            if (u < weights[i]) break;
            u -= weights[i];
        }
        picked.push_back(chosen);
        total -= weights[chosen];
        weights[chosen] = 0.0;
    }
    return picked;
}

inline std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

inline bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '\''; }

inline std::vector<std::string> words(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (is_word_char(c)) {
            cur += c;
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

inline bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }

}  // namespace detail

/**
 * Picks 15 hashtags from a ranked pool: 8 from the first ceil(n/2) ranks with
 * weights falling linearly from rank 1, 7 from the remaining ranks with
 * weights rising linearly toward the last rank.
 */
inline std::vector<std::string> select_hashtags(const std::vector<Hashtag>& pool, RandomStream& rng) {
    if (pool.size() < kHashtagsPerPost) {
        throw Error(ErrorCode::InsufficientPool,
                    "hashtag pool has " + std::to_string(pool.size()) + " entries, need " +
                        std::to_string(kHashtagsPerPost));
    }
    const std::size_t top = (pool.size() + 1) / 2;
    const std::size_t bottom = pool.size() - top;
    std::vector<double> w_top(top);
    for (std::size_t i = 0; i < top; ++i) w_top[i] = static_cast<double>(top - i);
    std::vector<double> w_bottom(bottom);
    for (std::size_t i = 0; i < bottom; ++i) w_bottom[i] = static_cast<double>(i + 1);

    std::vector<std::string> tags;
    tags.reserve(kHashtagsPerPost);
    for (std::size_t i : detail::weighted_sample(std::move(w_top), kBroadHashtags, rng)) tags.push_back(pool[i].tag);
    for (std::size_t i : detail::weighted_sample(std::move(w_bottom), kSpecificHashtags, rng)) {
        tags.push_back(pool[top + i].tag);
    }
    return tags;
}

/// caption + " " + one uniformly drawn CTA. The drawn CTA is stored in `chosen` when given.
inline std::string attach_cta(std::string_view caption, const std::vector<std::string>& cta_pool, RandomStream& rng,
                              std::string* chosen = nullptr) {
    if (cta_pool.empty()) throw Error(ErrorCode::EmptyPool, "CTA pool is empty");
    const auto& cta = cta_pool[rng.uniform_int<std::size_t>(0, cta_pool.size() - 1)];
    if (chosen != nullptr) *chosen = cta;
    std::string out(caption);
    out += ' ';
    out += cta;
    return out;
}

struct EmojiText {
    std::string text;
    int emoji_count = 0;
};

/// Sentences of `caption` split after runs of '.', '!' or '?'; a trailing fragment counts as a sentence.
inline std::vector<std::string> split_sentences(std::string_view caption) {
    std::vector<std::string> out;
    std::string cur;
    for (std::size_t i = 0; i < caption.size(); ++i) {
        cur += caption[i];
        const bool end_of_run = detail::is_terminal(caption[i]) &&
                                (i + 1 == caption.size() || !detail::is_terminal(caption[i + 1]));
        if (end_of_run) {
            const auto first = cur.find_first_not_of(' ');
            if (first != std::string::npos) out.push_back(cur.substr(first));
            cur.clear();
        }
    }
    const auto first = cur.find_first_not_of(' ');
    if (first != std::string::npos) {
        const auto last = cur.find_last_not_of(' ');
        out.push_back(cur.substr(first, last - first + 1));
    }
    return out;
}

/**
 * Adds the mapped emoji after every word found in `emoji_map` (case-insensitive)
 * and appends one emoji from `joy_pool` at the end of each sentence.
 */
inline EmojiText insert_emojis(std::string_view caption, const std::map<std::string, std::string>& emoji_map,
                               const std::vector<std::string>& joy_pool, RandomStream& rng) {
    EmojiText result;
    const auto sentences = split_sentences(caption);
    for (std::size_t s = 0; s < sentences.size(); ++s) {
        const std::string& sentence = sentences[s];
        std::string out;
        std::size_t i = 0;
        while (i < sentence.size()) {
            if (!detail::is_word_char(sentence[i])) {
                out += sentence[i++];
                continue;
            }
            std::size_t j = i;
            while (j < sentence.size() && detail::is_word_char(sentence[j])) ++j;
            const std::string word = sentence.substr(i, j - i);
            out += word;
            if (auto it = emoji_map.find(detail::lower(word)); it != emoji_map.end()) {
                out += ' ';
                out += it->second;
                ++result.emoji_count;
            }
            i = j;
        }
        if (!joy_pool.empty()) {
            out += ' ';
            out += joy_pool[rng.uniform_int<std::size_t>(0, joy_pool.size() - 1)];
            ++result.emoji_count;
        }
        if (s > 0) result.text += ' ';
        result.text += out;
    }
    return result;
}

inline const Quote& sample_quote(const std::vector<Quote>& pool, RandomStream& rng) {
    if (pool.empty()) throw Error(ErrorCode::EmptyPool, "quote pool is empty");
    return pool[rng.uniform_int<std::size_t>(0, pool.size() - 1)];
}

struct Detection {
    std::string label;
    double score = 0.0;
};

/// Kept keyword labels, or nullopt when the detections are discarded.
inline std::optional<std::vector<std::string>> keyword_filter(std::vector<Detection> detections) {
    if (detections.empty()) throw Error(ErrorCode::EmptyDetections, "no detections to filter");
    std::stable_sort(detections.begin(), detections.end(),
                     [](const Detection& a, const Detection& b) { return a.score > b.score; });
    if (detections.front().score < kTopDetectionMin) return std::nullopt;
    std::vector<std::string> kept{detections.front().label};
    for (std::size_t i = 1; i < detections.size(); ++i) {
        if (detections[i].score > kKeywordMin) kept.push_back(detections[i].label);
    }
    return kept;
}

/// Turns "a" into "an" in front of words starting with a vowel.
inline std::string normalize_articles(std::string_view text) {
    std::string out;
    for (std::size_t pos = 0; pos < text.size(); ++pos) {
        out += text[pos];
        const bool lone_a = (text[pos] == 'a' || text[pos] == 'A') && (pos == 0 || text[pos - 1] == ' ') &&
                            pos + 2 < text.size() && text[pos + 1] == ' ';
        if (lone_a && std::string_view("aeiouAEIOU").find(text[pos + 2]) != std::string_view::npos) out += 'n';
    }
    return out;
}

inline std::string art_prompt(std::string_view keyword, std::string_view style, std::string_view medium,
                              const std::vector<std::string>& styles, const std::vector<std::string>& mediums) {
    if (std::find(styles.begin(), styles.end(), style) == styles.end()) {
        throw Error(ErrorCode::UnknownStyle, "style '" + std::string(style) + "' is not in the style pool");
    }
    if (std::find(mediums.begin(), mediums.end(), medium) == mediums.end()) {
        throw Error(ErrorCode::UnknownMedium, "medium '" + std::string(medium) + "' is not in the medium pool");
    }
    std::string prompt = "a ";
    prompt += style;
    prompt += ' ';
    prompt += medium;
    prompt += " of a ";
    prompt += keyword;
    return normalize_articles(prompt);
}

/// Stopword-ratio heuristic: at least 3 words and at least 20% of them English stopwords.
inline bool is_english(std::string_view text, const std::vector<std::string>& stopwords) {
    for (unsigned char c : text) {
        if (c >= 0x80) return false;
    }
    const auto ws = detail::words(text);
    if (ws.size() < 3) return false;
    const std::set<std::string> stop(stopwords.begin(), stopwords.end());
    std::size_t hits = 0;
    for (const auto& w : ws) hits += stop.count(detail::lower(w));
    return static_cast<double>(hits) >= 0.2 * static_cast<double>(ws.size());
}

/// Content words of a caption: not stopwords, not excluded, alphabetic, at least 3 letters.
inline std::vector<std::string> caption_keywords(std::string_view text, const std::vector<std::string>& stopwords,
                                                 const std::vector<std::string>& exclusions) {
    std::set<std::string> stop(stopwords.begin(), stopwords.end());
    for (const auto& e : exclusions) stop.insert(detail::lower(e));
    std::vector<std::string> out;
    for (const auto& w : detail::words(text)) {
        const auto lw = detail::lower(w);
        if (lw.size() < 3 || stop.count(lw) > 0) continue;
        if (!std::all_of(lw.begin(), lw.end(), [](char c) { return std::isalpha(static_cast<unsigned char>(c)); })) {
            continue;
        }
        if (std::find(out.begin(), out.end(), lw) == out.end()) out.push_back(lw);
    }
    return out;
}

}  // namespace hpsim::content
