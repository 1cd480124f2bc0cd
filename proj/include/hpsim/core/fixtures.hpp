#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hpsim/core/error.hpp"
#include "hpsim/core/topic.hpp"

#ifndef HPSIM_DATA_DIR
#define HPSIM_DATA_DIR "data"
#endif

namespace hpsim {

/// Root of the shipped data tree; HPSIM_DATA_DIR in the environment overrides the build-time path.
inline std::filesystem::path data_dir() {
    if (const char* env = std::getenv("HPSIM_DATA_DIR"); env != nullptr && *env != '\0') return env;
    return HPSIM_DATA_DIR;
}

/// Non-empty lines of a text file, trailing CR stripped.
inline std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) out.push_back(std::move(line));
    }
    return out;
}

inline std::vector<std::pair<std::string, std::string>> read_tsv_pairs(const std::filesystem::path& path) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& line : read_lines(path)) {
        const auto tab = line.find('\t');
        if (tab == std::string::npos) throw Error(ErrorCode::ParseError, path.string() + ": missing TAB in '" + line + "'");
        out.emplace_back(line.substr(0, tab), line.substr(tab + 1));
    }
    return out;
}

struct Quote {
    std::string text;
    std::string author;

    bool operator==(const Quote&) const = default;
};

/// Every plain-text pool the pipelines draw from.
struct Fixtures {
    std::vector<Quote> quotes;
    std::vector<std::string> ctas;
    std::map<std::string, std::string> emoji_map;
    std::vector<std::string> joy_emojis;
    std::vector<std::string> styles;
    std::vector<std::string> mediums;
    std::vector<std::string> keyword_exclusions;
    std::vector<std::string> stopwords;
    std::vector<std::string> honeypot_comments;
    std::vector<std::string> legit_comments;
    std::vector<std::string> spam_patterns;
    std::vector<std::string> spam_templates;
    std::vector<std::string> spam_handles;
    std::map<std::string, std::vector<Hashtag>> hashtag_pools;
};

inline Fixtures load_fixtures(const std::filesystem::path& dir) {
    Fixtures f;
    for (auto& [text, author] : read_tsv_pairs(dir / "quotes.txt")) f.quotes.push_back({text, author});
    f.ctas = read_lines(dir / "cta.txt");
    for (auto& [word, emoji] : read_tsv_pairs(dir / "emoji_map.txt")) f.emoji_map[word] = emoji;
    f.joy_emojis = read_lines(dir / "joy_emojis.txt");
    f.styles = read_lines(dir / "styles.txt");
    f.mediums = read_lines(dir / "mediums.txt");
    f.keyword_exclusions = read_lines(dir / "keyword_exclusions.txt");
    f.stopwords = read_lines(dir / "stopwords_en.txt");
    f.honeypot_comments = read_lines(dir / "honeypot_comments.txt");
    f.legit_comments = read_lines(dir / "legit_comments.txt");
    f.spam_patterns = read_lines(dir / "spam_patterns.txt");
    f.spam_templates = read_lines(dir / "spam_templates.txt");
    f.spam_handles = read_lines(dir / "spam_handles.txt");
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        const auto name = entry.path().filename().string();
        if (name.rfind("hashtags_", 0) != 0 || entry.path().extension() != ".txt") continue;
        const auto topic = name.substr(9, name.size() - 9 - 4);
        std::vector<Hashtag> pool;
        for (auto& [tag, count] : read_tsv_pairs(entry.path())) pool.push_back({tag, std::stoll(count)});
        f.hashtag_pools[topic] = std::move(pool);
    }
    return f;
}

/// Fixtures from data_dir()/fixtures, loaded once per process.
inline const Fixtures& default_fixtures() {
    static const Fixtures f = load_fixtures(data_dir() / "fixtures");
    return f;
}

}  // namespace hpsim
