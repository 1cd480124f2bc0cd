#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hpsim/core/error.hpp"

namespace hpsim::csv {

/// Quotes a field when it holds a comma, quote or line break.
inline std::string field(std::string_view s) {
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

/// Shortest text that reads back to the same double.
inline std::string real(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

inline std::string fixed(double x, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
    return buf;
}

template <typename... Fields>
std::string row(const Fields&... fields) {
    std::string out;
    bool first = true;
    auto add = [&](const std::string& f) {
        if (!first) out += ',';
        out += f;
        first = false;
    };
    (add(fields), ...);
    out += '\n';
    return out;
}

inline std::string header(const std::vector<std::string>& names) {
    std::string out;
    for (const auto& n : names) out += (out.empty() ? "" : ",") + n;
    return out + '\n';
}

using Table = std::vector<std::vector<std::string>>;

/// Parses RFC 4180 style text; the first row is the header.
inline Table parse(std::string_view text) {
    Table rows;
    std::vector<std::string> cur;
    std::string f;
    bool quoted = false;
    bool any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    f += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                f += c;
            }
            continue;
        }
        if (c == '"') {
            quoted = true;
            any = true;
        } else if (c == ',') {
            cur.push_back(std::move(f));
            f.clear();
            any = true;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            if (any || !f.empty()) {
                cur.push_back(std::move(f));
                rows.push_back(std::move(cur));
            }
            cur.clear();
            f.clear();
            any = false;
        } else {
            f += c;
            any = true;
        }
    }
    if (quoted) throw Error(ErrorCode::ParseError, "unterminated quoted field");
    if (any || !f.empty()) {
        cur.push_back(std::move(f));
        rows.push_back(std::move(cur));
    }
    return rows;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    out << text;
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

/// Reads a CSV file and checks its header against `expected`.
inline Table read(const std::filesystem::path& path, const std::vector<std::string>& expected) {
    auto rows = parse(read_file(path));
    if (rows.empty() || rows.front() != expected) {
        throw Error(ErrorCode::ParseError, path.string() + ": unexpected header");
    }
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != expected.size()) {
            throw Error(ErrorCode::ParseError, path.string() + ": row " + std::to_string(i + 1) + " has " +
                                                   std::to_string(rows[i].size()) + " fields");
        }
    }
    rows.erase(rows.begin());
    return rows;
}

template <typename T>
T to_number(const std::string& s) {
    T v{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw Error(ErrorCode::ParseError, "not a number: '" + s + "'");
    }
    return v;
}

}  // namespace hpsim::csv
