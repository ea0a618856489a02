#pragma once

#include <cctype>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cyclewalk {

// Text form uses 1-based points: "(1 2 3)(4 5)", fixed points omitted,
// identity rendered as "()".  In-memory everything stays 0-based.

inline std::string format_cycles(const std::vector<std::vector<std::uint32_t>>& cycles) {
    std::ostringstream os;
    bool any = false;
    for (const auto& c : cycles) {
        if (c.size() < 2) continue;
        any = true;
        os << '(';
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i) os << ' ';
            os << c[i] + 1;
        }
        os << ')';
    }
    return any ? os.str() : "()";
}

inline std::string format_perm(const std::vector<std::uint32_t>& p) {
    std::vector<bool> seen(p.size(), false);
    std::vector<std::vector<std::uint32_t>> cycles;
    for (std::uint32_t x = 0; x < p.size(); ++x) {
        if (seen[x]) continue;
        std::vector<std::uint32_t> cyc;
        for (std::uint32_t y = x;;) {
            seen[y] = true;
            cyc.push_back(y);
            y = p[y];
            if (y == x) break;
        }
        cycles.push_back(std::move(cyc));
    }
    return format_cycles(cycles);
}

// Parses "(1 2 3)(4 5)"; commas and extra whitespace are accepted.  Returned
// cycles are 0-based; points must be distinct across the whole expression.
inline std::vector<std::vector<std::uint32_t>> parse_cycles(std::string_view text) {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t>* current = nullptr;
    std::vector<bool> used;
    std::size_t i = 0;
    const auto skip = [&] {
        while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
            ++i;
    };
    for (skip(); i < text.size(); skip()) {
        const char ch = text[i];
        if (ch == '(') {
            out.emplace_back();
            current = &out.back();
            ++i;
        } else if (ch == ')') {
            if (!current) throw std::invalid_argument("parse_cycles: unmatched ')'");
            current = nullptr;
            ++i;
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            if (!current) throw std::invalid_argument("parse_cycles: point outside parentheses");
            std::uint64_t v = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
                if (v > (1u << 30)) throw std::invalid_argument("parse_cycles: point too large");
                ++i;
            }
            if (v == 0) throw std::invalid_argument("parse_cycles: points are 1-based");
            const auto p = static_cast<std::uint32_t>(v - 1);
            if (p >= used.size()) used.resize(p + 1, false);
            if (used[p]) throw std::invalid_argument("parse_cycles: repeated point");
            used[p] = true;
            current->push_back(p);
        } else {
            throw std::invalid_argument(std::string("parse_cycles: unexpected character '") + ch + "'");
        }
    }
    if (current) throw std::invalid_argument("parse_cycles: unmatched '('");
    std::erase_if(out, [](const auto& c) { return c.empty(); });
    return out;
}

// Builds the vector form on n points from cycle text, validating range.
inline std::vector<std::uint32_t> parse_perm(std::string_view text, std::uint32_t n) {
    std::vector<std::uint32_t> p(n);
    for (std::uint32_t x = 0; x < n; ++x) p[x] = x;
    for (const auto& c : parse_cycles(text)) {
        for (std::uint32_t e : c)
            if (e >= n) throw std::invalid_argument("parse_perm: point exceeds n");
        for (std::size_t i = 0; i < c.size(); ++i) p[c[i]] = c[(i + 1) % c.size()];
    }
    return p;
}

}  // namespace cyclewalk
