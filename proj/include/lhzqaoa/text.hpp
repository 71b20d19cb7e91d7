// Copyright 2026 The lhzqaoa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Small text helpers shared by the line-oriented file formats.

#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "errors.hpp"

namespace lhzqaoa {

/// Shortest decimal form that round-trips a double exactly.
[[nodiscard]] inline std::string format_real(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

[[nodiscard]] inline std::vector<std::string_view>
split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                                   line[i] == '\r')) {
            ++i;
        }
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
               line[i] != '\r') {
            ++i;
        }
        if (i > start) {
            out.push_back(line.substr(start, i - start));
        }
    }
    return out;
}

[[nodiscard]] inline std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

[[nodiscard]] inline double parse_real(std::string_view s,
                                       std::size_t lineno = 0) {
    double x = 0.0;
    const auto *first = s.data();
    const auto *last = s.data() + s.size();
    if (first != last && *first == '+') {
        ++first;
    }
    const auto res = std::from_chars(first, last, x);
    if (res.ec != std::errc{} || res.ptr != last) {
        throw ParseError(lineno, "bad number '" + std::string(s) + "'");
    }
    return x;
}

[[nodiscard]] inline std::uint64_t parse_u64(std::string_view s,
                                             std::size_t lineno = 0) {
    std::uint64_t x = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw ParseError(lineno, "bad integer '" + std::string(s) + "'");
    }
    return x;
}

[[nodiscard]] inline std::size_t parse_size(std::string_view s,
                                            std::size_t lineno = 0) {
    return static_cast<std::size_t>(parse_u64(s, lineno));
}

} // namespace lhzqaoa
