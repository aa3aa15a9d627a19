// Copyright 2026 the cam-regge authors
// SPDX-License-Identifier: Apache-2.0
#include "cam/textio.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "cam/common.hpp"

namespace cam {

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

std::string trim(std::string_view s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r' || s[b] == '\n'))
        ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r' || s[e - 1] == '\n'))
        --e;
    return std::string(s.substr(b, e - b));
}

double parse_double(std::string_view tok, const std::string& context)
{
    const std::string t = trim(tok);
    if (t.empty())
        throw ValidationError("empty numeric field in " + context);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size())
        throw ValidationError("bad numeric value '" + t + "' in " + context);
    return v;
}

int parse_int(std::string_view tok, const std::string& context)
{
    const std::string t = trim(tok);
    if (t.empty())
        throw ValidationError("empty integer field in " + context);
    char* end = nullptr;
    const long v = std::strtol(t.c_str(), &end, 10);
    if (end != t.c_str() + t.size())
        throw ValidationError("bad integer value '" + t + "' in " + context);
    return static_cast<int>(v);
}

std::vector<std::string> split_csv_line(std::string_view line)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            out.push_back(trim(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

}  // namespace cam
