// Copyright 2026 the cam-regge authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cam {

// Round-trip-safe scientific formatting for CSV output.
std::string format_double(double v);

// strtod with full-token validation; throws ValidationError naming `context`.
double parse_double(std::string_view tok, const std::string& context);
int parse_int(std::string_view tok, const std::string& context);

std::vector<std::string> split_csv_line(std::string_view line);
std::string trim(std::string_view s);

}  // namespace cam
