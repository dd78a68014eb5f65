#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Small text helpers shared by the file formats and the CLI.

namespace imbalab::text {

std::string_view trim(std::string_view s);

std::vector<std::string_view> split(std::string_view s, char sep);

/// Full-string parse of a real number; accepts inf/-inf. nullopt on failure.
std::optional<double> parse_double(std::string_view s);

/// Full-string parse of a non-negative integer. nullopt on failure.
std::optional<unsigned long long> parse_uint(std::string_view s);

/// Comma-separated reals. nullopt if any item fails to parse.
std::optional<std::vector<double>> parse_double_list(std::string_view s);

/// printf %.{digits}g; infinities print as inf / -inf.
std::string format_double(double x, int digits = 12);

std::string join(const std::vector<double>& xs, int digits = 12, char sep = ',');

}  // namespace imbalab::text
