#include "imbalab/text.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace imbalab::text {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  // from_chars rejects a leading '+'.
  if (s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || std::isnan(value)) return std::nullopt;
  return value;
}

std::optional<unsigned long long> parse_uint(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  unsigned long long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::optional<std::vector<double>> parse_double_list(std::string_view s) {
  std::vector<double> out;
  for (auto item : split(s, ',')) {
    auto v = parse_double(item);
    if (!v) return std::nullopt;
    out.push_back(*v);
  }
  return out;
}

std::string format_double(double x, int digits) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string join(const std::vector<double>& xs, int digits, char sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += format_double(xs[i], digits);
  }
  return out;
}

}  // namespace imbalab::text
