#include "tailcens/text_io.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tailcens {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, end);
}

double parse_double(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("empty number");
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size())
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  return value;
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

}  // namespace tailcens
