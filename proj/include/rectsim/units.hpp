#pragma once

// Engineering-notation number parsing shared by the netlist reader and the
// command-line front end.

#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace rectsim {

/// Thrown when a token cannot be read as a SPICE number.
class NumberFormatError : public std::invalid_argument {
 public:
  explicit NumberFormatError(const std::string& token)
      : std::invalid_argument("malformed number '" + token + "'"), token_(token) {}
  const std::string& token() const noexcept { return token_; }

 private:
  std::string token_;
};

namespace detail {

inline char lower(char c) {
  return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

inline bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (lower(a[i]) != lower(b[i])) return false;
  }
  return true;
}

inline std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Parses a number with an optional scale suffix (f p n u m k meg g t, any
/// case). Letters following the suffix are unit decoration and are ignored,
/// so `400uA` reads as 4e-4 and `1.5V` as 1.5.
inline std::optional<double> try_parse_number(std::string_view token) {
  token = detail::trim(token);
  if (token.empty()) return std::nullopt;

  std::string_view body = token;
  bool negate = false;
  if (body.front() == '+' || body.front() == '-') {
    negate = body.front() == '-';
    body.remove_prefix(1);
  }
  if (body.empty() || !(std::isdigit(static_cast<unsigned char>(body.front())) || body.front() == '.')) {
    return std::nullopt;
  }

  double mantissa = 0.0;
  const char* first = body.data();
  const char* last = body.data() + body.size();
  auto [ptr, ec] = std::from_chars(first, last, mantissa, std::chars_format::general);
  if (ec != std::errc{}) return std::nullopt;

  std::string_view rest(ptr, static_cast<std::size_t>(last - ptr));
  for (char c : rest) {
    if (!std::isalpha(static_cast<unsigned char>(c))) return std::nullopt;
  }

  int decade = 0;
  if (rest.size() >= 3 && detail::iequals(rest.substr(0, 3), "meg")) {
    decade = 6;
  } else if (!rest.empty()) {
    switch (detail::lower(rest.front())) {
      case 'f': decade = -15; break;
      case 'p': decade = -12; break;
      case 'n': decade = -9; break;
      case 'u': decade = -6; break;
      case 'm': decade = -3; break;
      case 'k': decade = 3; break;
      case 'g': decade = 9; break;
      case 't': decade = 12; break;
      default: break;  // bare unit letters
    }
  }
  if (decade != 0) {
    // Fold the suffix into the exponent so "400u" rounds like "400e-6".
    std::string_view digits(first, static_cast<std::size_t>(ptr - first));
    long exponent = decade;
    if (auto e = digits.find_first_of("eE"); e != std::string_view::npos) {
      long own = 0;
      const char* es = digits.data() + e + 1;
      if (*es == '+') ++es;
      auto [eptr, eec] = std::from_chars(es, digits.data() + digits.size(), own);
      if (eec != std::errc{}) return std::nullopt;
      exponent += own;
      digits = digits.substr(0, e);
    }
    std::string text(digits);
    text += 'e';
    text += std::to_string(exponent);
    auto [p2, ec2] = std::from_chars(text.data(), text.data() + text.size(), mantissa);
    if (ec2 != std::errc{} || p2 != text.data() + text.size()) return std::nullopt;
  }
  double value = mantissa;
  if (!std::isfinite(value)) return std::nullopt;
  return negate ? -value : value;
}

inline double parse_number(std::string_view token) {
  if (auto v = try_parse_number(token)) return *v;
  throw NumberFormatError(std::string(token));
}

/// Comma-separated list of engineering numbers, e.g. `1k,10k,100k`.
inline std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  while (true) {
    auto comma = text.find(',');
    out.push_back(parse_number(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

/// Shortest decimal text that reads back to the same double.
inline std::string format_roundtrip(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  (void)ec;
  return std::string(buf, ptr);
}

/// Fixed number of significant digits in scientific notation.
inline std::string format_sig(double value, int digits) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific, digits - 1);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace rectsim
