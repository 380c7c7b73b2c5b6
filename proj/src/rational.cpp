#include "flatchain/rational.hpp"

#include <charconv>

#include "flatchain/error.hpp"

namespace flatchain {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) {
    throw Error(ErrorKind::kInvalidInput,
                "not a rational string: '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, text));
  const auto num = parse_int(text.substr(0, slash), text);
  const auto den = parse_int(text.substr(slash + 1), text);
  if (den == 0) {
    throw Error(ErrorKind::kInvalidInput,
                "zero denominator in '" + std::string(text) + "'");
  }
  return Rational(num, den);
}

double to_double(const Rational& r) {
  return boost::rational_cast<double>(r);
}

}  // namespace flatchain
