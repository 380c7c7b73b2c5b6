#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

// Under C++20 the reversed-operand rewrite of `r == 0` selects Boost 1.74's
// templated mixed comparison, which calls back into itself. Exact-match
// overloads found by ADL take precedence.
namespace boost {
inline bool operator==(const rational<std::int64_t>& a, int b) {
  return a == rational<std::int64_t>(b);
}
inline bool operator==(const rational<std::int64_t>& a, long b) {
  return a == rational<std::int64_t>(b);
}
inline bool operator==(const rational<std::int64_t>& a, long long b) {
  return a == rational<std::int64_t>(static_cast<std::int64_t>(b));
}
}  // namespace boost

namespace flatchain {

// Exact norm values. Masses, gaps and flat norms are all kept in this type so
// that equality cases (gap == 0) are decided without rounding.
using Rational = boost::rational<std::int64_t>;

// "n" for integers, "p/q" otherwise.
std::string to_string(const Rational& r);

// Accepts "n", "-n", "p/q", "-p/q". Decimal points are rejected.
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);

}  // namespace flatchain
