#include "flatchain/cell.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <sstream>

#include "flatchain/error.hpp"

namespace flatchain {

Cell::Cell(Point b, std::initializer_list<int> axis_list) : base(b) {
  for (int a : axis_list) {
    if (a < 1 || a > kMaxAmbientDim) {
      throw Error(ErrorKind::kInvalidInput, "axis out of range: " + std::to_string(a));
    }
    axes |= static_cast<std::uint8_t>(1U << (a - 1));
  }
}

int Cell::dim() const { return std::popcount(static_cast<unsigned>(axes)); }

std::vector<int> Cell::axis_list() const {
  std::vector<int> out;
  for (int a = 1; a <= kMaxAmbientDim; ++a) {
    if (has_axis(a)) out.push_back(a);
  }
  return out;
}

Point Cell::barycenter2() const {
  Point p;
  for (int i = 0; i < kMaxAmbientDim; ++i) {
    p[i] = 2 * base[i] + (has_axis(i + 1) ? 1 : 0);
  }
  return p;
}

std::strong_ordering Cell::operator<=>(const Cell& other) const {
  if (auto c = base <=> other.base; c != 0) return c;
  // Rank of each mask under lexicographic order of its sorted axis list:
  // [] < [1] < [1,2] < [1,2,3] < [1,3] < [2] < [2,3] < [3].
  static constexpr std::array<int, 8> kRank = {0, 1, 5, 2, 7, 4, 6, 3};
  return kRank[axes & 7U] <=> kRank[other.axes & 7U];
}

std::vector<SignedCell> faces(const Cell& c) {
  std::vector<SignedCell> out;
  int pos = 0;
  for (int a = 1; a <= kMaxAmbientDim; ++a) {
    if (!c.has_axis(a)) continue;
    const int sign = (pos % 2 == 0) ? 1 : -1;
    const auto mask = static_cast<std::uint8_t>(c.axes & ~(1U << (a - 1)));
    Point shifted = c.base;
    shifted[a - 1] += 1;
    out.push_back({Cell::from_mask(shifted, mask), sign});
    out.push_back({Cell::from_mask(c.base, mask), -sign});
    ++pos;
  }
  return out;
}

std::vector<SignedCell> cofaces(const Cell& c, int ambient) {
  std::vector<SignedCell> out;
  for (int a = 1; a <= ambient; ++a) {
    if (c.has_axis(a)) continue;
    const auto mask = static_cast<std::uint8_t>(c.axes | (1U << (a - 1)));
    int pos = 0;
    for (int b = 1; b < a; ++b) pos += (mask >> (b - 1)) & 1U;
    const int sign = (pos % 2 == 0) ? 1 : -1;
    // c is the "far" face of the coface based one step below it...
    Point below = c.base;
    below[a - 1] -= 1;
    out.push_back({Cell::from_mask(below, mask), sign});
    // ...and the "near" face of the coface sharing its base.
    out.push_back({Cell::from_mask(c.base, mask), -sign});
  }
  return out;
}

std::int64_t chebyshev2(const Cell& a, const Cell& b) {
  const Point pa = a.barycenter2();
  const Point pb = b.barycenter2();
  std::int64_t d = 0;
  for (int i = 0; i < kMaxAmbientDim; ++i) {
    d = std::max<std::int64_t>(d, std::llabs(static_cast<std::int64_t>(pa[i]) - pb[i]));
  }
  return d;
}

std::string cell_key(const Cell& c, int ambient) {
  std::string s = "(";
  for (int i = 0; i < ambient; ++i) {
    if (i) s += ",";
    s += std::to_string(c.base[i]);
  }
  s += ")[";
  bool first = true;
  for (int a : c.axis_list()) {
    if (!first) s += ",";
    s += std::to_string(a);
    first = false;
  }
  return s + "]";
}

Cell parse_cell_key(const std::string& key, int* ambient_out) {
  auto bad = [&] {
    return Error(ErrorKind::kInvalidInput, "malformed cell key '" + key + "'");
  };
  const auto close = key.find(')');
  if (key.empty() || key[0] != '(' || close == std::string::npos ||
      close + 1 >= key.size() || key[close + 1] != '[' || key.back() != ']') {
    throw bad();
  }
  auto split = [&](const std::string& body) {
    std::vector<int> v;
    if (body.empty()) return v;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        v.push_back(std::stoi(item, &used));
        if (used != item.size()) throw bad();
      } catch (const std::logic_error&) {
        throw bad();
      }
    }
    return v;
  };
  const auto coords = split(key.substr(1, close - 1));
  const auto axes = split(key.substr(close + 2, key.size() - close - 3));
  if (coords.empty() || coords.size() > kMaxAmbientDim) throw bad();
  Cell c;
  for (std::size_t i = 0; i < coords.size(); ++i) c.base[i] = coords[i];
  for (int a : axes) {
    if (a < 1 || a > static_cast<int>(coords.size())) throw bad();
    c.axes |= static_cast<std::uint8_t>(1U << (a - 1));
  }
  if (ambient_out) *ambient_out = static_cast<int>(coords.size());
  return c;
}

}  // namespace flatchain
