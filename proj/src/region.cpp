#include "flatchain/region.hpp"

#include "flatchain/chain.hpp"

namespace flatchain {

bool Box::contains(const Cell& c) const {
  for (int i = 0; i < ambient; ++i) {
    const int top = c.base[i] + (c.has_axis(i + 1) ? 1 : 0);
    if (c.base[i] < lo[i] || top > hi[i]) return false;
  }
  for (int i = ambient; i < kMaxAmbientDim; ++i) {
    if (c.base[i] != 0 || c.has_axis(i + 1)) return false;
  }
  return true;
}

std::vector<Cell> Box::cells(int dim) const { return cells_in_box(lo, hi, dim, ambient); }

Region Region::all() { return Region(All{}); }
Region Region::none() { return Region(None{}); }

Region Region::open_box(const Point& lo, const Point& hi, int ambient) {
  return Region(OpenBox{lo, hi, ambient});
}

Region Region::ball(const Point& center2, Rational radius, int ambient) {
  return Region(Ball{center2, radius, ambient});
}

Region Region::cell_set(std::set<Cell> cells) {
  return Region(CellSet{std::make_shared<const std::set<Cell>>(std::move(cells))});
}

bool Region::contains(const Cell& c) const {
  struct Visitor {
    const Cell& c;
    bool operator()(const All&) const { return true; }
    bool operator()(const None&) const { return false; }
    bool operator()(const OpenBox& b) const {
      const Point p = c.barycenter2();
      for (int i = 0; i < b.ambient; ++i) {
        if (p[i] <= 2 * b.lo[i] || p[i] >= 2 * b.hi[i]) return false;
      }
      return true;
    }
    bool operator()(const Ball& b) const {
      const Point p = c.barycenter2();
      std::int64_t d2 = 0;
      for (int i = 0; i < b.ambient; ++i) {
        const std::int64_t d = static_cast<std::int64_t>(p[i]) - b.center2[i];
        d2 += d * d;
      }
      // |p/2 - c/2| < r  <=>  d2 * den^2 < 4 num^2
      const std::int64_t num = b.radius.numerator();
      const std::int64_t den = b.radius.denominator();
      return d2 * den * den < 4 * num * num;
    }
    bool operator()(const CellSet& s) const { return s.cells->contains(c); }
  };
  return std::visit(Visitor{c}, shape_);
}

}  // namespace flatchain
