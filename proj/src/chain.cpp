#include "flatchain/chain.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "flatchain/error.hpp"

namespace flatchain {

Chain::Chain(GroupPtr group, int dim, int ambient)
    : group_(std::move(group)), dim_(dim), ambient_(ambient) {
  if (!group_) throw Error(ErrorKind::kInvalidInput, "chain needs a group");
  if (ambient < 1 || ambient > kMaxAmbientDim) {
    throw Error(ErrorKind::kInvalidInput,
                "ambient dimension must be in [1, 3], got " + std::to_string(ambient));
  }
  if (dim < 0 || dim > ambient) {
    throw Error(ErrorKind::kInvalidInput,
                "chain dimension " + std::to_string(dim) + " invalid in R^" +
                    std::to_string(ambient));
  }
}

Chain Chain::uniform(GroupPtr group, int dim, int ambient,
                     const std::vector<Cell>& cells, Element coefficient) {
  Chain c(std::move(group), dim, ambient);
  for (const Cell& cell : cells) c.accumulate(cell, coefficient);
  return c;
}

void Chain::check_cell(const Cell& c) const {
  if (c.dim() != dim_) {
    throw Error(ErrorKind::kInvalidInput,
                "cell " + cell_key(c, kMaxAmbientDim) + " has dimension " +
                    std::to_string(c.dim()) + ", chain has " + std::to_string(dim_));
  }
  for (int i = ambient_; i < kMaxAmbientDim; ++i) {
    if (c.base[i] != 0 || c.has_axis(i + 1)) {
      throw Error(ErrorKind::kInvalidInput,
                  "cell " + cell_key(c, kMaxAmbientDim) + " leaves R^" +
                      std::to_string(ambient_));
    }
  }
}

void Chain::check_compatible(const Chain& other) const {
  if (other.dim_ != dim_ || other.ambient_ != ambient_) {
    throw Error(ErrorKind::kInvalidInput, "chains of different dimensions");
  }
  if (other.group_ != group_ && other.group_->spec().kind != group_->spec().kind) {
    throw Error(ErrorKind::kInvalidInput, "chains over different groups");
  }
}

Element Chain::coefficient(const Cell& c) const {
  const auto it = coeffs_.find(c);
  return it == coeffs_.end() ? Element{0} : it->second;
}

void Chain::accumulate(const Cell& c, Element x) {
  if (group_->is_zero(x)) return;
  check_cell(c);
  auto [it, inserted] = coeffs_.try_emplace(c, x);
  if (inserted) {
    if (!group_->contains(x)) group_->add(group_->zero(), x);  // raises overflow
    return;
  }
  it->second = group_->add(it->second, x);
  if (group_->is_zero(it->second)) coeffs_.erase(it);
}

void Chain::set(const Cell& c, Element x) {
  check_cell(c);
  if (group_->is_zero(x)) {
    coeffs_.erase(c);
  } else {
    if (!group_->contains(x)) group_->add(group_->zero(), x);
    coeffs_[c] = x;
  }
}

Chain Chain::operator-() const {
  Chain out(group_, dim_, ambient_);
  for (const auto& [c, x] : coeffs_) out.coeffs_.emplace(c, group_->neg(x));
  return out;
}

Chain& Chain::operator+=(const Chain& other) {
  check_compatible(other);
  for (const auto& [c, x] : other.coeffs_) accumulate(c, x);
  return *this;
}

Chain& Chain::operator-=(const Chain& other) {
  check_compatible(other);
  for (const auto& [c, x] : other.coeffs_) accumulate(c, group_->neg(x));
  return *this;
}

Chain boundary(const Chain& m) {
  if (m.dim() == 0) {
    throw Error(ErrorKind::kDimensionZero, "boundary of a 0-chain is undefined");
  }
  const NormedGroup& g = m.group();
  Chain out(m.group_ptr(), m.dim() - 1, m.ambient());
  for (const auto& [cell, x] : m.coeffs()) {
    const Element nx = g.neg(x);
    for (const auto& [face, sign] : faces(cell)) out.accumulate(face, sign > 0 ? x : nx);
  }
  return out;
}

Rational mass(const Chain& m) {
  Rational total(0);
  for (const auto& [cell, x] : m.coeffs()) total += m.group().norm(x);
  return total;
}

Chain restrict(const Chain& m, const CellPredicate& keep) {
  Chain out(m.group_ptr(), m.dim(), m.ambient());
  for (const auto& [cell, x] : m.coeffs()) {
    if (keep(cell)) out.set(cell, x);
  }
  return out;
}

Chain project(const Chain& m, int axis) {
  if (axis < 1 || axis > m.ambient()) {
    throw Error(ErrorKind::kInvalidInput, "projection axis out of range");
  }
  if (m.dim() >= m.ambient()) {
    throw Error(ErrorKind::kInvalidInput,
                "projection needs dim(M) < ambient dimension");
  }
  Chain out(m.group_ptr(), m.dim(), m.ambient());
  for (const auto& [cell, x] : m.coeffs()) {
    if (cell.has_axis(axis)) continue;
    Cell image = cell;
    image.base[axis - 1] = 0;
    out.accumulate(image, x);
  }
  return out;
}

std::map<Cell, Rational> measure(const Chain& m) {
  std::map<Cell, Rational> mu;
  for (const auto& [cell, x] : m.coeffs()) mu.emplace(cell, m.group().norm(x));
  return mu;
}

double density_ratio(const Chain& m, const std::array<double, 3>& p, double r) {
  if (!(r > 0)) throw Error(ErrorKind::kInvalidInput, "density radius must be > 0");
  double omega = 0;
  switch (m.dim()) {
    case 1: omega = 2.0; break;
    case 2: omega = std::numbers::pi; break;
    case 3: omega = 4.0 * std::numbers::pi / 3.0; break;
    default:
      throw Error(ErrorKind::kInvalidInput, "density ratio needs 1 <= m <= 3");
  }
  Rational inside(0);
  for (const auto& [cell, x] : m.coeffs()) {
    const Point b2 = cell.barycenter2();
    double d2 = 0;
    for (int i = 0; i < m.ambient(); ++i) {
      const double d = 0.5 * b2[i] - p[i];
      d2 += d * d;
    }
    if (d2 < r * r) inside += m.group().norm(x);
  }
  return to_double(inside) / (omega * std::pow(r, m.dim()));
}

std::set<Cell> multiplicity_g_cells(const Chain& m, Element g) {
  const Element ng = m.group().neg(g);
  std::set<Cell> out;
  for (const auto& [cell, x] : m.coeffs()) {
    if (x == g || x == ng) out.insert(cell);
  }
  return out;
}

std::vector<Cell> cells_in_box(const Point& lo, const Point& hi, int dim, int ambient) {
  std::vector<Cell> out;
  for (unsigned mask = 0; mask < (1U << ambient); ++mask) {
    if (std::popcount(mask) != dim) continue;
    Point b = lo;
    Point top = hi;
    for (int i = 0; i < ambient; ++i) {
      if (mask & (1U << i)) top[i] = hi[i] - 1;
    }
    bool empty = false;
    for (int i = 0; i < ambient; ++i) empty = empty || top[i] < lo[i];
    if (empty) continue;
    // Odometer over [lo, top].
    while (true) {
      out.push_back(Cell::from_mask(b, static_cast<std::uint8_t>(mask)));
      int i = ambient - 1;
      for (; i >= 0; --i) {
        if (b[i] < top[i]) {
          ++b[i];
          break;
        }
        b[i] = lo[i];
      }
      if (i < 0) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace flatchain
