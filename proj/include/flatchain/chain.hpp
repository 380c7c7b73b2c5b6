#pragma once

#include <array>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "flatchain/cell.hpp"
#include "flatchain/groups.hpp"

namespace flatchain {

// Finite formal sum of oriented m-cells with coefficients in a normed group.
// Zero coefficients are never stored. Cells iterate in lexicographic order.
class Chain {
 public:
  Chain(GroupPtr group, int dim, int ambient);

  static Chain uniform(GroupPtr group, int dim, int ambient,
                       const std::vector<Cell>& cells, Element coefficient);

  const NormedGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  int dim() const { return dim_; }
  int ambient() const { return ambient_; }
  const std::map<Cell, Element>& coeffs() const { return coeffs_; }
  bool empty() const { return coeffs_.empty(); }
  std::size_t size() const { return coeffs_.size(); }

  Element coefficient(const Cell& c) const;
  // Adds `x` to the coefficient of `c` (group addition), dropping a zero sum.
  void accumulate(const Cell& c, Element x);
  void set(const Cell& c, Element x);

  Chain operator-() const;
  Chain& operator+=(const Chain& other);
  Chain& operator-=(const Chain& other);
  friend Chain operator+(Chain a, const Chain& b) { return a += b; }
  friend Chain operator-(Chain a, const Chain& b) { return a -= b; }

  bool operator==(const Chain& other) const {
    return dim_ == other.dim_ && coeffs_ == other.coeffs_;
  }

 private:
  void check_cell(const Cell& c) const;
  void check_compatible(const Chain& other) const;

  GroupPtr group_;
  int dim_;
  int ambient_;
  std::map<Cell, Element> coeffs_;
};

using CellPredicate = std::function<bool(const Cell&)>;

// Cubical boundary, extended linearly over the coefficient group.
Chain boundary(const Chain& m);

// Sum of |coefficient| over stored cells; unit cells have unit measure.
Rational mass(const Chain& m);

// M restricted to the cells satisfying `keep`.
Chain restrict(const Chain& m, const CellPredicate& keep);

// Pushforward under the orthogonal projection killing axis `axis`. Cells
// spanning that axis collapse to nothing; the others land in the coordinate
// hyperplane {x_axis = 0} and coefficients of a column add in the group.
Chain project(const Chain& m, int axis);

// The measure mu_M on cells: cell -> |coefficient|.
std::map<Cell, Rational> measure(const Chain& m);

// Mass inside the open ball B(p, r) (cells counted by barycenter) divided by
// omega_m r^m with omega_1 = 2, omega_2 = pi, omega_3 = 4 pi / 3.
double density_ratio(const Chain& m, const std::array<double, 3>& p, double r);

// Cells carrying exactly g or -g.
std::set<Cell> multiplicity_g_cells(const Chain& m, Element g);

// All dim-cells contained in the closed box [lo, hi].
std::vector<Cell> cells_in_box(const Point& lo, const Point& hi, int dim, int ambient);

}  // namespace flatchain
