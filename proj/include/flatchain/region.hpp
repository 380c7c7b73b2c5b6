#pragma once

#include <memory>
#include <set>
#include <variant>
#include <vector>

#include "flatchain/cell.hpp"
#include "flatchain/rational.hpp"

namespace flatchain {

// Closed lattice box [lo, hi]. A cell belongs to it when the whole closed cube
// does, so the cell set is closed under taking faces.
struct Box {
  Point lo{0, 0, 0};
  Point hi{0, 0, 0};
  int ambient = 3;

  bool contains(const Cell& c) const;
  std::vector<Cell> cells(int dim) const;
};

// Region used for restrictions M|S. Membership of a cell is decided by its
// barycenter, so every cell is either in or out.
class Region {
 public:
  static Region all();
  static Region none();
  // Barycenter strictly inside the box.
  static Region open_box(const Point& lo, const Point& hi, int ambient);
  // Barycenter in the open Euclidean ball; the center is given in doubled
  // coordinates so half-integer centers are exact.
  static Region ball(const Point& center2, Rational radius, int ambient);
  static Region cell_set(std::set<Cell> cells);

  bool contains(const Cell& c) const;
  bool operator()(const Cell& c) const { return contains(c); }

 private:
  struct All {};
  struct None {};
  struct OpenBox {
    Point lo, hi;
    int ambient;
  };
  struct Ball {
    Point center2;
    Rational radius;
    int ambient;
  };
  struct CellSet {
    std::shared_ptr<const std::set<Cell>> cells;
  };
  using Shape = std::variant<All, None, OpenBox, Ball, CellSet>;

  explicit Region(Shape s) : shape_(std::move(s)) {}
  Shape shape_;
};

}  // namespace flatchain
