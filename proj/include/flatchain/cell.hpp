#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace flatchain {

inline constexpr int kMaxAmbientDim = 3;

using Point = std::array<std::int32_t, kMaxAmbientDim>;

// Closed unit cube [base, base + sum of e_a for a in axes] on the integer
// lattice. Axes are 1-based; the canonical orientation is increasing-axes
// order, and reversed orientation is carried by a negated coefficient.
// Coordinates beyond the ambient dimension are zero.
struct Cell {
  Point base{0, 0, 0};
  std::uint8_t axes = 0;  // bit (a - 1) set when axis a spans the cell

  Cell() = default;
  Cell(Point b, std::initializer_list<int> axis_list);
  static Cell from_mask(Point b, std::uint8_t mask) {
    Cell c;
    c.base = b;
    c.axes = mask;
    return c;
  }

  int dim() const;
  bool has_axis(int a) const { return (axes >> (a - 1)) & 1U; }
  std::vector<int> axis_list() const;

  // Coordinates of the barycenter, doubled so they stay integral.
  Point barycenter2() const;

  bool operator==(const Cell&) const = default;
  // Lexicographic by (base, sorted axis list); writers rely on this order.
  std::strong_ordering operator<=>(const Cell& other) const;
};

struct SignedCell {
  Cell cell;
  int sign;
};

// Boundary faces with their incidence signs:
// d[b, A] = sum_{a in A} (-1)^pos(a) ([b + e_a, A \ a] - [b, A \ a]).
std::vector<SignedCell> faces(const Cell& c);

// (dim + 1)-cells in an ambient space of dimension `ambient` having `c` as a
// face, with the sign of `c` in their boundary.
std::vector<SignedCell> cofaces(const Cell& c, int ambient);

// Chebyshev distance between barycenters, doubled.
std::int64_t chebyshev2(const Cell& a, const Cell& b);

// "(x,y,z)[1,2]" with `ambient` coordinates. Used as a JSON map key.
std::string cell_key(const Cell& c, int ambient);
Cell parse_cell_key(const std::string& key, int* ambient_out = nullptr);

}  // namespace flatchain
