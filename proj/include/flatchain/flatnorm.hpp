#pragma once

#include <optional>

#include "flatchain/chain.hpp"
#include "flatchain/label_search.hpp"
#include "flatchain/region.hpp"

namespace flatchain {

// Support region K (a closed box, all cells of all dimensions) and an optional
// open subregion U for the localized seminorm.
struct Window {
  Box box;
  std::optional<Region> subregion;
};

struct FlatNormOptions {
  // Integer model: filling coefficients range over [-bound, bound]; 0 means
  // the group's own model bound. Ignored for finite groups.
  std::int64_t coefficient_bound = 0;
  SearchLimits limits;
};

struct FlatNormResult {
  Rational value{0};
  Chain filling;    // Q, an (m+1)-chain on the window
  Chain remainder;  // M - dQ
  Certificate certificate = Certificate::kExhaustive;
  std::int64_t nodes = 0;
};

// F(M; K): exact minimum of |M - dQ| + |Q| over (m+1)-chains Q on the cells of
// `window`. Throws WindowTooSmall when M is not supported in the window.
FlatNormResult flat_norm(const Chain& m, const Box& window,
                         const FlatNormOptions& options = {});

// F_U(M) computed over fillings on `window`: only the parts of M - dQ and Q
// inside U are charged.
FlatNormResult flat_seminorm(const Chain& m, const Region& u, const Box& window,
                             const FlatNormOptions& options = {});

// Dispatches on window.subregion.
FlatNormResult flat_norm(const Chain& m, const Window& window,
                         const FlatNormOptions& options = {});

struct PlaneDistanceReport {
  Rational value{0};
  std::uint8_t plane_axes = 0;  // axes spanned by the best plane
  int orientation = 1;          // +1: g[P], -1: -g[P]
  FlatNormResult best;
};

// Distance of M from a multiplicity-g coordinate plane through p on the ball
// B(p, r), normalized as for the chain rescaled by 1/r: the remainder is
// charged 1/r^m and the filling 1/r^(m+1) per cell inside the ball. Planes
// range over the axis-aligned m-planes through p with both orientations.
PlaneDistanceReport plane_distance(const Chain& m, const Point& p, int r, Element g,
                                   const FlatNormOptions& options = {});

namespace detail {

// Shared solver: fillings restricted to `allowed` (m+1)-cells of the box, with
// per-cell weights on the remainder and on the filling.
FlatNormResult solve_filling(const Chain& m, const Box& window,
                             const CellPredicate& allowed,
                             const std::function<Rational(const Cell&)>& remainder_weight,
                             const std::function<Rational(const Cell&)>& filling_weight,
                             const FlatNormOptions& options);

}  // namespace detail

}  // namespace flatchain
