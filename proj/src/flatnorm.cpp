#include "flatchain/flatnorm.hpp"

#include <bit>
#include <map>

#include "flatchain/error.hpp"

namespace flatchain {

namespace detail {

FlatNormResult solve_filling(const Chain& m, const Box& window,
                             const CellPredicate& allowed,
                             const std::function<Rational(const Cell&)>& remainder_weight,
                             const std::function<Rational(const Cell&)>& filling_weight,
                             const FlatNormOptions& options) {
  if (window.ambient != m.ambient()) {
    throw Error(ErrorKind::kInvalidInput, "window and chain live in different dimensions");
  }
  for (const auto& [cell, x] : m.coeffs()) {
    if (!window.contains(cell)) {
      throw Error(ErrorKind::kWindowTooSmall,
                  "chain cell " + cell_key(cell, m.ambient()) + " lies outside the window",
                  {{"cell", cell_key(cell, m.ambient())}});
    }
  }
  const NormedGroup& group = m.group();
  const int dim = m.dim();

  // Cells that cost nothing and touch only uncharged faces cannot change the
  // objective; they are fixed to zero. Uncharged faces are left out.
  std::vector<Cell> vars;
  if (dim + 1 <= m.ambient()) {
    for (const Cell& c : window.cells(dim + 1)) {
      if (!allowed(c)) continue;
      bool matters = filling_weight(c) > Rational(0);
      for (const auto& [face, sign] : faces(c)) {
        if (remainder_weight(face) > Rational(0)) matters = true;
      }
      if (matters) vars.push_back(c);
    }
  }

  LabelProblem problem;
  problem.group = m.group_ptr();
  const std::int64_t bound =
      options.coefficient_bound > 0 ? options.coefficient_bound : group.bound();
  problem.domain = ranked_domain(group, bound);
  for (const Cell& c : vars) problem.var_weight.push_back(filling_weight(c));

  std::map<Cell, std::uint32_t> face_index;
  auto face_of = [&](const Cell& c) -> std::optional<std::uint32_t> {
    auto it = face_index.find(c);
    if (it != face_index.end()) return it->second;
    const Rational w = remainder_weight(c);
    if (w == 0) return std::nullopt;
    LabelProblem::Face f;
    f.target = m.coefficient(c);
    f.weight = w;
    problem.faces.push_back(std::move(f));
    const auto index = static_cast<std::uint32_t>(problem.faces.size() - 1);
    face_index.emplace(c, index);
    return index;
  };
  for (const auto& [cell, x] : m.coeffs()) face_of(cell);
  for (std::uint32_t i = 0; i < vars.size(); ++i) {
    for (const auto& [face, sign] : faces(vars[i])) {
      if (const auto f = face_of(face)) {
        problem.faces[*f].terms.push_back({i, static_cast<std::int8_t>(sign)});
      }
    }
  }

  const LabelSolution sol = solve_labels(problem, options.limits);
  if (!sol.feasible) {
    throw Error(ErrorKind::kSearchSpaceExceeded,
                "search stopped before any filling was evaluated");
  }

  FlatNormResult result{sol.cost, Chain(m.group_ptr(), std::min(dim + 1, m.ambient()), m.ambient()),
                        m, sol.certificate, sol.nodes};
  if (dim + 1 <= m.ambient()) {
    Chain q(m.group_ptr(), dim + 1, m.ambient());
    for (std::size_t i = 0; i < vars.size(); ++i) q.set(vars[i], sol.values[i]);
    result.remainder = m - boundary(q);
    result.filling = std::move(q);
  }
  return result;
}

}  // namespace detail

namespace {

Rational one(const Cell&) { return Rational(1); }
bool any_cell(const Cell&) { return true; }

}  // namespace

FlatNormResult flat_norm(const Chain& m, const Box& window, const FlatNormOptions& options) {
  return detail::solve_filling(m, window, any_cell, one, one, options);
}

FlatNormResult flat_seminorm(const Chain& m, const Region& u, const Box& window,
                             const FlatNormOptions& options) {
  auto inside = [&](const Cell& c) { return u.contains(c) ? Rational(1) : Rational(0); };
  return detail::solve_filling(m, window, any_cell, inside, inside, options);
}

FlatNormResult flat_norm(const Chain& m, const Window& window, const FlatNormOptions& options) {
  if (window.subregion) return flat_seminorm(m, *window.subregion, window.box, options);
  return flat_norm(m, window.box, options);
}

PlaneDistanceReport plane_distance(const Chain& m, const Point& p, int r, Element g,
                                   const FlatNormOptions& options) {
  if (r < 1) throw Error(ErrorKind::kInvalidInput, "plane distance needs r >= 1");
  const int d = m.ambient();
  const int dim = m.dim();
  Box box;
  box.ambient = d;
  for (int i = 0; i < d; ++i) {
    box.lo[i] = p[i] - r;
    box.hi[i] = p[i] + r;
  }
  Point center2{0, 0, 0};
  for (int i = 0; i < d; ++i) center2[i] = 2 * p[i];
  const Region ball = Region::ball(center2, Rational(r), d);

  Rational rm(1);
  for (int k = 0; k < dim; ++k) rm *= r;
  const Rational remainder_w = Rational(1) / rm;
  const Rational filling_w = Rational(1) / (rm * r);
  auto rw = [&](const Cell& c) { return ball.contains(c) ? remainder_w : Rational(0); };
  auto fw = [&](const Cell& c) { return ball.contains(c) ? filling_w : Rational(0); };

  const Chain local = restrict(m, [&](const Cell& c) { return box.contains(c); });
  const NormedGroup& group = m.group();

  std::optional<PlaneDistanceReport> best;
  for (unsigned mask = 0; mask < (1U << d); ++mask) {
    if (std::popcount(mask) != dim) continue;
    std::vector<Cell> plane;
    for (const Cell& c : box.cells(dim)) {
      if (c.axes != mask || !ball.contains(c)) continue;
      bool through_p = true;
      for (int i = 0; i < d; ++i) {
        if (!(mask & (1U << i)) && c.base[i] != p[i]) through_p = false;
      }
      if (through_p) plane.push_back(c);
    }
    for (const int orientation : {1, -1}) {
      const Element coef = orientation > 0 ? g : group.neg(g);
      const Chain sheet = Chain::uniform(m.group_ptr(), dim, d, plane, coef);
      FlatNormResult res =
          detail::solve_filling(local - sheet, box, any_cell, rw, fw, options);
      if (!best || res.value < best->value) {
        best = PlaneDistanceReport{res.value, static_cast<std::uint8_t>(mask), orientation,
                                   std::move(res)};
      }
    }
  }
  if (!best) throw Error(ErrorKind::kInvalidInput, "no coordinate plane of that dimension");
  return std::move(*best);
}

}  // namespace flatchain
