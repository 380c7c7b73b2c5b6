#include "flatchain/plateau.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <map>
#include <stdexcept>

#include "flatchain/error.hpp"

namespace flatchain {

namespace {

std::int64_t max_abs_coefficient(const Chain& c) {
  std::int64_t best = 0;
  for (const auto& [cell, x] : c.coeffs()) best = std::max(best, std::abs(x.value));
  return best;
}

std::int64_t auto_int_bound(const NormedGroup& group, const Chain& data, std::int64_t requested) {
  if (requested > 0) return requested;
  return std::min(std::max<std::int64_t>(2 * max_abs_coefficient(data), 4), group.bound());
}

Cell column_key(const Cell& c, int axis) {
  Cell key = c;
  key.base[axis - 1] = 0;
  return key;
}

// The unique top-dimensional chain P in the hyperplane {x_axis = 0} with
// dP = C, found by sweeping along the first remaining axis. nullopt when C is
// not a boundary.
std::optional<Chain> fill_hyperplane(const Chain& c, int axis, int top_dim) {
  const NormedGroup& group = c.group();
  const int d = c.ambient();
  std::uint8_t top_mask = 0;
  for (int i = 1; i <= d; ++i) {
    if (i != axis) top_mask |= static_cast<std::uint8_t>(1U << (i - 1));
  }
  const int sweep = std::countr_zero(static_cast<unsigned>(top_mask)) + 1;
  const auto face_mask = static_cast<std::uint8_t>(top_mask & ~(1U << (sweep - 1)));

  std::map<Cell, std::map<int, Element>> lines;
  for (const auto& [cell, x] : c.coeffs()) {
    if (cell.axes != face_mask) continue;
    Cell line = cell;
    line.base[sweep - 1] = 0;
    lines[line][cell.base[sweep - 1]] = x;
  }

  Chain p(c.group_ptr(), top_dim, d);
  for (const auto& [line, entries] : lines) {
    Element running = group.zero();
    for (auto it = entries.begin(); it != entries.end(); ++it) {
      running = group.sub(running, it->second);
      auto next = std::next(it);
      if (next == entries.end()) break;
      if (group.is_zero(running)) continue;
      for (int t = it->first; t < next->first; ++t) {
        Point b = line.base;
        b[sweep - 1] = t;
        p.set(Cell::from_mask(b, top_mask), running);
      }
    }
    if (!group.is_zero(running)) return std::nullopt;
  }
  if (!(boundary(p) == c)) return std::nullopt;
  return p;
}

struct Built {
  LabelProblem problem;
  std::vector<Cell> vars;
  std::int64_t int_bound = 0;
  std::optional<Rational> projection_lb;
  std::int64_t max_column_target = 0;
};

Built build(const PlateauProblem& pp) {
  if (!pp.group) throw Error(ErrorKind::kInvalidInput, "plateau problem needs a group");
  const NormedGroup& group = *pp.group;
  const Chain& b = pp.boundary;
  const int d = pp.window.ambient;
  const int m = pp.dim;
  if (m < 1 || m > d) {
    throw Error(ErrorKind::kInvalidInput, "minimizer dimension must be in [1, ambient]");
  }
  if (b.dim() != m - 1 || b.ambient() != d) {
    throw Error(ErrorKind::kInvalidInput, "boundary must be an (m-1)-chain in the window's space");
  }
  if (b.group().label() != group.label()) {
    throw Error(ErrorKind::kInvalidInput, "boundary uses a different coefficient group");
  }
  if (m >= 2 && !boundary(b).empty()) {
    throw Error(ErrorKind::kInfeasible, "prescribed boundary is not a cycle");
  }

  Built built;
  built.vars = pp.window.cells(m);
  LabelProblem& problem = built.problem;
  problem.group = pp.group;
  if (!group.is_finite()) built.int_bound = auto_int_bound(group, b, pp.coefficient_bound);
  problem.domain = ranked_domain(group, built.int_bound);
  problem.var_weight.assign(built.vars.size(), Rational(1));

  std::map<Cell, std::uint32_t> face_index;
  auto face_of = [&](const Cell& c) {
    auto [it, inserted] =
        face_index.try_emplace(c, static_cast<std::uint32_t>(problem.faces.size()));
    if (inserted) {
      LabelProblem::Face f;
      f.target = b.coefficient(c);
      f.hard = true;
      problem.faces.push_back(std::move(f));
    }
    return it->second;
  };
  for (const auto& [cell, x] : b.coeffs()) face_of(cell);
  for (std::uint32_t i = 0; i < built.vars.size(); ++i) {
    for (const auto& [face, sign] : faces(built.vars[i])) {
      problem.faces[face_of(face)].terms.push_back({i, static_cast<std::int8_t>(sign)});
    }
  }
  for (const auto& face : problem.faces) {
    if (face.terms.empty() && !group.is_zero(face.target)) {
      throw Error(ErrorKind::kInfeasible, "boundary leaves the window");
    }
  }

  // Codimension one: the projection of M along axis j is forced, which gives
  // one implied sum per column and a lower bound on the mass.
  if (m == d - 1) {
    Rational lb(0);
    for (int j = 1; j <= d; ++j) {
      const auto target = fill_hyperplane(project(b, j), j, m);
      if (!target) {
        throw Error(ErrorKind::kInfeasible, "projected boundary has no filling");
      }
      std::map<Cell, std::vector<std::uint32_t>> columns;
      for (std::uint32_t i = 0; i < built.vars.size(); ++i) {
        if (!built.vars[i].has_axis(j)) columns[column_key(built.vars[i], j)].push_back(i);
      }
      for (const auto& [key, x] : target->coeffs()) {
        if (!columns.contains(key)) {
          throw Error(ErrorKind::kInfeasible, "boundary needs cells outside the window");
        }
      }
      for (auto& [key, vars] : columns) {
        const Element t = target->coefficient(key);
        lb += group.norm(t);
        built.max_column_target = std::max(built.max_column_target, std::abs(t.value));
        problem.sum_groups.push_back({t, std::move(vars)});
      }
    }
    built.projection_lb = lb;
  }
  return built;
}

Chain assemble(const PlateauProblem& pp, const Built& built, const std::vector<Element>& values) {
  Chain m(pp.group, pp.dim, pp.window.ambient);
  for (std::size_t i = 0; i < built.vars.size(); ++i) m.set(built.vars[i], values[i]);
  return m;
}

}  // namespace

GraphnessReport graphness(const Chain& m, int axis, std::optional<Element> g) {
  GraphnessReport report;
  report.axis = axis;
  report.g = g;
  std::map<Cell, std::vector<Element>> columns;
  for (const auto& [cell, x] : m.coeffs()) {
    if (cell.has_axis(axis)) {
      ++report.vertical_cells;
    } else {
      columns[column_key(cell, axis)].push_back(x);
    }
  }
  const NormedGroup& group = m.group();
  if (!report.g && !columns.empty()) report.g = columns.begin()->second.front();
  report.columns = columns.size();
  for (const auto& [key, xs] : columns) {
    const bool single = xs.size() == 1 && (xs[0] == *report.g || xs[0] == group.neg(*report.g));
    if (!single) ++report.offending_columns;
  }
  report.graph = report.columns > 0 && report.offending_columns == 0;
  return report;
}

PlateauResult solve(const PlateauProblem& pp, const PlateauOptions& options) {
  Built built = build(pp);
  built.problem.upper_bound = options.upper_bound;
  const LabelSolution sol = solve_labels(built.problem, options.limits);
  if (!sol.feasible) {
    if (sol.certificate == Certificate::kIncomplete) {
      throw Error(ErrorKind::kSearchSpaceExceeded, "search stopped before finding a chain");
    }
    throw Error(ErrorKind::kInfeasible,
                options.upper_bound ? "no chain with this boundary within the upper bound"
                                    : "no chain on the window has this boundary");
  }
  Chain minimizer = assemble(pp, built, sol.values);
  if (!(boundary(minimizer) == pp.boundary)) {
    throw std::logic_error("plateau solver returned a chain with the wrong boundary");
  }

  PlateauResult result{sol.cost, std::move(minimizer), sol.certificate, sol.nodes,
                       built.int_bound, std::nullopt, built.projection_lb, {}};
  const NormedGroup& group = *pp.group;
  if (!group.is_finite()) {
    const std::int64_t n1 = built.int_bound + 1;
    if (built.projection_lb) {
      result.coefficient_bound_sufficient =
          *built.projection_lb + group.scale() * Rational(2 * (n1 - built.max_column_target)) >
          result.mass;
    } else {
      result.coefficient_bound_sufficient = group.scale() * Rational(n1) > result.mass;
    }
  }
  const int axis = pp.graph_axis > 0 ? pp.graph_axis : pp.window.ambient;
  result.graph = graphness(result.minimizer, axis, pp.multiplicity);
  return result;
}

MinimizerList enumerate_minimizers(const PlateauProblem& pp, std::size_t limit,
                                   const PlateauOptions& options) {
  const PlateauResult best = solve(pp, options);
  Built built = build(pp);
  const LabelEnumeration all =
      enumerate_labels(built.problem, best.mass, limit, options.limits);
  MinimizerList list{best.mass, {}, all.truncated};
  for (const auto& values : all.labelings) list.minimizers.push_back(assemble(pp, built, values));
  return list;
}

LambdaReport lambda_certificate(const Chain& m, const Rational& lambda, int r,
                                const Region& k, const Box& qspace,
                                std::int64_t coefficient_bound, const SearchLimits& limits) {
  if (r < 1) throw Error(ErrorKind::kInvalidInput, "certificate radius must be >= 1");
  const NormedGroup& group = m.group();
  const Chain a = restrict(m, k);

  LambdaReport report;
  report.lambda = lambda;
  report.r = r;
  report.restricted_mass = mass(a);
  report.lhs = (Rational(1) - lambda * r) * report.restricted_mass;
  report.caveat = "only fillings supported near M inside the search box are tried";

  std::vector<Cell> vars;
  if (m.dim() + 1 <= m.ambient()) {
    for (const Cell& c : qspace.cells(m.dim() + 1)) {
      for (const auto& [cell, x] : m.coeffs()) {
        if (chebyshev2(c, cell) < 2 * static_cast<std::int64_t>(r)) {
          vars.push_back(c);
          break;
        }
      }
    }
  }
  report.searched_cells = vars.size();

  LabelProblem problem;
  problem.group = m.group_ptr();
  problem.domain = ranked_domain(
      group, group.is_finite() ? 0 : auto_int_bound(group, a, coefficient_bound));
  problem.var_weight.assign(vars.size(), Rational(0));
  std::map<Cell, std::uint32_t> face_index;
  auto face_of = [&](const Cell& c) {
    auto [it, inserted] =
        face_index.try_emplace(c, static_cast<std::uint32_t>(problem.faces.size()));
    if (inserted) {
      LabelProblem::Face f;
      f.target = a.coefficient(c);
      problem.faces.push_back(std::move(f));
    }
    return it->second;
  };
  for (const auto& [cell, x] : a.coeffs()) face_of(cell);
  for (std::uint32_t i = 0; i < vars.size(); ++i) {
    for (const auto& [face, sign] : faces(vars[i])) {
      problem.faces[face_of(face)].terms.push_back({i, static_cast<std::int8_t>(-sign)});
    }
  }

  const LabelSolution sol = solve_labels(problem, limits);
  if (!sol.feasible) {
    throw Error(ErrorKind::kSearchSpaceExceeded, "search stopped before any filling was tried");
  }
  report.certificate = sol.certificate;
  report.min_rhs = sol.cost;
  if (report.restricted_mass > 0) report.worst_ratio = report.min_rhs / report.restricted_mass;
  report.violated = report.min_rhs < report.lhs;
  if (report.violated) {
    Chain q(m.group_ptr(), m.dim() + 1, m.ambient());
    for (std::size_t i = 0; i < vars.size(); ++i) q.set(vars[i], sol.values[i]);
    report.violating_filling = std::move(q);
  }
  return report;
}

ProjectionBoundReport projection_bound(const Chain& m, int axis, Element g) {
  const NormedGroup& group = m.group();
  if (axis < 1 || axis > m.ambient()) {
    throw Error(ErrorKind::kInvalidInput, "projection axis out of range");
  }
  if (group.is_zero(g)) throw Error(ErrorKind::kZeroElement, "multiplicity must be nonzero");

  const Chain pi = project(m, axis);
  for (const auto& [cell, x] : pi.coeffs()) {
    if (x != g) {
      throw Error(ErrorKind::kProjectionMismatch,
                  "projection has coefficient " + group.format(x) + " on " +
                      cell_key(cell, m.ambient()) + ", expected " + group.format(g),
                  {{"cell", cell_key(cell, m.ambient())}, {"coefficient", group.format(x)}});
    }
  }

  ProjectionBoundReport report;
  report.mass = mass(m);
  report.omega_cells = pi.size();
  report.gap = sti_gap(group, g).gap;
  report.applicable = true;

  std::map<Cell, std::vector<Element>> columns;
  for (const auto& [cell, x] : m.coeffs()) {
    if (cell.has_axis(axis)) continue;
    if (x == g) report.applicable = false;
    columns[column_key(cell, axis)].push_back(x);
  }
  const Rational need = report.gap ? group.norm(g) + *report.gap : Rational(0);
  for (const auto& [key, xs] : columns) {
    ColumnTrace trace{key, xs, group.zero(), Rational(0), true};
    for (const Element x : xs) {
      trace.sum = group.add(trace.sum, x);
      trace.column_mass += group.norm(x);
    }
    if (trace.sum == g) trace.ok = report.gap && trace.column_mass >= need;
    report.columns.push_back(std::move(trace));
  }

  if (report.gap) {
    report.bound = need * Rational(static_cast<std::int64_t>(report.omega_cells));
  } else if (report.omega_cells == 0) {
    report.bound = Rational(0);
  }
  if (!report.applicable) {
    report.note = "some non-vertical cell carries exactly g; the bound does not apply";
    report.holds = false;
  } else {
    report.holds = report.bound && report.mass >= *report.bound;
    report.note = report.gap ? "columns over Omega split g into nonzero parts"
                             : "g has no splitting into two nonzero parts";
  }
  return report;
}

}  // namespace flatchain
