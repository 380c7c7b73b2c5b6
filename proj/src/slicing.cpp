#include "flatchain/slicing.hpp"

#include <cstdlib>

#include "flatchain/error.hpp"

namespace flatchain {

namespace {

int level_of(const LevelFunction& f, const Cell& c, int ambient) {
  auto it = f.find(c);
  if (it == f.end()) {
    throw Error(ErrorKind::kInvalidInput,
                "level function undefined on cell " + cell_key(c, ambient),
                {{"cell", cell_key(c, ambient)}});
  }
  return it->second;
}

int ambient_of(const Cell& c) {
  // Level functions carry no ambient dimension; print all three coordinates
  // only when the third is used.
  return c.base[2] != 0 || c.has_axis(3) ? 3 : 2;
}

}  // namespace

LevelFunction tabulate_level(const std::vector<Cell>& cells,
                             const std::function<int(const Cell&)>& fn) {
  LevelFunction f;
  std::vector<Cell> stack(cells.begin(), cells.end());
  while (!stack.empty()) {
    const Cell c = stack.back();
    stack.pop_back();
    if (!f.emplace(c, fn(c)).second) continue;
    if (c.dim() == 0) continue;
    for (const auto& [face, sign] : faces(c)) {
      if (!f.contains(face)) stack.push_back(face);
    }
  }
  return f;
}

void check_lipschitz(const LevelFunction& f) {
  for (const auto& [cell, level] : f) {
    if (cell.dim() == 0) continue;
    for (const auto& [face, sign] : faces(cell)) {
      auto it = f.find(face);
      if (it == f.end()) continue;
      if (std::abs(it->second - level) >= 2) {
        const int amb = ambient_of(cell);
        throw Error(ErrorKind::kLevelFunctionNotLipschitz,
                    "level jumps by " + std::to_string(std::abs(it->second - level)) +
                        " between " + cell_key(cell, amb) + " and its face " +
                        cell_key(face, amb),
                    {{"cell", cell_key(cell, amb)},
                     {"face", cell_key(face, amb)},
                     {"cell_level", level},
                     {"face_level", it->second}});
      }
    }
  }
}

Chain slice(const Chain& m, const LevelFunction& f, int s) {
  return restrict(m, [&](const Cell& c) { return level_of(f, c, m.ambient()) <= s; });
}

SliceProfile slicing_defect(const Chain& q, const LevelFunction& f, int a, int b) {
  if (a > b) throw Error(ErrorKind::kInvalidInput, "empty level range");
  if (q.dim() == 0) throw Error(ErrorKind::kDimensionZero, "slicing needs dim Q >= 1");
  check_lipschitz(f);
  const Chain dq = boundary(q);

  SliceProfile profile;
  profile.a = a;
  profile.b = b;
  for (int s = a; s <= b; ++s) {
    Chain defect = slice(dq, f, s) - boundary(slice(q, f, s));
    const Rational defect_mass = mass(defect);
    SliceLevel level{s, std::move(defect), defect_mass, true};
    for (const auto& [face, x] : level.defect.coeffs()) {
      const int fs = level_of(f, face, q.ambient());
      bool straddles = false;
      for (const auto& [tau, sign] : cofaces(face, q.ambient())) {
        if (q.coefficient(tau).value == 0) continue;
        const int ft = level_of(f, tau, q.ambient());
        if ((fs <= s && ft == s + 1) || (fs == s + 1 && ft <= s)) straddles = true;
      }
      if (!straddles) level.on_interface = false;
    }
    profile.total_defect += level.defect_mass;
    profile.structure_holds = profile.structure_holds && level.on_interface;
    profile.levels.push_back(std::move(level));
  }
  profile.bound = Rational(2 * q.dim()) * mass(q);
  profile.bound_holds = profile.total_defect <= profile.bound;
  return profile;
}

CoareaReport coarea_report(const Chain& m, const LevelFunction& f, int a, int b,
                           const Box& window, const FlatNormOptions& options) {
  if (a > b) throw Error(ErrorKind::kInvalidInput, "empty level range");
  check_lipschitz(f);
  auto one = [](const Cell&) { return Rational(1); };
  const FlatNormResult full = flat_norm(m, window, options);

  CoareaReport report{full.value, full.filling, {}, Rational(0), Rational(0), true};
  const bool has_filling = m.dim() + 1 <= m.ambient();
  for (int s = a; s <= b; ++s) {
    CoareaLevel level;
    level.s = s;
    const Chain ms = slice(m, f, s);
    auto sublevel = [&](const Cell& c) { return level_of(f, c, m.ambient()) <= s; };
    level.flat_norm =
        detail::solve_filling(ms, window, sublevel, one, one, options).value;
    if (has_filling) {
      const Chain& q = full.filling;
      level.defect_mass = mass(slice(boundary(q), f, s) - boundary(slice(q, f, s)));
    }
    report.lhs += level.flat_norm;
    report.rhs += report.flat_norm + level.defect_mass;
    report.levels.push_back(level);
  }
  report.holds = report.lhs <= report.rhs;
  return report;
}

}  // namespace flatchain
