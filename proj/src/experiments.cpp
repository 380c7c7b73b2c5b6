#include "flatchain/experiments.hpp"

#include <algorithm>
#include <stdexcept>

#include "flatchain/error.hpp"

namespace flatchain {

Chain sheet(const GroupPtr& group, int k, int z, Element coefficient) {
  Chain c(group, 2, 3);
  for (int x = 0; x < k; ++x) {
    for (int y = 0; y < k; ++y) c.set(Cell({x, y, z}, {1, 2}), coefficient);
  }
  return c;
}

Chain walls(const GroupPtr& group, int k, int h, Element coefficient) {
  Chain slab(group, 3, 3);
  for (int x = 0; x < k; ++x) {
    for (int y = 0; y < k; ++y) {
      for (int z = 0; z < h; ++z) slab.set(Cell({x, y, z}, {1, 2, 3}), coefficient);
    }
  }
  return boundary(slab) - sheet(group, k, h, coefficient) + sheet(group, k, 0, coefficient);
}

SplitSheetReport split_sheet_experiment(const ExperimentConfig& cfg) {
  if (cfg.k < 1 || cfg.h < 1) throw Error(ErrorKind::kInvalidInput, "need k >= 1 and h >= 1");
  if (cfg.margin < 0) throw Error(ErrorKind::kInvalidInput, "margin must be >= 0");
  if (cfg.a.has_value() != cfg.b.has_value()) {
    throw Error(ErrorKind::kInvalidInput, "give both a and b, or neither");
  }
  const GroupPtr group = make_group(cfg.group);
  const NormedGroup& G = *group;
  if (!G.contains(cfg.g)) throw Error(ErrorKind::kInvalidInput, "g is not a group element");
  if (G.is_zero(cfg.g)) throw Error(ErrorKind::kZeroElement, "g must be nonzero");
  if (cfg.a) {
    if (!G.contains(*cfg.a) || !G.contains(*cfg.b)) {
      throw Error(ErrorKind::kInvalidInput, "a and b must be group elements");
    }
    if (G.is_zero(*cfg.a) || G.is_zero(*cfg.b)) {
      throw Error(ErrorKind::kInvalidInput, "a and b must both be nonzero");
    }
    if (G.add(*cfg.a, *cfg.b) != cfg.g) {
      throw Error(ErrorKind::kInvalidInput, "a + b must equal g");
    }
  }

  SplitSheetReport report;
  report.group = G.label();
  report.g = cfg.g;
  report.a = cfg.a;
  report.b = cfg.b;
  report.k = cfg.k;
  report.h = cfg.h;
  report.sti = sti_gap(G, cfg.g);
  report.norm_g = G.norm(cfg.g);

  const Chain bottom = sheet(group, cfg.k, 0, cfg.g);
  Chain merged = bottom;
  Chain b_data = boundary(bottom);
  std::optional<Chain> split;
  if (cfg.a) {
    report.norm_a_plus_norm_b = G.norm(*cfg.a) + G.norm(*cfg.b);
    split = sheet(group, cfg.k, 0, *cfg.a) + sheet(group, cfg.k, cfg.h, *cfg.b);
    b_data = boundary(*split);
    merged -= walls(group, cfg.k, cfg.h, *cfg.b);
    report.split_mass = mass(*split);
  }
  if (!(boundary(merged) == b_data)) {
    throw std::logic_error("merged competitor has the wrong boundary");
  }
  report.merged_mass = mass(merged);

  PlateauProblem problem{group, b_data, 2, Box{}, cfg.coefficient_bound, cfg.g, 3};
  problem.window.ambient = 3;
  problem.window.lo = {-cfg.margin, -cfg.margin, 0};
  problem.window.hi = {cfg.k + cfg.margin, cfg.k + cfg.margin, cfg.h};

  PlateauOptions options;
  options.limits = cfg.limits;
  options.upper_bound =
      report.split_mass ? std::min(*report.split_mass, report.merged_mass) : report.merged_mass;
  report.solution = solve(problem, options);
  report.split_optimal = report.split_mass && report.solution->mass == *report.split_mass;
  report.merged_optimal = report.solution->mass == report.merged_mass;
  return report;
}

ProbeReport near_zero_norm_probe(const std::vector<GroupSpec>& groups, std::int64_t g, int k,
                                 const SearchLimits& limits) {
  if (k < 1) throw Error(ErrorKind::kInvalidInput, "need k >= 1");
  ProbeReport report;
  for (const GroupSpec& spec : groups) {
    const GroupPtr group = make_group(spec);
    const NormedGroup& G = *group;
    Element ge{g};
    if (G.is_finite()) ge = Element{((g % G.order()) + G.order()) % G.order()};
    if (!G.contains(ge)) throw Error(ErrorKind::kInvalidInput, "g outside the integer model");

    ProbeRow row;
    row.group = G.label();
    row.min_norm = min_nonzero_norm(G);
    row.a = ranked_domain(G, 1).at(1);  // smallest nonzero norm, first in code order
    row.coefficient = G.add(ge, row.a);
    row.expected = G.norm(row.coefficient) * Rational(k * k);

    PlateauProblem problem{group, boundary(sheet(group, k, 0, row.coefficient)), 2, Box{}, 0,
                           row.coefficient, 3};
    problem.window.ambient = 3;
    problem.window.hi = {k, k, 1};
    PlateauOptions options;
    options.limits = limits;
    row.optimum = solve(problem, options).mass;
    row.optimal = row.optimum == row.expected;
    report.rows.push_back(row);
  }
  report.decreasing = report.rows.size() >= 2;
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    if (!(report.rows[i].min_norm < report.rows[i - 1].min_norm)) report.decreasing = false;
  }
  report.verdict = report.decreasing
                       ? "min nonzero norm decreases along the family; (g + a_n)[Sigma] stays "
                         "optimal while its multiplicity differs from g"
                       : "no violating sequence exists: min nonzero norm is bounded below";
  return report;
}

namespace {

const char* kVerdictFails = "STI fails: split minimizers persist at all sizes, regularity fails";
const char* kVerdictHolds = "STI holds: minimizers above the crossover size are multiplicity-g graphs";
const char* kVerdictNoSplit = "STI holds: g has no splitting, the single sheet is a graph";

std::string row_verdict(const SplitSheetReport& r) {
  if (r.solution->graph.graph) return "graph minimizer";
  if (r.split_optimal) return "split optimal";
  return "non-graph minimizer";
}

}  // namespace

DichotomyReport dichotomy_experiment(const std::vector<DichotomyInstance>& grid,
                                     std::int64_t coefficient_bound, const SearchLimits& limits) {
  DichotomyReport report;
  for (const DichotomyInstance& inst : grid) {
    const GroupPtr group = make_group(inst.group);
    const StiReport sti = sti_gap(*group, inst.g);

    DichotomyGroupSummary summary;
    summary.group = group->label();
    summary.g = group->format(inst.g);
    summary.gap = sti.gap;
    if (!sti.gap) {
      summary.verdict = kVerdictNoSplit;
    } else if (*sti.gap == 0) {
      summary.verdict = kVerdictFails;
    } else {
      summary.verdict = kVerdictHolds;
      summary.crossover = Rational(4 * inst.h) * group->norm(sti.witness->second) / *sti.gap;
    }

    for (const int k : inst.ks) {
      ExperimentConfig cfg;
      cfg.group = inst.group;
      cfg.g = inst.g;
      if (sti.witness) {
        cfg.a = sti.witness->first;
        cfg.b = sti.witness->second;
      }
      cfg.k = k;
      cfg.h = inst.h;
      cfg.coefficient_bound = coefficient_bound;
      cfg.limits = limits;
      const SplitSheetReport r = split_sheet_experiment(cfg);

      DichotomyRow row{summary.group, summary.g, sti.gap, k, inst.h, r.split_mass,
                       r.merged_mass, r.solution->mass, r.solution->graph.graph, row_verdict(r),
                       std::string(certificate_name(r.solution->certificate))};
      if (!sti.gap) {
        summary.consistent = summary.consistent && row.graph;
      } else if (*sti.gap == 0) {
        summary.consistent = summary.consistent && r.split_optimal;
      } else if (Rational(k) > *summary.crossover) {
        summary.consistent = summary.consistent && row.graph;
      } else if (Rational(k) < *summary.crossover) {
        summary.consistent = summary.consistent && r.split_optimal;
      }
      report.rows.push_back(std::move(row));
    }
    report.groups.push_back(std::move(summary));
  }
  return report;
}

std::vector<DichotomyInstance> default_dichotomy_grid() {
  const std::vector<int> ks{2, 3, 4, 5, 6};
  std::vector<DichotomyInstance> grid;
  grid.push_back({integer_spec(Rational(1)), Element{2}, ks, 1});
  grid.push_back({cyclic_spec(2, {Rational(1)}), Element{1}, ks, 1});
  grid.push_back({cyclic_spec(3, {Rational(1), Rational(1)}), Element{1}, ks, 1});
  grid.push_back({cyclic_spec(6, {Rational(1), Rational(2), Rational(3), Rational(2), Rational(1)}),
                  Element{2}, ks, 1});
  return grid;
}

}  // namespace flatchain
