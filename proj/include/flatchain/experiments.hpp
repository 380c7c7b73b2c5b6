#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "flatchain/plateau.hpp"

namespace flatchain {

// Two stacked k x k sheets at heights 0 and h carrying boundary data a and b.
// The multiplicity of the merged sheet is g = a + b. With no b the instance is
// the single sheet g[Sigma_0] (groups where g has no splitting).
struct ExperimentConfig {
  GroupSpec group;
  Element g;
  std::optional<Element> a;
  std::optional<Element> b;
  int k = 2;
  int h = 1;
  int margin = 0;  // extra lattice steps around the sheet in x and y
  std::int64_t coefficient_bound = 0;
  SearchLimits limits;
};

struct SplitSheetReport {
  std::string group;
  Element g;
  std::optional<Element> a;
  std::optional<Element> b;
  int k = 0;
  int h = 0;
  StiReport sti;
  Rational norm_g{0};
  std::optional<Rational> norm_a_plus_norm_b;  // |a| + |b|
  std::optional<Rational> split_mass;           // a[Sigma_0] + b[Sigma_h]
  Rational merged_mass{0};  // g[Sigma_0] - b[walls], or g[Sigma_0] alone
  std::optional<PlateauResult> solution;  // always set by the experiment
  bool split_optimal = false;
  bool merged_optimal = false;
};

SplitSheetReport split_sheet_experiment(const ExperimentConfig& cfg);

// The stacked-sheet boundary and the two explicit competitors.
Chain sheet(const GroupPtr& group, int k, int z, Element coefficient);
// d(c [slab]) - c[Sigma_h] + c[Sigma_0]: the vertical walls over dSigma with
// coefficient c, oriented so that d(walls) = c dSigma_0 - c dSigma_h.
Chain walls(const GroupPtr& group, int k, int h, Element coefficient);

struct ProbeRow {
  std::string group;
  Rational min_norm{0};
  Element a;  // element of smallest nonzero norm
  Element coefficient;  // g + a
  Rational optimum{0};
  Rational expected{0};  // |g + a| k^2
  bool optimal = false;
};

struct ProbeReport {
  std::vector<ProbeRow> rows;
  bool decreasing = false;
  std::string verdict;
};

// For each group, solves the Plateau problem for (g + a) d[Sigma] with a of
// smallest nonzero norm and checks that the sheet (g + a)[Sigma] is optimal.
// `g` is given as an integer and interpreted in each group.
ProbeReport near_zero_norm_probe(const std::vector<GroupSpec>& groups, std::int64_t g, int k,
                                 const SearchLimits& limits = {});

struct DichotomyRow {
  std::string group;
  std::string g;
  std::optional<Rational> gap;
  int k = 0;
  int h = 0;
  std::optional<Rational> split_mass;
  Rational merged_mass{0};
  Rational optimum{0};
  bool graph = false;
  std::string verdict;
  std::string certificate;
};

struct DichotomyGroupSummary {
  std::string group;
  std::string g;
  std::optional<Rational> gap;
  std::optional<Rational> crossover;  // 4 h |b| / gap, when gap > 0 is finite
  std::string verdict;
  bool consistent = true;  // solver results agree with the verdict
};

struct DichotomyReport {
  std::vector<DichotomyRow> rows;
  std::vector<DichotomyGroupSummary> groups;
};

struct DichotomyInstance {
  GroupSpec group;
  Element g;
  std::vector<int> ks;
  int h = 1;
};

// a and b come from the strong-triangle witness of g.
DichotomyReport dichotomy_experiment(const std::vector<DichotomyInstance>& grid,
                                     std::int64_t coefficient_bound = 0,
                                     const SearchLimits& limits = {});

std::vector<DichotomyInstance> default_dichotomy_grid();

// Report serialization. Output is byte-stable for equal reports.
std::string dichotomy_csv(const DichotomyReport& report);
nlohmann::ordered_json dichotomy_json(const DichotomyReport& report);
DichotomyReport dichotomy_from_json(const nlohmann::json& j);
std::string dichotomy_svg(const DichotomyReport& report);

struct ReportPaths {
  std::string csv;
  std::string json;
  std::string svg;
};

// Writes every non-empty path. Throws IoFailure.
void emit_report(const DichotomyReport& report, const ReportPaths& paths);

}  // namespace flatchain
