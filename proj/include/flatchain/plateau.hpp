#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flatchain/chain.hpp"
#include "flatchain/label_search.hpp"
#include "flatchain/region.hpp"

namespace flatchain {

// Find an m-chain M on the window with dM = boundary minimizing mass.
struct PlateauProblem {
  GroupPtr group;
  Chain boundary;  // (m-1)-chain
  int dim = 2;     // m
  Box window;
  // Integer model: coefficients of M range over [-bound, bound]. 0 picks
  // max(2 max|B|, 4) capped by the group bound. Ignored for finite groups.
  std::int64_t coefficient_bound = 0;
  // Multiplicity and axis used by the graphness report; axis 0 means the
  // last ambient axis.
  std::optional<Element> multiplicity;
  int graph_axis = 0;
};

struct PlateauOptions {
  SearchLimits limits;
  // Candidates costing more than this are pruned (ties are kept).
  std::optional<Rational> upper_bound;
};

struct GraphnessReport {
  int axis = 0;
  std::optional<Element> g;
  bool graph = false;
  std::size_t columns = 0;
  std::size_t offending_columns = 0;
  std::size_t vertical_cells = 0;
};

// Columns are the non-vertical cells (those not spanning `axis`) grouped by
// their projection. M is a graph of multiplicity g when every column holds a
// single cell with coefficient g or -g. Vertical cells are counted, not
// judged. Without g, the coefficient of the first column decides.
GraphnessReport graphness(const Chain& m, int axis, std::optional<Element> g);

struct PlateauResult {
  Rational mass{0};
  Chain minimizer;
  Certificate certificate = Certificate::kBranchAndBound;
  std::int64_t nodes = 0;
  std::int64_t coefficient_bound = 0;  // integer model only
  // Integer model: true when no labeling using a coefficient beyond the bound
  // can beat the optimum found, so the optimum is exact over all of Z.
  std::optional<bool> coefficient_bound_sufficient;
  // Sum of |P_j| over the projected columns (codimension one only).
  std::optional<Rational> projection_lower_bound;
  GraphnessReport graph;
};

PlateauResult solve(const PlateauProblem& problem, const PlateauOptions& options = {});

struct MinimizerList {
  Rational mass{0};
  std::vector<Chain> minimizers;  // lexicographic order of labelings
  bool truncated = false;
};

MinimizerList enumerate_minimizers(const PlateauProblem& problem, std::size_t limit,
                                   const PlateauOptions& options = {});

// Local lower-density check. Minimizes |M|K + dQ| over (m+1)-chains Q on the
// cells of `qspace` whose barycenter is within Chebyshev distance r of supp M,
// and compares with (1 - lambda r) |M|K|. A violation means some nearby
// filling saves more than lambda r |M|K|.
struct LambdaReport {
  Rational lambda{0};
  int r = 0;
  Rational restricted_mass{0};  // |M|K|
  Rational lhs{0};              // (1 - lambda r) |M|K|
  Rational min_rhs{0};          // min over Q of |M|K + dQ|
  std::optional<Rational> worst_ratio;  // min_rhs / |M|K|
  bool violated = false;
  std::optional<Chain> violating_filling;
  std::size_t searched_cells = 0;
  Certificate certificate = Certificate::kBranchAndBound;
  std::string caveat;
};

LambdaReport lambda_certificate(const Chain& m, const Rational& lambda, int r,
                                const Region& k, const Box& qspace,
                                std::int64_t coefficient_bound = 0,
                                const SearchLimits& limits = {});

// Mass lower bound for a chain whose projection along `axis` is g[Omega]:
// when no non-vertical cell carries exactly g, every column over Omega splits
// g into at least two nonzero parts and costs at least |g| + gap.
struct ColumnTrace {
  Cell column;  // projected cell
  std::vector<Element> coefficients;
  Element sum;
  Rational column_mass{0};
  bool ok = true;
};

struct ProjectionBoundReport {
  bool applicable = false;
  Rational mass{0};
  std::size_t omega_cells = 0;
  std::optional<Rational> gap;     // nullopt: +infinity
  std::optional<Rational> bound;   // (|g| + gap) |Omega|, nullopt: +infinity
  bool holds = false;
  std::vector<ColumnTrace> columns;
  std::string note;
};

ProjectionBoundReport projection_bound(const Chain& m, int axis, Element g);

}  // namespace flatchain
