#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "flatchain/groups.hpp"

namespace flatchain {

enum class Certificate { kExhaustive, kBranchAndBound, kIncomplete };

// "exhaustive", "bnb", "incomplete".
std::string_view certificate_name(Certificate c);

struct SearchLimits {
  std::size_t max_cells = 4096;        // variable cells
  std::size_t max_domain = 257;        // coefficient choices per cell
  std::chrono::milliseconds time_budget{0};  // 0 = unlimited
  std::int64_t max_nodes = 0;          // 0 = unlimited
  int threads = 1;
  // Small instances are enumerated outright; false forces branch-and-bound
  // (used to compare the two paths).
  bool exhaustive_fallback = true;
};

// Group-valued labeling problem shared by the flat-norm, Plateau and
// certificate solvers:
//
//   minimize  sum_i w_i |x_i|  +  sum_f w_f |t_f - sum_{(i,s) in f} s x_i|
//
// over x_i in `domain`. A hard face instead requires t_f = sum s x_i. A sum
// group is an implied constraint sum_{i in group} x_i = T used only for
// bounding (and pruning) and must be satisfied by every feasible labeling.
// Variables are branched in index order and values in `domain` order; among
// optimal labelings the lexicographically first (in that order) is returned.
struct LabelProblem {
  struct Term {
    std::uint32_t var;
    std::int8_t sign;
  };
  struct Face {
    Element target;
    Rational weight{1};
    bool hard = false;
    std::vector<Term> terms;
  };
  struct SumGroup {
    Element target;
    std::vector<std::uint32_t> vars;
  };

  GroupPtr group;
  std::vector<Element> domain;
  std::vector<Rational> var_weight;
  std::vector<Face> faces;
  std::vector<SumGroup> sum_groups;
  // Labelings costing more than this are not reported.
  std::optional<Rational> upper_bound;

  std::size_t num_vars() const { return var_weight.size(); }
};

struct LabelSolution {
  bool feasible = false;
  Rational cost{0};
  std::vector<Element> values;
  Certificate certificate = Certificate::kBranchAndBound;
  std::int64_t nodes = 0;
};

// Zero first, then by norm, then by code (integers: 0, 1, -1, 2, -2, ...).
std::vector<Element> ranked_domain(const NormedGroup& group, std::int64_t int_bound);

// Cost of a complete labeling, nullopt if a hard face or sum group fails.
std::optional<Rational> evaluate_labels(const LabelProblem& problem,
                                        std::span<const Element> values);

// Plain enumeration of every labeling. Independent of the branch-and-bound
// path; used for tiny instances.
LabelSolution exhaustive_labels(const LabelProblem& problem);

// Exhaustive when there are at most 10 variables and at most 2^20 labelings,
// branch-and-bound otherwise. Throws SearchSpaceExceeded above the limits.
// The result does not depend on `limits.threads`.
LabelSolution solve_labels(const LabelProblem& problem, const SearchLimits& limits);

struct LabelEnumeration {
  std::vector<std::vector<Element>> labelings;  // lexicographic order
  bool truncated = false;
  Certificate certificate = Certificate::kBranchAndBound;
};

// Every labeling of cost exactly `cost`, stopping after `limit`.
LabelEnumeration enumerate_labels(const LabelProblem& problem, const Rational& cost,
                                  std::size_t limit, const SearchLimits& limits);

}  // namespace flatchain
