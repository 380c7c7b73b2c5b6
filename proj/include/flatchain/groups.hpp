#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flatchain/rational.hpp"

namespace flatchain {

// A coefficient. For finite products this is the mixed-radix code of the
// residue tuple (first factor most significant, so code order is the
// lexicographic order of residues); for the integer model it is the integer.
struct Element {
  std::int64_t value = 0;

  auto operator<=>(const Element&) const = default;
};

// Unvalidated description of a coefficient group, as read from JSON.
struct GroupSpec {
  enum class Kind { kFiniteProduct, kBoundedInt };

  Kind kind = Kind::kBoundedInt;
  // FiniteProduct: cyclic orders n_1..n_k and the norm of every element keyed
  // by its residue tuple. The zero element may be omitted.
  std::vector<int> orders;
  std::map<std::vector<int>, Rational> norms;
  // BoundedInt: |n| = scale * abs(n), coefficients restricted to [-bound, bound].
  Rational scale{1};
  std::int64_t bound = 16;
};

class NormedGroup {
 public:
  using Kind = GroupSpec::Kind;

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::kFiniteProduct; }
  const std::vector<int>& orders() const { return orders_; }
  const Rational& scale() const { return scale_; }
  std::int64_t bound() const { return bound_; }

  // Number of elements (finite) or of representable integers 2N+1.
  std::int64_t order() const;

  Element zero() const { return Element{0}; }
  bool is_zero(Element x) const { return x.value == 0; }
  bool contains(Element x) const;

  // Throw CoefficientOverflow when an integer result leaves [-N, N].
  Element add(Element x, Element y) const;
  Element neg(Element x) const;
  Element sub(Element x, Element y) const { return add(x, neg(y)); }
  Rational norm(Element x) const;

  // All elements in code order (finite) or -N..N (integer model).
  std::vector<Element> elements() const;
  std::vector<Element> nonzero_elements() const;

  std::vector<int> residues(Element x) const;
  Element from_residues(std::span<const int> residues) const;

  // Finite: "(r1,...,rk)". Integer: "n".
  std::string format(Element x) const;
  // Inverse of format(). A finite group with one factor also accepts "r".
  Element parse(std::string_view text) const;

  // Short human label, e.g. "Z_3" or "Z(scale=1/2,N=16)".
  std::string label() const;

  const GroupSpec& spec() const { return spec_; }

 private:
  friend NormedGroup validate_group(const GroupSpec& spec);
  NormedGroup() = default;

  Kind kind_ = Kind::kBoundedInt;
  GroupSpec spec_;
  std::vector<int> orders_;
  std::int64_t order_ = 0;
  std::vector<Rational> norm_table_;   // by code
  std::vector<std::int32_t> add_table_;  // order^2 when small, else empty
  Rational scale_{1};
  std::int64_t bound_ = 0;
};

using GroupPtr = std::shared_ptr<const NormedGroup>;

// Checks every norm axiom (exhaustively over all pairs for finite products)
// and returns the validated group. Throws EmptyGroup or NormAxiomViolation;
// the violation detail names the axiom and the witness.
NormedGroup validate_group(const GroupSpec& spec);
GroupPtr make_group(const GroupSpec& spec);

// Z_n with norms given for 1..n-1.
GroupSpec cyclic_spec(int n, const std::vector<Rational>& norms);
GroupSpec integer_spec(Rational scale = Rational(1), std::int64_t bound = 16);

// Strong triangle inequality report for one element g.
//
// gap = inf{ |a| + |b| : a, b != 0, a + b = g } - |g|, nullopt when g has no
// decomposition into two nonzero parts (gap = +infinity).
struct StiReport {
  Element g;
  std::optional<Rational> gap;
  std::optional<std::pair<Element, Element>> witness;
  bool holds = false;
  // Integer model only: |a| was searched up to this radius, and every a
  // beyond it has |a| + |g - a| >= tail_bound >= the best value found.
  std::int64_t search_radius = 0;
  std::optional<Rational> tail_bound;
};

StiReport sti_gap(const NormedGroup& group, Element g);

Rational min_nonzero_norm(const NormedGroup& group);

}  // namespace flatchain
