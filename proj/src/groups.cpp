#include "flatchain/groups.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

#include "flatchain/error.hpp"

namespace flatchain {

namespace {

constexpr std::int64_t kMaxTabulatedOrder = 512;
constexpr std::int64_t kMaxFiniteOrder = 1 << 20;

std::string residue_key(const std::vector<int>& r) {
  std::string s = "(";
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(r[i]);
  }
  return s + ")";
}

[[noreturn]] void axiom_violation(const std::string& axiom,
                                  const std::string& message,
                                  nlohmann::json witness) {
  nlohmann::json detail = {{"axiom", axiom}, {"witness", std::move(witness)}};
  throw Error(ErrorKind::kNormAxiomViolation, message, std::move(detail));
}

}  // namespace

std::int64_t NormedGroup::order() const {
  return is_finite() ? order_ : 2 * bound_ + 1;
}

bool NormedGroup::contains(Element x) const {
  if (is_finite()) return x.value >= 0 && x.value < order_;
  return x.value >= -bound_ && x.value <= bound_;
}

Element NormedGroup::add(Element x, Element y) const {
  if (!is_finite()) {
    const std::int64_t s = x.value + y.value;
    if (s < -bound_ || s > bound_) {
      throw Error(ErrorKind::kCoefficientOverflow,
                  "integer coefficient " + std::to_string(s) +
                      " outside model bound " + std::to_string(bound_),
                  {{"value", s}, {"bound", bound_}});
    }
    return Element{s};
  }
  if (!add_table_.empty()) {
    return Element{add_table_[static_cast<std::size_t>(x.value * order_ + y.value)]};
  }
  // Mixed-radix digit-wise addition, least significant factor last.
  std::int64_t xv = x.value, yv = y.value, out = 0, place = 1;
  for (std::size_t i = orders_.size(); i-- > 0;) {
    const int n = orders_[i];
    const std::int64_t d = (xv % n + yv % n) % n;
    out += d * place;
    place *= n;
    xv /= n;
    yv /= n;
  }
  return Element{out};
}

Element NormedGroup::neg(Element x) const {
  if (!is_finite()) return Element{-x.value};
  std::int64_t xv = x.value, out = 0, place = 1;
  for (std::size_t i = orders_.size(); i-- > 0;) {
    const int n = orders_[i];
    const std::int64_t d = (n - xv % n) % n;
    out += d * place;
    place *= n;
    xv /= n;
  }
  return Element{out};
}

Rational NormedGroup::norm(Element x) const {
  if (!is_finite()) return scale_ * Rational(x.value < 0 ? -x.value : x.value);
  return norm_table_[static_cast<std::size_t>(x.value)];
}

std::vector<Element> NormedGroup::elements() const {
  std::vector<Element> out;
  if (is_finite()) {
    out.reserve(static_cast<std::size_t>(order_));
    for (std::int64_t c = 0; c < order_; ++c) out.push_back(Element{c});
  } else {
    for (std::int64_t v = -bound_; v <= bound_; ++v) out.push_back(Element{v});
  }
  return out;
}

std::vector<Element> NormedGroup::nonzero_elements() const {
  auto all = elements();
  std::erase_if(all, [](Element e) { return e.value == 0; });
  return all;
}

std::vector<int> NormedGroup::residues(Element x) const {
  if (!is_finite()) return {static_cast<int>(x.value)};
  std::vector<int> r(orders_.size());
  std::int64_t v = x.value;
  for (std::size_t i = orders_.size(); i-- > 0;) {
    r[i] = static_cast<int>(v % orders_[i]);
    v /= orders_[i];
  }
  return r;
}

Element NormedGroup::from_residues(std::span<const int> residues) const {
  if (!is_finite()) {
    if (residues.size() != 1) {
      throw Error(ErrorKind::kInvalidInput, "integer element needs one value");
    }
    return Element{residues[0]};
  }
  if (residues.size() != orders_.size()) {
    throw Error(ErrorKind::kInvalidInput,
                "element has " + std::to_string(residues.size()) +
                    " residues, group has " + std::to_string(orders_.size()) +
                    " factors");
  }
  std::int64_t code = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    if (residues[i] < 0 || residues[i] >= orders_[i]) {
      throw Error(ErrorKind::kInvalidInput,
                  "residue " + std::to_string(residues[i]) + " not in [0, " +
                      std::to_string(orders_[i]) + ")");
    }
    code = code * orders_[i] + residues[i];
  }
  return Element{code};
}

std::string NormedGroup::format(Element x) const {
  if (!is_finite()) return std::to_string(x.value);
  return residue_key(residues(x));
}

Element NormedGroup::parse(std::string_view text) const {
  auto bad = [&] {
    return Error(ErrorKind::kInvalidInput,
                 "malformed group element '" + std::string(text) + "'");
  };
  auto parse_int = [&](std::string_view s) -> std::int64_t {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (s.empty()) throw bad();
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw bad();
    for (std::size_t j = i; j < s.size(); ++j) {
      if (s[j] < '0' || s[j] > '9') throw bad();
    }
    if (s.size() > 18) throw bad();
    return std::stoll(std::string(s));
  };
  if (!is_finite()) {
    const std::int64_t v = parse_int(text);
    if (v < -bound_ || v > bound_) {
      throw Error(ErrorKind::kCoefficientOverflow,
                  "integer coefficient " + std::to_string(v) +
                      " outside model bound " + std::to_string(bound_),
                  {{"value", v}, {"bound", bound_}});
    }
    return Element{v};
  }
  std::vector<int> r;
  if (!text.empty() && text.front() == '(') {
    if (text.back() != ')') throw bad();
    std::string_view inner = text.substr(1, text.size() - 2);
    std::size_t start = 0;
    while (true) {
      const auto comma = inner.find(',', start);
      r.push_back(static_cast<int>(parse_int(inner.substr(start, comma - start))));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  } else {
    r.push_back(static_cast<int>(parse_int(text)));
  }
  return from_residues(r);
}

std::string NormedGroup::label() const {
  if (!is_finite()) {
    return "Z(scale=" + to_string(scale_) + ",N=" + std::to_string(bound_) + ")";
  }
  std::string s;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    if (i) s += "x";
    s += "Z_" + std::to_string(orders_[i]);
  }
  return s;
}

NormedGroup validate_group(const GroupSpec& spec) {
  NormedGroup g;
  g.kind_ = spec.kind;
  g.spec_ = spec;

  if (spec.kind == GroupSpec::Kind::kBoundedInt) {
    if (spec.scale <= 0) {
      axiom_violation("positivity", "integer norm scale must be positive",
                      {{"x", "1"}, {"norm", to_string(spec.scale)}});
    }
    if (spec.bound < 1) {
      throw Error(ErrorKind::kInvalidInput, "integer model bound must be >= 1");
    }
    g.scale_ = spec.scale;
    g.bound_ = spec.bound;
    return g;
  }

  if (spec.orders.empty()) {
    throw Error(ErrorKind::kEmptyGroup, "finite product has no factors");
  }
  std::int64_t order = 1;
  for (int n : spec.orders) {
    if (n < 1) {
      throw Error(ErrorKind::kInvalidInput,
                  "cyclic order must be >= 1, got " + std::to_string(n));
    }
    order *= n;
    if (order > kMaxFiniteOrder) {
      throw Error(ErrorKind::kSearchSpaceExceeded, "finite group too large");
    }
  }
  g.orders_ = spec.orders;
  g.order_ = order;
  g.norm_table_.assign(static_cast<std::size_t>(order), Rational(0));

  std::vector<bool> seen(static_cast<std::size_t>(order), false);
  for (const auto& [key, value] : spec.norms) {
    const Element e = g.from_residues(key);
    g.norm_table_[static_cast<std::size_t>(e.value)] = value;
    seen[static_cast<std::size_t>(e.value)] = true;
  }
  for (std::int64_t c = 1; c < order; ++c) {
    if (!seen[static_cast<std::size_t>(c)]) {
      throw Error(ErrorKind::kInvalidInput,
                  "no norm given for element " + g.format(Element{c}));
    }
  }

  if (order <= kMaxTabulatedOrder) {
    // Fill the table with the digit-wise rule before relying on it.
    std::vector<std::int32_t> table(static_cast<std::size_t>(order * order));
    for (std::int64_t x = 0; x < order; ++x) {
      for (std::int64_t y = 0; y < order; ++y) {
        table[static_cast<std::size_t>(x * order + y)] =
            static_cast<std::int32_t>(g.add(Element{x}, Element{y}).value);
      }
    }
    g.add_table_ = std::move(table);
  }

  if (g.norm_table_[0] != 0) {
    axiom_violation("zero", "norm of the zero element must be 0",
                    {{"x", g.format(Element{0})}, {"norm", to_string(g.norm_table_[0])}});
  }
  for (std::int64_t c = 1; c < order; ++c) {
    if (g.norm_table_[static_cast<std::size_t>(c)] <= 0) {
      axiom_violation("positivity",
                      "nonzero element " + g.format(Element{c}) + " has norm <= 0",
                      {{"x", g.format(Element{c})},
                       {"norm", to_string(g.norm_table_[static_cast<std::size_t>(c)])}});
    }
  }
  for (std::int64_t x = 0; x < order; ++x) {
    for (std::int64_t y = 0; y < order; ++y) {
      const Element s = g.add(Element{x}, Element{y});
      if (g.norm(s) > g.norm(Element{x}) + g.norm(Element{y})) {
        axiom_violation("triangle",
                        "|" + g.format(Element{x}) + " + " + g.format(Element{y}) +
                            "| = " + to_string(g.norm(s)) + " exceeds " +
                            to_string(g.norm(Element{x}) + g.norm(Element{y})),
                        {{"x", g.format(Element{x})}, {"y", g.format(Element{y})}});
      }
    }
  }
  for (std::int64_t x = 1; x < order; ++x) {
    if (g.norm(g.neg(Element{x})) != g.norm(Element{x})) {
      axiom_violation("symmetry",
                      "|-x| != |x| for x = " + g.format(Element{x}),
                      {{"x", g.format(Element{x})}});
    }
  }
  return g;
}

GroupPtr make_group(const GroupSpec& spec) {
  return std::make_shared<const NormedGroup>(validate_group(spec));
}

GroupSpec cyclic_spec(int n, const std::vector<Rational>& norms) {
  GroupSpec spec;
  spec.kind = GroupSpec::Kind::kFiniteProduct;
  spec.orders = {n};
  for (std::size_t i = 0; i < norms.size(); ++i) {
    spec.norms[{static_cast<int>(i + 1)}] = norms[i];
  }
  return spec;
}

GroupSpec integer_spec(Rational scale, std::int64_t bound) {
  GroupSpec spec;
  spec.kind = GroupSpec::Kind::kBoundedInt;
  spec.scale = scale;
  spec.bound = bound;
  return spec;
}

StiReport sti_gap(const NormedGroup& group, Element g) {
  if (group.is_zero(g)) {
    throw Error(ErrorKind::kZeroElement, "strong triangle gap needs g != 0");
  }
  StiReport report;
  report.g = g;
  std::optional<Rational> best;

  if (group.is_finite()) {
    if (!group.contains(g)) {
      throw Error(ErrorKind::kInvalidInput, "element not in group");
    }
    for (const Element a : group.nonzero_elements()) {
      const Element b = group.sub(g, a);
      if (group.is_zero(b)) continue;
      const Rational total = group.norm(a) + group.norm(b);
      if (!best || total < *best) {
        best = total;
        report.witness = {a, b};
      }
    }
  } else {
    // Model of Z: decompositions are searched in Z itself, not in [-N, N].
    const std::int64_t gv = g.value;
    const std::int64_t absg = std::llabs(gv);
    const std::int64_t radius = std::max<std::int64_t>(2 * absg, 4);
    for (std::int64_t a = -radius; a <= radius; ++a) {
      if (a == 0 || a == gv) continue;
      const std::int64_t b = gv - a;
      const Rational total = group.scale() * Rational(std::llabs(a) + std::llabs(b));
      if (!best || total < *best) {
        best = total;
        report.witness = {Element{a}, Element{b}};
      }
    }
    // For |a| > radius: |a| + |g - a| >= 2|a| - |g| >= 2(radius + 1) - |g|.
    report.search_radius = radius;
    report.tail_bound = group.scale() * Rational(2 * (radius + 1) - absg);
    if (best && *report.tail_bound < *best) {
      throw std::logic_error("sti_gap: search radius does not certify the infimum");
    }
  }

  if (best) {
    report.gap = *best - group.norm(g);
    report.holds = *report.gap > 0;
  } else {
    report.holds = true;
  }
  return report;
}

Rational min_nonzero_norm(const NormedGroup& group) {
  if (!group.is_finite()) return group.scale();
  if (group.order() < 2) {
    throw Error(ErrorKind::kTrivialGroup, "trivial group has no nonzero element");
  }
  Rational best = group.norm(Element{1});
  for (const Element x : group.nonzero_elements()) best = std::min(best, group.norm(x));
  return best;
}

}  // namespace flatchain
