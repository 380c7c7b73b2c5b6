#include <random>

#include "doctest.h"

#include "flatchain/error.hpp"
#include "flatchain/label_search.hpp"
#include "test_support.hpp"

using namespace flatchain;

namespace {

LabelProblem random_problem(const GroupPtr& G, std::mt19937_64& rng, int max_vars) {
  LabelProblem p;
  p.group = G;
  p.domain = ranked_domain(*G, 2);
  const int n = 1 + static_cast<int>(rng() % max_vars);
  static const Rational weights[] = {Rational(0), Rational(1, 2), Rational(1), Rational(2)};
  for (int i = 0; i < n; ++i) p.var_weight.push_back(weights[rng() % 4]);
  const int faces = 1 + static_cast<int>(rng() % 8);
  for (int f = 0; f < faces; ++f) {
    LabelProblem::Face face;
    face.target = test::random_element(*G, rng, 2);
    face.weight = weights[1 + rng() % 3];
    face.hard = rng() % 5 == 0;
    const int terms = 1 + static_cast<int>(rng() % 3);
    std::vector<bool> used(n, false);
    for (int t = 0; t < terms; ++t) {
      const auto v = static_cast<std::uint32_t>(rng() % n);
      if (used[v]) continue;
      used[v] = true;
      face.terms.push_back({v, static_cast<std::int8_t>(rng() % 2 ? 1 : -1)});
    }
    p.faces.push_back(std::move(face));
  }
  if (rng() % 3 == 0 && n >= 2) {
    LabelProblem::SumGroup grp;
    grp.target = test::random_element(*G, rng, 2);
    grp.vars = {0, 1};
    p.sum_groups.push_back(grp);
  }
  if (rng() % 4 == 0) p.upper_bound = Rational(static_cast<std::int64_t>(rng() % 6));
  return p;
}

struct Oracle {
  bool feasible = false;
  Rational cost{0};
  std::vector<Element> values;
  std::vector<std::vector<Element>> all;
};

// Lexicographic enumeration in domain order; keeps the first strict minimum.
Oracle oracle(const LabelProblem& p) {
  Oracle o;
  const std::size_t n = p.num_vars();
  std::vector<std::size_t> idx(n, 0);
  std::vector<std::vector<Element>> labelings;
  std::vector<Rational> costs;
  while (true) {
    std::vector<Element> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = p.domain[idx[i]];
    const auto c = evaluate_labels(p, x);
    if (c && (!p.upper_bound || *c <= *p.upper_bound)) {
      labelings.push_back(x);
      costs.push_back(*c);
      if (!o.feasible || *c < o.cost) {
        o.feasible = true;
        o.cost = *c;
        o.values = x;
      }
    }
    bool carry = true;
    for (std::size_t i = n; i > 0 && carry;) {
      --i;
      if (++idx[i] < p.domain.size()) {
        carry = false;
      } else {
        idx[i] = 0;
      }
    }
    if (carry) break;
  }
  for (std::size_t k = 0; k < labelings.size(); ++k) {
    if (o.feasible && costs[k] == o.cost) o.all.push_back(labelings[k]);
  }
  return o;
}

}  // namespace

TEST_SUITE_BEGIN("search");

TEST_CASE("ranked domain") {
  const auto Z = make_group(integer_spec(Rational(1)));
  const auto d = ranked_domain(*Z, 2);
  REQUIRE(d.size() == 5);
  CHECK(d[0] == Element{0});
  CHECK(d[1] == Element{1});
  CHECK(d[2] == Element{-1});
  CHECK(d[3] == Element{2});
  CHECK(d[4] == Element{-2});
  const auto z6 = make_group(test::z6_table());
  const auto e = ranked_domain(*z6, 0);
  std::vector<std::int64_t> codes;
  for (auto x : e) codes.push_back(x.value);
  CHECK(codes == std::vector<std::int64_t>{0, 1, 5, 2, 4, 3});
}

TEST_CASE("branch-and-bound, exhaustive and the oracle agree on random problems") {
  std::mt19937_64 rng(test::seed() + 11);
  std::vector<GroupSpec> specs = test::finite_groups();
  specs.push_back(integer_spec(Rational(1), 16));
  specs.push_back(integer_spec(Rational(2, 3), 16));
  int compared = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const auto G = make_group(specs[trial % specs.size()]);
    const LabelProblem p = random_problem(G, rng, G->order() > 4 ? 5 : 6);
    const Oracle o = oracle(p);

    const LabelSolution ex = exhaustive_labels(p);
    SearchLimits bnb;
    bnb.exhaustive_fallback = false;
    const LabelSolution b1 = solve_labels(p, bnb);
    bnb.threads = 4;
    const LabelSolution b4 = solve_labels(p, bnb);

    CHECK(ex.feasible == o.feasible);
    CHECK(b1.feasible == o.feasible);
    CHECK(b4.feasible == o.feasible);
    if (o.feasible) {
      CHECK(ex.cost == o.cost);
      CHECK(b1.cost == o.cost);
      CHECK(b4.cost == o.cost);
      CHECK(ex.values == o.values);
      CHECK(b1.values == o.values);
      CHECK(b4.values == o.values);
      CHECK(b1.certificate == Certificate::kBranchAndBound);
      CHECK(ex.certificate == Certificate::kExhaustive);

      const LabelEnumeration en = enumerate_labels(p, o.cost, 1000, {});
      CHECK_FALSE(en.truncated);
      CHECK(en.labelings == o.all);
      if (o.all.size() > 1) {
        const LabelEnumeration cut = enumerate_labels(p, o.cost, 1, {});
        CHECK(cut.truncated);
        CHECK(cut.labelings.size() == 1);
      }
      ++compared;
    }
  }
  CHECK(compared > 100);
}

TEST_CASE("limits") {
  const auto Z = make_group(integer_spec(Rational(1)));
  LabelProblem p;
  p.group = Z;
  p.domain = ranked_domain(*Z, 4);
  for (int i = 0; i < 60; ++i) p.var_weight.push_back(Rational(1));
  std::mt19937_64 rng(5);
  for (int f = 0; f < 80; ++f) {
    LabelProblem::Face face;
    face.target = Element{static_cast<std::int64_t>(rng() % 7) - 3};
    for (int t = 0; t < 3; ++t) {
      face.terms.push_back({static_cast<std::uint32_t>((f + 7 * t) % 60),
                            static_cast<std::int8_t>(t % 2 ? -1 : 1)});
    }
    p.faces.push_back(face);
  }

  SearchLimits few;
  few.max_cells = 10;
  try {
    solve_labels(p, few);
    FAIL("cell limit ignored");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kSearchSpaceExceeded);
  }

  SearchLimits nodes;
  nodes.max_nodes = 5000;
  const LabelSolution s = solve_labels(p, nodes);
  CHECK(s.certificate == Certificate::kIncomplete);
  // the incumbent, if any, is a genuine labeling with its true cost
  if (s.feasible) CHECK(*evaluate_labels(p, s.values) == s.cost);

  SearchLimits timed;
  timed.time_budget = std::chrono::milliseconds(1);
  const LabelSolution t = solve_labels(p, timed);
  CHECK(t.certificate == Certificate::kIncomplete);
}

TEST_CASE("upper bound keeps ties and drops worse labelings") {
  const auto z3 = make_group(test::z3_ones());
  LabelProblem p;
  p.group = z3;
  p.domain = ranked_domain(*z3, 0);
  p.var_weight = {Rational(1)};
  LabelProblem::Face f;
  f.target = Element{1};
  f.hard = true;
  f.terms = {{0, 1}};
  p.faces.push_back(f);
  p.upper_bound = Rational(1);
  CHECK(solve_labels(p, {}).feasible);
  p.upper_bound = Rational(1, 2);
  CHECK_FALSE(solve_labels(p, {}).feasible);
}

TEST_SUITE_END();
