#include <cmath>
#include <random>

#include "doctest.h"

#include "flatchain/chain.hpp"
#include "flatchain/error.hpp"
#include "flatchain/region.hpp"
#include "test_support.hpp"

using namespace flatchain;

namespace {

GroupPtr zgroup() { return make_group(integer_spec(Rational(1))); }

Chain single(const GroupPtr& G, const Cell& c, std::int64_t v, int ambient = 3) {
  Chain m(G, c.dim(), ambient);
  m.set(c, Element{v});
  return m;
}

}  // namespace

TEST_SUITE_BEGIN("chains");

TEST_CASE("boundary of the unit square follows the sign convention") {
  const auto Z = zgroup();
  const Chain sq = single(Z, Cell({0, 0, 0}, {1, 2}), 1);
  const Chain d = boundary(sq);
  // +[e1, {2}] - [0, {2}] - [e2, {1}] + [0, {1}]
  CHECK(d.size() == 4);
  CHECK(d.coefficient(Cell({1, 0, 0}, {2})) == Element{1});
  CHECK(d.coefficient(Cell({0, 0, 0}, {2})) == Element{-1});
  CHECK(d.coefficient(Cell({0, 1, 0}, {1})) == Element{-1});
  CHECK(d.coefficient(Cell({0, 0, 0}, {1})) == Element{1});
  // listed in lexicographic cell order: (0,0,0)[1], (0,0,0)[2], (0,1,0)[1], (1,0,0)[2]
  std::vector<std::int64_t> in_order;
  for (const auto& [c, x] : d.coeffs()) in_order.push_back(x.value);
  CHECK(in_order == std::vector<std::int64_t>{1, -1, -1, 1});
}

TEST_CASE("boundary basics") {
  const auto Z = zgroup();
  const Chain cube = single(Z, Cell({0, 0, 0}, {1, 2, 3}), 1);
  CHECK(boundary(cube).size() == 6);
  CHECK(boundary(boundary(cube)).empty());

  Chain two(Z, 2, 3);
  two.set(Cell({0, 0, 0}, {1, 2}), Element{1});
  two.set(Cell({1, 0, 0}, {1, 2}), Element{1});
  const Chain d = boundary(two);
  CHECK(d.size() == 6);
  CHECK(d.coefficient(Cell({1, 0, 0}, {2})).value == 0);

  const Chain pt = single(Z, Cell({0, 0, 0}, {}), 1);
  try {
    boundary(pt);
    FAIL("0-chain boundary accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDimensionZero);
  }
}

TEST_CASE("mass, restriction, measure") {
  const auto Z = zgroup();
  const Cell c1({0, 0, 0}, {1, 2}), c2({1, 0, 0}, {1, 2});
  Chain m(Z, 2, 3);
  CHECK(mass(m) == Rational(0));
  m.set(c1, Element{2});
  m.set(c2, Element{-3});
  CHECK(mass(m) == Rational(5));

  const auto z3 = make_group(test::z3_ones());
  CHECK(mass(single(z3, c1, 1)) == Rational(1));

  Chain n(Z, 2, 3);
  n.set(c1, Element{1});
  n.set(c2, Element{2});
  CHECK(restrict(n, Region::all()) == n);
  CHECK(restrict(n, Region::none()).empty());
  const Chain r = restrict(n, Region::cell_set({c1}));
  CHECK(mass(r) == Rational(1));
  CHECK(mass(restrict(n, [&](const Cell& c) { return !(c == c1); })) == Rational(2));
  const auto mu = measure(n);
  CHECK(mu.at(c2) == Rational(2));
}

TEST_CASE("projection") {
  const auto Z = zgroup();
  CHECK(project(single(Z, Cell({0, 0, 0}, {1, 3}), 1), 3).empty());

  const Cell low({0, 0, 0}, {1, 2}), high({0, 0, 1}, {1, 2});
  Chain two(Z, 2, 3);
  two.set(low, Element{1});
  two.set(high, Element{-1});
  CHECK(project(two, 3).empty());

  const auto z3 = make_group(test::z3_ones());
  Chain ab(z3, 2, 3);
  ab.set(low, Element{1});
  ab.set(high, Element{2});
  CHECK(project(ab, 3).empty());  // 1 + 2 = 0 in Z_3
  ab.set(high, Element{1});
  const Chain p = project(ab, 3);
  CHECK(p.size() == 1);
  CHECK(p.coefficient(low) == Element{2});
}

TEST_CASE("density ratio") {
  const auto z3 = make_group(test::z3_ones());
  CHECK(density_ratio(Chain(z3, 2, 3), {0.5, 0.5, 0.0}, 3.0) == 0.0);

  Chain sheet(z3, 2, 3);
  for (int x = -15; x < 15; ++x) {
    for (int y = -15; y < 15; ++y) sheet.set(Cell({x, y, 0}, {1, 2}), Element{1});
  }
  CHECK(std::abs(density_ratio(sheet, {0.0, 0.0, 0.0}, 10.0) - 1.0) <= 0.1);

  const auto Z = zgroup();
  Chain two(Z, 2, 3);
  for (int x = -15; x < 15; ++x) {
    for (int y = -15; y < 15; ++y) {
      two.set(Cell({x, y, 0}, {1, 2}), Element{1});
      two.set(Cell({x, y, 1}, {1, 2}), Element{2});
    }
  }
  CHECK(std::abs(density_ratio(two, {0.0, 0.0, 0.5}, 10.0) - 3.0) <= 0.2);
}

TEST_CASE("multiplicity g cells") {
  const auto Z = zgroup();
  const Cell c1({0, 0, 0}, {1, 2}), c2({1, 0, 0}, {1, 2}), c3({2, 0, 0}, {1, 2});
  Chain m(Z, 2, 3);
  m.set(c1, Element{2});
  m.set(c2, Element{-2});
  m.set(c3, Element{1});
  CHECK(multiplicity_g_cells(m, Element{2}) == std::set<Cell>{c1, c2});
  Chain ones(Z, 2, 3);
  ones.set(c1, Element{1});
  ones.set(c3, Element{1});
  CHECK(multiplicity_g_cells(ones, Element{2}).empty());
  CHECK(multiplicity_g_cells(ones, Element{1}).size() == 2);
}

TEST_CASE("cofaces are the transpose of faces") {
  for (int ambient = 1; ambient <= 3; ++ambient) {
    for (int dim = 1; dim <= ambient; ++dim) {
      for (const Cell& c : cells_in_box({0, 0, 0}, {2, 2, 2}, dim, ambient)) {
        for (const auto& [f, s] : faces(c)) {
          bool found = false;
          for (const auto& [t, s2] : cofaces(f, ambient)) {
            if (t == c) {
              CHECK(s2 == s);
              found = true;
            }
          }
          CHECK(found);
        }
      }
    }
  }
}

TEST_CASE("cell keys and ordering") {
  const Cell c({1, -2, 3}, {1, 3});
  int amb = 0;
  CHECK(cell_key(c, 3) == "(1,-2,3)[1,3]");
  CHECK(parse_cell_key("(1,-2,3)[1,3]", &amb) == c);
  CHECK(amb == 3);
  // ordering equals lexicographic order of (base, sorted axis list)
  std::vector<Cell> all = cells_in_box({0, 0, 0}, {1, 1, 1}, 0, 3);
  for (int d = 1; d <= 3; ++d) {
    for (const Cell& x : cells_in_box({0, 0, 0}, {1, 1, 1}, d, 3)) all.push_back(x);
  }
  for (const Cell& a : all) {
    for (const Cell& b : all) {
      const auto key_a = std::make_pair(a.base, a.axis_list());
      const auto key_b = std::make_pair(b.base, b.axis_list());
      CHECK(((a <=> b) < 0) == (key_a < key_b));
    }
  }
}

TEST_CASE("chain identities on random chains") {
  std::mt19937_64 rng(test::seed());
  for (const GroupSpec& spec : test::all_groups()) {
    const auto G = make_group(spec);
    for (int trial = 0; trial < 30; ++trial) {
      const int ambient = 2 + static_cast<int>(rng() % 2);
      const int dim = 1 + static_cast<int>(rng() % ambient);
      const Chain m = test::random_chain(G, dim, ambient, 6, 3, rng);
      const Chain n = test::random_chain(G, dim, ambient, 6, 3, rng);
      CHECK(boundary(-m) == -boundary(m));
      CHECK(mass(m + n) <= mass(m) + mass(n));
      const Region s1 = Region::open_box({0, 0, 0}, {2, 2, 2}, ambient);
      auto s2 = [](const Cell& c) { return c.base[0] % 2 == 0; };
      CHECK(restrict(restrict(m, s1), s2) ==
            restrict(m, [&](const Cell& c) { return s1.contains(c) && s2(c); }));
      CHECK(mass(restrict(m, s2)) + mass(restrict(m, [&](const Cell& c) { return !s2(c); })) ==
            mass(m));
      if (dim < ambient) {
        for (int axis = 1; axis <= ambient; ++axis) CHECK(mass(project(m, axis)) <= mass(m));
      }
    }
  }
}

TEST_SUITE_END();
