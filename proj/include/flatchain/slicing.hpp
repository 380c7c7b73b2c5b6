#pragma once

#include <functional>
#include <map>
#include <vector>

#include "flatchain/chain.hpp"
#include "flatchain/flatnorm.hpp"

namespace flatchain {

// Integer-valued level function on cells. It must be 1-Lipschitz along the
// cell complex: a cell and any of its faces differ by at most 1.
using LevelFunction = std::map<Cell, int>;

// Tabulates fn on `cells` and on all of their faces, recursively.
LevelFunction tabulate_level(const std::vector<Cell>& cells,
                             const std::function<int(const Cell&)>& fn);

// Throws LevelFunctionNotLipschitz naming the first offending pair.
void check_lipschitz(const LevelFunction& f);

// The sublevel piece M[s]: cells of M with f <= s.
Chain slice(const Chain& m, const LevelFunction& f, int s);

struct SliceLevel {
  int s = 0;
  Chain defect;  // (dQ)[s] - d(Q[s])
  Rational defect_mass{0};
  // Every defect cell is an interface face: f straddles s | s+1 between the
  // face and one of its cofaces carrying Q.
  bool on_interface = true;
};

struct SliceProfile {
  int a = 0;
  int b = 0;
  std::vector<SliceLevel> levels;
  Rational total_defect{0};
  Rational bound{0};  // 2 (m+1) |Q| with m + 1 = dim Q
  bool bound_holds = true;
  bool structure_holds = true;
};

// Slicing defects of Q for s in [a, b].
SliceProfile slicing_defect(const Chain& q, const LevelFunction& f, int a, int b);

struct CoareaLevel {
  int s = 0;
  Rational flat_norm{0};  // F(M[s]; K[s])
  Rational defect_mass{0};
};

struct CoareaReport {
  Rational flat_norm{0};  // F(M; K)
  Chain filling;          // optimal Q for F(M; K)
  std::vector<CoareaLevel> levels;
  Rational lhs{0};  // sum_s F(M[s]; K[s])
  Rational rhs{0};  // (b - a + 1) F(M; K) + sum_s |D[s]|
  bool holds = true;
};

// Sublevel comparison: each F(M[s]; K[s]) is at most |M[s] - (dQ)[s]| +
// |Q[s]| + |D[s]|, hence at most F(M; K) + |D[s]|. K[s] keeps the cells of
// the window with f <= s, so f must be defined on every cell of the window.
CoareaReport coarea_report(const Chain& m, const LevelFunction& f, int a, int b,
                           const Box& window, const FlatNormOptions& options = {});

}  // namespace flatchain
