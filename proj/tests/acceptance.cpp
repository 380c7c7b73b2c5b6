// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "flatchain/error.hpp"
#include "flatchain/experiments.hpp"
#include "flatchain/flatnorm.hpp"
#include "flatchain/plateau.hpp"
#include "flatchain/slicing.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace flatchain;
using test::make_box;

namespace {

// Counts checks and keeps the first few failure messages.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (messages_.size() < 5) messages_.push_back(what);
  }
  void note(const std::string& s) { notes_.push_back(s); }

  bool ok() const { return failures_ == 0; }
  std::string summary() const {
    std::ostringstream out;
    out << checks_ << " checks";
    if (failures_ > 0) out << ", " << failures_ << " failed";
    for (const std::string& n : notes_) out << "; " << n;
    for (const std::string& m : messages_) out << "\n      " << m;
    return out.str();
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::vector<std::string> messages_;
  std::vector<std::string> notes_;
};

std::string str(const Rational& r) { return to_string(r); }

// Reference gap: minimum of |a| + |g - a| - |g| over every split into two
// nonzero representable parts. Exhaustive for the finite tables; for the
// integer model |a| + |g - a| >= 2|a| - |g| grows past any candidate once |a|
// exceeds the bound we scan.
std::optional<Rational> reference_gap(const NormedGroup& G, Element g) {
  std::optional<Rational> best;
  for (const Element a : G.nonzero_elements()) {
    if (!G.is_finite() && std::abs(g.value - a.value) > G.bound()) continue;
    const Element b = G.sub(g, a);
    if (G.is_zero(b)) continue;
    const Rational v = G.norm(a) + G.norm(b);
    if (!best || v < *best) best = v;
  }
  if (!best) return std::nullopt;
  return *best - G.norm(g);
}

void criterion_sti(Checker& c) {
  const GroupPtr Z = make_group(integer_spec(Rational(1), 64));
  const StiReport one = sti_gap(*Z, Element{1});
  c.expect(one.gap == Rational(2), "gap(Z, 1) = 2");
  const StiReport two = sti_gap(*Z, Element{2});
  c.expect(two.gap == Rational(0), "gap(Z, 2) = 0");
  c.expect(two.witness == std::make_pair(Element{1}, Element{1}), "gap(Z, 2) witness (1, 1)");
  const GroupPtr Z2 = make_group(cyclic_spec(2, {Rational(1)}));
  c.expect(!sti_gap(*Z2, Element{1}).gap, "gap(Z_2, 1) = +inf");
  const GroupPtr Z3 = make_group(test::z3_ones());
  c.expect(sti_gap(*Z3, Element{1}).gap == Rational(1), "gap(Z_3, 1) = 1");

  // Every element of every test group against the reference.
  std::vector<GroupSpec> specs = test::all_groups();
  specs.push_back(integer_spec(Rational(1), 64));
  for (const GroupSpec& spec : specs) {
    const GroupPtr G = make_group(spec);
    std::vector<Element> gs = G->nonzero_elements();
    if (!G->is_finite()) gs = {Element{1}, Element{2}, Element{3}, Element{-2}};
    for (const Element g : gs) {
      const StiReport r = sti_gap(*G, g);
      const auto ref = reference_gap(*G, g);
      c.expect(r.gap == ref, G->label() + " g=" + G->format(g) + ": gap disagrees with reference");
      if (r.witness) {
        const auto [a, b] = *r.witness;
        c.expect(G->add(a, b) == g && !G->is_zero(a) && !G->is_zero(b) &&
                     ref && G->norm(a) + G->norm(b) - G->norm(g) == *ref,
                 G->label() + " g=" + G->format(g) + ": witness does not attain the gap");
      }
    }
  }
}

void criterion_fuzz(Checker& c) {
  std::mt19937_64 rng(test::seed() + 101);
  for (const GroupSpec& spec : test::all_groups()) {
    const GroupPtr G = make_group(spec);
    const std::int64_t range = G->is_finite() ? 0 : G->bound() / 2;
    std::size_t bad = 0;
    for (int i = 0; i < 10000; ++i) {
      const Element x = test::random_element(*G, rng, range);
      const Element y = test::random_element(*G, rng, range);
      if (G->norm(G->add(x, y)) > G->norm(x) + G->norm(y)) ++bad;
      if (G->norm(G->neg(x)) != G->norm(x)) ++bad;
      if ((G->norm(x) == 0) != G->is_zero(x)) ++bad;
    }
    c.expect(bad == 0, G->label() + ": " + std::to_string(bad) + " axiom failures");
  }

  // Corrupted tables: each nonzero entry zeroed, and each entry pushed past a
  // decomposition so the triangle inequality breaks.
  auto rejected = [](const GroupSpec& s) {
    try {
      validate_group(s);
    } catch (const Error& e) {
      return e.kind() == ErrorKind::kNormAxiomViolation;
    }
    return false;
  };
  std::size_t corrupted = 0;
  for (const GroupSpec& spec : test::finite_groups()) {
    const GroupPtr G = make_group(spec);
    for (const Element x : G->nonzero_elements()) {
      const std::vector<int> key = G->residues(x);
      GroupSpec zeroed = spec;
      zeroed.norms[key] = Rational(0);
      c.expect(rejected(zeroed), G->label() + ": zero norm on " + G->format(x) + " accepted");
      ++corrupted;
      GroupSpec inflated = spec;
      Rational sum_of_parts(0);
      for (const Element a : G->nonzero_elements()) {
        const Element b = G->sub(x, a);
        if (G->is_zero(b)) continue;
        sum_of_parts = G->norm(a) + G->norm(b);
        break;
      }
      if (sum_of_parts == 0) continue;  // no decomposition, nothing to break
      // Only |x| moves: either |-x| no longer matches or, when -x = x, the
      // unchanged parts a + b = x now cost less than x.
      inflated.norms[key] = sum_of_parts * 3;
      c.expect(rejected(inflated), G->label() + ": inflated norm on " + G->format(x) + " accepted");
      ++corrupted;
    }
  }
  c.note(std::to_string(corrupted) + " corrupted tables");
}

void criterion_boundary(Checker& c) {
  std::mt19937_64 rng(test::seed() + 102);
  const std::vector<GroupSpec> specs = test::all_groups();
  for (int trial = 0; trial < 1000; ++trial) {
    const GroupPtr G = make_group(specs[trial % specs.size()]);
    const int ambient = 1 + trial % 3;
    const int dim = static_cast<int>(rng() % (ambient + 1));
    const Chain m = test::random_chain(G, dim, ambient, 1 + static_cast<int>(rng() % 6), 4, rng);
    if (dim >= 2) c.expect(boundary(boundary(m)).empty(), "dd != 0 at trial " + std::to_string(trial));
    if (dim >= 1) c.expect(boundary(m).dim() == dim - 1, "boundary dimension");
    if (dim < ambient) {
      for (int axis = 1; axis <= ambient; ++axis) {
        c.expect(mass(project(m, axis)) <= mass(m),
                 "projection increased mass at trial " + std::to_string(trial));
      }
    }
  }
}

void criterion_flat_oracle(Checker& c) {
  std::mt19937_64 rng(test::seed() + 103);
  std::vector<GroupPtr> groups;
  for (const GroupSpec& s : test::finite_groups()) {
    GroupPtr G = make_group(s);
    if (G->order() <= 4) groups.push_back(G);
  }
  const std::vector<std::pair<Box, int>> windows = {
      {make_box({0, 0, 0}, {6, 0, 0}, 1), 0},
      {make_box({0, 0, 0}, {3, 2, 0}, 2), 1},
      {make_box({0, 0, 0}, {2, 1, 0}, 2), 1},
      {make_box({0, 0, 0}, {1, 1, 2}, 3), 2},
      {make_box({0, 0, 0}, {1, 1, 1}, 3), 1},
  };
  FlatNormOptions bnb;
  bnb.limits.exhaustive_fallback = false;
  for (int trial = 0; trial < 200; ++trial) {
    const GroupPtr& G = groups[trial % groups.size()];
    const auto& [box, dim] = windows[trial % windows.size()];
    Chain m(G, dim, box.ambient);
    const std::vector<Cell> cells = box.cells(dim);
    const int count = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < count; ++i) m.set(cells[rng() % cells.size()], test::random_element(*G, rng));
    const bool local = trial % 3 == 0;
    const Region u = local ? Region::open_box({0, 0, 0}, {2, 1, 1}, box.ambient) : Region::all();
    const FlatNormResult r = local ? flat_seminorm(m, u, box, bnb) : flat_norm(m, box, bnb);
    const std::string at = "trial " + std::to_string(trial);
    c.expect(box.cells(dim + 1).size() <= 6, at + ": window too large for the oracle");
    c.expect(r.certificate == Certificate::kBranchAndBound, at + ": not solved by branch and bound");
    const Rational ref = test::brute_flat_norm(m, box, u, G->elements());
    c.expect(r.value == ref, at + ": " + str(r.value) + " vs exhaustive " + str(ref));
    c.expect(r.remainder == m - boundary(r.filling), at + ": remainder is not M - dQ");
  }
}

Chain split_chain(const GroupPtr& G, int k, Element a, Element b) {
  return sheet(G, k, 0, a) + sheet(G, k, 1, b);
}

PlateauProblem sheet_problem(const GroupPtr& G, const Chain& b, int k, Element g) {
  PlateauProblem p = test::make_problem(G, b, 2, make_box({0, 0, 0}, {k, k, 1}, 3));
  p.multiplicity = g;
  p.graph_axis = 3;
  return p;
}

void criterion_additive(Checker& c) {
  const GroupPtr Z = make_group(integer_spec(Rational(1), 64));
  for (const int k : {2, 3}) {
    const Chain split = split_chain(Z, k, Element{1}, Element{1});
    const PlateauResult r = solve(sheet_problem(Z, boundary(split), k, Element{2}));
    const std::string at = "k=" + std::to_string(k);
    c.expect(r.mass == Rational(2 * k * k), at + ": optimum " + str(r.mass) + ", want 2k^2");
    c.expect(mass(split) == r.mass, at + ": split chain mass " + str(mass(split)));
    c.expect(boundary(r.minimizer) == boundary(split), at + ": minimizer boundary");
    c.expect(r.coefficient_bound_sufficient == true, at + ": coefficient bound not certified");
  }
}

void criterion_crossover(Checker& c) {
  const GroupPtr G = make_group(test::z3_ones());
  const Element g{1}, part{2};  // 2 + 2 = 1 in Z_3
  c.expect(G->add(part, part) == g, "witness sums to g");
  for (const int k : {3, 4, 5}) {
    const std::string at = "k=" + std::to_string(k);
    const Chain split = split_chain(G, k, part, part);
    const Chain merged = sheet(G, k, 0, g) - walls(G, k, 1, part);
    c.expect(boundary(merged) == boundary(split), at + ": merged competitor has the wrong boundary");
    c.expect(mass(split) == Rational(2 * k * k), at + ": split mass " + str(mass(split)));
    c.expect(mass(merged) == Rational(k * k + 4 * k), at + ": merged mass " + str(mass(merged)));
    if (k == 4) c.expect(mass(split) == mass(merged), "k=4: split and merged costs differ");
    if (k == 4) continue;
    const PlateauResult r = solve(sheet_problem(G, boundary(split), k, g));
    c.expect(boundary(r.minimizer) == boundary(split), at + ": minimizer boundary");
    if (k == 5) {
      c.expect(r.mass == Rational(45), at + ": optimum " + str(r.mass) + ", want 45");
      c.expect(r.graph.graph, at + ": minimizer is not a graph");
    }
    if (k == 3) {
      c.expect(r.mass == Rational(18) && r.mass < mass(merged), at + ": optimum " + str(r.mass));
      c.expect(!r.graph.graph, at + ": optimum is the merged graph");
    }
  }
}

void criterion_projection(Checker& c) {
  std::mt19937_64 rng(test::seed() + 107);
  for (const GroupSpec& spec : test::all_groups()) {
    const GroupPtr G = make_group(spec);
    const std::vector<Element> gs =
        G->is_finite() ? G->nonzero_elements() : std::vector<Element>{Element{1}, Element{2}};
    std::vector<Element> pool;
    if (G->is_finite()) {
      pool = G->nonzero_elements();
    } else {
      for (std::int64_t v = -4; v <= 4; ++v) {
        if (v != 0) pool.push_back(Element{v});
      }
    }
    int generated = 0, tight = 0, splittable = 0;
    for (const Element g : gs) {
      // No cell carries g; -g parts are allowed since such a column still
      // splits g into at least two nonzero parts.
      auto allowed = [&](Element x) { return !G->is_zero(x) && x != g; };
      std::optional<std::pair<Element, Element>> cheapest;
      for (const Element x : pool) {
        const Element y = G->sub(g, x);
        if (!allowed(x) || !allowed(y) || !G->contains(y)) continue;
        if (!cheapest || G->norm(x) + G->norm(y) < G->norm(cheapest->first) + G->norm(cheapest->second)) {
          cheapest = std::make_pair(x, y);
        }
      }
      if (!cheapest) continue;
      const Rational gap = *reference_gap(*G, g);
      if (G->norm(cheapest->first) + G->norm(cheapest->second) == G->norm(g) + gap) {
        ++splittable;
        Chain m(G, 2, 3);
        m.set(Cell({0, 0, 0}, {1, 2}), cheapest->first);
        m.set(Cell({0, 0, 1}, {1, 2}), cheapest->second);
        const ProjectionBoundReport r = projection_bound(m, 3, g);
        c.expect(r.applicable && r.bound && r.mass == *r.bound, G->label() + ": tight column not tight");
        if (r.bound && r.mass == *r.bound) ++tight;
      }
      for (int trial = 0; trial < 1000 / static_cast<int>(gs.size()) + 1; ++trial) {
        Chain m(G, 2, 3);
        for (int x = 0; x < 3; ++x) {
          for (int y = 0; y < 2; ++y) {
            const int len = 2 + static_cast<int>(rng() % 2);
            std::vector<Element> parts;
            Element rest = g;
            for (int i = 0; i + 1 < len; ++i) {
              const Element p = pool[rng() % pool.size()];
              parts.push_back(p);
              rest = G->sub(rest, p);
            }
            parts.push_back(rest);
            bool good = G->contains(rest);
            for (const Element p : parts) good = good && allowed(p);
            if (!good) parts = {cheapest->first, cheapest->second};
            for (std::size_t z = 0; z < parts.size(); ++z) {
              m.set(Cell({x, y, static_cast<std::int32_t>(z)}, {1, 2}), parts[z]);
            }
          }
        }
        if (rng() % 2) m.set(Cell({0, 0, 0}, {1, 3}), pool[rng() % pool.size()]);
        const ProjectionBoundReport r = projection_bound(m, 3, g);
        const Rational bound = (G->norm(g) + gap) * Rational(6);
        c.expect(r.applicable && r.omega_cells == 6, G->label() + ": projection bound not applicable");
        c.expect(r.holds && mass(m) >= bound,
                 G->label() + ": mass " + str(mass(m)) + " below " + str(bound));
        ++generated;
      }
    }
    if (splittable > 0) c.expect(tight > 0, G->label() + ": no tight instance");
    if (generated > 0) c.expect(generated >= 1000, G->label() + ": fewer than 1000 chains");
    c.note(G->label() + " " + std::to_string(generated) + "/" + std::to_string(tight));
  }
}

void criterion_slicing(Checker& c) {
  std::mt19937_64 rng(test::seed() + 108);
  const std::vector<GroupSpec> specs = test::all_groups();
  for (int trial = 0; trial < 500; ++trial) {
    const GroupPtr G = make_group(specs[trial % specs.size()]);
    const int ambient = 2 + trial % 2;
    const int dim = 1 + static_cast<int>(rng() % ambient);
    Box box;
    box.ambient = ambient;
    for (int a = 0; a < ambient; ++a) box.hi[a] = 4;
    const Chain q = test::random_chain(G, dim, ambient, 1 + static_cast<int>(rng() % 8), 4, rng);
    const LevelFunction f = test::random_level(box, rng);
    int lo = 1 << 20, hi = -(1 << 20);
    for (const auto& [cell, level] : f) {
      lo = std::min(lo, level);
      hi = std::max(hi, level);
    }
    const SliceProfile p = slicing_defect(q, f, lo - 1, hi);
    const std::string at = "trial " + std::to_string(trial);
    Rational total(0);
    for (const SliceLevel& l : p.levels) {
      c.expect(l.defect == test::expanded_defect(q, f, l.s), at + ": defect differs from expansion");
      total += mass(l.defect);
    }
    const Rational bound = Rational(2 * dim) * mass(q);
    c.expect(total == p.total_defect, at + ": total defect");
    c.expect(total <= bound && p.bound_holds, at + ": defect " + str(total) + " above " + str(bound));
    c.expect(p.structure_holds, at + ": defect is not supported on cut faces");
  }
}

void criterion_lambda(Checker& c) {
  std::mt19937_64 rng(test::seed() + 109);
  std::vector<PlateauProblem> problems;
  std::vector<GroupPtr> groups;
  for (const GroupSpec& s : test::finite_groups()) {
    GroupPtr G = make_group(s);
    if (G->order() <= 4) groups.push_back(G);
  }
  const std::vector<std::pair<Box, int>> windows = {
      {make_box({0, 0, 0}, {2, 1, 0}, 2), 1},
      {make_box({0, 0, 0}, {1, 1, 1}, 3), 2},
      {make_box({0, 0, 0}, {4, 2, 0}, 2), 2},
  };
  for (int trial = 0; trial < 40; ++trial) {
    const GroupPtr& G = groups[trial % groups.size()];
    const auto& [box, dim] = windows[trial % windows.size()];
    const std::vector<Cell> cells = box.cells(dim);
    Chain m0(G, dim, box.ambient);
    for (int i = 0; i < 3; ++i) m0.set(cells[rng() % cells.size()], test::random_element(*G, rng));
    problems.push_back(test::make_problem(G, boundary(m0), dim, box));
  }
  const GroupPtr Z = make_group(integer_spec(Rational(1), 64));
  const GroupPtr Z3 = make_group(test::z3_ones());
  problems.push_back(sheet_problem(Z, boundary(split_chain(Z, 2, Element{1}, Element{1})), 2, Element{2}));
  problems.push_back(sheet_problem(Z3, boundary(split_chain(Z3, 2, Element{2}, Element{2})), 2, Element{1}));
  problems.push_back(sheet_problem(Z3, boundary(split_chain(Z3, 3, Element{2}, Element{2})), 3, Element{1}));

  for (std::size_t i = 0; i < problems.size(); ++i) {
    const PlateauProblem& p = problems[i];
    const PlateauResult r = solve(p);
    const LambdaReport l = lambda_certificate(r.minimizer, Rational(0), 1, Region::all(), p.window,
                                              r.coefficient_bound);
    c.expect(!l.violated, "solve output " + std::to_string(i) + " violates the certificate");
    c.expect(l.min_rhs == l.restricted_mass, "solve output " + std::to_string(i) + " can be improved");
  }

  // A closed cube surface added away from the sheet can be filled away.
  const PlateauResult r = solve(problems[problems.size() - 2]);
  Chain bubble(Z3, 3, 3);
  bubble.set(Cell({5, 5, 0}, {1, 2, 3}), Element{1});
  const Chain perturbed = r.minimizer + boundary(bubble);
  const LambdaReport bad =
      lambda_certificate(perturbed, Rational(0), 1, Region::all(), make_box({0, 0, 0}, {6, 6, 1}, 3));
  c.expect(bad.violated, "perturbed chain passes");
  c.expect(bad.min_rhs == r.mass, "perturbed chain improves to " + str(bad.min_rhs));
  c.note(std::to_string(problems.size()) + " solve outputs");
}

// Runs the CLI from the fixtures directory; captures stdout and the exit code.
struct RunResult {
  std::string out;
  int code = -1;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (const char ch : s) q += ch == '\'' ? std::string("'\\''") : std::string(1, ch);
  return q + "'";
}

RunResult run_cli(const std::vector<std::string>& args) {
  std::string cmd = "cd " + quote(FLATCHAIN_FIXTURES) + " && " + quote(FLATCHAIN_CLI);
  for (const std::string& a : args) cmd += " " + quote(a);
  cmd += " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_determinism(Checker& c) {
  const std::filesystem::path root = std::filesystem::temp_directory_path() / "flatchain_acceptance";
  std::filesystem::remove_all(root);
  const std::vector<std::vector<std::string>> commands = {
      {"group-check", "--in", "z3.json"},
      {"group-check", "--in", "z.json", "--fuzz", "10000", "--seed", "7"},
      {"flatnorm", "--chain", "square_boundary.json", "--window", "unit_square_window.json"},
      {"flatnorm", "--chain", "edge.json", "--window", "unit_square_window.json"},
      {"flatnorm", "--chain", "square_boundary.json", "--window", "seminorm_window.json"},
      {"plateau", "--problem", "sheet_z3.json"},
      {"plateau", "--problem", "split_z.json"},
      {"plateau", "--problem", "single_cell.json", "--enumerate", "5"},
      {"experiment", "--in", "dichotomy_small.json", "--csv", "@OUT@/d.csv", "--svg", "@OUT@/d.svg",
       "--out", "@OUT@/d.json"},
      {"experiment", "--in", "probe.json"},
  };
  const std::vector<std::vector<std::string>> variants = {{}, {}, {"--threads", "1"}, {"--threads", "8"}};
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::optional<RunResult> first;
    std::map<std::string, std::string> first_files;
    const std::string name = commands[i][0] + " #" + std::to_string(i);
    for (std::size_t v = 0; v < variants.size(); ++v) {
      const std::filesystem::path out = root / std::to_string(i) / std::to_string(v);
      std::filesystem::create_directories(out);
      std::vector<std::string> args;
      for (std::string a : commands[i]) {
        if (const auto pos = a.find("@OUT@"); pos != std::string::npos) a.replace(pos, 5, out.string());
        args.push_back(a);
      }
      args.insert(args.end(), variants[v].begin(), variants[v].end());
      const RunResult r = run_cli(args);
      c.expect(r.code == 0, name + ": exit code " + std::to_string(r.code));
      std::map<std::string, std::string> files;
      for (const auto& e : std::filesystem::directory_iterator(out)) {
        files[e.path().filename().string()] = slurp(e.path());
      }
      if (!first) {
        first = r;
        first_files = files;
        continue;
      }
      c.expect(r.out == first->out, name + ": stdout differs in run " + std::to_string(v));
      c.expect(files == first_files, name + ": output files differ in run " + std::to_string(v));
    }
    if (first_files.count("d.csv")) {
      c.expect(first_files["d.csv"] ==
                   slurp(std::filesystem::path(FLATCHAIN_FIXTURES) / "dichotomy_small.expected.csv"),
               name + ": CSV differs from the golden file");
    }
  }
  std::filesystem::remove_all(root);
}

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<void(Checker&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "strong triangle gap table", 1, criterion_sti},
      {2, "norm axiom fuzzing", 5, criterion_fuzz},
      {3, "boundary squares to zero, projection contracts mass", 5, criterion_boundary},
      {4, "flat norm branch and bound vs exhaustive", 60, criterion_flat_oracle},
      {5, "split sheets optimal over Z", 120, criterion_additive},
      {6, "Z_3 split/merged crossover", 600, criterion_crossover},
      {7, "projection lower bound", 30, criterion_projection},
      {8, "slicing defect bound", 30, criterion_slicing},
      {9, "lambda certificate", 60, criterion_lambda},
      {10, "CLI determinism", 120, criterion_determinism},
  };
  int failed = 0;
  for (const Criterion& cr : criteria) {
    Checker c;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > cr.limit_s) {
      c.expect(false, "took " + std::to_string(secs) + " s, limit " + std::to_string(cr.limit_s) + " s");
    }
    if (!c.ok()) ++failed;
    std::printf("%s %2d %s (%.2f s, limit %.0f s): %s\n", c.ok() ? "PASS" : "FAIL", cr.id,
                cr.name.c_str(), secs, cr.limit_s, c.summary().c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
