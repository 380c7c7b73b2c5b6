#include "flatchain/label_search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "flatchain/error.hpp"

namespace flatchain {

std::string_view certificate_name(Certificate c) {
  switch (c) {
    case Certificate::kExhaustive: return "exhaustive";
    case Certificate::kBranchAndBound: return "bnb";
    case Certificate::kIncomplete: return "incomplete";
  }
  return "incomplete";
}

std::vector<Element> ranked_domain(const NormedGroup& group, std::int64_t int_bound) {
  std::vector<Element> out;
  if (!group.is_finite()) {
    out.push_back(Element{0});
    for (std::int64_t v = 1; v <= int_bound; ++v) {
      out.push_back(Element{v});
      out.push_back(Element{-v});
    }
    return out;
  }
  out = group.elements();
  std::stable_sort(out.begin(), out.end(), [&](Element a, Element b) {
    if (group.is_zero(a) != group.is_zero(b)) return group.is_zero(a);
    return group.norm(a) < group.norm(b);
  });
  return out;
}

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
constexpr std::size_t kExhaustiveMaxVars = 10;
constexpr double kExhaustiveMaxLabelings = 1 << 20;

// Element arithmetic on raw values with norms scaled to integers. The integer
// model is treated as Z here; the bound only limits the search domain.
class Arith {
 public:
  explicit Arith(const NormedGroup& g) : group_(&g), finite_(g.is_finite()) {
    if (finite_) {
      std::int64_t den = 1;
      for (const Element x : g.elements()) den = std::lcm(den, g.norm(x).denominator());
      den_ = den;
      for (const Element x : g.elements()) {
        const Rational scaled = g.norm(x) * Rational(den);
        norm_.push_back(scaled.numerator());
        neg_.push_back(g.neg(x).value);
      }
    } else {
      den_ = g.scale().denominator();
      unit_ = g.scale().numerator();
    }
  }

  std::int64_t add(std::int64_t a, std::int64_t b) const {
    return finite_ ? group_->add(Element{a}, Element{b}).value : a + b;
  }
  std::int64_t neg(std::int64_t a) const {
    return finite_ ? neg_[static_cast<std::size_t>(a)] : -a;
  }
  std::int64_t norm(std::int64_t a) const {
    return finite_ ? norm_[static_cast<std::size_t>(a)] : std::llabs(a) * unit_;
  }
  std::int64_t den() const { return den_; }

 private:
  const NormedGroup* group_;
  bool finite_;
  std::int64_t den_ = 1;
  std::int64_t unit_ = 1;
  std::vector<std::int64_t> norm_;
  std::vector<std::int64_t> neg_;
};

struct Compiled {
  explicit Compiled(const LabelProblem& p) : arith(*p.group) {
    const std::size_t n = p.num_vars();
    std::int64_t wden = 1;
    for (const auto& w : p.var_weight) wden = std::lcm(wden, w.denominator());
    for (const auto& f : p.faces) wden = std::lcm(wden, f.weight.denominator());
    for (const auto& w : p.var_weight) {
      if (w < 0) throw Error(ErrorKind::kInvalidInput, "negative weight");
      var_w.push_back((w * Rational(wden)).numerator());
    }
    cost_den = wden * arith.den();
    for (const Element e : p.domain) domain.push_back(e.value);

    var_faces.resize(n);
    for (std::size_t f = 0; f < p.faces.size(); ++f) {
      const auto& face = p.faces[f];
      if (face.weight < 0) throw Error(ErrorKind::kInvalidInput, "negative weight");
      face_target.push_back(face.target.value);
      face_w.push_back((face.weight * Rational(wden)).numerator());
      face_hard.push_back(face.hard ? 1 : 0);
      face_terms.push_back(face.terms);
      for (const auto& t : face.terms) {
        if (t.var >= n) throw Error(ErrorKind::kInvalidInput, "face term out of range");
        var_faces[t.var].push_back({static_cast<std::uint32_t>(f), t.sign});
      }
    }
    var_group.assign(n, -1);
    for (std::size_t g = 0; g < p.sum_groups.size(); ++g) {
      const auto& grp = p.sum_groups[g];
      group_target.push_back(grp.target.value);
      group_vars.push_back(grp.vars);
      std::int64_t wmin = kInf;
      for (const auto v : grp.vars) {
        if (var_group[v] != -1) {
          throw Error(ErrorKind::kInvalidInput, "sum groups must be disjoint");
        }
        var_group[v] = static_cast<int>(g);
        wmin = std::min(wmin, var_w[v]);
      }
      group_wmin.push_back(grp.vars.empty() ? 0 : wmin);
    }
    if (p.upper_bound) {
      const Rational scaled = *p.upper_bound * Rational(cost_den);
      // floor, valid for negative values too
      std::int64_t fl = scaled.numerator() / scaled.denominator();
      if (scaled.numerator() < 0 && scaled.numerator() % scaled.denominator() != 0) --fl;
      upper = fl;
    }
  }

  Arith arith;
  std::vector<std::int64_t> domain;
  std::vector<std::int64_t> var_w;
  std::vector<std::vector<std::pair<std::uint32_t, int>>> var_faces;
  std::vector<std::int64_t> face_target;
  std::vector<std::int64_t> face_w;
  std::vector<char> face_hard;
  std::vector<std::vector<LabelProblem::Term>> face_terms;
  std::vector<int> var_group;
  std::vector<std::int64_t> group_target;
  std::vector<std::int64_t> group_wmin;
  std::vector<std::vector<std::uint32_t>> group_vars;
  std::int64_t cost_den = 1;
  std::optional<std::int64_t> upper;

  std::size_t n() const { return var_w.size(); }
};

struct Shared {
  std::atomic<std::int64_t> best{kInf};
  std::atomic<bool> stop{false};
  std::atomic<bool> interrupted{false};
  std::atomic<std::int64_t> nodes{0};
  std::optional<std::chrono::steady_clock::time_point> deadline;
  std::int64_t max_nodes = 0;
};

// One depth-first search state. All mutable numbers live in int64 arrays so a
// single trail of (address, old value) pairs undoes any assignment.
class Worker {
 public:
  Worker(const Compiled& c, Shared& shared) : c_(c), shared_(&shared) { init(); }

  Worker(const Worker&) = default;

  std::size_t mark() const { return trail_.size(); }

  void undo(std::size_t m) {
    while (trail_.size() > m) {
      auto [ptr, old] = trail_.back();
      *ptr = old;
      trail_.pop_back();
    }
  }

  bool pruned() const { return violations_ > 0 || inf_count_ > 0; }

  std::int64_t lower_bound() const {
    return pruned() ? kInf : fixed_ + ungrouped_h_ + group_total_;
  }

  void assign(std::uint32_t i, std::int64_t v) {
    const auto& a = c_.arith;
    set(x_[i], v);
    set(assigned_[i], 1);
    drop_h(i);
    set(fixed_, fixed_ + c_.var_w[i] * a.norm(v));

    const int g = c_.var_group[i];
    if (g >= 0) {
      set(group_sum_[g], a.add(group_sum_[g], v));
      set(group_un_[g], group_un_[g] - 1);
      if (group_un_[g] == 0 && group_sum_[g] != c_.group_target[g]) {
        set(violations_, violations_ + 1);
      } else if (group_un_[g] == 1) {
        for (const auto j : c_.group_vars[g]) {
          if (!assigned_[j]) update_h(j);
        }
      }
      refresh_group(g);
    }

    const std::int64_t nv = a.neg(v);
    for (const auto& [f, s] : c_.var_faces[i]) {
      set(face_sum_[f], a.add(face_sum_[f], s > 0 ? v : nv));
      set(face_un_[f], face_un_[f] - 1);
      if (face_un_[f] == 0) {
        const std::int64_t r = a.add(c_.face_target[f], a.neg(face_sum_[f]));
        if (c_.face_hard[f]) {
          if (r != 0) set(violations_, violations_ + 1);
        } else {
          set(fixed_, fixed_ + c_.face_w[f] * a.norm(r));
        }
      } else if (face_un_[f] == 1) {
        for (const auto& t : c_.face_terms[f]) {
          if (!assigned_[t.var]) {
            update_h(t.var);
            break;
          }
        }
      }
    }
  }

  // Applies a prefix; false when it is already infeasible.
  bool apply_prefix(std::span<const std::int64_t> prefix) {
    for (std::size_t d = 0; d < prefix.size(); ++d) {
      assign(static_cast<std::uint32_t>(d), prefix[d]);
      if (pruned()) return false;
    }
    return true;
  }

  void set_enumeration(std::int64_t target, std::size_t limit) {
    enumerate_ = true;
    enum_target_ = target;
    enum_limit_ = limit;
  }

  void dfs(std::size_t depth) {
    if (shared_->stop.load(std::memory_order_relaxed)) return;
    if (++local_nodes_ % 1024 == 0) checkpoint();
    const std::size_t n = c_.n();
    if (depth == n) {
      leaf();
      return;
    }
    const auto i = static_cast<std::uint32_t>(depth);
    for (const std::int64_t v : c_.domain) {
      const std::size_t m = mark();
      assign(i, v);
      const std::int64_t lb = lower_bound();
      if (admissible(lb)) dfs(depth + 1);
      undo(m);
      if (shared_->stop.load(std::memory_order_relaxed)) return;
    }
  }

  bool admissible(std::int64_t lb) const {
    if (lb >= kInf) return false;
    if (enumerate_) return lb <= enum_target_;
    return lb < own_best_ && lb <= shared_->best.load(std::memory_order_relaxed) &&
           (!c_.upper || lb <= *c_.upper);
  }

  void flush_nodes() {
    shared_->nodes.fetch_add(local_nodes_ % 1024, std::memory_order_relaxed);
  }

  std::int64_t own_best() const { return own_best_; }
  const std::vector<std::int64_t>& best_values() const { return best_values_; }
  std::vector<std::vector<std::int64_t>>& found() { return found_; }
  std::int64_t fixed_cost() const { return fixed_; }

 private:
  void set(std::int64_t& ref, std::int64_t v) {
    trail_.emplace_back(&ref, ref);
    ref = v;
  }

  void leaf() {
    const std::int64_t cost = fixed_;
    if (enumerate_) {
      if (cost == enum_target_) {
        found_.push_back(x_);
        if (found_.size() > enum_limit_) shared_->stop.store(true);
      }
      return;
    }
    if (cost < own_best_ && (!c_.upper || cost <= *c_.upper)) {
      own_best_ = cost;
      best_values_ = x_;
      std::int64_t cur = shared_->best.load();
      while (cost < cur && !shared_->best.compare_exchange_weak(cur, cost)) {
      }
    }
  }

  void checkpoint() {
    const std::int64_t total = shared_->nodes.fetch_add(1024) + 1024;
    if (shared_->max_nodes > 0 && total > shared_->max_nodes) {
      shared_->interrupted.store(true);
      shared_->stop.store(true);
    }
    if (shared_->deadline && std::chrono::steady_clock::now() > *shared_->deadline) {
      shared_->interrupted.store(true);
      shared_->stop.store(true);
    }
  }

  void init() {
    const std::size_t n = c_.n();
    const auto& a = c_.arith;
    x_.assign(n, 0);
    assigned_.assign(n, 0);
    h_.assign(n, 0);
    face_sum_.assign(c_.face_target.size(), 0);
    face_un_.resize(c_.face_target.size());
    for (std::size_t f = 0; f < face_un_.size(); ++f) {
      face_un_[f] = static_cast<std::int64_t>(c_.face_terms[f].size());
      if (face_un_[f] == 0) {
        if (c_.face_hard[f]) {
          if (c_.face_target[f] != 0) ++violations_;
        } else {
          fixed_ += c_.face_w[f] * a.norm(c_.face_target[f]);
        }
      }
    }
    const std::size_t groups = c_.group_target.size();
    group_sum_.assign(groups, 0);
    group_un_.resize(groups);
    group_hsum_.assign(groups, 0);
    group_contrib_.assign(groups, 0);
    for (std::size_t g = 0; g < groups; ++g) {
      group_un_[g] = static_cast<std::int64_t>(c_.group_vars[g].size());
      if (group_un_[g] == 0 && c_.group_target[g] != 0) ++violations_;
    }
    for (std::uint32_t j = 0; j < n; ++j) update_h(j);
    for (std::size_t g = 0; g < groups; ++g) refresh_group(static_cast<int>(g));
    trail_.clear();
  }

  std::int64_t compute_h(std::uint32_t j) const {
    const auto& a = c_.arith;
    const int g = c_.var_group[j];
    const bool forced = g >= 0 && group_un_[g] == 1;
    const std::int64_t forced_value =
        forced ? a.add(c_.group_target[g], a.neg(group_sum_[g])) : 0;
    std::int64_t best = kInf;
    for (const std::int64_t v : c_.domain) {
      if (forced && v != forced_value) continue;
      std::int64_t cost = c_.var_w[j] * a.norm(v);
      const std::int64_t nv = a.neg(v);
      for (const auto& [f, s] : c_.var_faces[j]) {
        if (face_un_[f] != 1) continue;
        const std::int64_t r =
            a.add(c_.face_target[f], a.neg(a.add(face_sum_[f], s > 0 ? v : nv)));
        if (c_.face_hard[f]) {
          if (r != 0) {
            cost = kInf;
            break;
          }
        } else {
          cost += c_.face_w[f] * a.norm(r);
        }
        if (cost >= best) break;
      }
      best = std::min(best, cost);
    }
    return best;
  }

  void add_h(std::uint32_t j, std::int64_t h, int dir) {
    if (h >= kInf) {
      set(inf_count_, inf_count_ + dir);
      return;
    }
    const int g = c_.var_group[j];
    if (g >= 0) {
      set(group_hsum_[g], group_hsum_[g] + dir * h);
    } else {
      set(ungrouped_h_, ungrouped_h_ + dir * h);
    }
  }

  void drop_h(std::uint32_t j) {
    add_h(j, h_[j], -1);
    set(h_[j], 0);
    const int g = c_.var_group[j];
    if (g >= 0) refresh_group(g);
  }

  void update_h(std::uint32_t j) {
    const std::int64_t nh = compute_h(j);
    if (nh == h_[j]) return;
    add_h(j, h_[j], -1);
    add_h(j, nh, +1);
    set(h_[j], nh);
    const int g = c_.var_group[j];
    if (g >= 0) refresh_group(g);
  }

  void refresh_group(int g) {
    const auto& a = c_.arith;
    std::int64_t contrib = 0;
    if (group_un_[g] > 0) {
      const std::int64_t resid = a.add(c_.group_target[g], a.neg(group_sum_[g]));
      contrib = std::max(c_.group_wmin[g] * a.norm(resid), group_hsum_[g]);
    }
    if (contrib != group_contrib_[g]) {
      set(group_total_, group_total_ - group_contrib_[g] + contrib);
      set(group_contrib_[g], contrib);
    }
  }

  const Compiled& c_;
  Shared* shared_;

  std::vector<std::pair<std::int64_t*, std::int64_t>> trail_;
  std::vector<std::int64_t> x_, assigned_, h_;
  std::vector<std::int64_t> face_sum_, face_un_;
  std::vector<std::int64_t> group_sum_, group_un_, group_hsum_, group_contrib_;
  std::int64_t fixed_ = 0;
  std::int64_t ungrouped_h_ = 0;
  std::int64_t group_total_ = 0;
  std::int64_t violations_ = 0;
  std::int64_t inf_count_ = 0;

  std::int64_t own_best_ = kInf;
  std::vector<std::int64_t> best_values_;
  std::int64_t local_nodes_ = 0;

  bool enumerate_ = false;
  std::int64_t enum_target_ = 0;
  std::size_t enum_limit_ = 0;
  std::vector<std::vector<std::int64_t>> found_;
};

void check_limits(const LabelProblem& p, const SearchLimits& limits) {
  if (!p.group) throw Error(ErrorKind::kInvalidInput, "label problem without group");
  if (p.num_vars() > limits.max_cells) {
    throw Error(ErrorKind::kSearchSpaceExceeded,
                std::to_string(p.num_vars()) + " variable cells exceed the limit of " +
                    std::to_string(limits.max_cells),
                {{"cells", p.num_vars()}, {"max_cells", limits.max_cells}});
  }
  if (p.domain.size() > limits.max_domain) {
    throw Error(ErrorKind::kSearchSpaceExceeded,
                std::to_string(p.domain.size()) +
                    " coefficient choices per cell exceed the limit of " +
                    std::to_string(limits.max_domain),
                {{"domain", p.domain.size()}, {"max_domain", limits.max_domain}});
  }
  if (p.domain.empty() || p.domain.front().value != 0) {
    throw Error(ErrorKind::kInvalidInput, "label domain must start with zero");
  }
}

Rational to_cost(const Compiled& c, std::int64_t v) { return Rational(v, c.cost_den); }

std::vector<Element> to_elements(const std::vector<std::int64_t>& v) {
  std::vector<Element> out;
  out.reserve(v.size());
  for (auto x : v) out.push_back(Element{x});
  return out;
}

void configure(Shared& s, const SearchLimits& limits) {
  if (limits.time_budget.count() > 0) {
    s.deadline = std::chrono::steady_clock::now() + limits.time_budget;
  }
  s.max_nodes = limits.max_nodes;
}

// Odometer over all labelings in lexicographic order, costs summed directly.
LabelSolution run_exhaustive(const Compiled& c) {
  const std::size_t n = c.n();
  const auto& a = c.arith;
  LabelSolution sol;
  sol.certificate = Certificate::kExhaustive;
  std::vector<std::size_t> idx(n, 0);
  std::vector<std::int64_t> x(n, c.domain.empty() ? 0 : c.domain[0]);
  std::int64_t best = kInf;
  while (true) {
    ++sol.nodes;
    std::int64_t cost = 0;
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i) cost += c.var_w[i] * a.norm(x[i]);
    for (std::size_t f = 0; f < c.face_target.size() && ok; ++f) {
      std::int64_t s = 0;
      for (const auto& t : c.face_terms[f]) s = a.add(s, t.sign > 0 ? x[t.var] : a.neg(x[t.var]));
      const std::int64_t r = a.add(c.face_target[f], a.neg(s));
      if (c.face_hard[f]) {
        ok = r == 0;
      } else {
        cost += c.face_w[f] * a.norm(r);
      }
    }
    for (std::size_t g = 0; g < c.group_target.size() && ok; ++g) {
      std::int64_t s = 0;
      for (const auto v : c.group_vars[g]) s = a.add(s, x[v]);
      ok = s == c.group_target[g];
    }
    if (ok && cost < best && (!c.upper || cost <= *c.upper)) {
      best = cost;
      sol.values = to_elements(x);
    }
    bool carry = true;
    for (std::size_t i = n; i > 0 && carry;) {
      --i;
      if (++idx[i] < c.domain.size()) {
        x[i] = c.domain[idx[i]];
        carry = false;
      } else {
        idx[i] = 0;
        x[i] = c.domain[0];
      }
    }
    if (carry) break;
  }
  if (best < kInf) {
    sol.feasible = true;
    sol.cost = to_cost(c, best);
  }
  return sol;
}

}  // namespace

std::optional<Rational> evaluate_labels(const LabelProblem& p,
                                        std::span<const Element> values) {
  if (values.size() != p.num_vars()) {
    throw Error(ErrorKind::kInvalidInput, "labeling has wrong length");
  }
  const NormedGroup& g = *p.group;
  // Integers are summed in Z; the model bound only restricts the domain.
  auto add = [&](Element x, Element y) {
    return g.is_finite() ? g.add(x, y) : Element{x.value + y.value};
  };
  auto norm = [&](Element x) {
    return g.is_finite() ? g.norm(x) : g.scale() * Rational(std::llabs(x.value));
  };
  Rational cost(0);
  for (std::size_t i = 0; i < values.size(); ++i) cost += p.var_weight[i] * norm(values[i]);
  for (const auto& face : p.faces) {
    Element s{0};
    for (const auto& t : face.terms) {
      s = add(s, t.sign > 0 ? values[t.var] : g.neg(values[t.var]));
    }
    const Element r = add(face.target, g.neg(s));
    if (face.hard) {
      if (r.value != 0) return std::nullopt;
    } else {
      cost += face.weight * norm(r);
    }
  }
  for (const auto& grp : p.sum_groups) {
    Element s{0};
    for (const auto v : grp.vars) s = add(s, values[v]);
    if (s != grp.target) return std::nullopt;
  }
  return cost;
}

LabelSolution exhaustive_labels(const LabelProblem& problem) {
  SearchLimits unlimited;
  unlimited.max_cells = std::numeric_limits<std::size_t>::max();
  unlimited.max_domain = std::numeric_limits<std::size_t>::max();
  check_limits(problem, unlimited);
  const Compiled c(problem);
  return run_exhaustive(c);
}

LabelSolution solve_labels(const LabelProblem& problem, const SearchLimits& limits) {
  check_limits(problem, limits);
  const Compiled c(problem);
  const std::size_t n = c.n();

  const double labelings = std::pow(static_cast<double>(c.domain.size()),
                                    static_cast<double>(n));
  if (limits.exhaustive_fallback && n <= kExhaustiveMaxVars &&
      labelings <= kExhaustiveMaxLabelings) {
    return run_exhaustive(c);
  }

  Shared shared;
  configure(shared, limits);
  if (c.upper) shared.best.store(*c.upper);
  Worker root(c, shared);

  // Split the tree into prefix tasks when running in parallel. Task order is
  // the lexicographic order of prefixes, which keeps the reduction
  // deterministic.
  std::vector<std::vector<std::int64_t>> tasks{{}};
  const int threads = std::max(1, limits.threads);
  if (threads > 1) {
    std::size_t depth = 0;
    while (tasks.size() < static_cast<std::size_t>(8 * threads) && depth < n &&
           depth < 16) {
      std::vector<std::vector<std::int64_t>> next;
      for (const auto& prefix : tasks) {
        Worker w = root;
        if (!w.apply_prefix(prefix)) continue;
        for (const std::int64_t v : c.domain) {
          const std::size_t m = w.mark();
          w.assign(static_cast<std::uint32_t>(depth), v);
          if (w.admissible(w.lower_bound())) {
            auto extended = prefix;
            extended.push_back(v);
            next.push_back(std::move(extended));
          }
          w.undo(m);
        }
      }
      tasks = std::move(next);
      ++depth;
      if (tasks.empty()) break;
    }
  }

  struct TaskResult {
    std::int64_t cost = kInf;
    std::vector<std::int64_t> values;
  };
  std::vector<TaskResult> results(tasks.size());
  std::atomic<std::size_t> next_task{0};
  auto run = [&] {
    while (true) {
      const std::size_t t = next_task.fetch_add(1);
      if (t >= tasks.size()) return;
      Worker w = root;
      if (!w.apply_prefix(tasks[t])) continue;
      if (!w.admissible(w.lower_bound())) continue;
      w.dfs(tasks[t].size());
      w.flush_nodes();
      if (w.own_best() < kInf) results[t] = {w.own_best(), w.best_values()};
    }
  };
  if (threads == 1 || tasks.size() <= 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < threads; ++k) pool.emplace_back(run);
    for (auto& th : pool) th.join();
  }

  LabelSolution sol;
  sol.nodes = shared.nodes.load();
  sol.certificate = shared.interrupted.load() ? Certificate::kIncomplete
                                              : Certificate::kBranchAndBound;
  std::int64_t best = kInf;
  for (const auto& r : results) {
    if (r.cost < best) {
      best = r.cost;
      sol.values = to_elements(r.values);
    }
  }
  if (best < kInf) {
    sol.feasible = true;
    sol.cost = to_cost(c, best);
  }
  return sol;
}

LabelEnumeration enumerate_labels(const LabelProblem& problem, const Rational& cost,
                                  std::size_t limit, const SearchLimits& limits) {
  check_limits(problem, limits);
  const Compiled c(problem);
  LabelEnumeration out;
  const Rational scaled = cost * Rational(c.cost_den);
  if (scaled.denominator() != 1) return out;  // no labeling can cost this

  Shared shared;
  configure(shared, limits);
  Worker w(c, shared);
  w.set_enumeration(scaled.numerator(), limit);
  if (w.admissible(w.lower_bound())) w.dfs(0);
  auto& found = w.found();
  if (found.size() > limit) {
    out.truncated = true;
    found.resize(limit);
  }
  for (const auto& v : found) out.labelings.push_back(to_elements(v));
  out.certificate = shared.interrupted.load() ? Certificate::kIncomplete
                                              : Certificate::kBranchAndBound;
  return out;
}

}  // namespace flatchain
