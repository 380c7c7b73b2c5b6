// flatchain_cli: group validation, flat norms, Plateau problems and the
// sheet-splitting experiments from the command line.
//
// Exit codes: 0 ok, 1 domain error (JSON on stderr), 2 usage error,
// 3 search stopped by the time budget (best result so far is still written).

#include <chrono>
#include <iostream>
#include <random>
#include <string>

#include "CLI11.hpp"

#include "flatchain/error.hpp"
#include "flatchain/experiments.hpp"
#include "flatchain/flatnorm.hpp"
#include "flatchain/io.hpp"
#include "flatchain/plateau.hpp"

using namespace flatchain;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIncomplete = 3;

struct Common {
  std::string in;
  std::string out;
  std::int64_t bound = 0;
  std::size_t max_cells = 4096;
  int threads = 1;
  std::uint64_t seed = 0;
  std::int64_t time_budget_ms = 0;

  SearchLimits limits() const {
    SearchLimits l;
    l.max_cells = max_cells;
    l.threads = threads;
    l.time_budget = std::chrono::milliseconds(time_budget_ms);
    return l;
  }
};

void emit(const std::string& path, const OrderedJson& j) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

GroupPtr group_for_chain(const json& chain_doc, const Common& c) {
  if (chain_doc.is_object() && chain_doc.contains("group")) {
    return make_group(group_spec_from_json(chain_doc.at("group")));
  }
  if (c.in.empty()) {
    throw Error(ErrorKind::kInvalidInput, "chain file has no \"group\"; pass the group with --in");
  }
  return make_group(group_spec_from_json(read_json_file(c.in)));
}

int run_group_check(const Common& c, std::size_t fuzz) {
  const GroupSpec spec = group_spec_from_json(read_json_file(c.in));
  const GroupPtr group = make_group(spec);
  const NormedGroup& G = *group;

  OrderedJson report;
  report["group"] = G.label();
  report["valid"] = true;
  report["min_nonzero_norm"] = to_string(min_nonzero_norm(G));
  OrderedJson gaps = OrderedJson::array();
  std::vector<Element> gs;
  if (G.is_finite()) {
    gs = G.nonzero_elements();
  } else {
    for (std::int64_t v = 1; v <= std::min<std::int64_t>(G.bound(), 4); ++v) gs.push_back({v});
  }
  for (const Element g : gs) gaps.push_back(sti_report_to_json(G, sti_gap(G, g)));
  report["sti"] = std::move(gaps);

  if (fuzz > 0) {
    std::mt19937_64 rng(c.seed);
    const std::vector<Element> all = G.elements();
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    std::size_t checked = 0, failures = 0;
    for (std::size_t i = 0; i < fuzz; ++i) {
      const Element x = all[pick(rng)], y = all[pick(rng)];
      try {
        const Element s = G.add(x, y);
        if (G.norm(s) > G.norm(x) + G.norm(y) || G.norm(G.neg(x)) != G.norm(x)) ++failures;
        ++checked;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kCoefficientOverflow) throw;
      }
    }
    OrderedJson f;
    f["seed"] = c.seed;
    f["pairs"] = checked;
    f["failures"] = failures;
    report["fuzz"] = std::move(f);
  }
  emit(c.out, report);
  return kExitOk;
}

int run_flatnorm(const Common& c, const std::string& chain_path, const std::string& window_path) {
  const json chain_doc = read_json_file(chain_path);
  const GroupPtr group = group_for_chain(chain_doc, c);
  const Window window = window_from_json(read_json_file(window_path));
  const json& cells = chain_doc.is_object() && chain_doc.contains("chain") ? chain_doc.at("chain")
                                                                          : chain_doc;
  const Chain m = chain_from_json(group, cells, window.box.ambient);

  FlatNormOptions options;
  options.coefficient_bound = c.bound;
  options.limits = c.limits();
  const FlatNormResult r = flat_norm(m, window, options);
  emit(c.out, flatnorm_result_to_json(r));
  return r.certificate == Certificate::kIncomplete ? kExitIncomplete : kExitOk;
}

int run_plateau(const Common& c, const std::string& problem_path, std::size_t enumerate) {
  PlateauProblem problem = problem_from_json(read_json_file(problem_path));
  if (c.bound > 0) problem.coefficient_bound = c.bound;
  PlateauOptions options;
  options.limits = c.limits();
  const PlateauResult r = solve(problem, options);
  OrderedJson j = plateau_result_to_json(r);
  if (enumerate > 0 && r.certificate != Certificate::kIncomplete) {
    const MinimizerList list = enumerate_minimizers(problem, enumerate, options);
    OrderedJson all = OrderedJson::array();
    for (const Chain& m : list.minimizers) all.push_back(chain_to_json(m));
    j["minimizer_count"] = list.minimizers.size();
    j["count_truncated"] = list.truncated;
    j["minimizers"] = std::move(all);
  }
  emit(c.out, j);
  return r.certificate == Certificate::kIncomplete ? kExitIncomplete : kExitOk;
}

std::vector<DichotomyInstance> grid_from_json(const json& doc) {
  std::vector<DichotomyInstance> grid;
  for (const auto& inst : doc.at("instances")) {
    DichotomyInstance d;
    d.group = group_spec_from_json(inst.at("group"));
    const GroupPtr group = make_group(d.group);
    d.g = element_from_json(*group, inst.at("g"));
    d.ks = inst.at("ks").get<std::vector<int>>();
    d.h = inst.value("h", 1);
    grid.push_back(std::move(d));
  }
  return grid;
}

int run_experiment(const Common& c, const std::string& csv, const std::string& svg) {
  json doc = json::object();
  if (!c.in.empty()) doc = read_json_file(c.in);
  const std::string kind = doc.value("kind", "dichotomy");

  if (kind == "probe") {
    std::vector<GroupSpec> groups;
    for (const auto& g : doc.at("groups")) groups.push_back(group_spec_from_json(g));
    const ProbeReport r = near_zero_norm_probe(groups, doc.value("g", std::int64_t{1}),
                                               doc.value("k", 2), c.limits());
    OrderedJson j;
    OrderedJson rows = OrderedJson::array();
    for (const ProbeRow& row : r.rows) {
      const NormedGroup& G = *make_group(groups[rows.size()]);
      OrderedJson o;
      o["group"] = row.group;
      o["min_nonzero_norm"] = to_string(row.min_norm);
      o["a"] = G.format(row.a);
      o["coefficient"] = G.format(row.coefficient);
      o["optimum"] = to_string(row.optimum);
      o["expected"] = to_string(row.expected);
      o["optimal"] = row.optimal;
      rows.push_back(std::move(o));
    }
    j["rows"] = std::move(rows);
    j["decreasing"] = r.decreasing;
    j["verdict"] = r.verdict;
    emit(c.out, j);
    return kExitOk;
  }
  if (kind != "dichotomy") {
    throw Error(ErrorKind::kInvalidInput, "experiment kind must be \"dichotomy\" or \"probe\"");
  }

  const std::vector<DichotomyInstance> grid =
      doc.contains("instances") ? grid_from_json(doc) : default_dichotomy_grid();
  const DichotomyReport report = dichotomy_experiment(grid, c.bound, c.limits());
  emit_report(report, {csv, c.out == "-" ? "" : c.out, svg});
  if (c.out.empty() || c.out == "-") std::cout << dichotomy_json(report).dump(2) << "\n";
  for (const DichotomyRow& row : report.rows) {
    if (row.certificate == certificate_name(Certificate::kIncomplete)) return kExitIncomplete;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flat norms, Plateau problems and sheet-splitting experiments for "
               "group-coefficient cubical chains"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", common.out, "Output JSON path (default: stdout)");
    sub->add_option("--bound", common.bound, "Coefficient bound for the integer model")
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-cells", common.max_cells, "Maximum number of variable cells")
        ->check(CLI::PositiveNumber);
    sub->add_option("--threads", common.threads, "Solver threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed", common.seed, "Seed for randomized checks");
    sub->add_option("--time-budget-ms", common.time_budget_ms, "Search time budget (0: none)")
        ->check(CLI::NonNegativeNumber);
  };

  std::size_t fuzz = 0;
  auto* group_check = app.add_subcommand("group-check", "Validate a group and report STI gaps");
  group_check->add_option("--in", common.in, "Group spec JSON")->required();
  group_check->add_option("--fuzz", fuzz, "Random axiom checks to run");
  add_common(group_check);

  std::string chain_path, window_path;
  auto* flat = app.add_subcommand("flatnorm", "Exact flat norm of a chain on a window");
  flat->add_option("--chain", chain_path, "Chain JSON")->required();
  flat->add_option("--window", window_path, "Window JSON")->required();
  flat->add_option("--in", common.in, "Group spec JSON when the chain file has none");
  add_common(flat);

  std::string problem_path;
  std::size_t enumerate = 0;
  auto* plateau = app.add_subcommand("plateau", "Solve a Plateau problem exactly");
  plateau->add_option("--problem", problem_path, "Problem JSON")->required();
  plateau->add_option("--enumerate", enumerate, "Also list up to this many minimizers");
  add_common(plateau);

  std::string csv, svg;
  auto* experiment = app.add_subcommand("experiment", "Run the dichotomy study or the probe");
  experiment->add_option("--in", common.in, "Experiment config JSON (default: built-in grid)");
  experiment->add_option("--csv", csv, "CSV table path");
  experiment->add_option("--svg", svg, "SVG chart path");
  add_common(experiment);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*group_check) return run_group_check(common, fuzz);
    if (*flat) return run_flatnorm(common, chain_path, window_path);
    if (*plateau) return run_plateau(common, problem_path, enumerate);
    if (*experiment) return run_experiment(common, csv, svg);
  } catch (const Error& e) {
    std::cerr << e.to_json().dump() << "\n";
    return kExitDomain;
  } catch (const json::exception& e) {
    std::cerr << Error(ErrorKind::kInvalidInput, e.what()).to_json().dump() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    json j = {{"error", "internal"}, {"message", e.what()}};
    std::cerr << j.dump() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}
