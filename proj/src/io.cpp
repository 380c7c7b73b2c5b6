#include "flatchain/io.hpp"

#include <fstream>
#include <sstream>

#include "flatchain/error.hpp"

namespace flatchain {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::kInvalidInput, what); }

std::string text_of(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
  bad("expected a rational string or an integer, got " + j.dump());
}

Rational rational_of(const json& j) {
  if (j.is_number_float()) bad("decimal numbers are not accepted: " + j.dump());
  return parse_rational(text_of(j));
}

Point point_of(const json& j, int* ambient) {
  if (!j.is_array() || j.empty() || j.size() > kMaxAmbientDim) {
    bad("a point needs 1 to 3 integer coordinates");
  }
  Point p{0, 0, 0};
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer()) bad("coordinates must be integers");
    p[i] = j[i].get<std::int32_t>();
  }
  if (ambient) *ambient = static_cast<int>(j.size());
  return p;
}

std::vector<int> residues_of(const std::string& key) {
  std::string s = key;
  if (!s.empty() && s.front() == '(') {
    if (s.back() != ')') bad("malformed residue tuple " + key);
    s = s.substr(1, s.size() - 2);
  }
  std::vector<int> out;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(part, &used));
      if (used != part.size()) bad("malformed residue tuple " + key);
    } catch (const std::logic_error&) {
      bad("malformed residue tuple " + key);
    }
  }
  return out;
}

OrderedJson point_json(const Point& p, int ambient) {
  OrderedJson a = OrderedJson::array();
  for (int i = 0; i < ambient; ++i) a.push_back(p[i]);
  return a;
}

}  // namespace

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIoFailure, "cannot read " + path, {{"path", path}});
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::kInvalidInput, path + ": " + e.what(), {{"path", path}});
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIoFailure, "cannot write " + path, {{"path", path}});
  out << text;
  out.close();
  if (!out) throw Error(ErrorKind::kIoFailure, "failed writing " + path, {{"path", path}});
}

GroupSpec group_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind")) bad("group spec needs a \"kind\"");
  GroupSpec spec;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "int") {
    spec.kind = GroupSpec::Kind::kBoundedInt;
    if (j.contains("scale")) spec.scale = rational_of(j.at("scale"));
    if (j.contains("bound")) {
      if (!j.at("bound").is_number_integer()) bad("bound must be an integer");
      spec.bound = j.at("bound").get<std::int64_t>();
    }
    return spec;
  }
  if (kind != "finite") bad("group kind must be \"finite\" or \"int\"");
  spec.kind = GroupSpec::Kind::kFiniteProduct;
  if (!j.contains("orders") || !j.at("orders").is_array()) bad("finite group needs \"orders\"");
  for (const auto& n : j.at("orders")) {
    if (!n.is_number_integer()) bad("orders must be integers");
    spec.orders.push_back(n.get<int>());
  }
  if (j.contains("norms")) {
    if (!j.at("norms").is_object()) bad("\"norms\" must be an object");
    for (const auto& [key, value] : j.at("norms").items()) {
      spec.norms[residues_of(key)] = rational_of(value);
    }
  }
  return spec;
}

OrderedJson group_spec_to_json(const GroupSpec& spec) {
  OrderedJson j;
  if (spec.kind == GroupSpec::Kind::kBoundedInt) {
    j["kind"] = "int";
    j["scale"] = to_string(spec.scale);
    j["bound"] = spec.bound;
    return j;
  }
  j["kind"] = "finite";
  j["orders"] = spec.orders;
  OrderedJson norms = OrderedJson::object();
  for (const auto& [res, value] : spec.norms) {
    std::string key = "(";
    for (std::size_t i = 0; i < res.size(); ++i) key += (i ? "," : "") + std::to_string(res[i]);
    norms[key + ")"] = to_string(value);
  }
  j["norms"] = std::move(norms);
  return j;
}

Element element_from_json(const NormedGroup& group, const nlohmann::json& j) {
  return group.parse(text_of(j));
}

Chain chain_from_json(const GroupPtr& group, const nlohmann::json& j, int ambient, int dim) {
  const json* cells = &j;
  if (j.is_object()) {
    if (j.contains("dim")) dim = j.at("dim").get<int>();
    if (j.contains("ambient")) ambient = j.at("ambient").get<int>();
    if (!j.contains("cells")) bad("chain object needs \"cells\"");
    cells = &j.at("cells");
  }
  if (!cells->is_array()) bad("chain must be an array of cells");

  std::vector<std::pair<Cell, Element>> entries;
  for (const auto& rec : *cells) {
    if (!rec.is_object() || !rec.contains("base") || !rec.contains("axes") ||
        !rec.contains("coef")) {
      bad("chain cell needs \"base\", \"axes\" and \"coef\"");
    }
    int amb = 0;
    const Point base = point_of(rec.at("base"), &amb);
    if (ambient < 0) ambient = amb;
    if (amb != ambient) bad("chain cells disagree on the ambient dimension");
    std::uint8_t mask = 0;
    int prev = 0;
    for (const auto& a : rec.at("axes")) {
      if (!a.is_number_integer()) bad("axes must be integers");
      const int axis = a.get<int>();
      if (axis <= prev || axis > ambient) bad("axes must be strictly increasing within 1..d");
      mask |= static_cast<std::uint8_t>(1U << (axis - 1));
      prev = axis;
    }
    const Cell c = Cell::from_mask(base, mask);
    if (dim < 0) dim = c.dim();
    if (c.dim() != dim) bad("chain cells disagree on the dimension");
    entries.emplace_back(c, element_from_json(*group, rec.at("coef")));
  }
  if (ambient < 0 || dim < 0) bad("empty chain needs \"dim\" and \"ambient\"");
  Chain chain(group, dim, ambient);
  for (const auto& [c, x] : entries) {
    if (chain.coefficient(c).value != 0) {
      bad("cell " + cell_key(c, ambient) + " listed twice");
    }
    chain.set(c, x);
  }
  return chain;
}

OrderedJson chain_to_json(const Chain& c) {
  OrderedJson a = OrderedJson::array();
  for (const auto& [cell, x] : c.coeffs()) {
    OrderedJson rec;
    rec["base"] = point_json(cell.base, c.ambient());
    rec["axes"] = cell.axis_list();
    rec["coef"] = c.group().format(x);
    a.push_back(std::move(rec));
  }
  return a;
}

Box box_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("lo") || !j.contains("hi")) {
    bad("window needs \"lo\" and \"hi\"");
  }
  Box box;
  int a1 = 0, a2 = 0;
  box.lo = point_of(j.at("lo"), &a1);
  box.hi = point_of(j.at("hi"), &a2);
  if (a1 != a2) bad("window corners disagree on the dimension");
  box.ambient = a1;
  for (int i = 0; i < a1; ++i) {
    if (box.lo[i] > box.hi[i]) bad("window has lo > hi");
  }
  return box;
}

Window window_from_json(const nlohmann::json& j) {
  Window w{box_from_json(j), std::nullopt};
  if (j.contains("U")) {
    const json& u = j.at("U");
    if (u.contains("center")) {
      int amb = 0;
      Point c = point_of(u.at("center"), &amb);
      if (amb != w.box.ambient) bad("U center has the wrong dimension");
      for (auto& x : c) x *= 2;
      w.subregion = Region::ball(c, rational_of(u.at("radius")), amb);
    } else {
      const Box b = box_from_json(u);
      if (b.ambient != w.box.ambient) bad("U has the wrong dimension");
      w.subregion = Region::open_box(b.lo, b.hi, b.ambient);
    }
  }
  return w;
}

PlateauProblem problem_from_json(const nlohmann::json& j) {
  if (!j.is_object()) bad("problem must be an object");
  for (const char* key : {"group", "boundary", "window"}) {
    if (!j.contains(key)) bad(std::string("problem needs \"") + key + "\"");
  }
  const GroupPtr group = make_group(group_spec_from_json(j.at("group")));
  const Box window = box_from_json(j.at("window"));
  int dim = -1;
  if (j.contains("dim")) dim = j.at("dim").get<int>();
  Chain boundary = chain_from_json(group, j.at("boundary"), window.ambient, dim < 0 ? -1 : dim - 1);
  if (dim < 0) dim = boundary.dim() + 1;
  PlateauProblem p{group, std::move(boundary), dim, window, 0, std::nullopt, 0};
  if (j.contains("bound")) p.coefficient_bound = j.at("bound").get<std::int64_t>();
  if (j.contains("multiplicity")) p.multiplicity = element_from_json(*group, j.at("multiplicity"));
  if (j.contains("graph_axis")) p.graph_axis = j.at("graph_axis").get<int>();
  return p;
}

LevelFunction level_function_from_json(const nlohmann::json& j) {
  if (!j.is_object()) bad("level function must map cell keys to integers");
  LevelFunction f;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number_integer()) bad("level of " + key + " must be an integer");
    f[parse_cell_key(key)] = value.get<int>();
  }
  return f;
}

OrderedJson flatnorm_result_to_json(const FlatNormResult& r) {
  OrderedJson j;
  j["value"] = to_string(r.value);
  j["Q"] = chain_to_json(r.filling);
  j["remainder"] = chain_to_json(r.remainder);
  j["certificate"] = std::string(certificate_name(r.certificate));
  return j;
}

OrderedJson plateau_result_to_json(const PlateauResult& r) {
  const NormedGroup& group = r.minimizer.group();
  OrderedJson j;
  j["mass"] = to_string(r.mass);
  j["minimizer"] = chain_to_json(r.minimizer);
  j["certificate"] = std::string(certificate_name(r.certificate));
  if (!group.is_finite()) {
    j["coefficient_bound"] = r.coefficient_bound;
    j["coefficient_bound_sufficient"] = r.coefficient_bound_sufficient.value_or(false);
  }
  if (r.projection_lower_bound) j["projection_lower_bound"] = to_string(*r.projection_lower_bound);
  OrderedJson graph;
  graph["axis"] = r.graph.axis;
  graph["g"] = r.graph.g ? OrderedJson(group.format(*r.graph.g)) : OrderedJson(nullptr);
  graph["graph"] = r.graph.graph;
  graph["columns"] = r.graph.columns;
  graph["offending_columns"] = r.graph.offending_columns;
  graph["vertical_cells"] = r.graph.vertical_cells;
  j["graphness"] = std::move(graph);
  return j;
}

OrderedJson sti_report_to_json(const NormedGroup& group, const StiReport& r) {
  OrderedJson j;
  j["g"] = group.format(r.g);
  j["norm"] = to_string(group.norm(r.g));
  j["gap"] = r.gap ? to_string(*r.gap) : "inf";
  if (r.witness) {
    j["witness"] = {group.format(r.witness->first), group.format(r.witness->second)};
  } else {
    j["witness"] = nullptr;
  }
  j["holds"] = r.holds;
  if (!group.is_finite()) {
    j["search_radius"] = r.search_radius;
    if (r.tail_bound) j["tail_bound"] = to_string(*r.tail_bound);
  }
  return j;
}

}  // namespace flatchain
