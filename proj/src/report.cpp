#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "flatchain/error.hpp"
#include "flatchain/experiments.hpp"

namespace flatchain {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string gap_text(const std::optional<Rational>& gap) {
  return gap ? to_string(*gap) : "inf";
}

std::optional<Rational> parse_gap(const nlohmann::json& j) {
  const std::string s = j.get<std::string>();
  if (s == "inf") return std::nullopt;
  return parse_rational(s);
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIoFailure, "cannot open " + path + " for writing");
  out << content;
  out.close();
  if (!out) throw Error(ErrorKind::kIoFailure, "failed writing " + path);
}

}  // namespace

std::string dichotomy_csv(const DichotomyReport& report) {
  std::string out = "group,g,gap,k,h,split_mass,merged_mass,optimum,graph,verdict\n";
  for (const DichotomyRow& r : report.rows) {
    out += csv_field(r.group) + ',' + csv_field(r.g) + ',' + gap_text(r.gap) + ',' +
           std::to_string(r.k) + ',' + std::to_string(r.h) + ',' +
           (r.split_mass ? to_string(*r.split_mass) : "") + ',' + to_string(r.merged_mass) + ',' +
           to_string(r.optimum) + ',' + (r.graph ? "true" : "false") + ',' +
           csv_field(r.verdict) + '\n';
  }
  return out;
}

nlohmann::ordered_json dichotomy_json(const DichotomyReport& report) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const DichotomyRow& r : report.rows) {
    nlohmann::ordered_json row;
    row["group"] = r.group;
    row["g"] = r.g;
    row["gap"] = gap_text(r.gap);
    row["k"] = r.k;
    row["h"] = r.h;
    row["split_mass"] = r.split_mass ? nlohmann::ordered_json(to_string(*r.split_mass)) : nullptr;
    row["merged_mass"] = to_string(r.merged_mass);
    row["optimum"] = to_string(r.optimum);
    row["graph"] = r.graph;
    row["verdict"] = r.verdict;
    row["certificate"] = r.certificate;
    rows.push_back(std::move(row));
  }
  nlohmann::ordered_json groups = nlohmann::ordered_json::array();
  for (const DichotomyGroupSummary& s : report.groups) {
    nlohmann::ordered_json g;
    g["group"] = s.group;
    g["g"] = s.g;
    g["gap"] = gap_text(s.gap);
    g["crossover"] = s.crossover ? nlohmann::ordered_json(to_string(*s.crossover)) : nullptr;
    g["verdict"] = s.verdict;
    g["consistent"] = s.consistent;
    groups.push_back(std::move(g));
  }
  nlohmann::ordered_json j;
  j["rows"] = std::move(rows);
  j["groups"] = std::move(groups);
  return j;
}

DichotomyReport dichotomy_from_json(const nlohmann::json& j) {
  DichotomyReport report;
  try {
    for (const auto& r : j.at("rows")) {
      DichotomyRow row;
      row.group = r.at("group").get<std::string>();
      row.g = r.at("g").get<std::string>();
      row.gap = parse_gap(r.at("gap"));
      row.k = r.at("k").get<int>();
      row.h = r.at("h").get<int>();
      if (!r.at("split_mass").is_null()) {
        row.split_mass = parse_rational(r.at("split_mass").get<std::string>());
      }
      row.merged_mass = parse_rational(r.at("merged_mass").get<std::string>());
      row.optimum = parse_rational(r.at("optimum").get<std::string>());
      row.graph = r.at("graph").get<bool>();
      row.verdict = r.at("verdict").get<std::string>();
      row.certificate = r.at("certificate").get<std::string>();
      report.rows.push_back(std::move(row));
    }
    for (const auto& g : j.at("groups")) {
      DichotomyGroupSummary s;
      s.group = g.at("group").get<std::string>();
      s.g = g.at("g").get<std::string>();
      s.gap = parse_gap(g.at("gap"));
      if (!g.at("crossover").is_null()) {
        s.crossover = parse_rational(g.at("crossover").get<std::string>());
      }
      s.verdict = g.at("verdict").get<std::string>();
      s.consistent = g.at("consistent").get<bool>();
      report.groups.push_back(std::move(s));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kInvalidInput, std::string("malformed report JSON: ") + e.what());
  }
  return report;
}

// Optimum per unit sheet area (optimum / k^2) against k, one polyline per
// group, with the crossover sizes marked.
std::string dichotomy_svg(const DichotomyReport& report) {
  constexpr double kW = 640, kH = 400, kLeft = 60, kRight = 180, kTop = 30, kBottom = 50;
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

  std::vector<std::string> order;
  std::map<std::string, std::vector<std::pair<int, double>>> series;
  int kmin = 1, kmax = 2;
  double ymax = 1;
  bool first = true;
  for (const DichotomyRow& r : report.rows) {
    const std::string key = r.group + " g=" + r.g;
    if (!series.contains(key)) order.push_back(key);
    const double y = to_double(r.optimum) / (static_cast<double>(r.k) * r.k);
    series[key].push_back({r.k, y});
    kmin = first ? r.k : std::min(kmin, r.k);
    kmax = first ? r.k : std::max(kmax, r.k);
    ymax = std::max(ymax, y);
    first = false;
  }
  if (kmax == kmin) ++kmax;
  ymax *= 1.1;
  const double pw = kW - kLeft - kRight, ph = kH - kTop - kBottom;
  auto px = [&](double k) { return kLeft + (k - kmin) / (kmax - kmin) * pw; };
  auto py = [&](double y) { return kTop + ph - y / ymax * ph; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
      << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kLeft << "\" y=\"18\" font-family=\"sans-serif\" font-size=\"13\">"
      << "optimal mass per unit sheet area</text>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << fixed2(kTop + ph) << "\" x2=\""
      << fixed2(kLeft + pw) << "\" y2=\"" << fixed2(kTop + ph) << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << fixed2(kTop + ph) << "\" stroke=\"black\"/>\n";
  for (int k = kmin; k <= kmax; ++k) {
    svg << "<text x=\"" << fixed2(px(k)) << "\" y=\"" << fixed2(kTop + ph + 18)
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << k
        << "</text>\n";
  }
  svg << "<text x=\"" << fixed2(kLeft + pw / 2) << "\" y=\"" << fixed2(kH - 10)
      << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">k</text>\n";
  for (int i = 0; i <= 4; ++i) {
    const double y = ymax * i / 4;
    svg << "<text x=\"" << fixed2(kLeft - 6) << "\" y=\"" << fixed2(py(y) + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << fixed2(y)
        << "</text>\n";
  }

  for (const DichotomyGroupSummary& s : report.groups) {
    if (!s.crossover) continue;
    const double c = to_double(*s.crossover);
    if (c < kmin || c > kmax) continue;
    svg << "<line class=\"crossover\" x1=\"" << fixed2(px(c)) << "\" y1=\"" << kTop
        << "\" x2=\"" << fixed2(px(c)) << "\" y2=\"" << fixed2(kTop + ph)
        << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  }

  for (std::size_t i = 0; i < order.size(); ++i) {
    const char* color = kColors[i % std::size(kColors)];
    std::string points;
    for (const auto& [k, y] : series[order[i]]) {
      if (!points.empty()) points += ' ';
      points += fixed2(px(k)) + ',' + fixed2(py(y));
    }
    svg << "<polyline class=\"series\" data-group=\"" << xml_escape(order[i])
        << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"" << points
        << "\"/>\n";
    for (const auto& [k, y] : series[order[i]]) {
      svg << "<circle cx=\"" << fixed2(px(k)) << "\" cy=\"" << fixed2(py(y))
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    const double ly = kTop + 14 + 18.0 * i;
    svg << "<line x1=\"" << fixed2(kW - kRight + 12) << "\" y1=\"" << fixed2(ly - 4) << "\" x2=\""
        << fixed2(kW - kRight + 30) << "\" y2=\"" << fixed2(ly - 4) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << fixed2(kW - kRight + 36) << "\" y=\"" << fixed2(ly)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << xml_escape(order[i])
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void emit_report(const DichotomyReport& report, const ReportPaths& paths) {
  if (!paths.csv.empty()) write_file(paths.csv, dichotomy_csv(report));
  if (!paths.json.empty()) write_file(paths.json, dichotomy_json(report).dump(2) + "\n");
  if (!paths.svg.empty()) write_file(paths.svg, dichotomy_svg(report));
}

}  // namespace flatchain
