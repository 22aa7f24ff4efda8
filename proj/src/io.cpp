#include "ddestab/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ddestab {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  out += '\n';
  return out;
}

std::string csv_row(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_double(values[i]);
  }
  out += '\n';
  return out;
}

namespace {

// JSON has no NaN/inf; non-finite numbers become strings.
nlohmann::ordered_json num(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

}  // namespace

std::string lemma_report_json(const LemmaReport& rep) {
  nlohmann::ordered_json j;
  j["lemma_id"] = rep.lemma_id;
  j["statement"] = rep.statement;
  j["grid"] = rep.grid_desc;
  j["resolution"] = rep.resolution;
  j["points"] = rep.points_checked;
  j["strict"] = rep.strict;
  j["margin_kind"] = rep.margin_kind;
  j["min_margin"] = num(rep.min_margin);
  nlohmann::ordered_json argmin = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < rep.argmin.size() && i < rep.coordinates.size(); ++i)
    argmin[rep.coordinates[i]] = num(rep.argmin[i]);
  j["argmin"] = argmin;
  j["raw_min_margin"] = num(rep.raw_min_margin);
  j["extended_precision_points"] = rep.extended_precision_points;
  j["violation_count"] = rep.violation_count;
  nlohmann::ordered_json vs = nlohmann::ordered_json::array();
  for (const auto& v : rep.violations) {
    nlohmann::ordered_json pt = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < v.point.size() && i < rep.coordinates.size(); ++i)
      pt[rep.coordinates[i]] = num(v.point[i]);
    vs.push_back({{"point", pt}, {"lhs", num(v.lhs)}, {"rhs", num(v.rhs)}, {"margin", num(v.margin)}});
  }
  j["violations"] = vs;
  j["passed"] = rep.passed();
  return j.dump(2) + "\n";
}

std::string fig2_curves_json(const std::vector<Fig2Curve>& curves) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : curves) {
    arr.push_back({{"mu", num(c.mu)},
                   {"theta_pi1", num(c.pi1)},
                   {"theta_pi2", num(c.pi2)},
                   {"theta_pi3", num(c.pi3)},
                   {"theta_local", num(c.theta_local)}});
  }
  return arr.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << content;
  if (!f) throw std::runtime_error("failed writing " + path);
}

void read_history_csv(const std::string& path, std::vector<double>& s, std::vector<double>& v) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open history file " + path);
  s.clear();
  v.clear();
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected s,value");
    try {
      std::size_t used = 0;
      const double a = std::stod(line.substr(0, comma), &used);
      const double b = std::stod(line.substr(comma + 1));
      s.push_back(a);
      v.push_back(b);
    } catch (const std::exception&) {
      if (lineno == 1) continue;  // header
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": not numeric");
    }
  }
}

}  // namespace ddestab
