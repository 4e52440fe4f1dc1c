#include "gftoda/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace gftoda {

namespace {
constexpr const char* kVersion = "0.1.0";

std::string format_number(const Json& v) {
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v.get<double>());
  return std::string(buf);
}
}  // namespace

Json complex_json(cplx v) { return Json::array({v.real(), v.imag()}); }

Json Report::to_json() const {
  Json doc;
  doc["command"] = command;
  doc["config_echo"] = config_echo;
  doc["rows"] = rows;
  int checks = 0, passed = 0;
  double max_residual = 0;
  for (const auto& r : rows) {
    if (r.contains("pass")) {
      ++checks;
      if (r["pass"].get<bool>()) ++passed;
    }
    if (r.contains("residual") && r["residual"].is_number())
      max_residual = std::max(max_residual, r["residual"].get<double>());
  }
  doc["summary"] = Json{{"checks", checks}, {"passed", passed}, {"max_residual", max_residual}};
  doc["versions"] = Json{{"gftoda", kVersion}};
  return doc;
}

std::string Report::render_json() const { return to_json().dump(2) + "\n"; }

std::string Report::render_csv() const {
  // column order: first appearance across rows; complex values flatten to
  // _re/_im pairs
  std::vector<std::string> columns;
  auto is_complex = [](const Json& v) {
    return v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number();
  };
  auto add_column = [&](const std::string& name) {
    if (std::find(columns.begin(), columns.end(), name) == columns.end())
      columns.push_back(name);
  };
  for (const auto& r : rows)
    for (const auto& [key, value] : r.items()) {
      if (is_complex(value)) {
        add_column(key + "_re");
        add_column(key + "_im");
      } else {
        add_column(key);
      }
    }
  std::string out;
  for (size_t i = 0; i < columns.size(); ++i)
    out += (i ? "," : "") + columns[i];
  out += "\n";
  for (const auto& r : rows) {
    Json flat = Json::object();
    for (const auto& [key, value] : r.items()) {
      if (is_complex(value)) {
        flat[key + "_re"] = value[0];
        flat[key + "_im"] = value[1];
      } else {
        flat[key] = value;
      }
    }
    for (size_t i = 0; i < columns.size(); ++i) {
      if (i) out += ",";
      if (!flat.contains(columns[i])) continue;
      const Json& v = flat[columns[i]];
      if (v.is_number())
        out += format_number(v);
      else if (v.is_boolean())
        out += v.get<bool>() ? "true" : "false";
      else if (v.is_string()) {
        std::string s = v.get<std::string>();
        std::replace(s.begin(), s.end(), ',', ';');
        out += s;
      } else
        out += v.dump();
    }
    out += "\n";
  }
  return out;
}

bool Report::all_pass() const {
  for (const auto& r : rows)
    if (r.contains("pass") && !r["pass"].get<bool>()) return false;
  return true;
}

Report report_from_suites(const std::string& command, const std::vector<SuiteResult>& suites,
                          Json config_echo) {
  Report rep;
  rep.command = command;
  rep.config_echo = std::move(config_echo);
  std::vector<CheckRow> rows;
  for (const auto& s : suites) rows.insert(rows.end(), s.rows.begin(), s.rows.end());
  std::sort(rows.begin(), rows.end(),
            [](const CheckRow& a, const CheckRow& b) { return a.id < b.id; });
  for (const auto& r : rows) {
    Json j;
    j["id"] = r.id;
    j["residual"] = r.residual;
    j["threshold"] = r.threshold;
    j["pass"] = r.pass;
    if (!r.note.empty()) j["note"] = r.note;
    rep.rows.push_back(std::move(j));
  }
  return rep;
}

void write_report(const Report& report, const std::string& format, const std::string& path) {
  std::string text;
  if (format == "json")
    text = report.render_json();
  else if (format == "csv")
    text = report.render_csv();
  else
    throw std::invalid_argument("unknown report format: " + format);
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << text;
}

}  // namespace gftoda
