#pragma once

// Machine-readable run reports: JSON (schema: command, config_echo, rows,
// summary, versions) and a flattened CSV with re/im column pairs for
// complex values.  Rendering is byte-stable for identical inputs.

#include <json.hpp>
#include <string>
#include <vector>

#include "gftoda/jet.hpp"
#include "gftoda/verify.hpp"

namespace gftoda {

using Json = nlohmann::ordered_json;

Json complex_json(cplx v);  // [re, im]

struct Report {
  std::string command;
  Json config_echo = Json::object();
  std::vector<Json> rows;

  Json to_json() const;
  std::string render_json() const;
  std::string render_csv() const;
  bool all_pass() const;
};

Report report_from_suites(const std::string& command, const std::vector<SuiteResult>& suites,
                          Json config_echo);

// empty path writes to stdout
void write_report(const Report& report, const std::string& format, const std::string& path);

}  // namespace gftoda
