#include <doctest.h>

#include "gftoda/report.hpp"

using namespace gftoda;

TEST_CASE("complex values serialize as [re, im]") {
  Json j = complex_json(cplx(1.5, -2.25));
  CHECK(j.is_array());
  CHECK(j[0].get<double>() == 1.5);
  CHECK(j[1].get<double>() == -2.25);
}

TEST_CASE("report summary counts checks and maximal residual") {
  Report rep;
  rep.command = "verify";
  rep.rows.push_back(Json{{"id", "a"}, {"residual", 1e-9}, {"threshold", 1e-6}, {"pass", true}});
  rep.rows.push_back(Json{{"id", "b"}, {"residual", 2e-3}, {"threshold", 1e-6}, {"pass", false}});
  rep.rows.push_back(Json{{"id", "c"}, {"value", complex_json(cplx(1, 2))}});
  Json doc = rep.to_json();
  CHECK(doc["summary"]["checks"] == 2);
  CHECK(doc["summary"]["passed"] == 1);
  CHECK(doc["summary"]["max_residual"].get<double>() == 2e-3);
  CHECK(doc["versions"].contains("gftoda"));
  CHECK_FALSE(rep.all_pass());
}

TEST_CASE("csv flattens complex columns") {
  Report rep;
  rep.command = "eval-hgf";
  rep.rows.push_back(Json{{"point", complex_json(cplx(0.25, 0))},
                          {"value", complex_json(cplx(1, -1))},
                          {"abs_error_estimate", 1e-12}});
  std::string csv = rep.render_csv();
  CHECK(csv.find("point_re,point_im,value_re,value_im,abs_error_estimate") == 0);
  CHECK(csv.find("0.25,0,1,-1,") != std::string::npos);
}

TEST_CASE("suite rows are sorted by identifier") {
  SuiteResult s1{"zeta", {{"z/2", 0, 1, true, ""}, {"z/1", 0, 1, true, ""}}};
  SuiteResult s2{"alpha", {{"a/1", 0, 1, true, ""}}};
  Report rep = report_from_suites("verify", {s1, s2}, Json::object());
  REQUIRE(rep.rows.size() == 3);
  CHECK(rep.rows[0]["id"] == "a/1");
  CHECK(rep.rows[1]["id"] == "z/1");
  CHECK(rep.rows[2]["id"] == "z/2");

  // rendering is a pure function of the content
  CHECK(rep.render_json() == rep.render_json());
  CHECK(rep.render_csv() == rep.render_csv());
}
