#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "ff/report.hpp"

using ff::Json;

TEST_CASE("format_double round-trips doubles") {
  std::vector<double> values = {0.0,         1.0,      -2.0,   0.1,
                                1.0 / 3.0,   1e300,    1e-300, 6.283185307179586,
                                -0.12345678901234567};
  for (double v : values) {
    std::string s = ff::format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
  CHECK(ff::format_double(1.0) == "1");
  CHECK(ff::format_double(0.5) == "0.5");
  CHECK(ff::format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("json documents are ordered and stable") {
  Json j = Json::object();
  j.set("name", Json::str("a \"b\"\n"));
  j.set("count", Json::integer(3));
  j.set("ok", Json::boolean(true));
  j.set("x", Json::number(0.5));
  j.set("missing", Json::null());
  Json arr = Json::array();
  arr.push(Json::integer(1));
  arr.push(Json::str("two"));
  j.set("items", std::move(arr));
  j.set("empty_obj", Json::object());
  j.set("empty_arr", Json::array());

  std::string expect =
      "{\n"
      "  \"name\": \"a \\\"b\\\"\\n\",\n"
      "  \"count\": 3,\n"
      "  \"ok\": true,\n"
      "  \"x\": 0.5,\n"
      "  \"missing\": null,\n"
      "  \"items\": [\n"
      "    1,\n"
      "    \"two\"\n"
      "  ],\n"
      "  \"empty_obj\": {},\n"
      "  \"empty_arr\": []\n"
      "}\n";
  CHECK(j.dump() == expect);

  CHECK(Json::number(std::numeric_limits<double>::quiet_NaN()).dump() == "null\n");
  CHECK(Json::number(std::numeric_limits<double>::infinity()).dump() == "null\n");
  CHECK_THROWS_AS(Json::array().set("k", Json::null()), std::logic_error);
  CHECK_THROWS_AS(Json::object().push(Json::null()), std::logic_error);
}

TEST_CASE("csv_join") {
  std::vector<std::string> cells = {"a", "b", "c"};
  CHECK(ff::csv_join(cells) == "a,b,c\n");
  std::vector<std::string> empty;
  CHECK(ff::csv_join(empty) == "\n");
}

TEST_CASE("singular set csv") {
  ff::Chart chart = ff::fold_chart();
  ff::SingularSetReport report;
  ff::SingularSetReport::Row row;
  row.x = {0.0, 0.0, 0.0, 0.0};
  row.rank = 0;
  row.label = ff::NodeLabel::FoldCircle;
  row.exact = true;
  report.rows.push_back(row);
  row.x = {0.0, 0.8, 0.0, 0.0};
  row.rank = 2;
  row.label = ff::NodeLabel::Regular;
  report.rows.push_back(row);

  std::string expect =
      "theta,x1,x2,x3,rank,label,exact\n"
      "0,0,0,0,0,FoldCircle,1\n"
      "0,0.80000000000000004,0,0,2,Regular,1\n";
  CHECK(ff::singular_set_csv(chart, report) == expect);
}

TEST_CASE("trajectory csv") {
  ff::Chart chart = ff::lefschetz_chart();
  ff::LeafTrajectory traj;
  traj.times = {0.0};
  traj.points = {{0.5, 0.0, 0.0, 0.0}};
  traj.casimir_values = {{0.25, 0.0}};
  std::string expect =
      "t,x1,y1,x2,y2,F1,F2\n"
      "0,0.5,0,0,0,0.25,0\n";
  CHECK(ff::trajectory_csv(chart, 2, traj) == expect);
}

TEST_CASE("contrast csv") {
  ff::ContrastReport rep;
  rep.rows.push_back({0.5, 0.25, 2.0});
  std::string expect =
      "radius,omega_norm,area_ratio\n"
      "0.5,0.25,2\n";
  CHECK(ff::contrast_csv(rep) == expect);
}

TEST_CASE("near symplectic csv leaves gradient rank blank off the zero locus") {
  ff::Chart chart = ff::near_symplectic_chart();
  ff::NearSymplecticReport rep;
  ff::NearSymplecticReport::Row row;
  row.x = {0.0, 0.0, 0.0, 0.0};
  row.wedge_square = 0.0;
  row.zero = true;
  row.rank = 0;
  row.gradient_rank = 3;
  rep.rows.push_back(row);
  row.x = {0.0, 0.5, 0.0, 0.0};
  row.wedge_square = 2.0;
  row.zero = false;
  row.rank = 4;
  row.gradient_rank.reset();
  rep.rows.push_back(row);

  std::string expect =
      "t,x1,x2,x3,wedge_square,zero,rank,gradient_rank\n"
      "0,0,0,0,0,1,0,3\n"
      "0,0.5,0,0,2,0,4,\n";
  CHECK(ff::near_symplectic_csv(chart, rep) == expect);
}

TEST_CASE("scaling json") {
  ff::ScalingFit fit;
  fit.radii = {1.0, 0.5};
  fit.values = {1.0, 4.0};
  fit.slope = -2.0;
  fit.max_log_residual = 0.0;
  std::string expect =
      "{\n"
      "  \"radii\": [\n"
      "    1,\n"
      "    0.5\n"
      "  ],\n"
      "  \"values\": [\n"
      "    1,\n"
      "    4\n"
      "  ],\n"
      "  \"slope\": -2,\n"
      "  \"max_log_residual\": 0\n"
      "}\n";
  CHECK(ff::scaling_json(fit).dump() == expect);
}

TEST_CASE("chart and structure json carry the descriptive fields") {
  std::string cj = ff::chart_json(ff::fold_chart()).dump();
  CHECK(cj.find("\"periodic\": true") != std::string::npos);
  CHECK(cj.find("\"period\": 6.2831853071795862") != std::string::npos);
  CHECK(cj.find("\"lo\": \"-8/5\"") != std::string::npos);
  CHECK(cj.find("\"orientation\": \"1\"") != std::string::npos);

  ff::PoissonStructure p = ff::fold_model(ff::ScalarField::constant(4, ff::Rational(1)));
  std::string pj = ff::poisson_json(p).dump();
  CHECK(pj.find("\"model\": \"fold\"") != std::string::npos);
  CHECK(pj.find("\"x2,x3\": \"x1\"") != std::string::npos);
  CHECK(pj.find("\"x1,x2\": \"-x3\"") != std::string::npos);
  CHECK(pj.find("\"conformal_factor\": \"1\"") != std::string::npos);
}

TEST_CASE("write_text_file") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "ff-report-test";
  fs::create_directories(dir);
  fs::path file = dir / "out.txt";
  std::string content = "line1\nline2\n";
  ff::write_text_file(file.string(), content);
  std::ifstream in(file, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == content);
  CHECK_THROWS_AS(ff::write_text_file((dir / "missing" / "x.txt").string(), content),
                  std::runtime_error);
  fs::remove_all(dir);
}
