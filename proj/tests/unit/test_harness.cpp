#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "common.hpp"
#include "hlab/check.hpp"
#include "hlab/harness.hpp"
#include "hlab/parallel.hpp"

using namespace hlab;
using testing::code_of;

namespace {

std::vector<ReportRow> sample_rows() {
  return {
      {"bm", "exp/a", "brezis-merle-exp", "n=2 k=1", 1.0, 2.0, 1.0, true, 0.0},
      {"bm", "exp/b", "brezis-merle-exp", "n=2, k=1", 0.1, std::numeric_limits<double>::infinity(),
       std::numeric_limits<double>::infinity(), true, 0.0},
      {"bm", "exp/c", "brezis-merle-exp", "quote \"x\"", 3.0, 2.0, -1.0, false, 1.5},
  };
}

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("check records") {
  const auto ok = make_record("a", "x", "", 1.0, 2.0);
  CHECK(ok.pass);
  CHECK(ok.margin == 1.0);
  const auto edge = make_record("b", "x", "", 2.0 + 1e-10, 2.0, 1e-9);
  CHECK(edge.pass);
  const auto bad = make_record("c", "x", "", 3.0, 2.0, 0.5);
  CHECK_FALSE(bad.pass);
  CHECK(bad.margin == -1.0);
  CHECK_FALSE(make_record("d", "x", "", std::nan(""), 2.0).pass);
  CHECK(make_flag("e", "x", "", true).pass);
  CHECK_FALSE(make_flag("f", "x", "", false).pass);
  CHECK(make_equality("g", "x", "", 1.0 + 1e-9, 1.0, 1e-8).pass);
  CHECK_FALSE(make_equality("h", "x", "", 1.1, 1.0, 1e-8).pass);
}

TEST_CASE("suite and format names") {
  for (auto s : {Suite::sym, Suite::solve, Suite::capacity, Suite::bm, Suite::abp, Suite::degiorgi, Suite::liouville,
                 Suite::all})
    CHECK(parse_suite(to_string(s)) == s);
  CHECK(code_of([] { parse_suite("nope"); }).has_value());
  CHECK(parse_format("jsonl") == ReportFormat::jsonl);
  CHECK(code_of([] { parse_format("xml"); }).has_value());
}

TEST_CASE("CSV report layout") {
  const auto csv = format_report(sample_rows(), ReportFormat::csv);
  CHECK(line_count(csv) == 4);
  CHECK(csv.rfind("suite,check,anchor,inputs,lhs,rhs,margin,pass,ms\n", 0) == 0);
  CHECK(csv.find("\"n=2, k=1\"") != std::string::npos);
  CHECK(csv.find("1.00000000000000000e+00") != std::string::npos);
  CHECK(csv.find(",false,") != std::string::npos);
  CHECK(code_of([] { format_report({}, ReportFormat::csv); }).has_value());
  CHECK(code_of([] { format_report({}, ReportFormat::jsonl); }).has_value());
}

TEST_CASE("JSON lines round trip") {
  const auto rows = sample_rows();
  const auto text = format_report(rows, ReportFormat::jsonl);
  CHECK(line_count(text) == 3);
  CHECK(read_report_jsonl(text) == rows);
  CHECK(code_of([] { read_report_jsonl("{\"suite\": 1}\n"); }) == Errc::schema_error);
}

TEST_CASE("report files") {
  const auto path = (std::filesystem::temp_directory_path() / "hlab_unit_report.jsonl").string();
  emit_report(sample_rows(), ReportFormat::jsonl, path);
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::filesystem::remove(path);
  CHECK(read_report_jsonl(buf.str()) == sample_rows());
  CHECK(code_of([] { emit_report(sample_rows(), ReportFormat::csv, "/nonexistent/dir/report.csv"); }) ==
        Errc::io_error);
}

TEST_CASE("configuration parsing") {
  const auto cfg = config_from_json(R"({"suite": "capacity", "n": 4, "k": 2, "radius": 2.0, "grid_n": 1024})");
  CHECK(cfg.suite == Suite::capacity);
  CHECK(cfg.n == 4);
  CHECK(cfg.k == 2);
  CHECK(cfg.R == 2.0);
  CHECK(cfg.grid.nodes == 1024);
  ExperimentConfig base;
  base.family = "quadratic";
  CHECK(config_from_json(R"({"n": 3})", base).family == "quadratic");

  try {
    config_from_json("{\n  \"n\": 3,\n  \"k\": oops\n}");
    FAIL("malformed config accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::schema_error);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  try {
    config_from_json("{\n  \"n\": 3,\n  \"bogus\": 1\n}");
    FAIL("unknown key accepted");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line") != std::string::npos);
    CHECK(std::string(e.what()).find("bogus") != std::string::npos);
  }
  ExperimentConfig bad;
  bad.n = 2;
  bad.k = 3;
  CHECK(code_of([&] { validate_config(bad); }).has_value());
}

TEST_CASE("suite exit codes") {
  const auto def = run_suite(ExperimentConfig{});
  CHECK(def.exit_code == 0);
  CHECK_FALSE(def.rows.empty());
  CHECK(std::all_of(def.rows.begin(), def.rows.end(), [](const ReportRow& r) { return r.pass && r.suite == "bm"; }));

  ExperimentConfig bad;
  bad.k = 3;
  const auto res = run_suite(bad);
  CHECK(res.exit_code == 2);
  CHECK(res.rows.empty());
  CHECK_FALSE(res.error.empty());

  ExperimentConfig phi;
  phi.suite = Suite::degiorgi;
  phi.fixture = "constant-phi";
  const auto dg = run_suite(phi);
  CHECK(dg.exit_code == 1);
  const auto failing = std::count_if(dg.rows.begin(), dg.rows.end(), [](const ReportRow& r) { return !r.pass; });
  CHECK(failing == 1);
}

TEST_CASE("reports are sorted and deterministic across thread counts") {
  ExperimentConfig cfg;
  cfg.suite = Suite::sym;
  const auto a = format_report(run_suite(cfg).rows, ReportFormat::jsonl);
  ::setenv("HESSIAN_LAB_THREADS", "1", 1);
  CHECK(thread_count() == 1);
  const auto rows = run_suite(cfg).rows;
  ::unsetenv("HESSIAN_LAB_THREADS");
  CHECK(format_report(rows, ReportFormat::jsonl) == a);
  CHECK(std::is_sorted(rows.begin(), rows.end(), [](const ReportRow& x, const ReportRow& y) {
    return std::tie(x.suite, x.check) < std::tie(y.suite, y.check);
  }));
  CHECK(std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.ms == 0.0; }));
}

TEST_CASE("parallel_map keeps index order") {
  const auto out = parallel_map(100, [](std::size_t i) { return i * i; });
  REQUIRE(out.size() == 100);
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == i * i);
}
