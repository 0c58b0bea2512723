#include <doctest.h>

#include <fstream>
#include <sstream>

#include "formexp/cli.hpp"
#include "formexp/pbw.hpp"
#include "support.hpp"

using namespace formexp;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "formexp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string chart_path(const std::string& name) { return std::string(FORMEXP_CHART_DIR) + "/" + name + ".chart"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("pbw command") {
  auto r = run({"pbw", "--chart", chart_path("e1"), "s[x]^2"});
  CHECK(r.code == 0);
  CHECK(r.out == "d[x]^2 - 1*x*d[x]\n");
  r = run({"pbw", "--chart", chart_path("e1"), "--direction", "inv", "d[x]^2"});
  CHECK(r.code == 0);
  CHECK(r.out == "s[x]^2 + 1*x*s[x]\n");
  for (const char* name : {"flat1", "curved2", "deg2", "torsionful"}) {
    r = run({"pbw", "--chart", chart_path(name), "1"});
    CHECK(r.code == 0);
    CHECK(r.out == "1\n");
  }
}

TEST_CASE("tau command") {
  auto r = run({"tau", "--chart", chart_path("flat1"), "x^2"});
  CHECK(r.code == 0);
  CHECK(r.out == "x^2 + 2*x*y + y^2\n");
  r = run({"tau", "--chart", chart_path("e1"), "5"});
  CHECK(r.out == "5\n");
  auto a = run({"tau", "--chart", chart_path("e1"), "--route", "pbw", "x^2"});
  auto b = run({"tau", "--chart", chart_path("e1"), "--route", "series", "x^2"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("x^2 + 2*x*y + (1 - x^2)*y^2 + ", 0) == 0);
  for (const char* name : {"curved2", "mixed", "odd2", "deg2"}) {
    CAPTURE(name);
    auto cf = testing::chart(name);
    std::string f = cf.chart->coordinate(0).name + "^2 + 3";
    auto p = run({"tau", "--chart", chart_path(name), "--max-weight", "4", "--route", "pbw", f});
    auto s = run({"tau", "--chart", chart_path(name), "--max-weight", "4", "--route", "series", f});
    CHECK(p.code == 0);
    CHECK(p.out == s.out);
  }
}

TEST_CASE("fedosov command") {
  for (const char* name : {"flat1", "e1"}) {
    auto r = run({"fedosov", "--chart", chart_path(name)});
    CHECK(r.code == 0);
    CHECK(r.out == "D2_RESIDUAL 0\n");
  }
  auto r = run({"fedosov", "--chart", chart_path("curved2")});
  CHECK(r.code == 0);
  std::string golden = read_file(std::string(FORMEXP_GOLDEN_DIR) + "/curved2_fedosov.txt");
  REQUIRE_FALSE(golden.empty());
  CHECK(r.out == golden);

  // The golden records are -Xi, computed without the Fedosov iteration.
  auto c2 = testing::chart("curved2");
  PbwContext ctx(c2.connection);
  CHECK(golden == format_records(fiber_records(-xi_form(ctx))) + "D2_RESIDUAL 0\n");

  r = run({"fedosov", "--chart", chart_path("curved2"), "--max-weight", "3"});
  CHECK(r.out == "A[i=1,J=(1,1),k=2] = -1/3\nA[i=2,J=(2,0),k=2] = 1/3\nD2_RESIDUAL 0\n");
  r = run({"fedosov", "--chart", chart_path("torsionful")});
  CHECK(r.code == 4);
}

TEST_CASE("verify command") {
  auto r = run({"verify", "--chart", chart_path("deg2"), "--suite", "vavin", "--samples", "10"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("RESULT PASS") != std::string::npos);
  r = run({"verify", "--chart", chart_path("torsionful"), "--suite", "jasmine", "--samples", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("SKIPPED reason:") != std::string::npos);
  r = run({"verify", "--chart", chart_path("bad_degree")});
  CHECK(r.code == 2);
  CHECK(r.err.find("line") != std::string::npos);
  r = run({"verify", "--chart", chart_path("flat1"), "--suite", "nonsense"});
  CHECK(r.code == 2);
}

TEST_CASE("error exit codes") {
  auto r = run({"pbw", "--chart", chart_path("e1"), "x + q"});
  CHECK(r.code == 2);
  CHECK(r.err.find("4") != std::string::npos);
  r = run({"pbw", "--chart", chart_path("e1"), "--max-weight", "2", "s[x]^4"});
  CHECK(r.code == 3);
  r = run({"pbw", "--chart", chart_path("missing_file"), "1"});
  CHECK(r.code == 2);
  r = run({"pbw", "--chart", chart_path("e1"), "--direction", "sideways", "1"});
  CHECK(r.code == 2);
  r = run({});
  CHECK(r.code == 2);
}

TEST_CASE("output is deterministic and re-parses") {
  std::vector<std::vector<std::string>> cmds = {
      {"pbw", "--chart", chart_path("deg2"), "--max-weight", "3", "s[x]*s[t]*s[u] + x*s[u]"},
      {"pbw", "--chart", chart_path("odd2"), "--direction", "inv", "--max-weight", "3", "d[x]^2*d[t1] + t2*d[t2]"},
      {"tau", "--chart", chart_path("mixed"), "--max-weight", "3", "x*theta + x^2"},
      {"fedosov", "--chart", chart_path("deg2"), "--max-weight", "3"}};
  for (const auto& cmd : cmds) {
    auto a = run(cmd), b = run(cmd);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
  auto cf = testing::chart("deg2", 3);
  auto out = first_line(run(cmds[0]).out);
  CHECK(testing::Op(cf.chart, out).to_string() == out);
  auto odd = testing::chart("odd2", 3);
  out = first_line(run(cmds[1]).out);
  CHECK(testing::S(odd.chart, out).to_string() == out);
  auto mx = testing::chart("mixed", 3);
  out = first_line(run(cmds[2]).out);
  CHECK(format_poly(parse_form(mx.chart, out)) == out);
}

TEST_CASE("chart file grammar") {
  auto cf = parse_chart_file(
      "# comment\n[coordinates]\nx 0\ntheta 1\n\n[christoffel]\n1 1 1 = x   # by index\nx theta theta = x\n"
      "theta x theta = x\n[truncation]\nQ = 3\nP = 2\nB = 2\n[flags]\ntorsion_free = true\n",
      std::nullopt);
  CHECK(cf.chart->dim() == 2);
  CHECK(cf.chart->truncation().max_sym_weight == 3);
  CHECK(cf.connection.torsion_free());
  CHECK(cf.connection.gamma(0, 0, 0) == testing::P(cf.chart, "x"));
  auto again = parse_chart_file(format_chart_file(cf), std::nullopt);
  CHECK(format_chart_file(again) == format_chart_file(cf));
  CHECK(again.connection.gamma(0, 1, 1) == testing::P(again.chart, "x"));
  CHECK(parse_chart_file("[coordinates]\nx 0\n[truncation]\nQ = 3\n", 5).chart->truncation().max_sym_weight == 5);

  auto error_line = [](const std::string& text) -> std::string {
    try {
      parse_chart_file(text, std::nullopt);
    } catch (const ChartFileError& e) {
      return e.what();
    }
    return "no error";
  };
  CHECK(error_line("[coordinates]\nx zero\n").find("line 2") != std::string::npos);
  CHECK(error_line("[coordinates]\nx 0\n[christoffel]\nx x y = 1\n").find("line 4") != std::string::npos);
  CHECK(error_line("[coordinates]\nx 0\n[christoffel]\nx x x = x +\n").find("line 4") != std::string::npos);
  CHECK(error_line("[coordinates]\nx 0\n[christoffel]\nx x x = x\nx x x = 1\n").find("duplicate") != std::string::npos);
  CHECK(error_line("[coordinates]\nx 0\n[bogus]\n").find("line 3") != std::string::npos);
  CHECK(error_line("x 0\n").find("line 1") != std::string::npos);
  CHECK(error_line("[coordinates]\nx 0\n[flags]\ntorsion_free = maybe\n").find("line 4") != std::string::npos);
  CHECK(error_line("[coordinates]\nx 0\ny 1\n[christoffel]\nx y y = 1\n[flags]\ntorsion_free = true\n") != "no error");
}
