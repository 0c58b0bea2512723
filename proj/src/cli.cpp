#include "formexp/cli.hpp"

#include <CLI11.hpp>

#include "formexp/chart_file.hpp"
#include "formexp/errors.hpp"
#include "formexp/expression.hpp"
#include "formexp/fedosov.hpp"
#include "formexp/pbw.hpp"
#include "formexp/verify.hpp"

namespace formexp {

namespace {

struct Args {
  std::string chart;
  std::optional<int> max_weight;
  std::string direction = "fwd";
  std::string route = "pbw";
  std::string suite = "all";
  std::string output = "records";
  std::string expr;
  std::uint64_t seed = VerifyOptions{}.seed;
  int samples = VerifyOptions{}.samples;
};

int cmd_pbw(const Args& a, std::ostream& out) {
  ChartFile f = load_chart_file(a.chart, a.max_weight);
  auto ctx = PbwContext::make(f.connection);
  if (a.direction == "fwd")
    out << pbw_map(*ctx, parse_sym(f.chart, a.expr)).to_string() << '\n';
  else
    out << pbw_inv(*ctx, parse_diffop(f.chart, a.expr)).to_string() << '\n';
  return 0;
}

int cmd_fedosov(const Args& a, std::ostream& out) {
  ChartFile f = load_chart_file(a.chart, a.max_weight);
  FedosovData data = FedosovData::build(f.connection);
  if (a.output == "records") {
    out << format_records(fiber_records(data.A()));
  } else {
    for (int k = 0; k < f.chart->dim(); ++k)
      out << "A(" << f.chart->name(f.chart->generator(GenKind::Fiber, k)) << ") = " << format_poly(data.A()[k]) << '\n';
  }
  std::size_t residual = 0;
  for (const auto& r : data.d2_residuals()) residual += r.size();
  out << "D2_RESIDUAL " << residual << '\n';
  return residual == 0 ? 0 : 1;
}

int cmd_tau(const Args& a, std::ostream& out) {
  ChartFile f = load_chart_file(a.chart, a.max_weight);
  GradedPoly fn = parse_poly(f.chart, a.expr, kind_bit(GenKind::Base));
  if (a.route == "pbw") {
    auto ctx = PbwContext::make(f.connection);
    out << format_poly(tau_pbw(*ctx, fn)) << '\n';
  } else {
    out << format_poly(tau_series(FedosovData::build(f.connection), fn)) << '\n';
  }
  return 0;
}

int cmd_verify(const Args& a, std::ostream& out) {
  ChartFile f = load_chart_file(a.chart, a.max_weight);
  VerifyContext v(f.connection);
  VerifyOptions o;
  o.seed = a.seed;
  o.samples = a.samples;
  auto results = run_suite(v, a.suite, o);
  out << format_report(results);
  bool ok = report_passed(results);
  out << (ok ? "RESULT PASS" : "RESULT FAIL") << '\n';
  return ok ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Formal exponential map, Fedosov connection and resolution on graded charts"};
  app.require_subcommand(1);
  Args a;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--chart", a.chart, "chart file")->required();
    sub->add_option("--max-weight", a.max_weight, "override the truncation Q")->check(CLI::Range(1, 12));
  };
  CLI::App* pbw = app.add_subcommand("pbw", "apply pbw or its inverse to an expression");
  common(pbw);
  pbw->add_option("--direction", a.direction)->check(CLI::IsMember({"fwd", "inv"}));
  pbw->add_option("expression", a.expr)->required();

  CLI::App* fed = app.add_subcommand("fedosov", "print the Fedosov A coefficients and the D^2 residual");
  common(fed);
  fed->add_option("--output", a.output)->check(CLI::IsMember({"text", "records"}));

  CLI::App* tau = app.add_subcommand("tau", "print the D-flat extension of a function");
  common(tau);
  tau->add_option("--route", a.route)->check(CLI::IsMember({"pbw", "series"}));
  tau->add_option("expression", a.expr)->required();

  CLI::App* ver = app.add_subcommand("verify", "run property suites");
  common(ver);
  ver->add_option("--suite", a.suite)->check([](const std::string& s) {
    return known_suite(s) ? std::string() : "unknown suite '" + s + "'";
  });
  ver->add_option("--seed", a.seed);
  ver->add_option("--samples", a.samples)->check(CLI::Range(1, 100000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*pbw) return cmd_pbw(a, out);
    if (*fed) return cmd_fedosov(a, out);
    if (*tau) return cmd_tau(a, out);
    return cmd_verify(a, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const ChartFileError& e) {
    err << "chart error: " << e.what() << '\n';
    return 2;
  } catch (const TruncationOverflow& e) {
    err << "truncation overflow: " << e.what() << '\n';
    return 3;
  } catch (const PreconditionError& e) {
    err << "precondition: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace formexp
