#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "formexp/fedosov.hpp"
#include "formexp/geometry.hpp"
#include "formexp/pbw.hpp"

namespace formexp {

struct CheckResult {
  enum class Status { Pass, Fail, Skipped };
  std::string name;
  Status status = Status::Pass;
  int cases = 0;
  std::string detail;  // witness on failure, reason when skipped

  bool passed() const { return status == Status::Pass; }
};

struct VerifyOptions {
  std::uint64_t seed = 20240611;
  int samples = 40;
  // Largest symmetric weight used for random tensors and words.
  int max_weight = 4;
};

// Everything a check may need for one connection; the Fedosov data is built on
// first use and only for torsion-free connections.
class VerifyContext {
 public:
  explicit VerifyContext(Connection c);
  const Connection& connection() const { return ctx_->connection(); }
  const ChartPtr& chart() const { return ctx_->chart(); }
  const PbwContext& pbw() const { return *ctx_; }
  const FedosovData& fedosov() const;

 private:
  std::shared_ptr<PbwContext> ctx_;
  mutable std::optional<FedosovData> fedosov_;
};

// Delta o pbw = (pbw (x) pbw) o Delta on random tensors.
CheckResult check_comultiplicative(const VerifyContext& v, const VerifyOptions& o);
// pbw_inv o pbw and pbw o pbw_inv are the identity on basis words up to Q.
CheckResult check_pbw_roundtrip(const VerifyContext& v);
// Top symbol of pbw(S) is S for S of pure weight.
CheckResult check_symbol(const VerifyContext& v, const VerifyOptions& o);
// Two-term expansions of pbw(X_0 ... X_n) and pbw_inv(X_0 ... X_n) modulo one
// filtration step, on coordinate words and homogeneous vector fields.
CheckResult check_pbw_expansion(const VerifyContext& v, const VerifyOptions& o);
CheckResult check_pbw_inverse_expansion(const VerifyContext& v, const VerifyOptions& o);
// Curvature of the lightning connection vanishes on basis words up to Q - 1.
CheckResult check_lightning_flat(const VerifyContext& v, const VerifyOptions& o);
CheckResult check_xi_is_minus_a(const VerifyContext& v);
CheckResult check_d_squared(const VerifyContext& v);
// delta^{-1} Xi = 0 and delta^{-1} A = 0.
CheckResult check_normalization(const VerifyContext& v);
CheckResult check_tau_routes(const VerifyContext& v, const VerifyOptions& o);
// sigma tau = id, D tau = 0, tau(fg) = tau(f) tau(g).
CheckResult check_tau_properties(const VerifyContext& v, const VerifyOptions& o);
// omega = -D h omega for omega = D eta of form degree 1 and 2; form degree 0
// through the homotopy identity.
CheckResult check_resolution(const VerifyContext& v, const VerifyOptions& o);
// (sigma, tau, h) against D, including side conditions.
CheckResult check_fedosov_contraction(const VerifyContext& v, const VerifyOptions& o);
// delta-contraction identities, and a corrupted homotopy is caught.
CheckResult check_delta_contraction(const VerifyContext& v, const VerifyOptions& o);
// Perturbing the delta-contraction by d_nabla + A reproduces tau, sigma and h.
CheckResult check_perturbed_contraction(const VerifyContext& v, const VerifyOptions& o);
// (d_nabla)^2 against the curvature of the connection, through the pairing.
CheckResult check_dnabla_curvature(const VerifyContext& v, const VerifyOptions& o);
// <S, i_X delta(s)> = (-1)^{|S||X|} <X.S, s>.
CheckResult check_pairing_interior(const VerifyContext& v, const VerifyOptions& o);
// <rev d^I, y^J> = I! delta_{IJ}.
CheckResult check_pairing_basis(const VerifyContext& v);

// Suites: all, vavin, jasmin (alias jasmine), bastille, trocadero, hpl, pairing.
bool known_suite(std::string_view suite);
std::vector<CheckResult> run_suite(const VerifyContext& v, std::string_view suite, const VerifyOptions& o);
// "CHECK <name> PASS cases=N", "... FAIL cases=N witness: ...", "... SKIPPED reason: ...".
std::string format_report(const std::vector<CheckResult>& results);
bool report_passed(const std::vector<CheckResult>& results);

}  // namespace formexp
