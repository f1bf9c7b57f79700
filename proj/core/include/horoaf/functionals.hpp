#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "horoaf/hyperbolic.hpp"
#include "horoaf/surface.hpp"

namespace horoaf {

// Every global quantity the inequality checks consume, produced in one
// deterministic pairwise-reduction pass. Tables are indexed by k = 0..n-1.
struct FunctionalSummary {
  int n = 0;
  int resolution = 0;
  std::string surface;  // serialized shape reference, filled by callers

  double area = 0.0;            // |Sigma| (hyperbolic)
  double calI = 0.0;            // integral of rho
  double area_euclidean = 0.0;  // |Sigma|_delta
  double Q = 0.0;
  double P = 0.0;
  double rho_sq_integral = 0.0;
  double p_sigma1_integral = 0.0;
  double calI_minus_area = 0.0;  // integral of (rho - 1) = phi |x|^2, cancellation-free
  double x2_euclidean_integral = 0.0;
  double x2_hyperbolic_integral = 0.0;

  std::array<double, 4> weighted_Hk{};          // integral of rho H_k
  std::array<double, 4> plain_Hk{};             // integral of H_k
  std::array<double, 4> weighted_Hk_over_rho{}; // integral of H_k / rho
  std::array<double, 4> euclidean_Hk{};         // integral of H_k^delta dA^delta

  // Frame extrema, used to detect which hypotheses a surface satisfies.
  double min_lambda = 0.0;
  double min_H1 = 0.0;
  double min_kappa_euclidean = 0.0;
  std::array<double, 4> min_sigma_euclidean{};  // min over nodes of sigma_k(kappa^delta)
};

FunctionalSummary summarize(const EuclideanFrameSet& euclidean, const HyperbolicFrameSet& hyperbolic);

// (n-1) calI - integral of p sigma_1; vanishes on any closed surface up to
// quadrature error.
double minkowski_residual(const FunctionalSummary& summary);

// Euclidean scale-invariant deficit used by the counterexample search; cheaper
// than a full summary because no lift is required.
double euclidean_Q(const EuclideanFrameSet& frames);

struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;           // lhs - rhs
  double relative_margin = 0.0;  // margin / max(|lhs|, |rhs|)
  bool holds = false;            // margin > -tol, tol = 1e-9 relative + extra
  bool conjectural = false;      // never affects CLI exit status
  std::string surface;
  int resolution = 0;
};

// Recognized names: "AF_euclidean" (k = 1..n-1), "dLG", "GWW" (k = 1..n-1,
// even k flagged conjectural), "conjecture", "conjecture_normalized", "thm2",
// "thm2_normalized", "thm3" (even k), "wang_xia" (j), "crucial" (j).
// extra_tol widens the verdict tolerance by a measured refinement error.
InequalityReport check_inequality(std::string_view name, const FunctionalSummary& summary,
                                  int k = -1, double extra_tol = 0.0);

// n = 2 only: the Euclidean bound Q > (2 pi)^2 / 54 plus the two readings of
// the hyperbolic bound (calI on the left, and the literal |x|^2 weighting,
// kept separate and flagged conjectural).
std::vector<InequalityReport> check_remark_n2(const FunctionalSummary& summary,
                                              double extra_tol = 0.0);

}  // namespace horoaf
