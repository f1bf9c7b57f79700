#pragma once

#include <functional>
#include <string>
#include <vector>

#include "horoaf/sphere_grid.hpp"
#include "horoaf/surface.hpp"

namespace horoaf {

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

// Downhill simplex (reflection 1, expansion 2, contraction 0.5, shrink 0.5).
// Infeasible points report +inf; max_evals caps objective calls. Deterministic
// for a fixed start.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                             const std::vector<double>& x0, const std::vector<double>& step,
                             int max_evals, double rel_tol = 1e-10);

// Parametric shape family over a box; make() must yield bodies inside the
// unit ball everywhere in the box (Q is scale-invariant, so families pick a
// safe normalization themselves).
struct ParametricFamily {
  std::string name;
  int n = 3;
  std::vector<double> initial;
  std::vector<double> step;
  std::vector<double> lower;
  std::vector<double> upper;
  std::function<SurfaceSpec(const std::vector<double>&)> make;
};

// params = (p, eps, w_1..w_{n+1}): smoothing exponent, rounding radius, and
// per-vertex radial weights on regular simplex directions.
ParametricFamily smoothed_simplex_family(int n);
// params = semi-axes relative to a base radius.
ParametricFamily ellipsoid_family(int n);
// params = (r): geodesic spheres; Q identically 1, so certification must fail.
ParametricFamily geodesic_sphere_family();

struct MinimizeQResult {
  std::vector<double> params;
  double Q = 0.0;
  int evaluations = 0;
  SurfaceSpec best;
};

// Derivative-free minimization of Q over the family box; out-of-box and
// infeasible (NonConvex/OutOfBall/Degenerate) points get penalty +inf.
MinimizeQResult minimize_Q(const ParametricFamily& family, const std::vector<double>& initial,
                           int budget, const SphereGrid& grid);

struct ResolutionCheck {
  int resolution = 0;
  double Q = 0.0;
  double P = 0.0;
  double min_lambda = 0.0;
};

struct CounterexampleCertificate {
  SurfaceSpec surface;  // the unscaled convex body
  double Q = 0.0;
  double t0 = 0.0;  // homothety time of the certified scale
  double scaled_P = 0.0;
  double min_lambda_scaled = 0.0;
  int resolution = 0;
  ResolutionCheck refinement_check;
  double hconvex_onset_t = 0.0;  // bisected onset of min lambda >= 1 + margin
};

inline constexpr double kCertificateMargin = 1e-3;

// Recompute the three certified quantities from shape + t0 alone.
ResolutionCheck reverify_certificate(const SurfaceSpec& surface, double t0, int resolution);

// Theorem-1 pipeline: minimize Q over the smoothed-simplex family (or the
// one supplied), rescale into the ball, scan the homothety flow for
// h-convexity with margin and P < 1 - margin, then re-verify everything at
// doubled resolution.
CounterexampleCertificate find_counterexample(const SphereGrid& grid, int budget,
                                              const ParametricFamily* family = nullptr);

}  // namespace horoaf
