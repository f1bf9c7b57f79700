#pragma once

#include <array>
#include <vector>

#include "horoaf/surface.hpp"

namespace horoaf {

// Conformal factor of the ball model: phi(x) = 2 / (1 - |x|^2).
double conformal_factor(const Vec& x);

// Radial weight rho(x) = (1 + |x|^2) / (1 - |x|^2) = cosh(dist(0, x)).
double rho(const Vec& x);

// Per-node hyperbolic geometry lifted from the Euclidean frame. sigma caches
// the elementary symmetric functions of the principal curvatures, sigma[0] = 1.
struct HyperbolicFrameSet {
  int n = 0;
  int resolution = 0;
  std::vector<double> rho;
  std::vector<double> p;  // support function, phi * u^delta
  std::vector<std::array<double, 3>> lambda;
  std::vector<double> area_element;  // phi^{n-1} * Euclidean element
  std::vector<std::array<double, 4>> sigma;

  std::size_t size() const { return rho.size(); }
};

// Conformal lift: lambda_i = kappa_i^delta / phi + u^delta, p = phi u^delta,
// dA = phi^{n-1} dA^delta.
HyperbolicFrameSet lift_frame(const EuclideanFrameSet& frames);

// H_k = sigma_k(lambda) / C(n-1, k), one value per node.
std::vector<double> normalized_mean_curvature(const HyperbolicFrameSet& frames, int k);

struct CurvatureExtrema {
  double min_lambda = 0.0;  // horospherical convexity iff >= 1 (up to tol)
  double min_H1 = 0.0;      // mean-curvature hypothesis H_1 >= 1
};

CurvatureExtrema min_principal_curvature(const HyperbolicFrameSet& frames);

// Max over nodes of |rho^2 - 1 - p^2 - |grad rho|^2| with the surface gradient
// of rho computed independently by differentiating rho along the stored
// parametrization tangents (not from the p/lambda algebra).
double support_identity_max_residual(const EuclideanFrameSet& euclidean,
                                     const HyperbolicFrameSet& hyperbolic);

// Elementary symmetric functions e_0..e_m of the m values in lambda, expanded
// in descending-magnitude order to limit cancellation for mixed signs.
std::array<double, 4> elementary_symmetric(const std::array<double, 3>& lambda, int m);

}  // namespace horoaf
