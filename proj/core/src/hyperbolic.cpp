#include "horoaf/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "horoaf/errors.hpp"
#include "horoaf/reduce.hpp"

namespace horoaf {

double conformal_factor(const Vec& x) {
  const double r2 = norm_sq(x);
  if (r2 >= 1.0) throw OutOfBallError("conformal_factor: point outside the unit ball");
  return 2.0 / (1.0 - r2);
}

double rho(const Vec& x) {
  const double r2 = norm_sq(x);
  if (r2 >= 1.0) throw OutOfBallError("rho: point outside the unit ball");
  return (1.0 + r2) / (1.0 - r2);
}

std::array<double, 4> elementary_symmetric(const std::array<double, 3>& lambda, int m) {
  double sorted[3];
  for (int i = 0; i < m; ++i) sorted[i] = lambda[i];
  std::sort(sorted, sorted + m, [](double a, double b) { return std::abs(a) > std::abs(b); });

  std::array<double, 4> e{1.0, 0.0, 0.0, 0.0};
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j >= 1; --j) e[j] += sorted[i] * e[j - 1];
  }
  return e;
}

HyperbolicFrameSet lift_frame(const EuclideanFrameSet& frames) {
  const int n = frames.n;
  const int m = n - 1;
  const std::size_t count = frames.size();

  HyperbolicFrameSet h;
  h.n = n;
  h.resolution = frames.resolution;
  h.rho.resize(count);
  h.p.resize(count);
  h.lambda.resize(count);
  h.area_element.resize(count);
  h.sigma.resize(count);

  parallel_for(count, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const double r2 = norm_sq(frames.x[i]);
      const double phi = 2.0 / (1.0 - r2);
      h.rho[i] = (1.0 + r2) / (1.0 - r2);
      h.p[i] = phi * frames.support[i];
      for (int a = 0; a < m; ++a)
        h.lambda[i][a] = frames.kappa[i][a] / phi + frames.support[i];
      h.area_element[i] = std::pow(phi, m) * frames.area_element[i];
      h.sigma[i] = elementary_symmetric(h.lambda[i], m);
    }
  });

  for (std::size_t i = 0; i < count; ++i) {
    if (norm_sq(frames.x[i]) >= 1.0) throw OutOfBallError("lift_frame: frame outside the unit ball");
  }
  return h;
}

std::vector<double> normalized_mean_curvature(const HyperbolicFrameSet& frames, int k) {
  if (k < 0 || k > frames.n - 1)
    throw std::invalid_argument("normalized_mean_curvature: k must be in 0..n-1");
  const double binom = binomial(frames.n - 1, k);
  std::vector<double> out(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) out[i] = frames.sigma[i][k] / binom;
  return out;
}

CurvatureExtrema min_principal_curvature(const HyperbolicFrameSet& frames) {
  const int m = frames.n - 1;
  CurvatureExtrema ext;
  ext.min_lambda = std::numeric_limits<double>::infinity();
  ext.min_H1 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < frames.size(); ++i) {
    ext.min_lambda = std::min(ext.min_lambda, frames.lambda[i][0]);  // ascending
    ext.min_H1 = std::min(ext.min_H1, frames.sigma[i][1] / m);
  }
  return ext;
}

double support_identity_max_residual(const EuclideanFrameSet& euclidean,
                                     const HyperbolicFrameSet& hyperbolic) {
  if (euclidean.size() != hyperbolic.size())
    throw MismatchedFramesError("support_identity_max_residual: node counts differ");
  const int m = euclidean.n - 1;
  const std::size_t count = euclidean.size();

  std::vector<double> residual(count, 0.0);
  parallel_for(count, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      // d rho along the parametrization: Euclidean gradient of rho is
      // phi^2 x, so drho_a = phi^2 <x, tau_a>; the induced hyperbolic metric
      // is phi^2 times the Euclidean one, leaving |grad rho|^2 =
      // phi^2 a^T G^{-1} a with G the Euclidean Gram matrix of the tangents.
      const double r2 = norm_sq(euclidean.x[i]);
      const double phi = 2.0 / (1.0 - r2);

      double gram[3][3] = {};
      double a[3] = {};
      for (int s = 0; s < m; ++s) {
        a[s] = dot(euclidean.x[i], euclidean.tangents[i][s]);
        for (int t = s; t < m; ++t) {
          gram[s][t] = gram[t][s] = dot(euclidean.tangents[i][s], euclidean.tangents[i][t]);
        }
      }
      double sol[3] = {};
      spd_solve(gram, a, m, sol);
      double grad_sq = 0.0;
      for (int s = 0; s < m; ++s) grad_sq += a[s] * sol[s];
      grad_sq *= phi * phi;

      const double rr = hyperbolic.rho[i];
      const double pp = hyperbolic.p[i];
      residual[i] = std::abs(rr * rr - 1.0 - pp * pp - grad_sq);
    }
  });

  double worst = 0.0;
  for (double r : residual) worst = std::max(worst, r);
  return worst;
}

}  // namespace horoaf
