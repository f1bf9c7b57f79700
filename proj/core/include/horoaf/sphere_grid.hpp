#pragma once

#include <cstddef>
#include <vector>

#include "horoaf/linalg.hpp"

namespace horoaf {

// Quadrature grid on S^{n-1}. Immutable after construction; weights carry the
// full surface measure, so any surface integral is a plain weighted sum.
struct SphereGrid {
  int n = 0;
  int resolution = 0;
  std::vector<Vec> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

// omega_{n-1} = 2 pi^{n/2} / Gamma(n/2), the area of S^{n-1} in R^n.
double unit_sphere_area(int n);

// Product quadrature:
//   n = 2: resolution uniformly spaced angles, weight 2*pi/resolution each;
//   n = 3: Gauss-Legendre in the polar cosine (resolution nodes) x uniform
//          azimuth (2*resolution nodes);
//   n = 4: Gauss-Gegenbauer (Chebyshev second kind, absorbing the sin^2
//          Jacobian) x Gauss-Legendre x uniform azimuth.
// Integrates spherical polynomials of degree < resolution exactly.
SphereGrid build_grid(int n, int resolution);

namespace detail {
// Gauss-Legendre nodes/weights on [-1, 1], ascending, exactly symmetric.
void gauss_legendre(int m, std::vector<double>& x, std::vector<double>& w);
// Gauss-Chebyshev second kind: integrates f(t) sqrt(1-t^2) dt on [-1, 1].
void gauss_chebyshev2(int m, std::vector<double>& x, std::vector<double>& w);
}  // namespace detail

}  // namespace horoaf
