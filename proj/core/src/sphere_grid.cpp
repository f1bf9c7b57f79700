#include "horoaf/sphere_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace horoaf {

namespace detail {

void gauss_legendre(int m, std::vector<double>& x, std::vector<double>& w) {
  x.assign(m, 0.0);
  w.assign(m, 0.0);
  const int half = (m + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_m.
    double t = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= m; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * t * p2 - (j - 1.0) * p3) / j;
      }
      dp = m * (t * p1 - p2) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    // cos ordering is descending; mirror to get an exactly symmetric rule.
    x[m - 1 - i] = t;
    x[i] = -t;
    const double wi = 2.0 / ((1.0 - t * t) * dp * dp);
    w[i] = wi;
    w[m - 1 - i] = wi;
  }
  if (m % 2 == 1) x[m / 2] = 0.0;
}

void gauss_chebyshev2(int m, std::vector<double>& x, std::vector<double>& w) {
  x.assign(m, 0.0);
  w.assign(m, 0.0);
  for (int j = 1; j <= m; ++j) {
    const double angle = M_PI * j / (m + 1.0);
    const double s = std::sin(angle);
    // cos descending in j; store ascending.
    x[m - j] = std::cos(angle);
    w[m - j] = M_PI / (m + 1.0) * s * s;
  }
}

}  // namespace detail

double unit_sphere_area(int n) {
  if (n < 2) throw std::invalid_argument("unit_sphere_area: n must be >= 2");
  switch (n) {
    case 2:
      return 2.0 * M_PI;
    case 3:
      return 4.0 * M_PI;
    case 4:
      return 2.0 * M_PI * M_PI;
    default:
      return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
  }
}

SphereGrid build_grid(int n, int resolution) {
  if (n < 2 || n > 4) throw std::invalid_argument("build_grid: supported dimensions are n in {2,3,4}");
  if (resolution < 4) throw std::invalid_argument("build_grid: resolution must be >= 4");

  SphereGrid grid;
  grid.n = n;
  grid.resolution = resolution;

  if (n == 2) {
    grid.nodes.reserve(resolution);
    grid.weights.assign(resolution, 2.0 * M_PI / resolution);
    for (int k = 0; k < resolution; ++k) {
      const double theta = 2.0 * M_PI * k / resolution;
      grid.nodes.push_back(Vec{std::cos(theta), std::sin(theta), 0.0, 0.0});
    }
    return grid;
  }

  const int m_phi = 2 * resolution;
  const double w_phi = 2.0 * M_PI / m_phi;
  std::vector<double> phi_cos(m_phi), phi_sin(m_phi);
  for (int j = 0; j < m_phi; ++j) {
    const double phi = 2.0 * M_PI * j / m_phi;
    phi_cos[j] = std::cos(phi);
    phi_sin[j] = std::sin(phi);
  }

  std::vector<double> t_gl, w_gl;
  detail::gauss_legendre(resolution, t_gl, w_gl);

  if (n == 3) {
    grid.nodes.reserve(std::size_t(resolution) * m_phi);
    grid.weights.reserve(grid.nodes.capacity());
    for (int i = 0; i < resolution; ++i) {
      const double t = t_gl[i];
      const double s = std::sqrt(1.0 - t * t);
      const double w = w_gl[i] * w_phi;
      for (int j = 0; j < m_phi; ++j) {
        grid.nodes.push_back(Vec{s * phi_cos[j], s * phi_sin[j], t, 0.0});
        grid.weights.push_back(w);
      }
    }
    return grid;
  }

  // n == 4: u = (s1 s2 cos phi, s1 s2 sin phi, s1 t2, t1) with the sin^2
  // Jacobian of the outermost angle absorbed by the Chebyshev-U rule.
  std::vector<double> t_u, w_u;
  detail::gauss_chebyshev2(resolution, t_u, w_u);
  grid.nodes.reserve(std::size_t(resolution) * resolution * m_phi);
  grid.weights.reserve(grid.nodes.capacity());
  for (int i = 0; i < resolution; ++i) {
    const double t1 = t_u[i];
    const double s1 = std::sqrt(1.0 - t1 * t1);
    for (int k = 0; k < resolution; ++k) {
      const double t2 = t_gl[k];
      const double s2 = std::sqrt(1.0 - t2 * t2);
      const double w = w_u[i] * w_gl[k] * w_phi;
      for (int j = 0; j < m_phi; ++j) {
        grid.nodes.push_back(Vec{s1 * s2 * phi_cos[j], s1 * s2 * phi_sin[j], s1 * t2, t1});
        grid.weights.push_back(w);
      }
    }
  }
  return grid;
}

}  // namespace horoaf
