#include "horoaf/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace horoaf {

namespace {

void jacobi3(double a[3][3], double ev[3]) {
  // Cyclic Jacobi on a 3x3 symmetric matrix. Quadratic convergence; the sweep
  // count is a hard cap, reached only for pathological input.
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
    double diag = a[0][0] * a[0][0] + a[1][1] * a[1][1] + a[2][2] * a[2][2];
    if (off <= 1e-60 || off <= 1e-30 * diag) break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        const double apq = a[p][q];
        if (apq == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double app = a[p][p], aqq = a[q][q];
        a[p][p] = c * c * app - 2.0 * s * c * apq + s * s * aqq;
        a[q][q] = s * s * app + 2.0 * s * c * apq + c * c * aqq;
        a[p][q] = a[q][p] = 0.0;
        for (int r = 0; r < 3; ++r) {
          if (r == p || r == q) continue;
          const double arp = a[r][p], arq = a[r][q];
          a[r][p] = a[p][r] = c * arp - s * arq;
          a[r][q] = a[q][r] = s * arp + c * arq;
        }
      }
    }
  }
  ev[0] = a[0][0];
  ev[1] = a[1][1];
  ev[2] = a[2][2];
  std::sort(ev, ev + 3);
}

}  // namespace

void sym_eigenvalues(const double a[3][3], int m, double out[3]) {
  if (m == 1) {
    out[0] = a[0][0];
    return;
  }
  if (m == 2) {
    const double mean = 0.5 * (a[0][0] + a[1][1]);
    const double half = 0.5 * (a[0][0] - a[1][1]);
    const double disc = std::hypot(half, a[0][1]);
    out[0] = mean - disc;
    out[1] = mean + disc;
    return;
  }
  if (m == 3) {
    double work[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) work[i][j] = a[i][j];
    jacobi3(work, out);
    return;
  }
  throw std::invalid_argument("sym_eigenvalues: block size must be 1..3");
}

void spd_solve(const double a[3][3], const double b[3], int m, double out[3]) {
  // Cholesky a = L L^T, then two triangular solves.
  double l[3][3] = {};
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = a[i][j];
      for (int k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
      if (i == j) {
        if (s <= 0.0) throw std::invalid_argument("spd_solve: matrix not positive definite");
        l[i][i] = std::sqrt(s);
      } else {
        l[i][j] = s / l[j][j];
      }
    }
  }
  double y[3];
  for (int i = 0; i < m; ++i) {
    double s = b[i];
    for (int k = 0; k < i; ++k) s -= l[i][k] * y[k];
    y[i] = s / l[i][i];
  }
  for (int i = m - 1; i >= 0; --i) {
    double s = y[i];
    for (int k = i + 1; k < m; ++k) s -= l[k][i] * out[k];
    out[i] = s / l[i][i];
  }
}

int tangent_basis(const Vec& u, int n, Vec out[3]) {
  int order[4] = {0, 1, 2, 3};
  std::stable_sort(order, order + n,
                   [&u](int i, int j) { return std::abs(u[i]) < std::abs(u[j]); });
  int filled = 0;
  for (int oi = 0; oi < n && filled < n - 1; ++oi) {
    Vec e;
    e[order[oi]] = 1.0;
    e = e - dot(e, u) * u;
    for (int k = 0; k < filled; ++k) e = e - dot(e, out[k]) * out[k];
    const double len = norm(e);
    if (len < 1e-10) continue;
    out[filled++] = (1.0 / len) * e;
  }
  return filled;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
  return std::round(r);
}

}  // namespace horoaf
