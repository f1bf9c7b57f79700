#pragma once

#include <array>
#include <cmath>

namespace horoaf {

// Ambient vectors live in R^4 regardless of the active dimension n <= 4.
// Unused components stay exactly zero, so dot/norm never need a dimension
// argument.
struct Vec {
  double c[4] = {0.0, 0.0, 0.0, 0.0};

  double& operator[](int i) { return c[i]; }
  double operator[](int i) const { return c[i]; }
};

inline Vec operator+(const Vec& a, const Vec& b) {
  return {a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2], a.c[3] + b.c[3]};
}

inline Vec operator-(const Vec& a, const Vec& b) {
  return {a.c[0] - b.c[0], a.c[1] - b.c[1], a.c[2] - b.c[2], a.c[3] - b.c[3]};
}

inline Vec operator*(double s, const Vec& a) {
  return {s * a.c[0], s * a.c[1], s * a.c[2], s * a.c[3]};
}

inline double dot(const Vec& a, const Vec& b) {
  return a.c[0] * b.c[0] + a.c[1] * b.c[1] + a.c[2] * b.c[2] + a.c[3] * b.c[3];
}

inline double norm_sq(const Vec& a) { return dot(a, a); }
inline double norm(const Vec& a) { return std::sqrt(norm_sq(a)); }

inline Vec normalized(const Vec& a) {
  const double s = norm(a);
  return (1.0 / s) * a;
}

// Dense symmetric 4x4, used for ambient Hessians.
struct Mat {
  double m[4][4] = {};
};

inline Vec mul(const Mat& a, const Vec& v) {
  Vec r;
  for (int i = 0; i < 4; ++i)
    r[i] = a.m[i][0] * v[0] + a.m[i][1] * v[1] + a.m[i][2] * v[2] + a.m[i][3] * v[3];
  return r;
}

inline double quad(const Mat& a, const Vec& x, const Vec& y) { return dot(x, mul(a, y)); }

inline Mat operator+(const Mat& a, const Mat& b) {
  Mat r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.m[i][j] = a.m[i][j] + b.m[i][j];
  return r;
}

inline Mat operator*(double s, const Mat& a) {
  Mat r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.m[i][j] = s * a.m[i][j];
  return r;
}

inline Mat outer(const Vec& a, const Vec& b) {
  Mat r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.m[i][j] = a[i] * b[j];
  return r;
}

// I - u u^T restricted to the first n coordinates (u unit).
inline Mat tangent_projector(const Vec& u, int n) {
  Mat r;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) r.m[i][j] = (i == j ? 1.0 : 0.0) - u[i] * u[j];
  }
  return r;
}

// Eigenvalues (ascending) of a symmetric m x m block, m <= 3. m == 2 uses the
// stable closed form; m == 3 runs cyclic Jacobi sweeps to machine precision.
void sym_eigenvalues(const double a[3][3], int m, double out[3]);

// SPD solve by Cholesky for the small first-fundamental-form systems (m <= 3).
void spd_solve(const double a[3][3], const double b[3], int m, double out[3]);

// Deterministic orthonormal tangent basis at a unit vector u in R^n: the
// coordinate axes ordered by |u_i| ascending (index breaking ties) are
// Gram-Schmidt'ed against u; the first n-1 survivors form the basis.
int tangent_basis(const Vec& u, int n, Vec out[3]);

double binomial(int n, int k);

}  // namespace horoaf
