#include "horoaf/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "horoaf/errors.hpp"
#include "horoaf/reduce.hpp"
#include "horoaf/sphere_grid.hpp"

namespace horoaf {

namespace {

constexpr double kReportTol = 1e-9;

struct Accum {
  double p_sigma1 = 0.0;
  double rho_sq = 0.0;
  double rho_minus_one = 0.0;
  double x2_euclidean = 0.0;
  double x2_hyperbolic = 0.0;
  double area_euclidean = 0.0;
  std::array<double, 4> weighted_Hk{};
  std::array<double, 4> plain_Hk{};
  std::array<double, 4> Hk_over_rho{};
  std::array<double, 4> euclidean_Hk{};

  Accum operator+(const Accum& o) const {
    Accum r;
    r.p_sigma1 = p_sigma1 + o.p_sigma1;
    r.rho_sq = rho_sq + o.rho_sq;
    r.rho_minus_one = rho_minus_one + o.rho_minus_one;
    r.x2_euclidean = x2_euclidean + o.x2_euclidean;
    r.x2_hyperbolic = x2_hyperbolic + o.x2_hyperbolic;
    r.area_euclidean = area_euclidean + o.area_euclidean;
    for (int k = 0; k < 4; ++k) {
      r.weighted_Hk[k] = weighted_Hk[k] + o.weighted_Hk[k];
      r.plain_Hk[k] = plain_Hk[k] + o.plain_Hk[k];
      r.Hk_over_rho[k] = Hk_over_rho[k] + o.Hk_over_rho[k];
      r.euclidean_Hk[k] = euclidean_Hk[k] + o.euclidean_Hk[k];
    }
    return r;
  }
};

InequalityReport make_report(std::string_view name, double lhs, double rhs, bool conjectural,
                             const FunctionalSummary& summary, double extra_tol) {
  InequalityReport rep;
  rep.name = std::string(name);
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.margin = lhs - rhs;
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  rep.relative_margin = scale > 0.0 ? rep.margin / scale : 0.0;
  rep.holds = rep.margin > -(kReportTol * scale + extra_tol);
  rep.conjectural = conjectural;
  rep.surface = summary.surface;
  rep.resolution = summary.resolution;
  return rep;
}

// rhs of the weighted bounds, with c = 1 for the sharp (conjectured/proved
// odd-k) form and c = ((n-1)/n)^2 for the unconditional one.
double weighted_bound_rhs(int n, int k, double area, double c) {
  const double omega = unit_sphere_area(n);
  const double A = area / omega;
  const double e1 = 2.0 * n / ((k + 1.0) * (n - 1.0));
  const double e2 = 2.0 * (n - k - 1.0) / ((k + 1.0) * (n - 1.0));
  return omega * std::pow(c * std::pow(A, e1) + std::pow(A, e2), 0.5 * (k + 1.0));
}

}  // namespace

FunctionalSummary summarize(const EuclideanFrameSet& e, const HyperbolicFrameSet& h) {
  if (e.size() != h.size()) throw MismatchedFramesError("summarize: node counts differ");
  if (e.n != h.n) throw MismatchedFramesError("summarize: dimensions differ");
  const int n = e.n;
  const int m = n - 1;
  const std::size_t count = e.size();
  if (count == 0) throw MismatchedFramesError("summarize: empty frames");

  const Accum total = pairwise_reduce<Accum>(0, count, [&](std::size_t i) {
    Accum a;
    const double dA = h.area_element[i];
    const double dAe = e.area_element[i];
    const double rr = h.rho[i];
    const double x2 = norm_sq(e.x[i]);
    const double phi = 2.0 / (1.0 - x2);

    a.p_sigma1 = h.p[i] * h.sigma[i][1] * dA;
    a.rho_sq = rr * rr * dA;
    a.rho_minus_one = phi * x2 * dA;  // rho - 1 without cancellation
    a.x2_euclidean = x2 * dAe;
    a.x2_hyperbolic = x2 * dA;
    a.area_euclidean = dAe;

    const std::array<double, 4> sig_e = elementary_symmetric(e.kappa[i], m);
    for (int k = 0; k < n; ++k) {
      const double Hk = h.sigma[i][k] / binomial(m, k);
      a.weighted_Hk[k] = rr * Hk * dA;
      a.plain_Hk[k] = Hk * dA;
      a.Hk_over_rho[k] = Hk / rr * dA;
      a.euclidean_Hk[k] = sig_e[k] / binomial(m, k) * dAe;
    }
    return a;
  });

  FunctionalSummary s;
  s.n = n;
  s.resolution = e.resolution;
  s.weighted_Hk = total.weighted_Hk;
  s.plain_Hk = total.plain_Hk;
  s.weighted_Hk_over_rho = total.Hk_over_rho;
  s.euclidean_Hk = total.euclidean_Hk;
  s.calI = total.weighted_Hk[0];  // same accumulation by construction
  s.area = total.plain_Hk[0];
  s.area_euclidean = total.euclidean_Hk[0];
  s.rho_sq_integral = total.rho_sq;
  s.p_sigma1_integral = total.p_sigma1;
  s.calI_minus_area = total.rho_minus_one;
  s.x2_euclidean_integral = total.x2_euclidean;
  s.x2_hyperbolic_integral = total.x2_hyperbolic;

  const double omega = unit_sphere_area(n);
  // P via the factored deficit (calI - area)(calI + area); exact in real
  // arithmetic and free of the cancellation that kills calI^2 - area^2 at
  // small scales.
  const double p_norm = omega * std::pow(s.area / omega, double(n) / m);
  s.P = s.calI_minus_area * (s.calI + s.area) / (p_norm * p_norm);
  const double q_norm = omega * std::pow(s.area_euclidean / omega, (n + 1.0) / m);
  s.Q = s.x2_euclidean_integral / q_norm;

  auto ext = min_principal_curvature(h);
  s.min_lambda = ext.min_lambda;
  s.min_H1 = ext.min_H1;
  s.min_kappa_euclidean = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 4; ++k) s.min_sigma_euclidean[k] = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < count; ++i) {
    s.min_kappa_euclidean = std::min(s.min_kappa_euclidean, e.kappa[i][0]);
    const std::array<double, 4> sig_e = elementary_symmetric(e.kappa[i], m);
    for (int k = 0; k < n; ++k)
      s.min_sigma_euclidean[k] = std::min(s.min_sigma_euclidean[k], sig_e[k]);
  }
  return s;
}

double minkowski_residual(const FunctionalSummary& summary) {
  return (summary.n - 1) * summary.calI - summary.p_sigma1_integral;
}

double euclidean_Q(const EuclideanFrameSet& frames) {
  const int n = frames.n;
  struct Pair {
    double area = 0.0, x2 = 0.0;
    Pair operator+(const Pair& o) const { return {area + o.area, x2 + o.x2}; }
  };
  const Pair t = pairwise_reduce<Pair>(0, frames.size(), [&](std::size_t i) {
    return Pair{frames.area_element[i], norm_sq(frames.x[i]) * frames.area_element[i]};
  });
  const double omega = unit_sphere_area(n);
  return t.x2 / (omega * std::pow(t.area / omega, (n + 1.0) / (n - 1.0)));
}

InequalityReport check_inequality(std::string_view name, const FunctionalSummary& s, int k,
                                  double extra_tol) {
  const int n = s.n;
  const double omega = unit_sphere_area(n);
  const double A = s.area / omega;

  if (name == "AF_euclidean") {
    if (k < 1 || k > n - 1) throw BadParityError("AF_euclidean: k must be in 1..n-1");
    const double lhs = std::pow(s.euclidean_Hk[k] / omega, double(n - k));
    const double rhs = std::pow(s.euclidean_Hk[k - 1] / omega, double(n - k - 1));
    return make_report(name, lhs, rhs, false, s, extra_tol);
  }
  if (name == "dLG") {
    if (n < 3) throw WrongDimensionError("dLG: requires n >= 3");
    const double rhs =
        omega * (std::pow(A, (n - 2.0) / (n - 1.0)) + std::pow(A, double(n) / (n - 1.0)));
    return make_report(name, s.weighted_Hk[1], rhs, false, s, extra_tol);
  }
  if (name == "GWW") {
    if (k < 1 || k > n - 1) throw BadParityError("GWW: k must be in 1..n-1");
    // Proved for odd k; the even-k form is the conjectured extension.
    const bool conjectural = (k % 2 == 0);
    return make_report(name, s.weighted_Hk[k], weighted_bound_rhs(n, k, s.area, 1.0), conjectural,
                       s, extra_tol);
  }
  if (name == "conjecture") {
    return make_report(name, s.calI, weighted_bound_rhs(n, 0, s.area, 1.0), true, s, extra_tol);
  }
  if (name == "conjecture_normalized") {
    // Squaring the k = 0 bound and dividing by the area normalization turns it
    // into P >= 1; this form avoids cancellation near the equality case.
    return make_report(name, s.P, 1.0, true, s, extra_tol);
  }
  if (name == "thm2") {
    const double c = std::pow((n - 1.0) / n, 2.0);
    return make_report(name, s.calI, weighted_bound_rhs(n, 0, s.area, c), false, s, extra_tol);
  }
  if (name == "thm2_normalized") {
    const double c = std::pow((n - 1.0) / n, 2.0);
    return make_report(name, s.P, c, false, s, extra_tol);
  }
  if (name == "thm3") {
    if (k < 0 || k > n - 1) throw BadParityError("thm3: k must be in 0..n-1");
    if (k % 2 != 0) throw BadParityError("thm3: stated for even k only");
    const double c = std::pow((n - 1.0) / n, 2.0);
    return make_report(name, s.weighted_Hk[k], weighted_bound_rhs(n, k, s.area, c), false, s,
                       extra_tol);
  }
  if (name == "wang_xia") {
    const int j = k;
    if (j < 0 || 2 * j + 2 > n - 1) throw BadParityError("wang_xia: needs 0 <= 2j+2 <= n-1");
    const double rhs = s.area * std::pow(1.0 + std::pow(A, -2.0 / (n - 1.0)), j + 1.0);
    return make_report(name, s.plain_Hk[2 * j + 2], rhs, false, s, extra_tol);
  }
  if (name == "crucial") {
    const int j = k;
    if (j < 0 || 2 * j + 2 > n - 1) throw BadParityError("crucial: needs 0 <= 2j+2 <= n-1");
    const double lhs = s.weighted_Hk[2 * j + 2] - s.weighted_Hk_over_rho[2 * j + 2];
    return make_report(name, lhs, s.weighted_Hk[2 * j], false, s, extra_tol);
  }
  throw UnknownInequalityError("unknown inequality name: " + std::string(name));
}

std::vector<InequalityReport> check_remark_n2(const FunctionalSummary& s, double extra_tol) {
  if (s.n != 2) throw WrongDimensionError("check_remark_n2: requires n = 2");
  const double bound = std::pow(2.0 * M_PI, 2.0) / 54.0;
  const double rhs_hyp = s.area * std::sqrt(s.area * s.area / 54.0 + 1.0);

  std::vector<InequalityReport> reports;
  reports.push_back(make_report("remark_n2_euclidean", s.Q, bound, false, s, extra_tol));
  // The derivation through P > (2 pi)^2 / 54 bounds calI from below.
  reports.push_back(make_report("remark_n2_hyperbolic", s.calI, rhs_hyp, false, s, extra_tol));
  // Literal |x|^2 weighting; since |x|^2 < 1 <= rho this is a strictly
  // stronger claim and fails already on circles, so it stays conjectural.
  reports.push_back(
      make_report("remark_n2_hyperbolic_x2", s.x2_hyperbolic_integral, rhs_hyp, true, s, extra_tol));
  return reports;
}

}  // namespace horoaf
