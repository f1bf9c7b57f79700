#include "horoaf/surface.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "horoaf/errors.hpp"
#include "horoaf/reduce.hpp"

namespace horoaf {

namespace {

// Value and first two derivatives of a polynomial given ascending coefficients.
void poly_eval2(const std::vector<double>& c, double t, double& f, double& d1, double& d2) {
  f = 0.0;
  d1 = 0.0;
  d2 = 0.0;
  for (int i = int(c.size()) - 1; i >= 0; --i) {
    d2 = d2 * t + 2.0 * d1;
    d1 = d1 * t + f;
    f = f * t + c[i];
  }
}

// Zonal harmonic of degree l on S^{n-1}, normalized to 1 at t = 1:
// Chebyshev T_l (n = 2), Legendre P_l (n = 3), U_l/(l+1) (n = 4).
std::vector<double> zonal_coefficients(int n, int l) {
  if (l < 1 || l > 8) throw std::invalid_argument("harmonic term degree l must be in 1..8");
  std::vector<double> p0{1.0}, p1{0.0, 1.0};
  if (l == 0) return p0;
  if (n == 4) p1 = {0.0, 2.0};  // U_1
  for (int k = 1; k < l; ++k) {
    std::vector<double> next(k + 2, 0.0);
    for (int i = 0; i <= k; ++i) {
      if (n == 3) {
        next[i + 1] += (2.0 * k + 1.0) / (k + 1.0) * p1[i];
      } else {
        next[i + 1] += 2.0 * p1[i];  // T and U share the t-recurrence
      }
    }
    for (int i = 0; i < int(p0.size()); ++i) {
      if (n == 3) {
        next[i] -= double(k) / (k + 1.0) * p0[i];
      } else {
        next[i] -= p0[i];
      }
    }
    p0 = std::move(p1);
    p1 = std::move(next);
  }
  if (n == 4) {
    for (double& c : p1) c /= double(l + 1);  // U_l(1) = l + 1
  }
  return p1;
}

constexpr double kBallBoundaryTol = 1.0;  // |x| >= 1 is out of the model

}  // namespace

// ---------------------------------------------------------------------------
// Evaluators
// ---------------------------------------------------------------------------

EuclideanFrameSet eval_support_body(const SupportBody& body, const SphereGrid& grid) {
  const int n = grid.n;
  const int m = n - 1;
  const std::size_t count = grid.size();

  EuclideanFrameSet f;
  f.n = n;
  f.resolution = grid.resolution;
  f.x.resize(count);
  f.nu.resize(count);
  f.kappa.resize(count);
  f.support.resize(count);
  f.area_element.resize(count);
  f.tangents.resize(count);

  std::vector<int> status(count, 0);  // 1 = non-convex, 2 = out of ball

  parallel_for(count, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const Vec& u = grid.nodes[i];
      const SupportJet jet = body.jet(u);
      if (!(jet.h > 0.0)) {
        status[i] = 1;
        continue;
      }
      const Vec x = jet.grad;  // Euler: Dh(u) is the boundary point with normal u
      if (norm(x) >= kBallBoundaryTol) {
        status[i] = 2;
        continue;
      }

      Vec basis[3];
      tangent_basis(u, n, basis);

      double restricted[3][3] = {};
      for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b)
          restricted[a][b] = restricted[b][a] = quad(jet.hess, basis[a], basis[b]);

      double radii[3] = {};
      sym_eigenvalues(restricted, m, radii);
      if (!(radii[0] > 0.0)) {
        status[i] = 1;
        continue;
      }

      f.x[i] = x;
      f.nu[i] = u;
      f.support[i] = jet.h;
      double det = 1.0;
      for (int a = 0; a < m; ++a) {
        det *= radii[a];
        f.kappa[i][m - 1 - a] = 1.0 / radii[a];  // reciprocal flips the order
      }
      f.area_element[i] = det * grid.weights[i];
      for (int a = 0; a < m; ++a) f.tangents[i][a] = mul(jet.hess, basis[a]);
    }
  });

  for (std::size_t i = 0; i < count; ++i) {
    if (status[i] == 1)
      throw NonConvexError("support body: restricted Hessian not positive definite");
    if (status[i] == 2) throw OutOfBallError("support body leaves the unit ball");
  }
  return f;
}

EuclideanFrameSet eval_radial_graph(const RadialField& field, const SphereGrid& grid) {
  const int n = grid.n;
  const int m = n - 1;
  const std::size_t count = grid.size();

  EuclideanFrameSet f;
  f.n = n;
  f.resolution = grid.resolution;
  f.x.resize(count);
  f.nu.resize(count);
  f.kappa.resize(count);
  f.support.resize(count);
  f.area_element.resize(count);
  f.tangents.resize(count);

  std::vector<int> status(count, 0);  // 1 = degenerate, 2 = out of ball

  parallel_for(count, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const Vec& u = grid.nodes[i];
      const RadialJet jet = field.jet(u);
      const double r = jet.r;
      if (!(r > 1e-12)) {
        status[i] = 1;
        continue;
      }
      if (r >= kBallBoundaryTol) {
        status[i] = 2;
        continue;
      }

      Vec basis[3];
      tangent_basis(u, n, basis);

      // Sphere gradient/Hessian of the restriction from the ambient extension:
      // grad_S = P_u DF, Hess_S(e_a, e_b) = e_a^T D2F e_b - <DF, u> delta_ab.
      const double radial_part = dot(jet.grad, u);
      const Vec grad_s = jet.grad - radial_part * u;

      double d[3] = {};
      double q = 0.0;
      for (int a = 0; a < m; ++a) {
        d[a] = dot(grad_s, basis[a]);
        q += d[a] * d[a];
      }
      const double w2 = r * r + q;
      const double W = std::sqrt(w2);
      if (!(w2 > 0.0)) {
        status[i] = 1;
        continue;
      }

      // Second fundamental form of the radial graph (outward normal):
      // b_ab = (r^2 delta_ab + 2 d_a d_b - r Hess_ab) / W.
      double b[3][3] = {};
      for (int a = 0; a < m; ++a) {
        for (int c = a; c < m; ++c) {
          const double hess_ac = quad(jet.hess, basis[a], basis[c]) - (a == c ? radial_part : 0.0);
          const double g2 = (a == c ? r * r : 0.0) + 2.0 * d[a] * d[c];
          b[a][c] = b[c][a] = (g2 - r * hess_ac) / W;
        }
      }

      // g = r^2 I + d d^T; closed-form g^{-1/2} = (1/r)(I - cfac d d^T).
      const double cfac = q > 0.0 ? (1.0 - r / W) / q : 0.0;
      double gih[3][3] = {};
      for (int a = 0; a < m; ++a)
        for (int c = 0; c < m; ++c)
          gih[a][c] = ((a == c ? 1.0 : 0.0) - cfac * d[a] * d[c]) / r;

      double tmp[3][3] = {}, shape[3][3] = {};
      for (int a = 0; a < m; ++a)
        for (int c = 0; c < m; ++c) {
          double s = 0.0;
          for (int k = 0; k < m; ++k) s += gih[a][k] * b[k][c];
          tmp[a][c] = s;
        }
      for (int a = 0; a < m; ++a)
        for (int c = 0; c < m; ++c) {
          double s = 0.0;
          for (int k = 0; k < m; ++k) s += tmp[a][k] * gih[k][c];
          shape[a][c] = s;
        }

      double kap[3] = {};
      sym_eigenvalues(shape, m, kap);

      f.x[i] = r * u;
      f.nu[i] = (1.0 / W) * (r * u - grad_s);
      f.support[i] = r * r / W;
      for (int a = 0; a < m; ++a) f.kappa[i][a] = kap[a];
      f.area_element[i] = std::pow(r, m - 1) * W * grid.weights[i];
      for (int a = 0; a < m; ++a) f.tangents[i][a] = d[a] * u + r * basis[a];
    }
  });

  for (std::size_t i = 0; i < count; ++i) {
    if (status[i] == 1) throw DegenerateError("radial graph: induced metric degenerates");
    if (status[i] == 2) throw OutOfBallError("radial graph leaves the unit ball");
  }
  return f;
}

EuclideanFrameSet scale_frame(const EuclideanFrameSet& frames, double s) {
  if (!(s > 0.0) || s > 1.0) throw std::invalid_argument("scale_frame: s must be in (0, 1]");
  EuclideanFrameSet out = frames;
  const double area_factor = std::pow(s, frames.n - 1);
  const std::size_t count = frames.size();
  for (std::size_t i = 0; i < count; ++i) {
    out.x[i] = s * frames.x[i];
    for (int a = 0; a < frames.n - 1; ++a) {
      out.kappa[i][a] = frames.kappa[i][a] / s;
      out.tangents[i][a] = s * frames.tangents[i][a];
    }
    out.support[i] = s * frames.support[i];
    out.area_element[i] = area_factor * frames.area_element[i];
  }
  return out;
}

double hyperbolic_to_euclidean_radius(double r) {
  if (!(r > 0.0)) throw std::invalid_argument("hyperbolic radius must be positive");
  return std::tanh(0.5 * r);
}

double euclidean_to_hyperbolic_radius(double R) {
  if (!(R > 0.0) || R >= 1.0) throw std::invalid_argument("euclidean radius must lie in (0, 1)");
  return 2.0 * std::atanh(R);
}

// ---------------------------------------------------------------------------
// Concrete bodies
// ---------------------------------------------------------------------------

SupportJet BallSupport::jet(const Vec& u) const {
  SupportJet jet;
  jet.h = radius_;
  jet.grad = radius_ * u;
  jet.hess = radius_ * tangent_projector(u, 4);
  return jet;
}

EllipsoidSupport::EllipsoidSupport(const std::vector<double>& axes, int n) : n_(n) {
  if (int(axes.size()) != n) throw std::invalid_argument("ellipsoid needs n semi-axes");
  for (int i = 0; i < n; ++i) {
    if (!(axes[i] > 0.0)) throw std::invalid_argument("ellipsoid semi-axes must be positive");
    axes_sq_[i] = axes[i] * axes[i];
  }
}

SupportJet EllipsoidSupport::jet(const Vec& u) const {
  // h = |A u|, grad = A^2 u / h, hess = A^2/h - (A^2 u)(A^2 u)^T / h^3.
  Vec a2u;
  double h2 = 0.0;
  for (int i = 0; i < n_; ++i) {
    a2u[i] = axes_sq_[i] * u[i];
    h2 += a2u[i] * u[i];
  }
  const double h = std::sqrt(h2);
  SupportJet jet;
  jet.h = h;
  jet.grad = (1.0 / h) * a2u;
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      jet.hess.m[i][j] = ((i == j ? axes_sq_[i] : 0.0) - a2u[i] * a2u[j] / h2) / h;
    }
  }
  return jet;
}

SmoothedSimplexSupport::SmoothedSimplexSupport(const SmoothedSimplex& spec, int n)
    : spec_(spec), n_(n) {
  if (int(spec.vertices.size()) < n + 1)
    throw std::invalid_argument("smoothed simplex needs at least n+1 vertex directions");
  if (!(spec.p >= 3.0)) throw std::invalid_argument("smoothing exponent p must be >= 3");
  if (!(spec.eps > 0.0)) throw std::invalid_argument("rounding radius eps must be positive");
  if (!(spec.scale > 0.0)) throw std::invalid_argument("scale must be positive");
}

SupportJet SmoothedSimplexSupport::jet(const Vec& u) const {
  const double p = spec_.p;
  double S = 0.0;
  Vec a;
  Mat B;
  for (const Vec& v : spec_.vertices) {
    const double t = dot(u, v);
    if (t <= 0.0) continue;
    const double tpm2 = std::pow(t, p - 2.0);
    S += tpm2 * t * t;
    a = a + (tpm2 * t) * v;
    B = B + tpm2 * outer(v, v);
  }
  if (!(S > 0.0))
    throw NonConvexError("smoothed simplex: vertex directions do not positively span R^n");

  // g = S^{1/p}: Dg = S^{1/p-1} a, D2g = (p-1) S^{1/p-2} (S B - a a^T).
  const double g = std::pow(S, 1.0 / p);
  const double s1 = std::pow(S, 1.0 / p - 1.0);
  const double s2 = std::pow(S, 1.0 / p - 2.0);

  SupportJet jet;
  jet.h = spec_.scale * (g + spec_.eps);
  jet.grad = spec_.scale * (s1 * a + spec_.eps * u);
  jet.hess =
      spec_.scale * ((p - 1.0) * s2 * (S * B + (-1.0) * outer(a, a)) + spec_.eps * tangent_projector(u, n_));
  return jet;
}

SupportJet OffsetSupport::jet(const Vec& u) const {
  SupportJet jet = inner_.jet(u);
  jet.h += eps_;
  jet.grad = jet.grad + eps_ * u;
  jet.hess = jet.hess + eps_ * tangent_projector(u, n_);
  return jet;
}

ZonalRadialField::ZonalRadialField(const HarmonicPerturbedSphere& spec, int n) : base_(spec.R) {
  if (!(spec.R > 0.0)) throw std::invalid_argument("harmonic sphere base radius must be positive");
  for (const HarmonicTerm& t : spec.terms) {
    const double len = norm(t.axis);
    if (!(len > 0.0)) throw std::invalid_argument("harmonic term axis must be nonzero");
    terms_.push_back(Term{(1.0 / len) * t.axis, t.amplitude, zonal_coefficients(n, t.l)});
  }
}

RadialJet ZonalRadialField::jet(const Vec& u) const {
  RadialJet jet;
  double f = 1.0;
  Vec grad;
  Mat hess;
  for (const Term& term : terms_) {
    double z, dz, d2z;
    poly_eval2(term.poly, dot(u, term.axis), z, dz, d2z);
    f += term.amplitude * z;
    grad = grad + (term.amplitude * dz) * term.axis;
    hess = hess + (term.amplitude * d2z) * outer(term.axis, term.axis);
  }
  jet.r = base_ * f;
  jet.grad = base_ * grad;
  jet.hess = base_ * hess;
  return jet;
}

EllipsoidRadialField::EllipsoidRadialField(const std::vector<double>& axes, int n) : n_(n) {
  if (int(axes.size()) != n) throw std::invalid_argument("ellipsoid needs n semi-axes");
  for (int i = 0; i < n; ++i) {
    if (!(axes[i] > 0.0)) throw std::invalid_argument("ellipsoid semi-axes must be positive");
    inv_axes_sq_[i] = 1.0 / (axes[i] * axes[i]);
  }
}

RadialJet EllipsoidRadialField::jet(const Vec& u) const {
  // r = Q^{-1/2} with Q = sum x_i^2 / a_i^2.
  double Q = 0.0;
  Vec w;
  for (int i = 0; i < n_; ++i) {
    w[i] = inv_axes_sq_[i] * u[i];
    Q += w[i] * u[i];
  }
  const double q12 = std::sqrt(Q);
  const double q32 = Q * q12;
  const double q52 = Q * q32;

  RadialJet jet;
  jet.r = 1.0 / q12;
  jet.grad = (-1.0 / q32) * w;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      jet.hess.m[i][j] = 3.0 * w[i] * w[j] / q52 - (i == j ? inv_axes_sq_[i] / q32 : 0.0);
  return jet;
}

// ---------------------------------------------------------------------------
// Family dispatch
// ---------------------------------------------------------------------------

EuclideanFrameSet evaluate(const SurfaceSpec& spec, const SphereGrid& grid) {
  return std::visit(
      [&grid](const auto& s) -> EuclideanFrameSet {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GeodesicSphere>) {
          return eval_support_body(BallSupport(hyperbolic_to_euclidean_radius(s.r)), grid);
        } else if constexpr (std::is_same_v<T, CenteredEllipsoid>) {
          return eval_support_body(EllipsoidSupport(s.axes, grid.n), grid);
        } else if constexpr (std::is_same_v<T, HarmonicPerturbedSphere>) {
          return eval_radial_graph(ZonalRadialField(s, grid.n), grid);
        } else {
          return eval_support_body(SmoothedSimplexSupport(s, grid.n), grid);
        }
      },
      spec);
}

std::string family_name(const SurfaceSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GeodesicSphere>) return "geodesic-sphere";
        if constexpr (std::is_same_v<T, CenteredEllipsoid>) return "ellipsoid";
        if constexpr (std::is_same_v<T, HarmonicPerturbedSphere>) return "harmonic-perturbed-sphere";
        return "smoothed-simplex";
      },
      spec);
}

SurfaceSpec scale_spec(const SurfaceSpec& spec, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("scale factor must be positive");
  SurfaceSpec out = spec;
  std::visit(
      [s](auto& body) {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, GeodesicSphere>) {
          body.r = euclidean_to_hyperbolic_radius(s * hyperbolic_to_euclidean_radius(body.r));
        } else if constexpr (std::is_same_v<T, CenteredEllipsoid>) {
          for (double& a : body.axes) a *= s;
        } else if constexpr (std::is_same_v<T, HarmonicPerturbedSphere>) {
          body.R *= s;
        } else {
          body.scale *= s;
        }
      },
      out);
  return out;
}

std::vector<Vec> regular_simplex_vertices(int n) {
  if (n < 2 || n > 4) throw std::invalid_argument("regular simplex supported for n in {2,3,4}");
  // Corners of the standard simplex in R^{n+1}, centered and expressed in a
  // Helmert basis of the zero-sum hyperplane; pairwise inner product is -1/n.
  std::vector<Vec> vertices(n + 1);
  for (int i = 0; i <= n; ++i) {
    double d[5] = {};
    for (int j = 0; j <= n; ++j) d[j] = (i == j ? 1.0 : 0.0) - 1.0 / (n + 1.0);
    Vec v;
    for (int k = 1; k <= n; ++k) {
      double b = 0.0;
      for (int j = 0; j < k; ++j) b += d[j];
      b -= k * d[k];
      v[k - 1] = b / std::sqrt(double(k) * (k + 1.0));
    }
    vertices[i] = normalized(v);
  }
  return vertices;
}

SmoothedSimplex default_smoothed_simplex(int n) {
  SmoothedSimplex s;
  s.vertices = regular_simplex_vertices(n);
  s.p = 6.0;
  s.eps = 0.08;
  s.scale = 0.8 / (std::pow(double(n + 1), 1.0 / s.p) + s.eps);
  return s;
}

}  // namespace horoaf
