#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "horoaf/linalg.hpp"
#include "horoaf/sphere_grid.hpp"

namespace horoaf {

// ---------------------------------------------------------------------------
// Per-node Euclidean geometry of a hypersurface inside the unit ball.
// area_element already contains the grid weight, so integrals are plain sums.
// tangents hold dx along the node's deterministic tangent basis; they feed the
// independent gradient checks downstream.
// ---------------------------------------------------------------------------
struct EuclideanFrameSet {
  int n = 0;
  int resolution = 0;
  std::vector<Vec> x;
  std::vector<Vec> nu;
  std::vector<std::array<double, 3>> kappa;  // principal curvatures, ascending
  std::vector<double> support;               // u^delta = <x, nu>
  std::vector<double> area_element;
  std::vector<std::array<Vec, 3>> tangents;

  std::size_t size() const { return x.size(); }
};

struct SupportJet {
  double h = 0.0;
  Vec grad;
  Mat hess;
};

// Positively 1-homogeneous support function with analytic ambient gradient and
// Hessian. Jets are only requested at unit vectors.
class SupportBody {
 public:
  virtual ~SupportBody() = default;
  virtual SupportJet jet(const Vec& u) const = 0;
};

struct RadialJet {
  double r = 0.0;
  Vec grad;
  Mat hess;
};

// Smooth ambient extension of a radial function over S^{n-1}; only values and
// derivatives at |x| = 1 matter, so any extension works.
class RadialField {
 public:
  virtual ~RadialField() = default;
  virtual RadialJet jet(const Vec& u) const = 0;
};

// Convex body from its support function: x = Dh(u), nu = u, principal radii =
// eigenvalues of the tangent-restricted Hessian. Throws NonConvexError if that
// operator is not positive definite, OutOfBallError if the body leaves B^n.
EuclideanFrameSet eval_support_body(const SupportBody& body, const SphereGrid& grid);

// Star-shaped surface x = r(u) u from the first/second fundamental forms of
// the radial graph. Curvatures may take any sign. Throws OutOfBallError /
// DegenerateError.
EuclideanFrameSet eval_radial_graph(const RadialField& field, const SphereGrid& grid);

// Exact homothety x -> s x: kappa/s, support*s, area*s^{n-1}. No re-evaluation.
EuclideanFrameSet scale_frame(const EuclideanFrameSet& frames, double s);

// Ball-model radius conversions: R = tanh(r/2) and back.
double hyperbolic_to_euclidean_radius(double r);
double euclidean_to_hyperbolic_radius(double R);

// ---------------------------------------------------------------------------
// Shape families
// ---------------------------------------------------------------------------

struct GeodesicSphere {
  double r = 1.0;  // hyperbolic radius
};

struct CenteredEllipsoid {
  std::vector<double> axes;  // n semi-axes in ball coordinates
};

// One zonal term amplitude * Z_l(<u, axis>) of the radial perturbation, with
// Z_l the degree-l zonal harmonic normalized to Z_l(1) = 1 (Chebyshev T for
// n = 2, Legendre for n = 3, normalized Gegenbauer for n = 4).
struct HarmonicTerm {
  int l = 2;
  Vec axis{{0.0, 0.0, 1.0, 0.0}};
  double amplitude = 0.0;
};

struct HarmonicPerturbedSphere {
  double R = 0.3;
  std::vector<HarmonicTerm> terms;
};

// h(x) = scale * [ (sum_i relu(<x, v_i>)^p)^{1/p} + eps |x| ].
// Convex and positively 1-homogeneous by construction, C^2 for p >= 3;
// vertex lengths act as per-vertex radial weights.
struct SmoothedSimplex {
  std::vector<Vec> vertices;
  double p = 6.0;
  double eps = 0.08;
  double scale = 0.5;
};

using SurfaceSpec =
    std::variant<GeodesicSphere, CenteredEllipsoid, HarmonicPerturbedSphere, SmoothedSimplex>;

EuclideanFrameSet evaluate(const SurfaceSpec& spec, const SphereGrid& grid);
std::string family_name(const SurfaceSpec& spec);

// Apply an exact homothety at spec level (composes with evaluate()).
SurfaceSpec scale_spec(const SurfaceSpec& spec, double s);

// n+1 unit vectors with pairwise inner product -1/n.
std::vector<Vec> regular_simplex_vertices(int n);
SmoothedSimplex default_smoothed_simplex(int n);

// ---------------------------------------------------------------------------
// Concrete bodies, exposed so tests and the search module can wrap them.
// ---------------------------------------------------------------------------

class BallSupport final : public SupportBody {
 public:
  explicit BallSupport(double radius) : radius_(radius) {}
  SupportJet jet(const Vec& u) const override;

 private:
  double radius_;
};

class EllipsoidSupport final : public SupportBody {
 public:
  EllipsoidSupport(const std::vector<double>& axes, int n);
  SupportJet jet(const Vec& u) const override;

 private:
  Vec axes_sq_;
  int n_;
};

class SmoothedSimplexSupport final : public SupportBody {
 public:
  SmoothedSimplexSupport(const SmoothedSimplex& spec, int n);
  SupportJet jet(const Vec& u) const override;

 private:
  SmoothedSimplex spec_;
  int n_;
};

// Adds a round offset: h -> h + eps |x| (Minkowski sum with a ball of radius
// eps, shifting every principal radius by exactly eps).
class OffsetSupport final : public SupportBody {
 public:
  OffsetSupport(const SupportBody& inner, double eps, int n) : inner_(inner), eps_(eps), n_(n) {}
  SupportJet jet(const Vec& u) const override;

 private:
  const SupportBody& inner_;
  double eps_;
  int n_;
};

class ZonalRadialField final : public RadialField {
 public:
  ZonalRadialField(const HarmonicPerturbedSphere& spec, int n);
  RadialJet jet(const Vec& u) const override;

 private:
  struct Term {
    Vec axis;
    double amplitude;
    std::vector<double> poly;  // zonal polynomial coefficients, ascending
  };
  double base_;
  std::vector<Term> terms_;
};

class EllipsoidRadialField final : public RadialField {
 public:
  EllipsoidRadialField(const std::vector<double>& axes, int n);
  RadialJet jet(const Vec& u) const override;

 private:
  Vec inv_axes_sq_;
  int n_;
};

}  // namespace horoaf
