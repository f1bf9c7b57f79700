#pragma once

#include <string>
#include <vector>

#include "horoaf/functionals.hpp"
#include "horoaf/surface.hpp"

namespace horoaf {

struct FlowSample {
  double t = 0.0;
  double s = 1.0;  // e^{-t}
  double area = 0.0;
  double calI = 0.0;
  double P = 0.0;
  double rho_sq_integral = 0.0;
  double min_lambda = 0.0;
};

struct FlowTrace {
  int n = 0;
  int resolution = 0;
  std::string surface;
  std::vector<FlowSample> samples;
};

// The homothety flow Sigma_t = e^{-t} Sigma_0, realized by exact frame scaling
// (the support function flow coincides with it up to tangential motion, and
// every tracked quantity is parametrization-invariant). No time stepping.
FlowTrace trace_flow(const SurfaceSpec& spec, const SphereGrid& grid,
                     const std::vector<double>& t_values);

struct EvolutionResidual {
  double t = 0.0;
  double area_residual = 0.0;  // |d|Sigma|/dt + (n-1) calI| / scale
  double calI_residual = 0.0;  // |d calI/dt - (|Sigma| - n int rho^2)| / scale
};

// Central-difference check of the evolution identities on a uniformly spaced
// trace; one residual pair per interior sample.
std::vector<EvolutionResidual> evolution_residuals(const FlowTrace& trace);

struct LimitResult {
  double P_at_T = 0.0;
  double Q_at_0 = 0.0;
  double gap = 0.0;  // |P_at_T - Q_at_0|
};

LimitResult limit_P_to_Q(const SurfaceSpec& spec, const SphereGrid& grid, double T);

// CSV with header t,s,area,calI,P,rho_sq_integral,min_lambda.
std::string flow_trace_csv(const FlowTrace& trace);

}  // namespace horoaf
