#include "horoaf/flow.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "horoaf/errors.hpp"
#include "horoaf/hyperbolic.hpp"

namespace horoaf {

FlowTrace trace_flow(const SurfaceSpec& spec, const SphereGrid& grid,
                     const std::vector<double>& t_values) {
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    if (t_values[i] < 0.0) throw std::invalid_argument("trace_flow: t must be >= 0");
    if (i > 0 && !(t_values[i] > t_values[i - 1]))
      throw std::invalid_argument("trace_flow: t values must be increasing");
  }

  FlowTrace trace;
  trace.n = grid.n;
  trace.resolution = grid.resolution;
  trace.surface = family_name(spec);
  trace.samples.reserve(t_values.size());

  const EuclideanFrameSet base = evaluate(spec, grid);
  for (double t : t_values) {
    const double s = std::exp(-t);
    const EuclideanFrameSet scaled = (s == 1.0) ? base : scale_frame(base, s);
    const HyperbolicFrameSet lifted = lift_frame(scaled);
    const FunctionalSummary sum = summarize(scaled, lifted);

    FlowSample sample;
    sample.t = t;
    sample.s = s;
    sample.area = sum.area;
    sample.calI = sum.calI;
    sample.P = sum.P;
    sample.rho_sq_integral = sum.rho_sq_integral;
    sample.min_lambda = sum.min_lambda;
    trace.samples.push_back(sample);
  }
  return trace;
}

std::vector<EvolutionResidual> evolution_residuals(const FlowTrace& trace) {
  const auto& s = trace.samples;
  if (s.size() < 3) throw NonUniformGridError("evolution_residuals: need at least 3 samples");
  const double dt = s[1].t - s[0].t;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (std::abs((s[i].t - s[i - 1].t) - dt) > 1e-9 * std::max(1.0, std::abs(dt)))
      throw NonUniformGridError("evolution_residuals: non-uniform t spacing");
  }

  const int n = trace.n;
  std::vector<EvolutionResidual> out;
  out.reserve(s.size() - 2);
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    const double dA = (s[i + 1].area - s[i - 1].area) / (2.0 * dt);
    const double dI = (s[i + 1].calI - s[i - 1].calI) / (2.0 * dt);
    const double rhsA = -(n - 1.0) * s[i].calI;
    const double rhsI = s[i].area - n * s[i].rho_sq_integral;

    EvolutionResidual r;
    r.t = s[i].t;
    r.area_residual = std::abs(dA - rhsA) / std::max(std::abs(rhsA), 1e-300);
    r.calI_residual = std::abs(dI - rhsI) / std::max(std::abs(rhsI), 1e-300);
    out.push_back(r);
  }
  return out;
}

LimitResult limit_P_to_Q(const SurfaceSpec& spec, const SphereGrid& grid, double T) {
  if (T < 0.0) throw std::invalid_argument("limit_P_to_Q: T must be >= 0");
  const EuclideanFrameSet base = evaluate(spec, grid);

  LimitResult res;
  res.Q_at_0 = euclidean_Q(base);

  const double s = std::exp(-T);
  const EuclideanFrameSet scaled = (s == 1.0) ? base : scale_frame(base, s);
  const HyperbolicFrameSet lifted = lift_frame(scaled);
  res.P_at_T = summarize(scaled, lifted).P;
  res.gap = std::abs(res.P_at_T - res.Q_at_0);
  return res;
}

std::string flow_trace_csv(const FlowTrace& trace) {
  std::string csv = "t,s,area,calI,P,rho_sq_integral,min_lambda\n";
  char line[256];
  for (const FlowSample& s : trace.samples) {
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.t, s.s,
                  s.area, s.calI, s.P, s.rho_sq_integral, s.min_lambda);
    csv += line;
  }
  return csv;
}

}  // namespace horoaf
