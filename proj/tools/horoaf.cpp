// Command-line front end: verification suites, flow traces, counterexample
// search, and report merging. All outputs are deterministic JSON/CSV.
//
// Exit codes: 0 success (conjectural findings included), 1 usage error,
// 2 proven inequality numerically violated, 3 search found no certificate.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "horoaf/errors.hpp"
#include "horoaf/flow.hpp"
#include "horoaf/functionals.hpp"
#include "horoaf/hyperbolic.hpp"
#include "horoaf/reduce.hpp"
#include "horoaf/search.hpp"
#include "horoaf/serialization.hpp"
#include "horoaf/sphere_grid.hpp"
#include "horoaf/surface.hpp"

using horoaf::FunctionalSummary;
using horoaf::InequalityReport;
using horoaf::SphereGrid;
using horoaf::SurfaceSpec;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitVerificationFailure = 2;
constexpr int kExitNoCertificate = 3;

ordered_json tool_info() {
  return {{"name", horoaf::kToolName}, {"version", horoaf::kToolVersion}};
}

ordered_json grid_info(const SphereGrid& grid) {
  const double weight_sum = horoaf::pairwise_reduce<double>(
      0, grid.size(), [&grid](std::size_t i) { return grid.weights[i]; });
  ordered_json j;
  j["n"] = grid.n;
  j["resolution"] = grid.resolution;
  j["node_count"] = grid.size();
  j["weight_sum"] = weight_sum;
  j["unit_sphere_area"] = horoaf::unit_sphere_area(grid.n);
  return j;
}

void emit(const std::string& output, const std::string& content) {
  if (output.empty()) {
    std::cout << content << "\n";
  } else {
    horoaf::write_file_atomic(output, content);
  }
}

FunctionalSummary summarize_spec(const SurfaceSpec& spec, const SphereGrid& grid) {
  const horoaf::EuclideanFrameSet frames = evaluate(spec, grid);
  const horoaf::HyperbolicFrameSet lifted = lift_frame(frames);
  FunctionalSummary summary = summarize(frames, lifted);
  summary.surface = horoaf::surface_to_json(spec);
  return summary;
}

struct VerifyOutcome {
  ordered_json document;
  bool proven_failure = false;
};

// Runs every check whose hypotheses the surface verifiably satisfies. The
// verdict tolerance of each report is widened by the measured refinement
// error (margin difference against the half-resolution run).
VerifyOutcome run_verify(const SurfaceSpec& spec, int n, int resolution) {
  const SphereGrid grid = horoaf::build_grid(n, resolution);
  const horoaf::EuclideanFrameSet frames = evaluate(spec, grid);
  const horoaf::HyperbolicFrameSet lifted = lift_frame(frames);
  FunctionalSummary summary = summarize(frames, lifted);
  summary.surface = horoaf::surface_to_json(spec);

  FunctionalSummary half;
  bool have_half = resolution / 2 >= 8;
  if (have_half) half = summarize_spec(spec, horoaf::build_grid(n, resolution / 2));

  const double conv_tol = 1e-9;
  const bool hconvex = summary.min_lambda >= 1.0 - conv_tol;
  const bool h1_class = summary.min_H1 >= 1.0 - conv_tol;
  const bool mean_convex = summary.min_H1 > 0.0;
  const bool euclid_convex = summary.min_kappa_euclidean > 0.0;
  int k_convex = 0;
  while (k_convex + 1 <= n - 1 && summary.min_sigma_euclidean[k_convex + 1] >= -1e-12) ++k_convex;

  std::vector<InequalityReport> reports;
  auto add = [&](const char* name, int k) {
    double extra = 0.0;
    if (have_half) {
      const InequalityReport full0 = check_inequality(name, summary, k);
      const InequalityReport half0 = check_inequality(name, half, k);
      extra = std::abs(full0.margin - half0.margin);
    }
    reports.push_back(check_inequality(name, summary, k, extra));
  };

  if (n >= 3) {
    for (int k = 1; k <= k_convex; ++k) add("AF_euclidean", k);
    if (mean_convex) add("dLG", -1);
    if (h1_class) {
      add("thm2", -1);
      add("thm2_normalized", -1);
    }
    if (hconvex) {
      for (int k = 1; k <= n - 1; ++k) add("GWW", k);
      add("conjecture", -1);
      add("conjecture_normalized", -1);
      for (int k = 0; k <= n - 1; k += 2) add("thm3", k);
      for (int j = 0; 2 * j + 2 <= n - 1; ++j) {
        add("wang_xia", j);
        add("crucial", j);
      }
    }
  } else {
    if (euclid_convex && k_convex >= 1) add("AF_euclidean", 1);
    if (h1_class) {
      add("thm2", -1);
      add("thm2_normalized", -1);
    }
    std::vector<InequalityReport> remark = check_remark_n2(summary);
    std::vector<InequalityReport> remark_half;
    if (have_half) remark_half = check_remark_n2(half);
    for (std::size_t i = 0; i < remark.size(); ++i) {
      const bool hyperbolic_form = remark[i].name != "remark_n2_euclidean";
      if (hyperbolic_form && !hconvex) continue;
      if (!hyperbolic_form && !euclid_convex) continue;
      double extra = have_half ? std::abs(remark[i].margin - remark_half[i].margin) : 0.0;
      std::vector<InequalityReport> redone = check_remark_n2(summary, extra);
      reports.push_back(redone[i]);
    }
  }

  const double minkowski_rel =
      std::abs(minkowski_residual(summary)) / ((n - 1.0) * summary.calI);
  const double identity_residual = support_identity_max_residual(frames, lifted);

  VerifyOutcome outcome;
  outcome.document["tool"] = tool_info();
  outcome.document["grid"] = grid_info(grid);
  outcome.document["surface"] = ordered_json::parse(horoaf::surface_to_json(spec));
  outcome.document["classes"] = {{"horospherically_convex", hconvex},
                                 {"H1_geq_1", h1_class},
                                 {"mean_convex", mean_convex},
                                 {"euclidean_convex", euclid_convex},
                                 {"k_convex", k_convex}};
  outcome.document["identities"] = {{"minkowski_relative_residual", minkowski_rel},
                                    {"support_identity_max_residual", identity_residual}};
  outcome.document["summary"] = ordered_json::parse(horoaf::summary_to_json(summary));
  ordered_json arr = ordered_json::array();
  for (const InequalityReport& rep : reports) {
    arr.push_back(ordered_json::parse(horoaf::report_to_json(rep)));
    if (!rep.holds && !rep.conjectural) outcome.proven_failure = true;
  }
  outcome.document["reports"] = arr;
  return outcome;
}

ordered_json merge_reports(const std::vector<std::string>& inputs) {
  std::vector<ordered_json> all;
  for (const std::string& path : inputs) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read input: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const ordered_json doc = ordered_json::parse(buf.str());
    const ordered_json& reports = doc.is_array() ? doc : doc.at("reports");
    for (const auto& rep : reports) all.push_back(rep);
  }

  // Dedupe on the serialized form (idempotent merges), then sort.
  std::sort(all.begin(), all.end(), [](const ordered_json& a, const ordered_json& b) {
    const auto key = [](const ordered_json& r) {
      return std::make_tuple(r.at("name").get<std::string>(), r.at("surface").dump(),
                             r.at("resolution").get<int>(), r.dump());
    };
    return key(a) < key(b);
  });
  all.erase(std::unique(all.begin(), all.end(),
                        [](const ordered_json& a, const ordered_json& b) {
                          return a.dump() == b.dump();
                        }),
            all.end());

  std::map<std::string, ordered_json> per_name;
  for (const ordered_json& rep : all) {
    const std::string name = rep.at("name").get<std::string>();
    auto it = per_name.find(name);
    if (it == per_name.end()) {
      per_name[name] = {{"count", 1},
                        {"min_margin", rep.at("margin")},
                        {"min_relative_margin", rep.at("relative_margin")},
                        {"all_hold", rep.at("holds").get<bool>()},
                        {"conjectural", rep.at("conjectural").get<bool>()}};
    } else {
      ordered_json& agg = it->second;
      agg["count"] = agg["count"].get<int>() + 1;
      agg["min_margin"] =
          std::min(agg["min_margin"].get<double>(), rep.at("margin").get<double>());
      agg["min_relative_margin"] = std::min(agg["min_relative_margin"].get<double>(),
                                            rep.at("relative_margin").get<double>());
      agg["all_hold"] = agg["all_hold"].get<bool>() && rep.at("holds").get<bool>();
    }
  }

  ordered_json doc;
  doc["tool"] = tool_info();
  ordered_json arr = ordered_json::array();
  for (const ordered_json& rep : all) arr.push_back(rep);
  doc["reports"] = arr;
  ordered_json summary;
  for (const auto& [name, agg] : per_name) summary[name] = agg;
  doc["summary"] = summary;
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical toolkit for weighted Alexandrov-Fenchel inequalities in hyperbolic space"};
  app.require_subcommand(1);

  int n = 3;
  int resolution = 64;
  std::string surface_arg;
  std::string output;
  std::string format = "json";
  double t_max = 8.0;
  double dt = 0.05;
  int budget = 400;

  CLI::App* verify = app.add_subcommand("verify", "run the inequality suite on one surface");
  verify->add_option("--n", n, "ambient dimension (2, 3 or 4)");
  verify->add_option("--resolution", resolution, "quadrature resolution");
  verify->add_option("--surface", surface_arg, "shape: family:key=value,... or JSON file")
      ->required();
  verify->add_option("--output", output, "output path (stdout if omitted)");
  verify->add_option("--format", format, "output format (json)");

  CLI::App* flow = app.add_subcommand("flow", "trace the homothety flow of one surface");
  flow->add_option("--n", n, "ambient dimension (2, 3 or 4)");
  flow->add_option("--resolution", resolution, "quadrature resolution");
  flow->add_option("--surface", surface_arg, "shape: family:key=value,... or JSON file")
      ->required();
  flow->add_option("--t-max", t_max, "final flow time");
  flow->add_option("--dt", dt, "flow time step");
  flow->add_option("--output", output, "output path (stdout if omitted)");
  flow->add_option("--format", format, "output format (csv or json)");

  CLI::App* search = app.add_subcommand("search", "search for a counterexample certificate");
  search->add_option("--resolution", resolution, "quadrature resolution")->default_val(96);
  search->add_option("--budget", budget, "objective evaluation budget");
  search->add_option("--output", output, "certificate path (stdout if omitted)");

  CLI::App* report = app.add_subcommand("report", "merge verify outputs into one summary");
  std::vector<std::string> inputs;
  report->add_option("--inputs", inputs, "verify JSON files to merge")->required();
  report->add_option("--output", output, "output path (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      if (resolution < 8) throw std::invalid_argument("resolution must be >= 8");
      if (format != "json") throw std::invalid_argument("verify emits json");
      const SurfaceSpec spec = horoaf::parse_surface(surface_arg, n);
      VerifyOutcome outcome = run_verify(spec, n, resolution);
      outcome.document["config"] = {{"command", "verify"},     {"n", n},
                                    {"resolution", resolution}, {"surface", surface_arg},
                                    {"output", output},         {"format", format}};
      // keep config first for readability
      ordered_json doc;
      doc["config"] = outcome.document["config"];
      for (auto& [key, value] : outcome.document.items())
        if (key != "config") doc[key] = value;
      emit(output, doc.dump(2));
      return outcome.proven_failure ? kExitVerificationFailure : 0;
    }

    if (flow->parsed()) {
      if (resolution < 8) throw std::invalid_argument("resolution must be >= 8");
      if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
      if (!(t_max > 0.0)) throw std::invalid_argument("t-max must be > 0");
      if (format != "csv" && format != "json")
        throw std::invalid_argument("flow emits csv or json");
      const SurfaceSpec spec = horoaf::parse_surface(surface_arg, n);
      const SphereGrid grid = horoaf::build_grid(n, resolution);
      std::vector<double> t_values;
      for (double t = 0.0; t <= t_max + 1e-12; t += dt) t_values.push_back(t);
      const horoaf::FlowTrace trace = horoaf::trace_flow(spec, grid, t_values);
      if (format == "csv") {
        emit(output, horoaf::flow_trace_csv(trace));
      } else {
        ordered_json doc;
        doc["config"] = {{"command", "flow"}, {"n", n},           {"resolution", resolution},
                         {"surface", surface_arg}, {"t_max", t_max}, {"dt", dt},
                         {"output", output},  {"format", format}};
        doc["tool"] = tool_info();
        doc["grid"] = grid_info(grid);
        doc["surface"] = ordered_json::parse(horoaf::surface_to_json(spec));
        doc["trace"] = ordered_json::parse(horoaf::flow_trace_to_json(trace));
        emit(output, doc.dump(2));
      }
      return 0;
    }

    if (search->parsed()) {
      if (resolution < 8) throw std::invalid_argument("resolution must be >= 8");
      const SphereGrid grid = horoaf::build_grid(3, resolution);
      try {
        const horoaf::CounterexampleCertificate cert = horoaf::find_counterexample(grid, budget);
        ordered_json doc = ordered_json::parse(horoaf::certificate_to_json(cert, 3));
        doc["config"] = {{"command", "search"},
                         {"resolution", resolution},
                         {"budget", budget},
                         {"output", output}};
        emit(output, doc.dump(2));
        return 0;
      } catch (const horoaf::BudgetExhaustedError& e) {
        std::cerr << "search: " << e.what() << "\n";
        return kExitNoCertificate;
      } catch (const horoaf::CertificateUnstableError& e) {
        std::cerr << "search: " << e.what() << "\n";
        return kExitNoCertificate;
      } catch (const horoaf::NoFeasiblePointError& e) {
        std::cerr << "search: " << e.what() << "\n";
        return kExitNoCertificate;
      }
    }

    if (report->parsed()) {
      ordered_json doc = merge_reports(inputs);
      emit(output, doc.dump(2));
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const horoaf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
