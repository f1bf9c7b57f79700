#include "horoaf/serialization.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace horoaf {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json vec_to_json(const Vec& v, int n) {
  ordered_json arr = ordered_json::array();
  for (int i = 0; i < n; ++i) arr.push_back(v[i]);
  return arr;
}

Vec vec_from_json(const ordered_json& arr) {
  Vec v;
  if (!arr.is_array() || arr.size() > 4) throw std::invalid_argument("expected a vector of <= 4 numbers");
  for (std::size_t i = 0; i < arr.size(); ++i) v[int(i)] = arr[i].get<double>();
  return v;
}

ordered_json surface_json(const SurfaceSpec& spec) {
  ordered_json j;
  std::visit(
      [&j](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GeodesicSphere>) {
          j["family"] = "geodesic-sphere";
          j["r"] = s.r;
        } else if constexpr (std::is_same_v<T, CenteredEllipsoid>) {
          j["family"] = "ellipsoid";
          j["axes"] = s.axes;
        } else if constexpr (std::is_same_v<T, HarmonicPerturbedSphere>) {
          j["family"] = "harmonic-perturbed-sphere";
          j["R"] = s.R;
          ordered_json terms = ordered_json::array();
          for (const HarmonicTerm& t : s.terms) {
            ordered_json term;
            term["l"] = t.l;
            term["axis"] = vec_to_json(t.axis, 4);
            term["amplitude"] = t.amplitude;
            terms.push_back(term);
          }
          j["terms"] = terms;
        } else {
          j["family"] = "smoothed-simplex";
          ordered_json verts = ordered_json::array();
          for (const Vec& v : s.vertices) verts.push_back(vec_to_json(v, 4));
          j["vertices"] = verts;
          j["p"] = s.p;
          j["eps"] = s.eps;
          j["scale"] = s.scale;
        }
      },
      spec);
  return j;
}

SurfaceSpec surface_from(const ordered_json& j) {
  const std::string family = j.at("family").get<std::string>();
  if (family == "geodesic-sphere") {
    return GeodesicSphere{j.at("r").get<double>()};
  }
  if (family == "ellipsoid") {
    CenteredEllipsoid e;
    e.axes = j.at("axes").get<std::vector<double>>();
    return e;
  }
  if (family == "harmonic-perturbed-sphere") {
    HarmonicPerturbedSphere h;
    h.R = j.at("R").get<double>();
    if (j.contains("terms")) {
      for (const auto& term : j.at("terms")) {
        HarmonicTerm t;
        t.l = term.at("l").get<int>();
        t.axis = vec_from_json(term.at("axis"));
        t.amplitude = term.at("amplitude").get<double>();
        h.terms.push_back(t);
      }
    }
    return h;
  }
  if (family == "smoothed-simplex") {
    SmoothedSimplex s;
    for (const auto& v : j.at("vertices")) s.vertices.push_back(vec_from_json(v));
    s.p = j.at("p").get<double>();
    s.eps = j.at("eps").get<double>();
    s.scale = j.at("scale").get<double>();
    return s;
  }
  throw std::invalid_argument("unknown surface family: " + family);
}

int axis_index_from_name(const std::string& name) {
  if (name == "x") return 0;
  if (name == "y") return 1;
  if (name == "z") return 2;
  if (name == "w") return 3;
  throw std::invalid_argument("unknown axis name: " + name);
}

SurfaceSpec parse_mini_language(const std::string& family, const std::string& args, int n) {
  // key=value pairs separated by commas; "default" means no overrides.
  std::map<std::string, std::string> kv;
  if (args != "default" && !args.empty()) {
    std::stringstream ss(args);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("expected key=value in surface: " + item);
      kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }
  auto num = [&kv](const std::string& key, double fallback, bool* found = nullptr) {
    auto it = kv.find(key);
    if (it == kv.end()) {
      if (found) *found = false;
      return fallback;
    }
    if (found) *found = true;
    return std::stod(it->second);
  };

  if (family == "geodesic-sphere") {
    return GeodesicSphere{num("r", 1.0)};
  }
  if (family == "circle" || family == "sphere") {
    const double R = num("R", 0.4);
    CenteredEllipsoid e;
    e.axes.assign(n, R);
    return e;
  }
  if (family == "ellipsoid") {
    static const char* names[4] = {"a", "b", "c", "d"};
    CenteredEllipsoid e;
    for (int i = 0; i < n; ++i) e.axes.push_back(num(names[i], 0.3));
    return e;
  }
  if (family == "harmonic" || family == "harmonic-perturbed-sphere") {
    HarmonicPerturbedSphere h;
    h.R = num("R", 0.3);
    bool has_amp = false;
    const double amp = num("amp", 0.1, &has_amp);
    if (has_amp || kv.count("l")) {
      HarmonicTerm t;
      t.l = int(num("l", 2));
      t.amplitude = amp;
      t.axis = Vec{};
      t.axis[kv.count("axis") ? axis_index_from_name(kv.at("axis")) : n - 1] = 1.0;
      h.terms.push_back(t);
    }
    return h;
  }
  if (family == "smoothed-simplex") {
    SmoothedSimplex s = default_smoothed_simplex(n);
    s.p = num("p", s.p);
    s.eps = num("eps", s.eps);
    bool has_scale = false;
    const double scale = num("scale", s.scale, &has_scale);
    if (has_scale) {
      s.scale = scale;
    } else {
      s.scale = 0.8 / (std::pow(double(n + 1), 1.0 / s.p) + s.eps);
    }
    return s;
  }
  throw std::invalid_argument("unknown surface family: " + family);
}

}  // namespace

std::string surface_to_json(const SurfaceSpec& spec) { return surface_json(spec).dump(); }

SurfaceSpec surface_from_json(const std::string& json_text) {
  return surface_from(ordered_json::parse(json_text));
}

SurfaceSpec parse_surface(const std::string& arg, int n) {
  if (arg.empty()) throw std::invalid_argument("empty surface argument");
  if (arg.front() == '{') return surface_from_json(arg);
  const auto colon = arg.find(':');
  const std::string head = arg.substr(0, colon);
  if (colon == std::string::npos) {
    if (std::filesystem::exists(arg)) {
      std::ifstream in(arg);
      std::stringstream buf;
      buf << in.rdbuf();
      return surface_from_json(buf.str());
    }
    return parse_mini_language(head, "default", n);
  }
  return parse_mini_language(head, arg.substr(colon + 1), n);
}

std::string report_to_json(const InequalityReport& report) {
  ordered_json j;
  j["name"] = report.name;
  j["lhs"] = report.lhs;
  j["rhs"] = report.rhs;
  j["margin"] = report.margin;
  j["relative_margin"] = report.relative_margin;
  j["holds"] = report.holds;
  j["conjectural"] = report.conjectural;
  j["surface"] = report.surface.empty() ? ordered_json() : ordered_json::parse(report.surface);
  j["resolution"] = report.resolution;
  return j.dump();
}

std::string summary_to_json(const FunctionalSummary& s) {
  ordered_json j;
  j["n"] = s.n;
  j["resolution"] = s.resolution;
  j["surface"] = s.surface.empty() ? ordered_json() : ordered_json::parse(s.surface);
  j["area"] = s.area;
  j["calI"] = s.calI;
  j["area_euclidean"] = s.area_euclidean;
  j["Q"] = s.Q;
  j["P"] = s.P;
  j["rho_sq_integral"] = s.rho_sq_integral;
  j["p_sigma1_integral"] = s.p_sigma1_integral;
  j["calI_minus_area"] = s.calI_minus_area;
  j["x2_euclidean_integral"] = s.x2_euclidean_integral;
  j["x2_hyperbolic_integral"] = s.x2_hyperbolic_integral;
  auto table = [&s](const std::array<double, 4>& t) {
    ordered_json arr = ordered_json::array();
    for (int k = 0; k < s.n; ++k) arr.push_back(t[k]);
    return arr;
  };
  j["weighted_Hk"] = table(s.weighted_Hk);
  j["plain_Hk"] = table(s.plain_Hk);
  j["weighted_Hk_over_rho"] = table(s.weighted_Hk_over_rho);
  j["euclidean_Hk"] = table(s.euclidean_Hk);
  j["min_lambda"] = s.min_lambda;
  j["min_H1"] = s.min_H1;
  j["min_kappa_euclidean"] = s.min_kappa_euclidean;
  return j.dump();
}

std::string flow_trace_to_json(const FlowTrace& trace) {
  ordered_json j;
  j["n"] = trace.n;
  j["resolution"] = trace.resolution;
  j["surface"] = trace.surface;
  auto column = [&trace](auto getter) {
    ordered_json arr = ordered_json::array();
    for (const FlowSample& s : trace.samples) arr.push_back(getter(s));
    return arr;
  };
  j["t"] = column([](const FlowSample& s) { return s.t; });
  j["s"] = column([](const FlowSample& s) { return s.s; });
  j["area"] = column([](const FlowSample& s) { return s.area; });
  j["calI"] = column([](const FlowSample& s) { return s.calI; });
  j["P"] = column([](const FlowSample& s) { return s.P; });
  j["rho_sq_integral"] = column([](const FlowSample& s) { return s.rho_sq_integral; });
  j["min_lambda"] = column([](const FlowSample& s) { return s.min_lambda; });
  return j.dump();
}

std::string certificate_to_json(const CounterexampleCertificate& cert, int grid_n) {
  ordered_json j;
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  j["grid"] = {{"n", grid_n}, {"resolution", cert.resolution}};
  j["surface"] = ordered_json::parse(surface_to_json(cert.surface));
  j["Q"] = cert.Q;
  j["t0"] = cert.t0;
  j["scaled_P"] = cert.scaled_P;
  j["min_lambda_scaled"] = cert.min_lambda_scaled;
  j["resolution"] = cert.resolution;
  ordered_json rc;
  rc["resolution"] = cert.refinement_check.resolution;
  rc["Q"] = cert.refinement_check.Q;
  rc["P"] = cert.refinement_check.P;
  rc["min_lambda"] = cert.refinement_check.min_lambda;
  j["refinement_check"] = rc;
  j["hconvex_onset_t"] = cert.hconvex_onset_t;
  return j.dump();
}

CounterexampleCertificate certificate_from_json(const std::string& json_text) {
  const ordered_json j = ordered_json::parse(json_text);
  CounterexampleCertificate cert;
  cert.surface = surface_from(j.at("surface"));
  cert.Q = j.at("Q").get<double>();
  cert.t0 = j.at("t0").get<double>();
  cert.scaled_P = j.at("scaled_P").get<double>();
  cert.min_lambda_scaled = j.at("min_lambda_scaled").get<double>();
  cert.resolution = j.at("resolution").get<int>();
  const auto& rc = j.at("refinement_check");
  cert.refinement_check.resolution = rc.at("resolution").get<int>();
  cert.refinement_check.Q = rc.at("Q").get<double>();
  cert.refinement_check.P = rc.at("P").get<double>();
  cert.refinement_check.min_lambda = rc.at("min_lambda").get<double>();
  if (j.contains("hconvex_onset_t")) cert.hconvex_onset_t = j.at("hconvex_onset_t").get<double>();
  return cert;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
    out << content;
    if (!out.good()) throw std::runtime_error("write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace horoaf
