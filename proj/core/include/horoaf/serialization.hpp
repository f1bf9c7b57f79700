#pragma once

#include <string>

#include "horoaf/flow.hpp"
#include "horoaf/functionals.hpp"
#include "horoaf/search.hpp"
#include "horoaf/surface.hpp"

namespace horoaf {

inline constexpr const char kToolName[] = "horoaf";
inline constexpr const char kToolVersion[] = "0.1.0";

// All serializers emit compact JSON with a fixed field order, so identical
// inputs give byte-identical output.
std::string surface_to_json(const SurfaceSpec& spec);
SurfaceSpec surface_from_json(const std::string& json_text);

// Accepts the CLI mini-language "family:key=value,...", raw JSON text, or a
// path to a JSON shape file. n fixes defaults (simplex vertex count, axes).
SurfaceSpec parse_surface(const std::string& arg, int n);

std::string report_to_json(const InequalityReport& report);
std::string summary_to_json(const FunctionalSummary& summary);
std::string flow_trace_to_json(const FlowTrace& trace);

std::string certificate_to_json(const CounterexampleCertificate& cert, int grid_n);
CounterexampleCertificate certificate_from_json(const std::string& json_text);

// Write via temp file + rename so readers never observe partial output.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace horoaf
