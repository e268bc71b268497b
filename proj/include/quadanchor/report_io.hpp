#pragma once

#include <string>

#include "quadanchor/geometry.hpp"
#include "quadanchor/solver.hpp"

namespace quadanchor {

inline constexpr const char* kToolVersion = "1.0.0";

const char* classification_name(Classification c);
Classification classification_from(const std::string& s);

// Exact scalar text forms. Accepted inputs: an integer ("7", "-12"), a
// decimal ("1.1", "-0.25", rationalized exactly, so "1.1" becomes 11/10),
// or a fraction "p/q". Throws input_error on anything else.
Rat rat_from_text(const std::string& text);
std::string rat_to_text(const Rat& r);

// Parsed input document: the configuration plus optional tolerance and seed
// overrides.
struct ConfigDocument {
  Configuration config;
  ToleranceSettings tolerances;
};

// The input document is JSON with "points" and "k" maps keyed by the labels
// A..D, an optional "tolerances" object (tol_accept, tol_real, dedupe) and
// an optional integer "seed". Coordinates and constants follow the
// rat_from_text forms; bare JSON integers are also accepted, but non-integer
// JSON numbers are rejected so nothing passes through double rounding.
// Throws input_error carrying the offending field's path.
ConfigDocument parse_config_text(const std::string& text);
ConfigDocument load_config_file(const std::string& path);

// A solve's complete record: the report, the echoed input, tool version and
// wall time.
struct ReportDocument {
  std::string version = kToolVersion;
  SolveReport report;
  Configuration input;
  double timing_ms = 0.0;
};

// Structured serialization; report_from_json(report_to_json(d)) reproduces d
// exactly (rationals travel as exact strings, doubles as round-trip JSON
// numbers). report_to_csv keeps only the real solutions as a flat table.
std::string report_to_json(const ReportDocument& doc);
ReportDocument report_from_json(const std::string& text);
std::string report_to_csv(const ReportDocument& doc);

}  // namespace quadanchor
