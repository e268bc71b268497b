#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <limits>
#include <string>

#include "CLI11.hpp"
#include "quadanchor/errors.hpp"
#include "quadanchor/examples.hpp"
#include "quadanchor/report_io.hpp"
#include "quadanchor/solver.hpp"

namespace qa = quadanchor;

namespace {

constexpr int kExitFinite = 0;
constexpr int kExitFamily = 2;
constexpr int kExitInvalid = 3;
constexpr int kExitUsage = 4;

int classification_exit(qa::Classification c) {
  switch (c) {
    case qa::Classification::Finite: return kExitFinite;
    case qa::Classification::PositiveDimensional: return kExitFamily;
    case qa::Classification::InvalidInput: return kExitInvalid;
  }
  return kExitInvalid;
}

qa::ReportDocument timed_solve(const qa::Configuration& config,
                               const qa::ToleranceSettings& tol, bool verbose) {
  const auto t0 = std::chrono::steady_clock::now();
  qa::SolveReport rep = qa::solve(config, tol);
  const auto t1 = std::chrono::steady_clock::now();
  if (verbose)
    for (const std::string& d : rep.diagnostics) std::cerr << "[diag] " << d << "\n";
  qa::ReportDocument doc;
  doc.report = std::move(rep);
  doc.input = config;
  doc.timing_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return doc;
}

void emit_report(const qa::ReportDocument& doc, const std::string& format) {
  std::cout << (format == "csv" ? qa::report_to_csv(doc) : qa::report_to_json(doc));
}

int run_validate(const std::string& path) {
  qa::ConfigDocument doc;
  try {
    doc = qa::load_config_file(path);
  } catch (const qa::input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    doc.config.check_basic();
  } catch (const qa::input_error& e) {
    std::cout << "configuration invalid: " << e.what() << "\n";
    return kExitInvalid;
  }
  const qa::ValidationReport rep = qa::validate(doc.config);
  std::cout << "condition (i), no anchor triple collinear: "
            << (rep.condition_i_ok ? "PASS" : "FAIL") << "\n";
  std::cout << "condition (ii), no constraint-circle triple concurrent: "
            << (rep.condition_ii_ok ? "PASS" : "FAIL") << "\n";
  for (const auto& t : rep.violating_triples)
    std::cout << "violating triple: " << qa::label_name(t[0])
              << qa::label_name(t[1]) << qa::label_name(t[2]) << "\n";
  if (!rep.details.empty()) std::cout << rep.details << "\n";
  return rep.ok() ? kExitFinite : kExitInvalid;
}

double pair_deviation(const qa::ExamplePair& e, const qa::SolutionPair& s) {
  double d = 0.0;
  for (int i = 0; i < 2; ++i) {
    d = std::max(d, std::abs(e.X[i] - s.X[i]));
    d = std::max(d, std::abs(e.Y[i] - s.Y[i]));
  }
  return d;
}

int run_example(const std::string& name, const std::string& format,
                const qa::ToleranceSettings& tol, bool verbose) {
  if (name != "square" && name != "collinear") {
    std::cerr << "unknown example \"" << name
              << "\" (available: square, collinear)\n";
    return kExitUsage;
  }

  const qa::Configuration config =
      name == "square" ? qa::example_square() : qa::example_collinear();
  const qa::ReportDocument doc = timed_solve(config, tol, verbose);

  if (name == "square") {
    const auto expected = qa::example_square_pairs();
    std::cerr << "expected " << expected.size() << " pairs, solver reported "
              << doc.report.solutions.size() << "\n";
    double worst = 0.0;
    for (size_t i = 0; i < expected.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      size_t at = 0;
      for (size_t j = 0; j < doc.report.solutions.size(); ++j) {
        const double d = pair_deviation(expected[i], doc.report.solutions[j]);
        if (d < best) { best = d; at = j; }
      }
      std::cerr << "expected[" << i << "] -> solution[" << at
                << "] deviation " << best << "\n";
      worst = std::max(worst, best);
    }
    std::cerr << "maximum deviation: " << worst << "\n";
  } else {
    const auto lifts = qa::example_collinear_lifts(100);
    double worst = 0.0;
    for (size_t i = 0; i < lifts.size(); ++i) {
      const double r = qa::quartic_residual(config, lifts[i].X, lifts[i].Y);
      std::cerr << "curve sample[" << i << "] residual " << r << "\n";
      worst = std::max(worst, r);
    }
    std::cerr << "maximum curve-sample residual: " << worst << "\n";
  }

  emit_report(doc, format);
  return classification_exit(doc.report.classification);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver for the planar four-anchor inverse-square system"};
  app.set_version_flag("--version", qa::kToolVersion);
  app.require_subcommand(1);

  std::string input_path, example_name;
  std::string format = "json";
  double tol_accept = 0.0, tol_real = 0.0;
  long long seed = 0;
  bool verbose = false;

  CLI::App* validate = app.add_subcommand(
      "validate", "Check the anchor and circle genericity conditions");
  validate->add_option("--input", input_path, "configuration file")->required();

  CLI::App* solve = app.add_subcommand(
      "solve", "Classify the system and enumerate its solution pairs");
  solve->add_option("--input", input_path, "configuration file")->required();
  solve->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  solve->add_option("--tol-accept", tol_accept, "residual acceptance tolerance")
      ->check(CLI::PositiveNumber);
  solve->add_option("--tol-real", tol_real, "imaginary-part realness tolerance")
      ->check(CLI::PositiveNumber);
  solve->add_option("--seed", seed, "seed recorded for reproducibility")
      ->check(CLI::NonNegativeNumber);
  solve->add_flag("--verbose", verbose, "stream elimination diagnostics");

  CLI::App* example = app.add_subcommand(
      "example", "Run a built-in configuration and diff against expectations");
  example->add_option("name", example_name, "square or collinear")->required();
  example->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  example->add_option("--tol-accept", tol_accept, "residual acceptance tolerance")
      ->check(CLI::PositiveNumber);
  example->add_option("--tol-real", tol_real, "imaginary-part realness tolerance")
      ->check(CLI::PositiveNumber);
  example->add_flag("--verbose", verbose, "stream elimination diagnostics");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (app.got_subcommand(validate)) return run_validate(input_path);

    if (app.got_subcommand(solve)) {
      qa::ConfigDocument doc;
      try {
        doc = qa::load_config_file(input_path);
      } catch (const qa::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
      }
      if (solve->count("--tol-accept")) doc.tolerances.tol_accept = tol_accept;
      if (solve->count("--tol-real")) doc.tolerances.tol_real = tol_real;
      if (solve->count("--seed")) doc.tolerances.seed = unsigned(seed);
      const qa::ReportDocument out = timed_solve(doc.config, doc.tolerances, verbose);
      emit_report(out, format);
      return classification_exit(out.report.classification);
    }

    qa::ToleranceSettings tol;
    if (example->count("--tol-accept")) tol.tol_accept = tol_accept;
    if (example->count("--tol-real")) tol.tol_real = tol_real;
    return run_example(example_name, format, tol, verbose);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
