#pragma once
// Pipeline orchestration for the command line driver: configuration ->
// equilibrium data -> prepared measure -> recurrence coefficients ->
// asymptotic diagnostics, plus deterministic artifact writers.  Reports are
// plain JSON documents whose bytes depend only on the config, so reruns of
// the same config produce identical files.

#include <string>

#include "finitegap/asymptotics.hpp"
#include "finitegap/equilibrium.hpp"
#include "finitegap/jacobi.hpp"
#include "finitegap/json_io.hpp"

namespace finitegap {

struct RunResult {
  EquilibriumData eq;
  PreparedMeasure measure;
  CoefficientRun coefficients;
  AsymptoticsReport asymptotics;
  nlohmann::ordered_json report;  // the full report document
};

// Runs the whole pipeline.  Throws ValidationError/NumericalError with the
// usual exit-code mapping on failure.
RunResult run_pipeline(const RunConfig& config);

// Writes report.json, coefficients.csv, widom.csv and density.csv into
// out_dir (created if needed).  All writes are atomic (temp + rename).
void write_run_artifacts(const RunResult& result, const std::string& out_dir);

// Re-derives a sequence artifact from a previously written report.json.
//   format: "csv" (comma separated, header row) or
//           "gnuplot" (space separated .dat, one block per band/series)
//   what:   "widom", "coefficients" or "density"
// Returns the path written.  Missing report -> MissingInputError (exit 66);
// unknown format/what -> UsageError (exit 64).
std::string export_artifact(const std::string& report_path,
                            const std::string& format, const std::string& what,
                            const std::string& out_dir);

}  // namespace finitegap
