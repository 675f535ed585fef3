#pragma once
// JSON configuration ingestion for the command line driver.  Configs carry a
// versioned "schema" tag and are validated strictly: unknown keys anywhere in
// the document are rejected so that a stored config replays byte-identically
// against future versions or fails loudly.

#include <cstdint>
#include <string>

#include "finitegap/measure.hpp"
#include "json.hpp"

namespace finitegap {

inline constexpr const char* kRunConfigSchema = "finitegap-run/1";
inline constexpr const char* kRunReportSchema = "finitegap-report/1";
inline constexpr const char* kVerifyReportSchema = "finitegap-verify/1";

// A parsed run configuration with every default filled in.  `canonical` is
// the normalized JSON echo of the config (defaults applied, keys in schema
// order); it is embedded in the report so a report is self-describing.
struct RunConfig {
  SpectralMeasure measure;       // validated bands + weight + point masses
  int order = 256;               // cosine-series order of the density fits
  int depth = 120;               // number of recurrence coefficients q_n
  int burn_in = -1;              // almost-period window start, -1 -> depth/2
  int max_shift = 12;            // largest shift tried by the period scan
  double tol_mass_balance = 1e-8;    // bound on the Stieltjes mass check
  double tol_orthonormality = 1e-8;  // bound on the recurrence residual
  double tol_measure_sum = 1e-10;    // bound on |sum band measures - 1|
  nlohmann::ordered_json canonical;
};

// Parses and validates a config document.  Throws ValidationError on schema
// violations (wrong schema tag, unknown keys, malformed values, invariant
// failures such as depth < 4 or a non-positive tolerance).
RunConfig parse_run_config(const nlohmann::ordered_json& doc);

// Reads the file and parses it.  Missing file -> MissingInputError; JSON
// syntax errors and schema violations -> ValidationError.
RunConfig load_run_config(const std::string& path);

// Serialization helpers shared by the report writers.
nlohmann::ordered_json interval_set_to_json(const IntervalSet& set);
nlohmann::ordered_json point_masses_to_json(const std::vector<PointMass>& m);

// Writes `content` to `path` atomically (temp file in the same directory,
// then rename), creating parent directories as needed.
void write_file_atomic(const std::string& path, const std::string& content);

// Reads a whole file; MissingInputError when it does not exist.
std::string read_file(const std::string& path);

}  // namespace finitegap
