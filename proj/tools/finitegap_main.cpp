// Command line driver: `run` executes a JSON config through the full
// pipeline (set -> potential theory -> spectral measure -> recurrence
// coefficients -> asymptotic diagnostics) and writes deterministic artifact
// files; `verify` runs an acceptance suite; `export` converts a written
// report into CSV or gnuplot-ready data.
//
// Exit codes: 0 ok, 2 validation failure, 3 numerical failure, 64 usage
// error, 66 missing input.  Every failure prints a one-line JSON error
// object on standard error.

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "finitegap/errors.hpp"
#include "finitegap/json_io.hpp"
#include "finitegap/run.hpp"
#include "finitegap/verify.hpp"
#include "json.hpp"

namespace {

const char* kind_for(int code) {
  switch (code) {
    case 2:
      return "validation";
    case 3:
      return "numerical";
    case 64:
      return "usage";
    case 66:
      return "missing-input";
    default:
      return "error";
  }
}

void emit_error(int code, const std::string& message) {
  nlohmann::ordered_json err;
  err["error"] = {{"exit_code", code},
                  {"kind", kind_for(code)},
                  {"message", message}};
  std::cerr << err.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "finitegap: potential theory, spectral measures and recurrence "
      "asymptotics on unions of real intervals"};
  app.require_subcommand(1);

  std::string out_dir = ".";
  int threads = 1;
  std::uint64_t seed = finitegap::kDefaultSeed;
  app.add_option("--out", out_dir, "directory for artifact files")
      ->capture_default_str();
  app.add_option("--threads", threads,
                 "worker threads for the verify suites (run output never "
                 "depends on scheduling)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seed", seed,
                 "seed for the randomized property-test sampling; never "
                 "changes reported numbers");

  auto* run_cmd =
      app.add_subcommand("run", "execute a run configuration and write "
                                "report.json plus CSV artifacts");
  run_cmd->fallthrough();
  std::string config_path;
  run_cmd->add_option("config", config_path, "path to a run config (JSON)")
      ->required();

  auto* verify_cmd =
      app.add_subcommand("verify", "run an acceptance suite (quick or full)");
  verify_cmd->fallthrough();
  std::string suite;
  verify_cmd->add_option("suite", suite, "suite name: quick or full")
      ->required();

  auto* export_cmd = app.add_subcommand(
      "export", "convert a written report.json into csv or gnuplot data");
  export_cmd->fallthrough();
  std::string format;
  std::string what;
  export_cmd->add_option("format", format, "csv or gnuplot")->required();
  export_cmd->add_option("what", what, "widom, coefficients or density")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error(64, e.what());
    return 64;
  }

  try {
    if (run_cmd->parsed()) {
      const finitegap::RunConfig cfg = finitegap::load_run_config(config_path);
      const finitegap::RunResult result = finitegap::run_pipeline(cfg);
      finitegap::write_run_artifacts(result, out_dir);
      std::cout << "bands: " << result.eq.set.band_count()
                << "  capacity: " << result.eq.capacity
                << "  coefficients: " << cfg.depth
                << "  residual: " << result.coefficients.residual << "\n"
                << "wrote " << out_dir << "/report.json, coefficients.csv, "
                << "widom.csv, density.csv\n";
    } else if (verify_cmd->parsed()) {
      const auto results = finitegap::run_suite(suite, seed, threads);
      std::cout << finitegap::format_verify_table(results);
      const auto report = finitegap::verify_report(results, suite, seed);
      finitegap::write_file_atomic(out_dir + "/verify_report.json",
                                   report.dump(2) + "\n");
      std::cout << "wrote " << out_dir << "/verify_report.json\n";
      if (!report.at("pass").get<bool>()) {
        std::cout << "verify: FAILED criteria present\n";
        return 1;
      }
      std::cout << "verify: all criteria passed\n";
    } else if (export_cmd->parsed()) {
      const std::string path = finitegap::export_artifact(
          out_dir + "/report.json", format, what, out_dir);
      std::cout << "wrote " << path << "\n";
    }
  } catch (const finitegap::Error& e) {
    emit_error(e.exit_code(), e.what());
    return e.exit_code();
  } catch (const std::exception& e) {
    emit_error(3, std::string("internal error: ") + e.what());
    return 3;
  }
  return 0;
}
