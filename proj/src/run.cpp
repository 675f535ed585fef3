#include "finitegap/run.hpp"

#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "finitegap/errors.hpp"
#include "finitegap/stieltjes.hpp"

namespace finitegap {

namespace {

using json = nlohmann::ordered_json;

constexpr double kPi = 3.14159265358979323846;

// Shortest round-trip decimal form, the same style the JSON writer uses, so
// CSV artifacts are exactly as reproducible as the report.
std::string fmt(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

json check_entry(double value, double bound) {
  json out = json::object();
  out["value"] = value;
  out["bound"] = bound;
  out["pass"] = value <= bound;
  return out;
}

// Density samples on a strictly interior theta grid, ascending in x per band.
json density_block(const PreparedMeasure& measure) {
  constexpr int kSamples = 200;
  json out = json::array();
  for (const auto& band : measure.prepared_bands()) {
    json entry = json::object();
    entry["band"] = json::array({band.m - band.h, band.m + band.h});
    json xs = json::array();
    json ws = json::array();
    for (int j = kSamples - 1; j >= 0; --j) {
      const double theta = (j + 0.5) * kPi / kSamples;
      const double x = band.m + band.h * std::cos(theta);
      xs.push_back(x);
      ws.push_back(measure.density(x));
    }
    entry["x"] = std::move(xs);
    entry["w"] = std::move(ws);
    out.push_back(std::move(entry));
  }
  return out;
}

json report_document(const RunConfig& config, const RunResult& result,
                     double mass_balance, double measure_sum_error) {
  const auto& eq = result.eq;
  const auto& c = result.coefficients.coefficients;
  const auto& diag = result.asymptotics;

  json rep = json::object();
  rep["schema"] = kRunReportSchema;
  rep["config"] = config.canonical;

  json set = json::object();
  set["bands"] = interval_set_to_json(eq.set);
  set["band_count"] = eq.set.band_count();
  set["gap_count"] = eq.set.band_count() - 1;
  set["diameter"] = eq.set.diameter();
  set["total_length"] = total_length(eq.set);
  rep["set"] = std::move(set);

  json pot = json::object();
  pot["capacity"] = eq.capacity;
  pot["log_capacity"] = eq.log_capacity;
  pot["order"] = eq.order;
  pot["band_measures"] = eq.band_measures;
  pot["gap_zeros"] = eq.gap_zeros;
  pot["frequencies"] = diag.frequency.omegas;
  rep["potential"] = std::move(pot);

  json meas = json::object();
  meas["ac_mass"] = result.measure.ac_mass();
  meas["atom_count"] = result.measure.atoms().size();
  meas["atoms"] = point_masses_to_json(result.measure.atoms());
  meas["total_mass"] = result.measure.total_mass();
  rep["measure"] = std::move(meas);

  json coef = json::object();
  coef["depth"] = config.depth;
  coef["residual"] = result.coefficients.residual;
  coef["nodes_per_band"] = result.coefficients.nodes_per_band;
  coef["compensated"] = result.coefficients.compensated;
  coef["p"] = c.p;
  coef["q"] = c.q;
  rep["coefficients"] = std::move(coef);

  json asym = json::object();
  asym["widom"] = diag.widom_factors;
  asym["burn_in"] = diag.diagnostics.burn_in;
  json cands = json::array();
  for (const auto& cand : diag.diagnostics.candidates) {
    json entry = json::object();
    entry["shift"] = cand.period;
    entry["torus_distance"] = cand.torus_distance;
    entry["deviation_p"] = cand.sup_deviation_p;
    entry["deviation_q"] = cand.sup_deviation_q;
    cands.push_back(std::move(entry));
  }
  asym["candidates"] = std::move(cands);
  if (!diag.szego_checks.empty()) {
    json sz = json::object();
    sz["product_error"] = diag.szego_product_error;
    json pts = json::array();
    for (const auto& pt : diag.szego_checks) {
      json entry = json::object();
      entry["zeta"] = json::array({pt.zeta.real(), pt.zeta.imag()});
      entry["error"] = pt.error;
      pts.push_back(std::move(entry));
    }
    sz["points"] = std::move(pts);
    asym["szego"] = std::move(sz);
  } else {
    asym["szego"] = nullptr;
  }
  asym["notes"] = diag.notes;
  rep["asymptotics"] = std::move(asym);

  rep["density"] = density_block(result.measure);

  json checks = json::object();
  checks["mass_balance"] = check_entry(mass_balance, config.tol_mass_balance);
  checks["orthonormality"] =
      check_entry(result.coefficients.residual, config.tol_orthonormality);
  checks["measure_sum"] =
      check_entry(measure_sum_error, config.tol_measure_sum);
  rep["checks"] = std::move(checks);
  return rep;
}

std::string csv_widom(const json& rep) {
  const auto& w = rep.at("asymptotics").at("widom");
  std::string out = "n,W\n";
  for (std::size_t n = 0; n < w.size(); ++n) {
    out += std::to_string(n) + "," + fmt(w[n].get<double>()) + "\n";
  }
  return out;
}

std::string csv_coefficients(const json& rep) {
  const auto& p = rep.at("coefficients").at("p");
  const auto& q = rep.at("coefficients").at("q");
  std::string out = "n,p,q\n";
  for (std::size_t n = 0; n < p.size(); ++n) {
    out += std::to_string(n) + "," + fmt(p[n].get<double>()) + ",";
    if (n < q.size()) out += fmt(q[n].get<double>());
    out += "\n";
  }
  return out;
}

std::string csv_density(const json& rep) {
  std::string out = "x,w\n";
  for (const auto& band : rep.at("density")) {
    const auto& xs = band.at("x");
    const auto& ws = band.at("w");
    for (std::size_t i = 0; i < xs.size(); ++i) {
      out += fmt(xs[i].get<double>()) + "," + fmt(ws[i].get<double>()) + "\n";
    }
  }
  return out;
}

std::string dat_widom(const json& rep) {
  const auto& w = rep.at("asymptotics").at("widom");
  std::string out = "# n W\n";
  for (std::size_t n = 0; n < w.size(); ++n) {
    out += std::to_string(n) + " " + fmt(w[n].get<double>()) + "\n";
  }
  return out;
}

std::string dat_coefficients(const json& rep) {
  const auto& p = rep.at("coefficients").at("p");
  const auto& q = rep.at("coefficients").at("q");
  std::string out = "# n p\n";
  for (std::size_t n = 0; n < p.size(); ++n) {
    out += std::to_string(n) + " " + fmt(p[n].get<double>()) + "\n";
  }
  out += "\n\n# n q\n";
  for (std::size_t n = 0; n < q.size(); ++n) {
    out += std::to_string(n) + " " + fmt(q[n].get<double>()) + "\n";
  }
  return out;
}

std::string dat_density(const json& rep) {
  std::string out;
  bool first = true;
  for (const auto& band : rep.at("density")) {
    if (!first) out += "\n\n";
    first = false;
    out += "# band [" + fmt(band.at("band")[0].get<double>()) + ", " +
           fmt(band.at("band")[1].get<double>()) + "]\n# x w\n";
    const auto& xs = band.at("x");
    const auto& ws = band.at("w");
    for (std::size_t i = 0; i < xs.size(); ++i) {
      out += fmt(xs[i].get<double>()) + " " + fmt(ws[i].get<double>()) + "\n";
    }
  }
  if (out.empty()) out = "# empty density\n";
  return out;
}

json load_report(const std::string& report_path) {
  const std::string text = read_file(report_path);
  json rep;
  try {
    rep = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("report: " + report_path + " is not valid JSON: " +
                          e.what());
  }
  if (!rep.is_object() || !rep.contains("schema") ||
      rep.at("schema") != kRunReportSchema) {
    throw ValidationError("report: " + report_path +
                          " does not carry the expected schema tag");
  }
  return rep;
}

}  // namespace

RunResult run_pipeline(const RunConfig& config) {
  RunResult result;
  result.eq = equilibrium(config.measure.bands);
  result.measure = PreparedMeasure::prepare(config.measure, config.order);
  result.coefficients = coefficients_for_measure(result.measure, config.depth);
  result.asymptotics =
      build_report(result.measure, result.eq, result.coefficients.coefficients,
                   config.burn_in, config.max_shift);

  const StieltjesFunction r(result.measure);
  const double mass_balance = mass_balance_residual(r);
  double sum = 0.0;
  for (double m : result.eq.band_measures) sum += m;
  const double measure_sum_error = std::abs(sum - 1.0);

  result.report = report_document(config, result, mass_balance,
                                  measure_sum_error);
  return result;
}

void write_run_artifacts(const RunResult& result, const std::string& out_dir) {
  const std::string base = out_dir.empty() ? std::string(".") : out_dir;
  write_file_atomic(base + "/report.json", result.report.dump(2) + "\n");
  write_file_atomic(base + "/coefficients.csv", csv_coefficients(result.report));
  write_file_atomic(base + "/widom.csv", csv_widom(result.report));
  write_file_atomic(base + "/density.csv", csv_density(result.report));
}

std::string export_artifact(const std::string& report_path,
                            const std::string& format, const std::string& what,
                            const std::string& out_dir) {
  if (format != "csv" && format != "gnuplot") {
    throw UsageError("export: unknown format \"" + format +
                     "\" (expected csv or gnuplot)");
  }
  if (what != "widom" && what != "coefficients" && what != "density") {
    throw UsageError("export: unknown series \"" + what +
                     "\" (expected widom, coefficients or density)");
  }
  const json rep = load_report(report_path);
  std::string content;
  if (format == "csv") {
    if (what == "widom") content = csv_widom(rep);
    if (what == "coefficients") content = csv_coefficients(rep);
    if (what == "density") content = csv_density(rep);
  } else {
    if (what == "widom") content = dat_widom(rep);
    if (what == "coefficients") content = dat_coefficients(rep);
    if (what == "density") content = dat_density(rep);
  }
  const std::string base = out_dir.empty() ? std::string(".") : out_dir;
  const std::string path =
      base + "/" + what + (format == "csv" ? ".csv" : ".dat");
  write_file_atomic(path, content);
  return path;
}

}  // namespace finitegap
