#include "finitegap/json_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "finitegap/errors.hpp"
#include "finitegap/interval_set.hpp"

namespace finitegap {

namespace {

using json = nlohmann::ordered_json;

// Strict-schema helper: every object level declares its allowed keys.
void check_keys(const json& j, const std::string& where,
                std::initializer_list<const char*> allowed) {
  if (!j.is_object()) {
    throw ValidationError("config: " + where + " must be an object");
  }
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ValidationError("config: unknown key \"" + item.key() + "\" in " +
                            where);
    }
  }
}

const json& require(const json& j, const std::string& where, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw ValidationError("config: " + where + " is missing \"" + key + "\"");
  }
  return *it;
}

double as_number(const json& j, const std::string& where) {
  if (!j.is_number()) {
    throw ValidationError("config: " + where + " must be a number");
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) {
    throw ValidationError("config: " + where + " must be finite");
  }
  return v;
}

int as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) {
    throw ValidationError("config: " + where + " must be an integer");
  }
  return j.get<int>();
}

std::vector<double> as_number_array(const json& j, const std::string& where) {
  if (!j.is_array()) {
    throw ValidationError("config: " + where + " must be an array");
  }
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(as_number(j[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

IntervalSet parse_set(const json& j) {
  check_keys(j, "\"set\"", {"bands", "cantor"});
  const bool has_bands = j.contains("bands");
  const bool has_cantor = j.contains("cantor");
  if (has_bands == has_cantor) {
    throw ValidationError(
        "config: \"set\" needs exactly one of \"bands\" or \"cantor\"");
  }
  if (has_bands) {
    const json& arr = j.at("bands");
    if (!arr.is_array() || arr.empty()) {
      throw ValidationError("config: \"set.bands\" must be a nonempty array");
    }
    std::vector<Band> bands;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "\"set.bands[" + std::to_string(i) + "]\"";
      const auto ends = as_number_array(arr[i], where);
      if (ends.size() != 2) {
        throw ValidationError("config: " + where + " must be [left, right]");
      }
      bands.push_back({ends[0], ends[1]});
    }
    return IntervalSet::from_bands(std::move(bands));
  }
  const json& c = j.at("cantor");
  check_keys(c, "\"set.cantor\"",
             {"length", "origin", "removed", "generation"});
  CantorSpec spec;
  spec.l0 = as_number(require(c, "\"set.cantor\"", "length"),
                      "\"set.cantor.length\"");
  spec.origin = c.contains("origin")
                    ? as_number(c.at("origin"), "\"set.cantor.origin\"")
                    : 0.0;
  spec.kappas = as_number_array(require(c, "\"set.cantor\"", "removed"),
                                "\"set.cantor.removed\"");
  const int generation =
      as_int(require(c, "\"set.cantor\"", "generation"),
             "\"set.cantor.generation\"");
  if (spec.l0 <= 0.0) {
    throw ValidationError("config: \"set.cantor.length\" must be positive");
  }
  for (double k : spec.kappas) {
    if (!(k > 0.0 && k < 1.0)) {
      throw ValidationError(
          "config: \"set.cantor.removed\" entries must lie in (0, 1)");
    }
  }
  if (generation < 0 || generation > static_cast<int>(spec.kappas.size())) {
    throw ValidationError(
        "config: \"set.cantor.generation\" must lie in [0, #removed]");
  }
  return make_cantor(spec, generation);
}

WeightSpec parse_weight(const json& j, std::size_t band_count) {
  check_keys(j, "\"weight\"",
             {"kind", "poles", "zeros", "bands", "x", "w", "normalize_mass"});
  const json& kind_j = require(j, "\"weight\"", "kind");
  if (!kind_j.is_string()) {
    throw ValidationError("config: \"weight.kind\" must be a string");
  }
  const std::string kind = kind_j.get<std::string>();

  auto reject_unless = [&](std::initializer_list<const char*> used) {
    for (const auto& item : j.items()) {
      if (item.key() == "kind") continue;
      bool ok = false;
      for (const char* key : used) {
        if (item.key() == key) {
          ok = true;
          break;
        }
      }
      if (!ok) {
        throw ValidationError("config: \"weight." + item.key() +
                              "\" does not apply to kind \"" + kind + "\"");
      }
    }
  };

  WeightSpec w;
  if (kind == "semicircle") {
    reject_unless({});
    w = WeightSpec::semicircle();
  } else if (kind == "arcsine") {
    reject_unless({});
    w = WeightSpec::arcsine();
  } else if (kind == "equilibrium") {
    reject_unless({});
    w = WeightSpec::equilibrium_of_bands();
  } else if (kind == "sigma0") {
    reject_unless({"poles", "zeros"});
    std::vector<double> poles, zeros;
    if (j.contains("poles")) poles = as_number_array(j.at("poles"), "\"weight.poles\"");
    if (j.contains("zeros")) zeros = as_number_array(j.at("zeros"), "\"weight.zeros\"");
    w = WeightSpec::sigma0(std::move(poles), std::move(zeros));
  } else if (kind == "generalized-jacobi") {
    reject_unless({"bands", "normalize_mass"});
    const json& arr = require(j, "\"weight\"", "bands");
    if (!arr.is_array() || arr.empty()) {
      throw ValidationError("config: \"weight.bands\" must be a nonempty array");
    }
    std::vector<BandWeight> per_band;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "\"weight.bands[" + std::to_string(i) + "]\"";
      check_keys(arr[i], where, {"exponent_left", "exponent_right", "smooth"});
      BandWeight bw;
      if (arr[i].contains("exponent_left")) {
        bw.exp_left = as_number(arr[i].at("exponent_left"), where);
      }
      if (arr[i].contains("exponent_right")) {
        bw.exp_right = as_number(arr[i].at("exponent_right"), where);
      }
      if (arr[i].contains("smooth")) {
        bw.smooth_cheb = as_number_array(arr[i].at("smooth"), where + ".smooth");
      }
      per_band.push_back(std::move(bw));
    }
    if (per_band.size() != 1 && per_band.size() != band_count) {
      throw ValidationError(
          "config: \"weight.bands\" must have one entry per set band (or a "
          "single entry applied to all bands)");
    }
    w = WeightSpec::generalized(std::move(per_band));
    if (j.contains("normalize_mass")) {
      const double m = as_number(j.at("normalize_mass"), "\"weight.normalize_mass\"");
      if (!(m > 0.0)) {
        throw ValidationError("config: \"weight.normalize_mass\" must be positive");
      }
      w.normalize_mass = m;
    }
  } else if (kind == "table") {
    reject_unless({"x", "w", "normalize_mass"});
    auto xs = as_number_array(require(j, "\"weight\"", "x"), "\"weight.x\"");
    auto ws = as_number_array(require(j, "\"weight\"", "w"), "\"weight.w\"");
    w = WeightSpec::sampled(std::move(xs), std::move(ws));
    if (j.contains("normalize_mass")) {
      const double m = as_number(j.at("normalize_mass"), "\"weight.normalize_mass\"");
      if (!(m > 0.0)) {
        throw ValidationError("config: \"weight.normalize_mass\" must be positive");
      }
      w.normalize_mass = m;
    }
  } else if (kind == "none") {
    reject_unless({});
    w = WeightSpec::none_weight();
  } else {
    throw ValidationError("config: unknown \"weight.kind\" \"" + kind + "\"");
  }
  return w;
}

std::vector<PointMass> parse_masses(const json& j) {
  if (!j.is_array()) {
    throw ValidationError("config: \"masses\" must be an array of [x, mass]");
  }
  std::vector<PointMass> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = "\"masses[" + std::to_string(i) + "]\"";
    const auto pair = as_number_array(j[i], where);
    if (pair.size() != 2) {
      throw ValidationError("config: " + where + " must be [x, mass]");
    }
    out.push_back({pair[0], pair[1]});
  }
  return out;
}

json weight_to_json(const WeightSpec& w) {
  json out = json::object();
  switch (w.kind) {
    case WeightKind::none:
      out["kind"] = "none";
      break;
    case WeightKind::equilibrium:
      out["kind"] = "equilibrium";
      break;
    case WeightKind::generalized_jacobi: {
      // The built-in families are generalized-Jacobi weights underneath;
      // echo the explicit per-band form so the canonical config is complete.
      out["kind"] = "generalized-jacobi";
      json bands = json::array();
      for (const auto& bw : w.per_band) {
        json b = json::object();
        b["exponent_left"] = bw.exp_left;
        b["exponent_right"] = bw.exp_right;
        b["smooth"] = bw.smooth_cheb;
        bands.push_back(std::move(b));
      }
      out["bands"] = std::move(bands);
      if (w.normalize_mass) out["normalize_mass"] = *w.normalize_mass;
      break;
    }
    case WeightKind::sigma0_phase:
      out["kind"] = "sigma0";
      out["poles"] = w.sigma0_poles;
      out["zeros"] = w.sigma0_zeros;
      break;
    case WeightKind::table:
      out["kind"] = "table";
      out["x"] = w.table_x;
      out["w"] = w.table_w;
      if (w.normalize_mass) out["normalize_mass"] = *w.normalize_mass;
      break;
  }
  return out;
}

}  // namespace

RunConfig parse_run_config(const nlohmann::ordered_json& doc) {
  check_keys(doc, "the config",
             {"schema", "set", "weight", "masses", "solver", "tolerances"});
  const json& schema = require(doc, "the config", "schema");
  if (!schema.is_string() || schema.get<std::string>() != kRunConfigSchema) {
    throw ValidationError(std::string("config: \"schema\" must be \"") +
                          kRunConfigSchema + "\"");
  }

  RunConfig cfg;
  const IntervalSet set = parse_set(require(doc, "the config", "set"));
  if (set.empty()) {
    throw ValidationError("config: the set must contain at least one band");
  }
  WeightSpec weight =
      parse_weight(require(doc, "the config", "weight"), set.band_count());
  std::vector<PointMass> masses;
  if (doc.contains("masses")) masses = parse_masses(doc.at("masses"));
  cfg.measure = build_measure(set, std::move(weight), std::move(masses));

  if (doc.contains("solver")) {
    const json& s = doc.at("solver");
    check_keys(s, "\"solver\"", {"order", "depth", "burn_in", "max_shift"});
    if (s.contains("order")) cfg.order = as_int(s.at("order"), "\"solver.order\"");
    if (s.contains("depth")) cfg.depth = as_int(s.at("depth"), "\"solver.depth\"");
    if (s.contains("burn_in")) {
      cfg.burn_in = as_int(s.at("burn_in"), "\"solver.burn_in\"");
    }
    if (s.contains("max_shift")) {
      cfg.max_shift = as_int(s.at("max_shift"), "\"solver.max_shift\"");
    }
  }
  if (cfg.order < 8) {
    throw ValidationError("config: \"solver.order\" must be >= 8");
  }
  if (cfg.depth < 4) {
    throw ValidationError("config: \"solver.depth\" must be >= 4");
  }
  if (cfg.burn_in < -1) {
    throw ValidationError("config: \"solver.burn_in\" must be >= -1");
  }
  if (cfg.max_shift < 1) {
    throw ValidationError("config: \"solver.max_shift\" must be >= 1");
  }

  if (doc.contains("tolerances")) {
    const json& t = doc.at("tolerances");
    check_keys(t, "\"tolerances\"",
               {"mass_balance", "orthonormality", "measure_sum"});
    if (t.contains("mass_balance")) {
      cfg.tol_mass_balance = as_number(t.at("mass_balance"), "\"tolerances.mass_balance\"");
    }
    if (t.contains("orthonormality")) {
      cfg.tol_orthonormality =
          as_number(t.at("orthonormality"), "\"tolerances.orthonormality\"");
    }
    if (t.contains("measure_sum")) {
      cfg.tol_measure_sum = as_number(t.at("measure_sum"), "\"tolerances.measure_sum\"");
    }
  }
  if (!(cfg.tol_mass_balance > 0.0) || !(cfg.tol_orthonormality > 0.0) ||
      !(cfg.tol_measure_sum > 0.0)) {
    throw ValidationError("config: tolerances must be positive");
  }

  json canon = json::object();
  canon["schema"] = kRunConfigSchema;
  canon["set"] = json::object();
  canon["set"]["bands"] = interval_set_to_json(cfg.measure.bands);
  canon["weight"] = weight_to_json(cfg.measure.weight);
  canon["masses"] = point_masses_to_json(cfg.measure.masses);
  canon["solver"] = {{"order", cfg.order},
                     {"depth", cfg.depth},
                     {"burn_in", cfg.burn_in},
                     {"max_shift", cfg.max_shift}};
  canon["tolerances"] = {{"mass_balance", cfg.tol_mass_balance},
                         {"orthonormality", cfg.tol_orthonormality},
                         {"measure_sum", cfg.tol_measure_sum}};
  cfg.canonical = std::move(canon);
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  const std::string text = read_file(path);
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("config: " + path + " is not valid JSON: " +
                          e.what());
  }
  return parse_run_config(doc);
}

nlohmann::ordered_json interval_set_to_json(const IntervalSet& set) {
  json out = json::array();
  for (const auto& band : set.bands()) {
    out.push_back(json::array({band.left, band.right}));
  }
  return out;
}

nlohmann::ordered_json point_masses_to_json(const std::vector<PointMass>& m) {
  json out = json::array();
  for (const auto& p : m) out.push_back(json::array({p.x, p.mass}));
  return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  std::error_code ec;
  if (target.has_parent_path()) {
    fs::create_directories(target.parent_path(), ec);
    if (ec) {
      throw ValidationError("cannot create directory " +
                            target.parent_path().string() + ": " + ec.message());
    }
  }
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    out.flush();
    if (!out) {
      throw ValidationError("cannot write " + tmp.string());
    }
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    throw ValidationError("cannot move " + tmp.string() + " into place: " +
                          ec.message());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw MissingInputError("cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace finitegap
