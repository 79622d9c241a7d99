#include "tli_app/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace tli::app {
namespace {

using nlohmann::json;

constexpr double kPlanck = 6.62607015e-34;      // J s
constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError("config error: " + field + ": " + what);
}

void reject_unknown(const json& obj, const std::string& where, const std::set<std::string>& known) {
  if (!obj.is_object()) fail(where.empty() ? "<root>" : where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!known.contains(key)) fail(where.empty() ? key : where + "." + key, "unknown key");
  }
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number");
  return v.get<double>();
}

std::size_t count(const json& v, const std::string& field) {
  if (!v.is_number_integer() || v.get<long long>() < 0) fail(field, "expected a non-negative integer");
  return v.get<std::size_t>();
}

// Either a list of numbers or {"start", "stop", "count"}.
std::vector<double> grid(const json& v, const std::string& field) {
  if (v.is_number()) return {v.get<double>()};
  if (v.is_array()) {
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], field + "[" + std::to_string(i) + "]"));
    return out;
  }
  reject_unknown(v, field, {"start", "stop", "count"});
  for (const char* k : {"start", "stop", "count"}) {
    if (!v.contains(k)) fail(field + "." + k, "missing");
  }
  const std::size_t n = count(v["count"], field + ".count");
  if (n == 0) fail(field + ".count", "must be >= 1");
  return linspace(number(v["start"], field + ".start"), number(v["stop"], field + ".stop"), n);
}

void require_sorted_positive(const std::vector<double>& g, const std::string& field) {
  if (g.empty()) fail(field, "grid is empty");
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(g[i] > 0.0) || !std::isfinite(g[i])) fail(field, "values must be finite and > 0");
    if (i > 0 && !(g[i] > g[i - 1])) fail(field, "values must be strictly increasing");
  }
}

void require_non_negative(const std::vector<double>& v, const std::string& field) {
  if (v.empty()) fail(field, "list is empty");
  for (double x : v) {
    if (!(x >= 0.0) || !std::isfinite(x)) fail(field, "values must be finite and >= 0");
  }
}

}  // namespace

double PhysicalSeparation::de_broglie_wavelength_m() const {
  return kPlanck / (mass_amu * kAtomicMassUnit * velocity_m_s);
}

double PhysicalSeparation::talbot_length_m() const {
  const double lambda_l = laser_wavelength_nm * 1e-9;
  return lambda_l * lambda_l / (4.0 * de_broglie_wavelength_m());
}

RunConfig RunConfig::defaults() {
  RunConfig c;
  c.xi_grid = linspace(0.1, 4.5, 441);
  c.wmax_n0 = {1, 2, 3, 4, 5, 7, 10, 15, 20, 30, 40, 50, 70, 100, 150, 200};
  return c;
}

std::vector<double> RunConfig::separations() const {
  if (!physical) return xi_grid;
  const double xi_t = physical->talbot_length_m();
  std::vector<double> out;
  out.reserve(physical->separation_m.size());
  for (double l : physical->separation_m) out.push_back(l / xi_t);
  return out;
}

WitnessSetup RunConfig::setup_for(double n0) const {
  WitnessSetup s = WitnessSetup::symmetric(n0, n0_third);
  s.beta_first = beta.first;
  s.beta_a = beta.a;
  s.beta_b = beta.b;
  s.beta_third = beta.third;
  if (!second_colour) s.n0_second_b = 0.0;
  return s;
}

void RunConfig::validate() const {
  require_non_negative(n0_second, "n0_second");
  if (!(n0_third >= 0.0)) fail("n0_third", "must be >= 0");
  for (double b : {beta.first, beta.a, beta.b, beta.third}) {
    if (!std::isfinite(b)) fail("beta", "values must be finite");
  }
  if (physical) {
    const auto& p = *physical;
    if (!(p.mass_amu > 0.0)) fail("separation.physical.mass_amu", "must be > 0");
    if (!(p.velocity_m_s > 0.0)) fail("separation.physical.velocity_m_s", "must be > 0");
    if (!(p.laser_wavelength_nm > 0.0)) fail("separation.physical.laser_wavelength_nm", "must be > 0");
    require_sorted_positive(p.separation_m, "separation.physical.separation_m");
  } else {
    require_sorted_positive(xi_grid, "separation.xi_over_xiT");
  }
  if (grating_samples < 1024) fail("gratings.samples", "need at least 1024 samples per period");
  require_non_negative(wmax_n0, "wmax.n0_second");
  require_non_negative(wmax_n0_third, "wmax.n0_third");
  if (!(wmax_xi_low > 0.0 && wmax_xi_high > wmax_xi_low)) fail("wmax.window", "need 0 < low < high");
  if (wmax_grid_points < 3) fail("wmax.grid_points", "need at least 3 points");
  require_non_negative(invasivity_n0, "invasivity.n0");
  for (double n : invasivity_n0) {
    if (!(n > 0.0)) fail("invasivity.n0", "values must be > 0");
  }
  if (!(transmission_threshold > 0.0 && transmission_threshold < 1.0)) {
    fail("invasivity.transmission_threshold", "must lie in (0, 1)");
  }
  if (invasivity_points < 2) fail("invasivity.profile_points", "need at least 2 points");
  require_non_negative(validate_n0, "validate.n0_second");
  require_sorted_positive(validate_xi, "validate.xi_over_xiT");
  if (!(oracle_tolerance > 0.0)) fail("validate.tolerance", "must be > 0");
}

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config error: malformed JSON: ") + e.what());
  }
  reject_unknown(doc, "", {"schema_version", "n0_second", "n0_third", "beta", "second_colour", "separation",
                           "gratings", "wmax", "invasivity", "validate"});
  if (!doc.contains("schema_version")) fail("schema_version", "missing");
  if (!doc["schema_version"].is_number_integer() || doc["schema_version"].get<int>() != kSchemaVersion) {
    fail("schema_version", "unsupported (expected " + std::to_string(kSchemaVersion) + ")");
  }

  RunConfig c = RunConfig::defaults();
  if (doc.contains("n0_second")) c.n0_second = grid(doc["n0_second"], "n0_second");
  if (doc.contains("n0_third")) c.n0_third = number(doc["n0_third"], "n0_third");
  if (doc.contains("second_colour")) {
    if (!doc["second_colour"].is_boolean()) fail("second_colour", "expected true or false");
    c.second_colour = doc["second_colour"].get<bool>();
  }
  if (doc.contains("beta")) {
    const auto& b = doc["beta"];
    if (b.is_number()) {
      c.beta.first = c.beta.a = c.beta.b = c.beta.third = b.get<double>();
    } else {
      reject_unknown(b, "beta", {"first", "a", "b", "third"});
      if (b.contains("first")) c.beta.first = number(b["first"], "beta.first");
      if (b.contains("a")) c.beta.a = number(b["a"], "beta.a");
      if (b.contains("b")) c.beta.b = number(b["b"], "beta.b");
      if (b.contains("third")) c.beta.third = number(b["third"], "beta.third");
    }
  }
  if (doc.contains("separation")) {
    const auto& s = doc["separation"];
    reject_unknown(s, "separation", {"xi_over_xiT", "physical"});
    const bool has_xi = s.contains("xi_over_xiT");
    const bool has_phys = s.contains("physical");
    if (has_xi == has_phys) fail("separation", "give exactly one of xi_over_xiT or physical");
    if (has_xi) c.xi_grid = grid(s["xi_over_xiT"], "separation.xi_over_xiT");
    if (has_phys) {
      const auto& p = s["physical"];
      const std::string at = "separation.physical";
      reject_unknown(p, at, {"mass_amu", "velocity_m_s", "laser_wavelength_nm", "separation_m"});
      PhysicalSeparation ps;
      for (const char* k : {"mass_amu", "velocity_m_s", "laser_wavelength_nm", "separation_m"}) {
        if (!p.contains(k)) fail(at + "." + k, "missing");
      }
      ps.mass_amu = number(p["mass_amu"], at + ".mass_amu");
      ps.velocity_m_s = number(p["velocity_m_s"], at + ".velocity_m_s");
      ps.laser_wavelength_nm = number(p["laser_wavelength_nm"], at + ".laser_wavelength_nm");
      ps.separation_m = grid(p["separation_m"], at + ".separation_m");
      c.physical = ps;
      c.xi_grid.clear();
    }
  }
  if (doc.contains("gratings")) {
    const auto& g = doc["gratings"];
    reject_unknown(g, "gratings", {"samples"});
    if (g.contains("samples")) c.grating_samples = count(g["samples"], "gratings.samples");
  }
  if (doc.contains("wmax")) {
    const auto& w = doc["wmax"];
    reject_unknown(w, "wmax", {"n0_second", "n0_third", "window", "grid_points"});
    if (w.contains("n0_second")) c.wmax_n0 = grid(w["n0_second"], "wmax.n0_second");
    if (w.contains("n0_third")) c.wmax_n0_third = grid(w["n0_third"], "wmax.n0_third");
    if (w.contains("window")) {
      const auto& win = w["window"];
      if (!win.is_array() || win.size() != 2) fail("wmax.window", "expected [low, high]");
      c.wmax_xi_low = number(win[0], "wmax.window[0]");
      c.wmax_xi_high = number(win[1], "wmax.window[1]");
    }
    if (w.contains("grid_points")) c.wmax_grid_points = count(w["grid_points"], "wmax.grid_points");
  }
  if (doc.contains("invasivity")) {
    const auto& v = doc["invasivity"];
    reject_unknown(v, "invasivity", {"n0", "transmission_threshold", "profile_points"});
    if (v.contains("n0")) c.invasivity_n0 = grid(v["n0"], "invasivity.n0");
    if (v.contains("transmission_threshold")) {
      c.transmission_threshold = number(v["transmission_threshold"], "invasivity.transmission_threshold");
    }
    if (v.contains("profile_points")) c.invasivity_points = count(v["profile_points"], "invasivity.profile_points");
  }
  if (doc.contains("validate")) {
    const auto& v = doc["validate"];
    reject_unknown(v, "validate", {"n0_second", "xi_over_xiT", "grid_points", "k_samples", "tolerance"});
    if (v.contains("n0_second")) c.validate_n0 = grid(v["n0_second"], "validate.n0_second");
    if (v.contains("xi_over_xiT")) c.validate_xi = grid(v["xi_over_xiT"], "validate.xi_over_xiT");
    if (v.contains("grid_points")) c.oracle_grid_points = count(v["grid_points"], "validate.grid_points");
    if (v.contains("k_samples")) c.oracle_k_samples = count(v["k_samples"], "validate.k_samples");
    if (v.contains("tolerance")) c.oracle_tolerance = number(v["tolerance"], "validate.tolerance");
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config error: cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string to_json(const RunConfig& c) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["n0_second"] = c.n0_second;
  j["n0_third"] = c.n0_third;
  j["beta"] = {{"first", c.beta.first}, {"a", c.beta.a}, {"b", c.beta.b}, {"third", c.beta.third}};
  j["second_colour"] = c.second_colour;
  if (c.physical) {
    const auto& p = *c.physical;
    j["separation"]["physical"] = {{"mass_amu", p.mass_amu},
                                   {"velocity_m_s", p.velocity_m_s},
                                   {"laser_wavelength_nm", p.laser_wavelength_nm},
                                   {"separation_m", p.separation_m}};
  } else {
    j["separation"]["xi_over_xiT"] = c.xi_grid;
  }
  j["gratings"] = {{"samples", c.grating_samples}};
  j["wmax"] = {{"n0_second", c.wmax_n0},
               {"n0_third", c.wmax_n0_third},
               {"window", {c.wmax_xi_low, c.wmax_xi_high}},
               {"grid_points", c.wmax_grid_points}};
  j["invasivity"] = {{"n0", c.invasivity_n0},
                     {"transmission_threshold", c.transmission_threshold},
                     {"profile_points", c.invasivity_points}};
  j["validate"] = {{"n0_second", c.validate_n0},
                   {"xi_over_xiT", c.validate_xi},
                   {"grid_points", c.oracle_grid_points},
                   {"k_samples", c.oracle_k_samples},
                   {"tolerance", c.oracle_tolerance}};
  return j.dump(2);
}

}  // namespace tli::app
