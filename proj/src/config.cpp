#include "gaugestrata/config.hpp"

#include "gaugestrata/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <regex>
#include <sstream>

namespace gaugestrata {

using nlohmann::json;

KernelTolerance RunConfig::kernel_tolerance() const
{
  return {tolerances.kernel_eigenvalue, tolerances.kernel_projection};
}

QuadratureConfig RunConfig::quadrature() const
{
  return {tolerances.quadrature_rel, tolerances.quadrature_max_evaluations, kernel_tolerance()};
}

namespace config {

namespace {

void allow_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys)
{
  for (const auto& [k, v] : j.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; })) {
      throw ConfigError(where + ": unknown key \"" + k + "\"");
    }
  }
}

const json& require_object(const json& j, const std::string& where)
{
  if (!j.is_object()) {
    throw ConfigError(where + ": expected an object");
  }
  return j;
}

double number(const json& j, const std::string& name)
{
  if (!j.is_number()) {
    throw ConfigError(name + ": expected a number");
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) {
    throw ConfigError(name + ": must be finite");
  }
  return v;
}

double positive(const json& j, const std::string& name)
{
  const double v = number(j, name);
  if (!(v > 0.0)) {
    throw ConfigError(name + ": must be > 0");
  }
  return v;
}

long long integer(const json& j, const std::string& name)
{
  if (!j.is_number_integer()) {
    throw ConfigError(name + ": expected an integer");
  }
  return j.get<long long>();
}

std::string text(const json& j, const std::string& name)
{
  if (!j.is_string()) {
    throw ConfigError(name + ": expected a string");
  }
  return j.get<std::string>();
}

std::vector<double> number_list(const json& j, const std::string& name)
{
  if (!j.is_array()) {
    throw ConfigError(name + ": expected an array of numbers");
  }
  std::vector<double> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(number(j[k], name + "[" + std::to_string(k) + "]"));
  }
  return out;
}

GroupId parse_group(const std::string& s)
{
  std::string lower = s;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "su2") {
    return GroupId::SU2;
  }
  if (lower == "su3") {
    return GroupId::SU3;
  }
  throw ConfigError("group: expected \"su2\" or \"su3\", got \"" + s + "\"");
}

HolonomyMode parse_mode(const std::string& s)
{
  if (s == "curvature") {
    return HolonomyMode::CurvatureSpan;
  }
  if (s == "ambrose-singer") {
    return HolonomyMode::AmbroseSinger;
  }
  throw ConfigError("mode: expected \"curvature\" or \"ambrose-singer\", got \"" + s + "\"");
}

Ansatz require_ansatz(const std::string& s, const std::string& name)
{
  const auto a = parse_ansatz(s);
  if (!a) {
    throw ConfigError(name + ": unknown ansatz \"" + s + "\"");
  }
  return *a;
}

FieldSpec parse_field(const json& j)
{
  if (j.is_string()) {
    return parse_field_string(j.get<std::string>());
  }
  require_object(j, "field");
  allow_keys(j, "field", {"ansatz", "params", "matrix"});
  FieldSpec f;
  if (j.contains("ansatz")) {
    if (j.contains("matrix")) {
      throw ConfigError("field: give either ansatz or matrix, not both");
    }
    f.ansatz = require_ansatz(text(j["ansatz"], "field.ansatz"), "field.ansatz");
    if (!j.contains("params")) {
      throw ConfigError("field.params: missing");
    }
    f.params = number_list(j["params"], "field.params");
  } else if (j.contains("matrix")) {
    const json& m = j["matrix"];
    if (!m.is_array()) {
      throw ConfigError("field.matrix: expected an array of 3 rows");
    }
    for (std::size_t r = 0; r < m.size(); ++r) {
      f.matrix.push_back(number_list(m[r], "field.matrix[" + std::to_string(r) + "]"));
    }
  } else {
    throw ConfigError("field: needs ansatz or matrix");
  }
  return f;
}

void validate_field(const FieldSpec& f, GroupId group)
{
  if (f.ansatz) {
    if (ansatz_group(*f.ansatz) != group) {
      throw ConfigError("field: ansatz " + std::string(to_string(*f.ansatz)) +
                        " does not belong to group " + std::string(to_string(group)));
    }
    const std::size_t want = ansatz_parameters(*f.ansatz).size();
    if (f.params.size() != want) {
      throw ConfigError("field.params: " + std::string(to_string(*f.ansatz)) + " takes " +
                        std::to_string(want) + " parameters, got " +
                        std::to_string(f.params.size()));
    }
    return;
  }
  const std::size_t d = static_cast<std::size_t>(GroupSpec::get(group).dim());
  if (f.matrix.size() != 3) {
    throw ConfigError("field.matrix: expected 3 rows, got " + std::to_string(f.matrix.size()));
  }
  for (const auto& row : f.matrix) {
    if (row.size() != d) {
      throw ConfigError("field.matrix: rows must have " + std::to_string(d) + " entries for " +
                        std::string(to_string(group)));
    }
  }
}

groundstate::ScanAxis parse_axis(const json& j, const std::string& where)
{
  require_object(j, where);
  allow_keys(j, where, {"name", "min", "max", "steps"});
  for (const char* k : {"name", "min", "max", "steps"}) {
    if (!j.contains(k)) {
      throw ConfigError(where + "." + k + ": missing");
    }
  }
  groundstate::ScanAxis ax;
  ax.name = text(j["name"], where + ".name");
  ax.min = number(j["min"], where + ".min");
  ax.max = number(j["max"], where + ".max");
  const long long steps = integer(j["steps"], where + ".steps");
  if (steps < 2 || steps > 1'000'000) {
    throw ConfigError(where + ".steps: must be in [2, 1000000]");
  }
  ax.steps = static_cast<int>(steps);
  if (!(ax.max > ax.min)) {
    throw ConfigError(where + ".max: must exceed min");
  }
  return ax;
}

LatticeConfig parse_lattice(const json& j, GroupId group)
{
  require_object(j, "lattice");
  allow_keys(j, "lattice", {"L", "spacing", "seed", "scheme", "background", "background_scale",
                            "perturbation", "perturbation_scale"});
  LatticeConfig lc;
  if (j.contains("L")) {
    const long long L = integer(j["L"], "lattice.L");
    if (L < 2 || L > 64) {
      throw ConfigError("lattice.L: must be in [2, 64]");
    }
    lc.L = static_cast<int>(L);
  }
  if (j.contains("spacing")) {
    lc.spacing = positive(j["spacing"], "lattice.spacing");
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() &&
                                             j["seed"].get<long long>() >= 0)) {
      throw ConfigError("lattice.seed: expected a non-negative integer");
    }
    lc.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("scheme")) {
    const std::string s = text(j["scheme"], "lattice.scheme");
    const auto sc = parse_difference_scheme(s);
    if (!sc) {
      throw ConfigError("lattice.scheme: expected \"staggered\" or \"central\"");
    }
    lc.scheme = *sc;
  }
  if (j.contains("background_scale")) {
    lc.background_scale = positive(j["background_scale"], "lattice.background_scale");
  }
  if (j.contains("perturbation_scale")) {
    lc.perturbation_scale = positive(j["perturbation_scale"], "lattice.perturbation_scale");
  }

  const std::size_t n = static_cast<std::size_t>(lc.L) * lc.L * lc.L * 3 *
                        static_cast<std::size_t>(GroupSpec::get(group).dim());
  const auto sized = [n](const json& arr, const std::string& name) {
    std::vector<double> v = number_list(arr, name);
    if (v.size() != n) {
      throw ConfigError(name + ": expected " + std::to_string(n) + " entries (L^3 * 3 * dim), got " +
                        std::to_string(v.size()));
    }
    return v;
  };
  if (j.contains("background")) {
    const json& b = j["background"];
    if (b.is_string()) {
      lc.background = b.get<std::string>();
      if (lc.background != "zero" && lc.background != "random" && lc.background != "constant") {
        throw ConfigError("lattice.background: expected \"zero\", \"random\", \"constant\" or "
                          "an object with A and E");
      }
    } else {
      require_object(b, "lattice.background");
      allow_keys(b, "lattice.background", {"A", "E"});
      if (!b.contains("A") || !b.contains("E")) {
        throw ConfigError("lattice.background: explicit form needs both A and E");
      }
      lc.background = "explicit";
      lc.background_A = sized(b["A"], "lattice.background.A");
      lc.background_E = sized(b["E"], "lattice.background.E");
    }
  }
  if (j.contains("perturbation")) {
    const json& p = j["perturbation"];
    if (p.is_string()) {
      lc.perturbation = p.get<std::string>();
      if (lc.perturbation != "zero" && lc.perturbation != "random") {
        throw ConfigError("lattice.perturbation: expected \"zero\", \"random\" or an object "
                          "with a and e");
      }
    } else {
      require_object(p, "lattice.perturbation");
      allow_keys(p, "lattice.perturbation", {"a", "e"});
      if (!p.contains("a") || !p.contains("e")) {
        throw ConfigError("lattice.perturbation: explicit form needs both a and e");
      }
      lc.perturbation = "explicit";
      lc.perturbation_a = sized(p["a"], "lattice.perturbation.a");
      lc.perturbation_e = sized(p["e"], "lattice.perturbation.e");
    }
  }
  return lc;
}

ToleranceConfig parse_tolerances(const json& j)
{
  require_object(j, "tolerances");
  allow_keys(j, "tolerances", {"membership", "kernel_eigenvalue", "kernel_projection",
                               "quadrature_rel", "quadrature_max_evaluations"});
  ToleranceConfig t;
  if (j.contains("membership")) {
    t.membership = positive(j["membership"], "tolerances.membership");
  }
  if (j.contains("kernel_eigenvalue")) {
    t.kernel_eigenvalue = positive(j["kernel_eigenvalue"], "tolerances.kernel_eigenvalue");
  }
  if (j.contains("kernel_projection")) {
    t.kernel_projection = positive(j["kernel_projection"], "tolerances.kernel_projection");
  }
  if (j.contains("quadrature_rel")) {
    t.quadrature_rel = positive(j["quadrature_rel"], "tolerances.quadrature_rel");
  }
  if (j.contains("quadrature_max_evaluations")) {
    const long long m = integer(j["quadrature_max_evaluations"],
                                "tolerances.quadrature_max_evaluations");
    if (m < 15 || m > 100'000'000) {
      throw ConfigError("tolerances.quadrature_max_evaluations: must be in [15, 1e8]");
    }
    t.quadrature_max_evaluations = static_cast<int>(m);
  }
  return t;
}

ScanConfig parse_scan(const json& j)
{
  require_object(j, "scan");
  allow_keys(j, "scan", {"ansatz", "axes", "pinned", "max_points"});
  ScanConfig sc;
  if (j.contains("ansatz")) {
    sc.ansatz = require_ansatz(text(j["ansatz"], "scan.ansatz"), "scan.ansatz");
  }
  if (!j.contains("axes") || !j["axes"].is_array() || j["axes"].empty()) {
    throw ConfigError("scan.axes: expected a non-empty array");
  }
  for (std::size_t k = 0; k < j["axes"].size(); ++k) {
    sc.axes.push_back(parse_axis(j["axes"][k], "scan.axes[" + std::to_string(k) + "]"));
  }
  if (j.contains("pinned")) {
    require_object(j["pinned"], "scan.pinned");
    for (const auto& [k, v] : j["pinned"].items()) {
      sc.pinned[k] = number(v, "scan.pinned." + k);
    }
  }
  if (j.contains("max_points")) {
    const long long m = integer(j["max_points"], "scan.max_points");
    if (m < 1) {
      throw ConfigError("scan.max_points: must be >= 1");
    }
    sc.max_points = static_cast<std::size_t>(m);
  }
  return sc;
}

RunConfig from_json(const json& j)
{
  require_object(j, "config");
  allow_keys(j, "config", {"schema_version", "group", "coupling", "volume", "field", "field_spec",
                           "mode", "sigma", "resolvent", "lattice", "scan", "tolerances"});
  RunConfig cfg;
  if (j.contains("schema_version")) {
    const long long v = integer(j["schema_version"], "schema_version");
    if (v != kSchemaVersion) {
      throw ConfigError("schema_version: this build reads version " +
                        std::to_string(kSchemaVersion) + ", got " + std::to_string(v));
    }
  }
  if (!j.contains("group")) {
    throw ConfigError("group: missing");
  }
  cfg.group = parse_group(text(j["group"], "group"));
  if (j.contains("coupling")) {
    cfg.coupling = positive(j["coupling"], "coupling");
  }
  if (j.contains("volume")) {
    cfg.volume = positive(j["volume"], "volume");
  }
  if (j.contains("field") && j.contains("field_spec")) {
    throw ConfigError("field_spec: give either field or its alias field_spec, not both");
  }
  if (j.contains("field") || j.contains("field_spec")) {
    cfg.field = parse_field(j.contains("field") ? j["field"] : j["field_spec"]);
    validate_field(*cfg.field, cfg.group);
  }
  if (j.contains("mode")) {
    cfg.mode = parse_mode(text(j["mode"], "mode"));
  }
  if (j.contains("sigma")) {
    require_object(j["sigma"], "sigma");
    allow_keys(j["sigma"], "sigma", {"method"});
    if (j["sigma"].contains("method")) {
      cfg.sigma_method = text(j["sigma"]["method"], "sigma.method");
      if (cfg.sigma_method != "spectral" && cfg.sigma_method != "quadrature" &&
          cfg.sigma_method != "both") {
        throw ConfigError("sigma.method: expected \"spectral\", \"quadrature\" or \"both\"");
      }
    }
  }
  if (j.contains("resolvent")) {
    require_object(j["resolvent"], "resolvent");
    allow_keys(j["resolvent"], "resolvent", {"lambda"});
    if (j["resolvent"].contains("lambda")) {
      const double l = number(j["resolvent"]["lambda"], "resolvent.lambda");
      if (l < 0.0) {
        throw ConfigError("resolvent.lambda: must be >= 0");
      }
      cfg.lambda = l;
    }
  }
  if (j.contains("lattice")) {
    cfg.lattice = parse_lattice(j["lattice"], cfg.group);
  }
  if (j.contains("scan")) {
    cfg.scan = parse_scan(j["scan"]);
    if (cfg.scan->ansatz && ansatz_group(*cfg.scan->ansatz) != cfg.group) {
      throw ConfigError("scan.ansatz: does not belong to group " +
                        std::string(to_string(cfg.group)));
    }
  }
  if (j.contains("tolerances")) {
    cfg.tolerances = parse_tolerances(j["tolerances"]);
  }
  return cfg;
}

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint32_t stream)
{
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream};
  return std::mt19937_64(seq);
}

}  // namespace

FieldSpec parse_field_string(const std::string& s)
{
  static const std::regex form(R"(^\s*([A-Za-z0-9_]+)\s*\((.*)\)\s*$)");
  std::smatch m;
  if (!std::regex_match(s, m, form)) {
    throw ConfigError("field: expected NAME(p1, p2, ...), got \"" + s + "\"");
  }
  FieldSpec f;
  f.ansatz = require_ansatz(m[1].str(), "field");
  std::stringstream list(m[2].str());
  std::string item;
  while (std::getline(list, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("field: \"" + item + "\" is not a number");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos || !std::isfinite(v)) {
      throw ConfigError("field: \"" + item + "\" is not a finite number");
    }
    f.params.push_back(v);
  }
  return f;
}

RunConfig parse(const std::string& text)
{
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config syntax error: ") + e.what());
  }
  return from_json(j);
}

RunConfig load(const std::string& path)
{
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("config file not found or unreadable: " + path);
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string serialize(const RunConfig& cfg)
{
  json j;
  j["schema_version"] = cfg.schema_version;
  j["group"] = std::string(to_string(cfg.group));
  j["coupling"] = cfg.coupling;
  j["volume"] = cfg.volume;
  j["mode"] = std::string(to_string(cfg.mode));
  j["sigma"] = {{"method", cfg.sigma_method}};
  if (cfg.field) {
    if (cfg.field->ansatz) {
      j["field"] = {{"ansatz", std::string(to_string(*cfg.field->ansatz))},
                    {"params", cfg.field->params}};
    } else {
      j["field"] = {{"matrix", cfg.field->matrix}};
    }
  }
  if (cfg.lambda) {
    j["resolvent"] = {{"lambda", *cfg.lambda}};
  }
  if (cfg.lattice) {
    const LatticeConfig& lc = *cfg.lattice;
    json l;
    l["L"] = lc.L;
    l["spacing"] = lc.spacing;
    l["seed"] = lc.seed;
    l["scheme"] = std::string(to_string(lc.scheme));
    l["background_scale"] = lc.background_scale;
    l["perturbation_scale"] = lc.perturbation_scale;
    if (lc.background == "explicit") {
      l["background"] = {{"A", lc.background_A}, {"E", lc.background_E}};
    } else {
      l["background"] = lc.background;
    }
    if (lc.perturbation == "explicit") {
      l["perturbation"] = {{"a", lc.perturbation_a}, {"e", lc.perturbation_e}};
    } else {
      l["perturbation"] = lc.perturbation;
    }
    j["lattice"] = l;
  }
  if (cfg.scan) {
    json s;
    if (cfg.scan->ansatz) {
      s["ansatz"] = std::string(to_string(*cfg.scan->ansatz));
    }
    s["axes"] = json::array();
    for (const auto& ax : cfg.scan->axes) {
      s["axes"].push_back({{"name", ax.name}, {"min", ax.min}, {"max", ax.max}, {"steps", ax.steps}});
    }
    s["pinned"] = json::object();
    for (const auto& [k, v] : cfg.scan->pinned) {
      s["pinned"][k] = v;
    }
    s["max_points"] = cfg.scan->max_points;
    j["scan"] = s;
  }
  const ToleranceConfig& t = cfg.tolerances;
  j["tolerances"] = {{"membership", t.membership},
                     {"kernel_eigenvalue", t.kernel_eigenvalue},
                     {"kernel_projection", t.kernel_projection},
                     {"quadrature_rel", t.quadrature_rel},
                     {"quadrature_max_evaluations", t.quadrature_max_evaluations}};
  return j.dump(2) + "\n";
}

ConstantField build_field(const RunConfig& cfg)
{
  if (!cfg.field) {
    throw ConfigError("field: this command needs a field section");
  }
  validate_field(*cfg.field, cfg.group);
  if (cfg.field->ansatz) {
    return ansatz_field(*cfg.field->ansatz, cfg.field->params, cfg.coupling, cfg.volume);
  }
  const int d = GroupSpec::get(cfg.group).dim();
  Eigen::MatrixXd m(3, d);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < d; ++c) {
      m(r, c) = cfg.field->matrix[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
  }
  return ConstantField::from_components(cfg.group, m, cfg.coupling, cfg.volume);
}

LatticeBackground build_background(const RunConfig& cfg, std::uint64_t seed)
{
  if (!cfg.lattice) {
    throw ConfigError("lattice: this command needs a lattice section");
  }
  const LatticeConfig& lc = *cfg.lattice;
  if (lc.background == "random") {
    std::mt19937_64 rng = stream_rng(seed, 0);
    return constraints::random_background(cfg.group, lc.L, rng, lc.background_scale, lc.spacing,
                                          cfg.coupling, lc.scheme);
  }
  if (lc.background == "constant") {
    const ConstantField f = build_field(cfg);
    const Eigen::MatrixXd a = f.components();
    return constraints::constant_background(cfg.group, lc.L, a,
                                            Eigen::MatrixXd::Zero(a.rows(), a.cols()),
                                            lc.spacing, cfg.coupling, lc.scheme);
  }
  LatticeBackground bg =
      LatticeBackground::zero(cfg.group, lc.L, lc.spacing, cfg.coupling, lc.scheme);
  if (lc.background == "explicit") {
    bg.A = Eigen::Map<const Eigen::VectorXd>(lc.background_A.data(),
                                             static_cast<Eigen::Index>(lc.background_A.size()));
    bg.E = Eigen::Map<const Eigen::VectorXd>(lc.background_E.data(),
                                             static_cast<Eigen::Index>(lc.background_E.size()));
  }
  bg.validate();
  return bg;
}

TangentPair build_perturbation(const RunConfig& cfg, const LatticeBackground& bg,
                               std::uint64_t seed)
{
  if (!cfg.lattice) {
    throw ConfigError("lattice: this command needs a lattice section");
  }
  const LatticeConfig& lc = *cfg.lattice;
  if (lc.perturbation == "random") {
    std::mt19937_64 rng = stream_rng(seed, 1);
    return constraints::random_tangent(bg, rng, lc.perturbation_scale);
  }
  TangentPair t = TangentPair::zero(bg);
  if (lc.perturbation == "explicit") {
    t.a = Eigen::Map<const Eigen::VectorXd>(lc.perturbation_a.data(),
                                            static_cast<Eigen::Index>(lc.perturbation_a.size()));
    t.e = Eigen::Map<const Eigen::VectorXd>(lc.perturbation_e.data(),
                                            static_cast<Eigen::Index>(lc.perturbation_e.size()));
  }
  return t;
}

}  // namespace config
}  // namespace gaugestrata
