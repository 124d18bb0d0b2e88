#include "gaugestrata/commands.hpp"
#include "gaugestrata/config.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

using namespace gaugestrata;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run(std::string_view command, const std::string& json, const RunFlags& flags = {})
{
  std::ostringstream out, err;
  const int code = commands::run(command, config::parse(json), flags, out, err);
  return {code, out.str(), err.str()};
}

/// Value of "key: value" in a report.
std::string value_of(const std::string& report, const std::string& key)
{
  std::istringstream is(report);
  std::string line;
  while (std::getline(is, line)) {
    if (line.rfind(key + ": ", 0) == 0) {
      return line.substr(key.size() + 2);
    }
  }
  return "<missing>";
}

std::string error_of(const std::string& json)
{
  try {
    config::parse(json);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("minimal config and defaults")
{
  const RunConfig cfg = config::parse(R"j({"group": "SU2"})j");
  CHECK(cfg.schema_version == kSchemaVersion);
  CHECK(cfg.group == GroupId::SU2);
  CHECK(cfg.coupling == 1.0);
  CHECK(cfg.volume == 1.0);
  CHECK_FALSE(cfg.field.has_value());
  CHECK(cfg.mode == HolonomyMode::CurvatureSpan);
  CHECK(cfg.sigma_method == "spectral");
  CHECK(cfg.tolerances == ToleranceConfig{});
  CHECK(cfg.kernel_tolerance().eigenvalue_rel == 1e-10);
  CHECK(cfg.quadrature().max_evaluations == 10000);
}

TEST_CASE("field_spec is accepted as an alias of field")
{
  const RunConfig cfg = config::parse(R"j({"group": "su2", "field_spec": "SU2_DIAG(0,1,1)"})j");
  REQUIRE(cfg.field.has_value());
  CHECK(cfg.field->params == std::vector<double>{0.0, 1.0, 1.0});
  CHECK(cfg == config::parse(R"j({"group": "su2", "field": "SU2_DIAG(0,1,1)"})j"));
  CHECK(error_of(R"j({"group": "su2", "field": "SU2_DIAG(0,1,1)", "field_spec": "SU2_DIAG(0,1,1)"})j")
            .find("field_spec") != std::string::npos);
}

TEST_CASE("validation messages name the field or line")
{
  CHECK(error_of(R"j({"group": "SU2", "coupling": -1})j").find("coupling") != std::string::npos);
  CHECK(error_of(R"j({"group": "SU5"})j").find("group") != std::string::npos);
  CHECK(error_of(R"j({"group": "SU2", "colour": 1})j").find("colour") != std::string::npos);
  CHECK(error_of(R"j({"group": "SU2", "schema_version": 9})j").find("schema_version") !=
        std::string::npos);
  CHECK(error_of("{\"group\": \"SU2\",\n\"coupling\": }").find("line 2") != std::string::npos);
  CHECK(error_of(R"j({"group": "SU2", "field": "SU3_IV(1,2)"})j").find("field") != std::string::npos);
  CHECK(error_of(R"j({"group": "SU2", "field": "SU2_DIAG(1,2)"})j").find("field") != std::string::npos);
  CHECK(error_of(R"j({"group": "SU2", "lattice": {"L": 1}})j").find("lattice.L") != std::string::npos);
  CHECK(error_of(R"j({"group": "SU2", "sigma": {"method": "magic"}})j").find("sigma.method") !=
        std::string::npos);
  CHECK(error_of(R"j({"group": "SU2", "resolvent": {"lambda": -2}})j").find("lambda") !=
        std::string::npos);
  CHECK_THROWS_AS(config::load("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("field strings")
{
  const FieldSpec f = config::parse_field_string("SU3_IV(1, -2.5e-1)");
  REQUIRE(f.ansatz.has_value());
  CHECK(*f.ansatz == Ansatz::SU3_IV);
  CHECK(f.params == std::vector<double>{1.0, -0.25});
  CHECK_THROWS_AS(config::parse_field_string("SU3_IV 1 2"), ConfigError);
  CHECK_THROWS_AS(config::parse_field_string("NOPE(1)"), ConfigError);
}

TEST_CASE("explicit matrix equals the named ansatz")
{
  const double s2 = std::sqrt(2.0);
  std::ostringstream json;
  json.precision(17);
  json << R"j({"group": "SU3", "field": {"matrix": [[0,0,0,0,0,0,0,0],)j"
       << "[1,0,0," << s2 << ",0,0,0,0],"
       << "[0,2,0,0," << -2.0 * s2 << ",0,0,0]]}}";
  const RunConfig m = config::parse(json.str());
  const RunConfig a = config::parse(R"j({"group": "SU3", "field": "SU3_IV(1, 2)"})j");
  const ConstantField fm = config::build_field(m);
  const ConstantField fa = config::build_field(a);
  for (int i = 0; i < 3; ++i) {
    CHECK((fm.a[i].coeffs - fa.a[i].coeffs).norm() <= 1e-15);
  }
  std::ostringstream o1, o2, e;
  commands::run("sigma", m, {}, o1, e);
  commands::run("sigma", a, {}, o2, e);
  CHECK(value_of(o1.str(), "sigma") == value_of(o2.str(), "sigma"));
  o1.str("");
  o2.str("");
  commands::run("classify", m, {}, o1, e);
  commands::run("classify", a, {}, o2, e);
  CHECK(value_of(o1.str(), "stratum_index") == "4");
  CHECK(value_of(o2.str(), "stratum_index") == "4");

  CHECK(error_of(R"j({"group": "SU3", "field": {"matrix": [[1,2,3]]}})j").find("field.matrix") !=
        std::string::npos);
}

TEST_CASE("serialize round trip")
{
  const std::string text = R"j({
    "schema_version": 1, "group": "SU3", "coupling": 0.5, "volume": 2,
    "field": "SU3_III(1, 1.5, 0.5)", "mode": "ambrose-singer",
    "sigma": {"method": "both"}, "resolvent": {"lambda": 0.25},
    "lattice": {"L": 3, "spacing": 0.5, "seed": 12345678901234, "scheme": "central",
                "background": "random", "background_scale": 0.3,
                "perturbation": "zero", "perturbation_scale": 2},
    "scan": {"ansatz": "SU3_IV", "axes": [{"name": "a2", "min": 0, "max": 1, "steps": 3}],
             "pinned": {"a3": 0.5}, "max_points": 100},
    "tolerances": {"membership": 1e-9, "quadrature_rel": 1e-9, "quadrature_max_evaluations": 500}
  })j";
  const RunConfig cfg = config::parse(text);
  CHECK(cfg.mode == HolonomyMode::AmbroseSinger);
  CHECK(cfg.lattice->seed == 12345678901234ULL);
  CHECK(cfg.lattice->scheme == DifferenceScheme::Central);
  CHECK(cfg.scan->pinned.at("a3") == 0.5);
  const RunConfig back = config::parse(config::serialize(cfg));
  CHECK(back == cfg);
  CHECK(config::serialize(back) == config::serialize(cfg));

  const RunConfig explicit_field =
      config::parse(R"j({"group": "SU2", "field": {"matrix": [[1,0,0],[0,1,0],[0,0,1]]}})j");
  CHECK(config::parse(config::serialize(explicit_field)) == explicit_field);
}

TEST_CASE("lattice construction from config is seeded and deterministic")
{
  const RunConfig cfg = config::parse(
      R"j({"group": "SU2", "lattice": {"L": 2, "background": "random", "background_scale": 0.5}})j");
  const LatticeBackground b1 = config::build_background(cfg, 7);
  const LatticeBackground b2 = config::build_background(cfg, 7);
  const LatticeBackground b3 = config::build_background(cfg, 8);
  CHECK(b1.A == b2.A);
  CHECK(b1.E == b2.E);
  CHECK(b1.A != b3.A);
  const TangentPair t1 = config::build_perturbation(cfg, b1, 7);
  CHECK(t1.a != b1.A);  // independent streams
  CHECK(t1.a == config::build_perturbation(cfg, b1, 7).a);

  const RunConfig cst = config::parse(
      R"j({"group": "SU2", "field": "SU2_DIAG(1,2,3)", "lattice": {"L": 2, "background": "constant"}})j");
  const LatticeBackground bc = config::build_background(cst, 1);
  CHECK(bc.A(bc.index(5, 1, 1)) == 2.0);
  CHECK(bc.E.norm() == 0.0);

  CHECK(error_of(R"j({"group": "SU2", "lattice": {"L": 2, "background": {"A": [1, 2]}}})j")
            .find("lattice.background") != std::string::npos);
}

TEST_CASE("commands: reports and exit codes")
{
  Outcome o = run("sigma", R"j({"group": "SU2", "field": "SU2_DIAG(0,1,1)"})j");
  CHECK(o.code == 0);
  CHECK(std::stod(value_of(o.out, "sigma")) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-11));
  CHECK(value_of(o.out, "divergent") == "false");
  CHECK(value_of(o.out, "command") == "sigma");
  CHECK(value_of(o.out, "schema_version") == "1");

  o = run("sigma", R"j({"group": "SU3", "field": "SU3_IV(1,2)", "sigma": {"method": "both"}})j");
  CHECK(o.code == 0);
  CHECK(std::stod(value_of(o.out, "relative_difference")) <= 1e-7);
  CHECK(value_of(o.out, "divergence_flags_agree") == "true");

  o = run("classify", R"j({"group": "SU3", "field": {"matrix": [[0,0,0,0,0,0,0,0],[0,0,0,0,0,0,0,0],[0,0,0,0,0,0,0,0]]}})j");
  CHECK(o.code == 0);
  CHECK(value_of(o.out, "stratum_index") == "5");
  CHECK(value_of(o.out, "isotropy") == "SU(3)");

  o = run("resolvent", R"j({"group": "SU2", "field": "SU2_DIAG(1,1,1)", "resolvent": {"lambda": 1}})j");
  CHECK(o.code == 0);
  CHECK(std::stod(value_of(o.out, "resolvent")) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(std::stod(value_of(o.out, "relative_difference")) <= 1e-12);

  // missing lambda and unknown command are input errors
  CHECK(run("resolvent", R"j({"group": "SU2", "field": "SU2_DIAG(1,1,1)"})j").code == 2);
  CHECK(run("frobnicate", R"j({"group": "SU2"})j").code == 2);
  CHECK(run("sigma", R"j({"group": "SU2"})j").code == 2);

  // exhausted quadrature budget is a numerical failure
  o = run("sigma", R"j({"group": "SU2", "field": "SU2_DIAG(1,2,3)", "sigma": {"method": "quadrature"},
                       "tolerances": {"quadrature_max_evaluations": 15, "quadrature_rel": 1e-14}})j");
  CHECK(o.code == 3);
  CHECK(o.err.find("partial estimate") != std::string::npos);

  // lattice beyond the dense caps
  CHECK(run("splittings", R"j({"group": "SU3", "lattice": {"L": 5}})j").code == 3);

  o = run("splittings", R"j({"group": "SU2", "lattice": {"L": 2}})j");
  CHECK(o.code == 0);
  CHECK(value_of(o.out, "dim_ker_jprime_adj") == "3");
  CHECK(value_of(o.out, "rank_nullity") == "true");

  o = run("symmetries", R"j({"group": "SU2", "lattice": {"L": 2}})j");
  CHECK(value_of(o.out, "dimension") == "3");

  o = run("qc-check", R"j({"group": "SU2", "lattice": {"L": 2, "perturbation": "zero"}})j");
  CHECK(value_of(o.out, "member") == "true");
  RunFlags tight;
  tight.tol = 1e-3;
  o = run("qc-check", R"j({"group": "SU2", "lattice": {"L": 2}})j", tight);
  CHECK(value_of(o.out, "member") == "false");
  CHECK(value_of(o.out, "tolerance") == "0.001");
}

TEST_CASE("scan command: full table, determinism, file output")
{
  const std::string json = R"j({"group": "SU2", "scan": {"ansatz": "SU2_DIAG",
      "axes": [{"name": "a2", "min": 0, "max": 2, "steps": 101},
               {"name": "a3", "min": 0, "max": 2, "steps": 101}],
      "pinned": {"a1": 0}}})j";
  const Outcome a = run("scan", json);
  const Outcome b = run("scan", json);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("a2,a3,sigma,divergent\n", 0) == 0);
  std::size_t lines = 0;
  for (char c : a.out) {
    lines += c == '\n' ? 1 : 0;
  }
  CHECK(lines == 10202);

  const std::string path = "gaugestrata_test_scan.csv";
  RunFlags flags;
  flags.out = path;
  const Outcome f = run("scan", json, flags);
  CHECK(f.code == 0);
  CHECK(value_of(f.out, "rows") == "10201");
  std::ifstream in(path, std::ios::binary);
  std::stringstream content;
  content << in.rdbuf();
  CHECK(content.str() == a.out);
  std::remove(path.c_str());

  CHECK_THROWS_AS(config::parse(R"j({"group": "SU2", "scan": {"ansatz": "SU2_DIAG", "axes": []}})j"),
                  ConfigError);
  CHECK(error_of(R"j({"group": "SU3", "scan": {"ansatz": "SU2_DIAG",
      "axes": [{"name": "a2", "min": 0, "max": 1, "steps": 2}], "pinned": {"a1": 0, "a3": 0}}})j")
            .find("scan.ansatz") != std::string::npos);
}
