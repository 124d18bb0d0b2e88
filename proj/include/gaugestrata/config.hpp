#ifndef GAUGESTRATA_CONFIG_HPP
#define GAUGESTRATA_CONFIG_HPP

#include "gaugestrata/constraints.hpp"
#include "gaugestrata/errors.hpp"
#include "gaugestrata/groundstate.hpp"
#include "gaugestrata/strata.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gaugestrata {

/// Bumped whenever a key changes meaning.
inline constexpr int kSchemaVersion = 1;

/// Configuration problem; the message names the offending field or line.
class ConfigError : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

/// Either a named ansatz with parameters or an explicit 3 x dim matrix.
struct FieldSpec {
  std::optional<Ansatz> ansatz;
  std::vector<double> params;
  std::vector<std::vector<double>> matrix;

  bool operator==(const FieldSpec&) const = default;
};

struct LatticeConfig {
  int L = 2;
  double spacing = 1.0;
  std::uint64_t seed = 1;
  DifferenceScheme scheme = DifferenceScheme::Staggered;
  /// "zero", "random", "constant" (A from the field section, E = 0) or "explicit"
  std::string background = "zero";
  double background_scale = 1.0;
  std::vector<double> background_A;
  std::vector<double> background_E;
  /// "zero", "random" or "explicit"
  std::string perturbation = "random";
  double perturbation_scale = 1.0;
  std::vector<double> perturbation_a;
  std::vector<double> perturbation_e;

  bool operator==(const LatticeConfig&) const = default;
};

struct ToleranceConfig {
  double membership = constraints::kMembershipTolerance;
  double kernel_eigenvalue = 1e-10;
  double kernel_projection = 1e-10;
  double quadrature_rel = 1e-10;
  int quadrature_max_evaluations = 10000;

  bool operator==(const ToleranceConfig&) const = default;
};

struct ScanConfig {
  std::optional<Ansatz> ansatz;  ///< defaults to the field's ansatz
  std::vector<groundstate::ScanAxis> axes;
  std::map<std::string, double> pinned;
  std::size_t max_points = 1'000'000;

  bool operator==(const ScanConfig&) const = default;
};

struct RunConfig {
  int schema_version = kSchemaVersion;
  GroupId group = GroupId::SU2;
  double coupling = 1.0;
  double volume = 1.0;
  std::optional<FieldSpec> field;
  HolonomyMode mode = HolonomyMode::CurvatureSpan;
  /// "spectral", "quadrature" or "both"
  std::string sigma_method = "spectral";
  std::optional<double> lambda;
  std::optional<LatticeConfig> lattice;
  std::optional<ScanConfig> scan;
  ToleranceConfig tolerances;

  bool operator==(const RunConfig&) const = default;

  KernelTolerance kernel_tolerance() const;
  QuadratureConfig quadrature() const;
};

namespace config {

/// Parse JSON text. Throws ConfigError with the line of a syntax error or the
/// name of an invalid field.
RunConfig parse(const std::string& text);

/// Read and parse a file; a missing file is a ConfigError.
RunConfig load(const std::string& path);

/// JSON text that parse() maps back to an equal RunConfig.
std::string serialize(const RunConfig& cfg);

/// Parse "NAME(p1, p2, ...)".
FieldSpec parse_field_string(const std::string& text);

/// Field described by cfg.field with the configured coupling and volume.
ConstantField build_field(const RunConfig& cfg);

/// Lattice background and perturbation described by cfg.lattice.
LatticeBackground build_background(const RunConfig& cfg, std::uint64_t seed);
TangentPair build_perturbation(const RunConfig& cfg, const LatticeBackground& bg,
                               std::uint64_t seed);

}  // namespace config
}  // namespace gaugestrata

#endif
