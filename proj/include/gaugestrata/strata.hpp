#ifndef GAUGESTRATA_STRATA_HPP
#define GAUGESTRATA_STRATA_HPP

#include "gaugestrata/liealg.hpp"

#include <Eigen/Dense>

#include <array>
#include <span>
#include <string>
#include <string_view>

namespace gaugestrata {

/// Spatially constant gauge potential A_i = sum_a A_i^a t_a, i = 1..3,
/// on a box of volume `volume` with coupling `g`.
struct ConstantField {
  GroupId group = GroupId::SU2;
  std::array<AlgebraElement, 3> a;
  double g = 1.0;
  double volume = 1.0;

  const GroupSpec& spec() const { return GroupSpec::get(group); }

  static ConstantField zero(GroupId group, double g = 1.0, double volume = 1.0);
  /// Rows are the spatial components, columns the color coefficients.
  static ConstantField from_components(GroupId group, const Eigen::MatrixXd& components,
                                       double g = 1.0, double volume = 1.0);
  Eigen::MatrixXd components() const;

  /// Throws InvalidInput unless all components belong to `group`.
  void validate() const;
};

/// A_i -> sum_j R_ij A_j.
ConstantField rotate_spatial(const ConstantField& field, const Eigen::Matrix3d& rotation);
/// A_i -> g A_i g^{-1} for a global group element g.
ConstantField rotate_color(const ConstantField& field, const Eigen::MatrixXcd& g);

enum class HolonomyMode { CurvatureSpan, AmbroseSinger };

std::string_view to_string(HolonomyMode mode);

struct StratumReport {
  GroupId group = GroupId::SU2;
  int isotropy_dim = 0;
  std::string isotropy_label;
  std::string subbundle_label;
  int stratum_index = 0;
  HolonomyMode mode = HolonomyMode::CurvatureSpan;
  int holonomy_dim = 0;
};

/// One row of the isotropy / maximal-subbundle table of a group.
struct StratumRow {
  int index;
  std::string_view isotropy;
  std::string_view subbundle;
  int isotropy_dim;
};

/// Rows ordered from the generic stratum (index 1) to the full group.
std::span<const StratumRow> strata_table(GroupId group);

namespace strata {

/// Chromomagnetic field B_i = -(g/2) eps_ijk [A_j, A_k] of a constant field.
std::array<AlgebraElement, 3> curvature(const ConstantField& field);

/// CurvatureSpan: the algebra generated by B_1..B_3.
/// AmbroseSinger: additionally closed under x -> [A_j, x].
Subalgebra holonomy_algebra(const ConstantField& field, HolonomyMode mode);

/// Isotropy algebra = centralizer of the holonomy algebra, matched to a table row.
StratumReport classify(const ConstantField& field,
                       HolonomyMode mode = HolonomyMode::CurvatureSpan);

/// Isotropy algebra of the field (the centralizer classify() matches on).
Subalgebra isotropy_algebra(const ConstantField& field,
                            HolonomyMode mode = HolonomyMode::CurvatureSpan);

enum class TypeOrder { Less, Greater, Equal, Incomparable };

std::string_view to_string(TypeOrder order);

/// Partial order of types: Less means r1 has the larger isotropy
/// (closer to the full group). Throws InvalidInput for mixed groups.
TypeOrder type_order(const StratumReport& r1, const StratumReport& r2);

struct CanonicalForm {
  ConstantField field;
  Eigen::Matrix3d rotation;        ///< spatial rotation applied, A' = R A
  Eigen::MatrixXd color_rotation;  ///< orthogonal map applied to the color coefficients
};

/// Spatial rotation diagonalizing M_ij = sum_a A_i^a A_j^a with eigenvalues in
/// descending order. The leading two eigenvectors have their first nonzero
/// entry positive; the third completes a right-handed frame. For su(2) a
/// color rotation then aligns A'_1, A'_2, A'_3 with t_1, t_2, t_3.
CanonicalForm canonicalize_spatial(const ConstantField& field);

}  // namespace strata
}  // namespace gaugestrata

#endif
