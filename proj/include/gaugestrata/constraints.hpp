#ifndef GAUGESTRATA_CONSTRAINTS_HPP
#define GAUGESTRATA_CONSTRAINTS_HPP

#include "gaugestrata/liealg.hpp"

#include <Eigen/Dense>

#include <optional>
#include <random>
#include <string_view>
#include <vector>

namespace gaugestrata {

/// Staggered: divergence is the backward difference and the gradient the
/// forward one, so gradient = -divergence^T. Central: both use
/// (f(x+e_i) - f(x-e_i)) / 2h, which is also antisymmetric but has a
/// doubler kernel on even L.
enum class DifferenceScheme { Staggered, Central };

std::string_view to_string(DifferenceScheme scheme);
std::optional<DifferenceScheme> parse_difference_scheme(std::string_view name);

/// Background (A, E) on a periodic L^3 lattice. Fields are flat vectors
/// indexed (site * 3 + i) * dim + a with site = (x * L + y) * L + z.
struct LatticeBackground {
  GroupId group = GroupId::SU2;
  int L = 2;
  double spacing = 1.0;
  Eigen::VectorXd A;
  Eigen::VectorXd E;
  double g = 1.0;
  DifferenceScheme scheme = DifferenceScheme::Staggered;

  const GroupSpec& spec() const { return GroupSpec::get(group); }
  int dim() const { return spec().dim(); }
  int sites() const { return L * L * L; }
  Eigen::Index field_size() const { return Eigen::Index(sites()) * 3 * dim(); }
  Eigen::Index section_size() const { return Eigen::Index(sites()) * dim(); }

  /// Periodic site number of (x, y, z); coordinates wrap modulo L.
  int site(int x, int y, int z) const;
  Eigen::Index index(int site, int i, int a) const { return (Eigen::Index(site) * 3 + i) * dim() + a; }

  static LatticeBackground zero(GroupId group, int L, double spacing = 1.0, double g = 1.0,
                                DifferenceScheme scheme = DifferenceScheme::Staggered);

  /// Throws InvalidInput on L < 2, spacing or g not positive, or bad shapes.
  void validate() const;
};

/// Perturbation (a, e) with the same layout as the background fields.
struct TangentPair {
  Eigen::VectorXd a;
  Eigen::VectorXd e;

  static TangentPair zero(const LatticeBackground& bg);
};

/// Section of the dual algebra bundle, indexed site * dim + b.
struct DualSection {
  Eigen::VectorXd v;

  static DualSection zero(const LatticeBackground& bg);
};

struct ConstraintReport {
  double slice_residual = 0.0;      ///< |J'(J t)|
  double linear_residual = 0.0;     ///< |J'(t)|
  double quadratic_residual = 0.0;  ///< |g [a ^ e]|
  double tolerance = 0.0;
  bool member = false;
};

struct SplittingReport {
  int dim_total = 0;    ///< 6 dim L^3
  int dim_section = 0;  ///< dim L^3
  int dim_ker_jprime = 0;
  int dim_im_jprime_adj = 0;
  int dim_ker_jprime_adj = 0;
  int dim_im_jprime = 0;
  double orth_residual = 0.0;    ///< max |<k, r>| over orthonormal bases of Ker J' and Im J'*
  double adjoint_residual = 0.0; ///< max |J'^T - J'*| entry of the two assembled matrices

  bool rank_nullity_holds() const
  {
    return dim_ker_jprime + dim_im_jprime_adj == dim_total &&
           dim_ker_jprime_adj + dim_im_jprime == dim_section;
  }
};

/// t = kernel_part + image_part with kernel_part in Ker J', image_part in Im J'*.
struct TangentSplit {
  TangentPair kernel_part;
  TangentPair image_part;
  double residual = 0.0;  ///< |t - kernel_part - image_part| / |t|
};

namespace constraints {

inline constexpr double kMembershipTolerance = 1e-8;
inline constexpr int kMaxDenseL_SU2 = 6;
inline constexpr int kMaxDenseL_SU3 = 4;
/// Budget on (intersection dim)^2 * section size for same_symmetry_tangents.
inline constexpr double kMaxBilinearEntries = 3e7;

/// Discrete divergence sum_i d_i F^i of a field-shaped vector.
DualSection divergence(const LatticeBackground& bg, const Eigen::VectorXd& field);
/// Discrete gradient of a section; equals -divergence^T in either scheme.
Eigen::VectorXd gradient(const LatticeBackground& bg, const DualSection& v);

/// Gauss-law function Gamma = div E + g [A, E], [A, E]_b = f_bca A_c^i E_a^i.
DualSection momentum_map(const LatticeBackground& bg);

/// Linearization J'(a, e) = div e + g [A, e] + g [a, E].
DualSection jprime(const LatticeBackground& bg, const TangentPair& t);

/// Adjoint of jprime under the h^3-weighted metrics:
/// (J'* v) = (g [E, v], -grad v + g [v, A]).
TangentPair jprime_adjoint(const LatticeBackground& bg, const DualSection& v);

/// (a, e) -> (-e, a).
TangentPair apply_complex_structure(const TangentPair& t);

/// g ([a1 ^ e2] + [a2 ^ e1]) with [a ^ e]_b = f_bca a_c^k e_a^k, pointwise.
DualSection quadratic_form(const LatticeBackground& bg, const TangentPair& t1,
                           const TangentPair& t2);

/// Slice, linearized and quadratic conditions on a perturbation.
ConstraintReport qc_check(const LatticeBackground& bg, const TangentPair& t,
                          double tol = kMembershipTolerance);

/// Infinitesimal gauge transformation (-grad da + g [da, A], g [da, E]).
TangentPair gauge_variation(const LatticeBackground& bg, const DualSection& dalpha);

/// h^3-weighted inner products and norms.
double inner(const LatticeBackground& bg, const TangentPair& t, const TangentPair& s);
double inner(const LatticeBackground& bg, const DualSection& v, const DualSection& w);
double norm(const LatticeBackground& bg, const TangentPair& t);
double norm(const LatticeBackground& bg, const DualSection& v);

/// Flat [a; e] layout used by the assembled matrices.
Eigen::VectorXd to_vector(const TangentPair& t);
TangentPair tangent_from_vector(const LatticeBackground& bg, const Eigen::VectorXd& x);

/// Throws ResourceLimit beyond the dense caps (L <= 6 for su2, L <= 4 for su3).
void require_dense_size(const LatticeBackground& bg);

/// Dense matrices of jprime (section x tangent) and jprime_adjoint
/// (tangent x section), each built column by column from its own operator.
Eigen::MatrixXd assemble_jprime(const LatticeBackground& bg);
Eigen::MatrixXd assemble_jprime_adjoint(const LatticeBackground& bg);

/// Orthonormal basis of Ker J'*, the infinitesimal symmetries of the background.
std::vector<DualSection> symmetry_space(const LatticeBackground& bg);

/// Ranks from separate SVDs of J' and J'*, plus orthogonality of Ker J' and Im J'*.
SplittingReport verify_splittings(const LatticeBackground& bg);

/// Orthogonal split of a tangent: kernel part by projection onto Ker J',
/// image part by projection onto an SVD basis of Im J'*.
TangentSplit decompose_tangent(const LatticeBackground& bg, const TangentPair& t);

/// Basis of the t in Ker(J' o J) and Ker J' with quadratic_form(t, s) = 0
/// for every s in that intersection. Throws ResourceLimit when too large.
std::vector<TangentPair> same_symmetry_tangents(const LatticeBackground& bg);

/// Orthonormal basis of Ker(J' o J) and Ker J' (columns in [a; e] layout).
Eigen::MatrixXd slice_constraint_kernel(const LatticeBackground& bg);

/// Gaussian entries with standard deviation `scale`.
LatticeBackground random_background(GroupId group, int L, std::mt19937_64& rng,
                                    double scale = 1.0, double spacing = 1.0, double g = 1.0,
                                    DifferenceScheme scheme = DifferenceScheme::Staggered);
TangentPair random_tangent(const LatticeBackground& bg, std::mt19937_64& rng, double scale = 1.0);
DualSection random_section(const LatticeBackground& bg, std::mt19937_64& rng, double scale = 1.0);

/// Spatially constant background A_i = a[i], E_i = e[i].
LatticeBackground constant_background(GroupId group, int L, const Eigen::MatrixXd& a,
                                      const Eigen::MatrixXd& e, double spacing = 1.0,
                                      double g = 1.0,
                                      DifferenceScheme scheme = DifferenceScheme::Staggered);

/// Global adjoint action of a group element on every color vector.
LatticeBackground rotate_color(const LatticeBackground& bg, const Eigen::MatrixXcd& u);
TangentPair rotate_color(const LatticeBackground& bg, const TangentPair& t,
                         const Eigen::MatrixXcd& u);
DualSection rotate_color(const LatticeBackground& bg, const DualSection& v,
                         const Eigen::MatrixXcd& u);

}  // namespace constraints
}  // namespace gaugestrata

#endif
