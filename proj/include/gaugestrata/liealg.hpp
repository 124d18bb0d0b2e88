#ifndef GAUGESTRATA_LIEALG_HPP
#define GAUGESTRATA_LIEALG_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace gaugestrata {

enum class GroupId { SU2, SU3 };

std::string_view to_string(GroupId id);

/// Coordinates of an su(N) element in the fixed basis {t_a} of its GroupSpec.
///
/// The matrix realization is sum_a coeffs(a) t_a, antihermitian and traceless.
/// The inner product used throughout is <x, y> = 2 tr(X Y^dagger) = x . y,
/// i.e. the Euclidean product of coefficient vectors.
struct AlgebraElement {
  Eigen::VectorXd coeffs;

  AlgebraElement() = default;
  explicit AlgebraElement(Eigen::VectorXd c) : coeffs(std::move(c)) {}

  static AlgebraElement zero(int dim) { return AlgebraElement(Eigen::VectorXd::Zero(dim)); }
  static AlgebraElement unit(int dim, int a)
  {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(dim);
    c(a) = 1.0;
    return AlgebraElement(c);
  }

  int dim() const { return static_cast<int>(coeffs.size()); }
  double norm() const { return coeffs.norm(); }
  double dot(const AlgebraElement& o) const { return coeffs.dot(o.coeffs); }

  AlgebraElement& operator+=(const AlgebraElement& o) { coeffs += o.coeffs; return *this; }
  AlgebraElement& operator-=(const AlgebraElement& o) { coeffs -= o.coeffs; return *this; }
  AlgebraElement& operator*=(double s) { coeffs *= s; return *this; }
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(double s, AlgebraElement a) { return a *= s; }
  friend AlgebraElement operator-(AlgebraElement a) { return a *= -1.0; }
};

/// su(2) or su(3) with the basis t_a = -i sigma_a / 2 (resp. -i lambda_a / 2),
/// so that tr(t_a t_b^dagger) = delta_ab / 2. Structure constants
/// [t_a, t_b] = f_abc t_c are computed from the matrices at construction;
/// with this basis f_123 = +1 for su(2) and f matches the usual Gell-Mann
/// table for su(3). Instances are immutable and shared.
class GroupSpec {
public:
  static const GroupSpec& get(GroupId id);

  GroupId id() const { return m_id; }
  int n() const { return m_n; }
  int dim() const { return m_dim; }
  std::string_view name() const { return to_string(m_id); }

  const std::vector<Eigen::MatrixXcd>& basis() const { return m_basis; }

  double f(int a, int b, int c) const { return m_f[(a * m_dim + b) * m_dim + c]; }

  /// Matrix of y -> [x, y] in coefficient space.
  Eigen::MatrixXd ad(const AlgebraElement& x) const;

  Eigen::MatrixXcd to_matrix(const AlgebraElement& x) const;
  /// Coefficients of the antihermitian traceless part of m.
  AlgebraElement from_matrix(const Eigen::MatrixXcd& m) const;

  /// Orthogonal dim x dim matrix of x -> g x g^{-1} in coefficient space.
  /// Throws InvalidInput if g is not unitary to 1e-12.
  Eigen::MatrixXd adjoint_matrix(const Eigen::MatrixXcd& g) const;

  void require_member(const AlgebraElement& x, const char* what) const;

  GroupSpec(const GroupSpec&) = delete;
  GroupSpec& operator=(const GroupSpec&) = delete;

private:
  explicit GroupSpec(GroupId id);

  GroupId m_id;
  int m_n;
  int m_dim;
  std::vector<Eigen::MatrixXcd> m_basis;
  std::vector<double> m_f;
};

/// Orthonormal basis of a linear subspace of the algebra.
struct Subalgebra {
  std::vector<AlgebraElement> basis;

  int dim() const { return static_cast<int>(basis.size()); }
  /// Basis vectors as the columns of an algebra_dim x dim() matrix.
  Eigen::MatrixXd as_columns(int algebra_dim) const;
  static Subalgebra from_columns(const Eigen::MatrixXd& columns);
  /// Distance of x from the subspace, relative to |x| (0 for x = 0).
  double residual(const AlgebraElement& x) const;
};

namespace liealg {

/// z_c = sum_ab f_abc x_a y_b.
AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y, const GroupSpec& spec);

/// Smallest bracket-closed subspace containing span(gens).
Subalgebra generated_subalgebra(std::span<const AlgebraElement> gens, const GroupSpec& spec);

/// Common kernel of x -> [x, s_k] over all k.
Subalgebra centralizer(std::span<const AlgebraElement> s, const GroupSpec& spec);

/// Coefficients of g X g^{-1}. Throws InvalidInput for non-unitary g.
AlgebraElement adjoint_rotate(const AlgebraElement& x, const Eigen::MatrixXcd& g,
                              const GroupSpec& spec);

/// exp of the matrix realization of x (a group element).
Eigen::MatrixXcd group_exp(const AlgebraElement& x, const GroupSpec& spec);

/// Haar-distributed random element of SU(n).
Eigen::MatrixXcd random_group_element(const GroupSpec& spec, std::mt19937_64& rng);

/// Maximum violation of (a) [t_a, t_b] = f_abc t_c, (b) total antisymmetry of f.
double structure_constant_residual(const GroupSpec& spec);

/// Whether span(inner) lies inside span(outer) up to tol.
bool contains(const Subalgebra& outer, const Subalgebra& inner, double tol = 1e-8);
bool same_span(const Subalgebra& a, const Subalgebra& b, double tol = 1e-8);

}  // namespace liealg
}  // namespace gaugestrata

#endif
