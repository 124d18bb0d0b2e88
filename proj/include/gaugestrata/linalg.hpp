#ifndef GAUGESTRATA_LINALG_HPP
#define GAUGESTRATA_LINALG_HPP

#include <Eigen/Dense>

#include <vector>

namespace gaugestrata::linalg {

/// Relative cutoff for treating a singular value as zero. A value counts as
/// zero when it is below kRelativeCutoff * max(largest singular value, 1).
inline constexpr double kRelativeCutoff = 1e-9;

/// Absolute threshold derived from a spectrum with the rule above.
double zero_threshold(const Eigen::VectorXd& singular_values,
                      double rel_cutoff = kRelativeCutoff);

/// Thin result of an SVD-based subspace split of a matrix M (m x n).
struct SubspaceSplit {
  int rank = 0;
  Eigen::MatrixXd kernel;  ///< n x (n - rank), orthonormal columns spanning ker M
  Eigen::MatrixXd image;   ///< m x rank, orthonormal columns spanning im M
  Eigen::VectorXd singular_values;
};

/// Rank, kernel and image of M via SVD with the cutoff rule above.
SubspaceSplit split(const Eigen::MatrixXd& m, double rel_cutoff = kRelativeCutoff);

/// Orthonormal basis (columns) of ker M.
Eigen::MatrixXd nullspace(const Eigen::MatrixXd& m, double rel_cutoff = kRelativeCutoff);

int numerical_rank(const Eigen::MatrixXd& m, double rel_cutoff = kRelativeCutoff);

/// Modified Gram-Schmidt in the given column order. Columns whose residual
/// drops to at most drop_tol are discarded.
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& columns, double drop_tol);

/// Reproducible orthonormal basis of span(Q) for Q with orthonormal columns:
/// project the standard basis e_1, e_2, ... onto span(Q) and run MGS in
/// index order. Independent of the rotation an SVD happened to return.
Eigen::MatrixXd canonical_basis(const Eigen::MatrixXd& q);

/// Largest principal-angle sine between span(a) and span(b), both given with
/// orthonormal columns. Zero when the spans coincide.
double subspace_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Norm of the component of the columns of `inner` outside span(outer).
/// `outer` must have orthonormal columns.
double containment_residual(const Eigen::MatrixXd& inner, const Eigen::MatrixXd& outer);

}  // namespace gaugestrata::linalg

#endif
