#include "gaugestrata/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace gaugestrata::linalg {

double zero_threshold(const Eigen::VectorXd& singular_values, double rel_cutoff)
{
  const double largest = singular_values.size() > 0 ? singular_values.maxCoeff() : 0.0;
  return rel_cutoff * std::max(largest, 1.0);
}

SubspaceSplit split(const Eigen::MatrixXd& m, double rel_cutoff)
{
  SubspaceSplit out;
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  if (rows == 0 || cols == 0) {
    out.kernel = Eigen::MatrixXd::Identity(cols, cols);
    out.image = Eigen::MatrixXd(rows, 0);
    return out;
  }

  Eigen::MatrixXd u;
  Eigen::MatrixXd v;
  {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.singular_values = svd.singularValues();
    u = svd.matrixU();
    v = svd.matrixV();
  }
  // BDCSVD can return NaN vectors when deflation meets many exact zeros
  // (e.g. the zero su(3) background); Jacobi is slower but robust there.
  if (u.hasNaN() || v.hasNaN() || out.singular_values.hasNaN()) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.singular_values = svd.singularValues();
    u = svd.matrixU();
    v = svd.matrixV();
  }
  const double thr = zero_threshold(out.singular_values, rel_cutoff);
  int rank = 0;
  for (Eigen::Index i = 0; i < out.singular_values.size(); ++i) {
    if (out.singular_values(i) > thr) {
      ++rank;
    }
  }
  out.rank = rank;
  out.kernel = v.rightCols(cols - rank);
  out.image = u.leftCols(rank);
  return out;
}

Eigen::MatrixXd nullspace(const Eigen::MatrixXd& m, double rel_cutoff)
{
  return split(m, rel_cutoff).kernel;
}

int numerical_rank(const Eigen::MatrixXd& m, double rel_cutoff)
{
  if (m.size() == 0) {
    return 0;
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd s = svd.singularValues();
  const double thr = zero_threshold(s, rel_cutoff);
  return static_cast<int>((s.array() > thr).count());
}

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& columns, double drop_tol)
{
  std::vector<Eigen::VectorXd> kept;
  for (Eigen::Index j = 0; j < columns.cols(); ++j) {
    Eigen::VectorXd v = columns.col(j);
    // two passes of MGS keep the result orthonormal to working precision
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : kept) {
        v -= q.dot(v) * q;
      }
    }
    const double n = v.norm();
    if (n > drop_tol) {
      kept.push_back(v / n);
    }
  }
  Eigen::MatrixXd out(columns.rows(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t j = 0; j < kept.size(); ++j) {
    out.col(static_cast<Eigen::Index>(j)) = kept[j];
  }
  return out;
}

Eigen::MatrixXd canonical_basis(const Eigen::MatrixXd& q)
{
  if (q.cols() == 0) {
    return q;
  }
  // rows of Q give the projections of the standard basis vectors
  const Eigen::MatrixXd projected = q * q.transpose();
  Eigen::MatrixXd basis = orthonormalize(projected, 1e-8);
  if (basis.cols() > q.cols()) {
    basis.conservativeResize(Eigen::NoChange, q.cols());
  }
  if (basis.cols() < q.cols()) {
    // a genuine residual fell under the drop tolerance; keep the input basis
    return q;
  }
  return basis;
}

double containment_residual(const Eigen::MatrixXd& inner, const Eigen::MatrixXd& outer)
{
  if (inner.cols() == 0) {
    return 0.0;
  }
  if (outer.cols() == 0) {
    return inner.norm();
  }
  const Eigen::MatrixXd residual = inner - outer * (outer.transpose() * inner);
  return residual.norm();
}

double subspace_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b)
{
  if (a.cols() != b.cols()) {
    return 1.0;
  }
  if (a.cols() == 0) {
    return 0.0;
  }
  const Eigen::MatrixXd residual = a - b * (b.transpose() * a);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(residual);
  return svd.singularValues()(0);
}

}  // namespace gaugestrata::linalg
