#include "gaugestrata/liealg.hpp"

#include "gaugestrata/errors.hpp"
#include "gaugestrata/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

namespace gaugestrata {

namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

std::vector<Eigen::MatrixXcd> pauli_matrices()
{
  std::vector<Eigen::MatrixXcd> s(3, Eigen::MatrixXcd::Zero(2, 2));
  s[0] << 0, 1, 1, 0;
  s[1] << 0, -I, I, 0;
  s[2] << 1, 0, 0, -1;
  return s;
}

std::vector<Eigen::MatrixXcd> gell_mann_matrices()
{
  std::vector<Eigen::MatrixXcd> l(8, Eigen::MatrixXcd::Zero(3, 3));
  l[0] << 0, 1, 0, 1, 0, 0, 0, 0, 0;
  l[1] << 0, -I, 0, I, 0, 0, 0, 0, 0;
  l[2] << 1, 0, 0, 0, -1, 0, 0, 0, 0;
  l[3] << 0, 0, 1, 0, 0, 0, 1, 0, 0;
  l[4] << 0, 0, -I, 0, 0, 0, I, 0, 0;
  l[5] << 0, 0, 0, 0, 0, 1, 0, 1, 0;
  l[6] << 0, 0, 0, 0, 0, -I, 0, I, 0;
  l[7] << 1, 0, 0, 0, 1, 0, 0, 0, -2;
  l[7] /= std::sqrt(3.0);
  return l;
}

// drop tolerance for bracket closure on unit-norm basis vectors
constexpr double kClosureTol = 1e-9;

}  // namespace

std::string_view to_string(GroupId id)
{
  return id == GroupId::SU2 ? "su2" : "su3";
}

GroupSpec::GroupSpec(GroupId id) : m_id(id)
{
  const auto hermitian = id == GroupId::SU2 ? pauli_matrices() : gell_mann_matrices();
  m_n = id == GroupId::SU2 ? 2 : 3;
  m_dim = static_cast<int>(hermitian.size());
  for (const auto& h : hermitian) {
    m_basis.push_back(-0.5 * I * h);
  }

  m_f.assign(static_cast<std::size_t>(m_dim * m_dim * m_dim), 0.0);
  for (int a = 0; a < m_dim; ++a) {
    for (int b = 0; b < m_dim; ++b) {
      const Eigen::MatrixXcd comm = m_basis[a] * m_basis[b] - m_basis[b] * m_basis[a];
      for (int c = 0; c < m_dim; ++c) {
        double v = 2.0 * (comm * m_basis[c].adjoint()).trace().real();
        // snap round-off so exact zeros stay exact zeros
        if (std::abs(v) < 1e-14) {
          v = 0.0;
        }
        m_f[(a * m_dim + b) * m_dim + c] = v;
      }
    }
  }
}

const GroupSpec& GroupSpec::get(GroupId id)
{
  static const GroupSpec su2(GroupId::SU2);
  static const GroupSpec su3(GroupId::SU3);
  return id == GroupId::SU2 ? su2 : su3;
}

void GroupSpec::require_member(const AlgebraElement& x, const char* what) const
{
  if (x.dim() != m_dim) {
    throw InvalidInput(std::string(what) + ": element of dimension " + std::to_string(x.dim()) +
                       " does not belong to " + std::string(name()));
  }
}

Eigen::MatrixXd GroupSpec::ad(const AlgebraElement& x) const
{
  require_member(x, "ad");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(m_dim, m_dim);
  for (int a = 0; a < m_dim; ++a) {
    if (x.coeffs(a) == 0.0) {
      continue;
    }
    for (int b = 0; b < m_dim; ++b) {
      for (int c = 0; c < m_dim; ++c) {
        m(c, b) += f(a, b, c) * x.coeffs(a);
      }
    }
  }
  return m;
}

Eigen::MatrixXcd GroupSpec::to_matrix(const AlgebraElement& x) const
{
  require_member(x, "to_matrix");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(m_n, m_n);
  for (int a = 0; a < m_dim; ++a) {
    m += x.coeffs(a) * m_basis[a];
  }
  return m;
}

AlgebraElement GroupSpec::from_matrix(const Eigen::MatrixXcd& m) const
{
  if (m.rows() != m_n || m.cols() != m_n) {
    throw InvalidInput("from_matrix: expected a " + std::to_string(m_n) + "x" +
                       std::to_string(m_n) + " matrix");
  }
  Eigen::VectorXd c(m_dim);
  for (int a = 0; a < m_dim; ++a) {
    c(a) = 2.0 * (m * m_basis[a].adjoint()).trace().real();
  }
  return AlgebraElement(c);
}

Eigen::MatrixXd GroupSpec::adjoint_matrix(const Eigen::MatrixXcd& g) const
{
  if (g.rows() != m_n || g.cols() != m_n) {
    throw InvalidInput("adjoint action: group element has wrong size");
  }
  const double unitarity =
      (g * g.adjoint() - Eigen::MatrixXcd::Identity(m_n, m_n)).cwiseAbs().maxCoeff();
  if (unitarity > 1e-12) {
    throw InvalidInput("adjoint action: matrix is not unitary (defect " +
                       std::to_string(unitarity) + ")");
  }
  Eigen::MatrixXd o(m_dim, m_dim);
  for (int b = 0; b < m_dim; ++b) {
    const Eigen::MatrixXcd rotated = g * m_basis[b] * g.adjoint();
    o.col(b) = from_matrix(rotated).coeffs;
  }
  return o;
}

Eigen::MatrixXd Subalgebra::as_columns(int algebra_dim) const
{
  Eigen::MatrixXd m(algebra_dim, dim());
  for (int j = 0; j < dim(); ++j) {
    m.col(j) = basis[j].coeffs;
  }
  return m;
}

Subalgebra Subalgebra::from_columns(const Eigen::MatrixXd& columns)
{
  Subalgebra s;
  for (Eigen::Index j = 0; j < columns.cols(); ++j) {
    s.basis.emplace_back(columns.col(j));
  }
  return s;
}

double Subalgebra::residual(const AlgebraElement& x) const
{
  const double n = x.norm();
  if (n == 0.0) {
    return 0.0;
  }
  Eigen::VectorXd r = x.coeffs;
  for (const auto& b : basis) {
    r -= b.coeffs.dot(r) * b.coeffs;
  }
  return r.norm() / n;
}

namespace liealg {

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y, const GroupSpec& spec)
{
  if (x.dim() != y.dim()) {
    throw InvalidInput("bracket: operands belong to different algebras");
  }
  spec.require_member(x, "bracket");
  const int d = spec.dim();
  Eigen::VectorXd z = Eigen::VectorXd::Zero(d);
  for (int a = 0; a < d; ++a) {
    if (x.coeffs(a) == 0.0) {
      continue;
    }
    for (int b = 0; b < d; ++b) {
      const double xy = x.coeffs(a) * y.coeffs(b);
      if (xy == 0.0) {
        continue;
      }
      for (int c = 0; c < d; ++c) {
        z(c) += spec.f(a, b, c) * xy;
      }
    }
  }
  return AlgebraElement(z);
}

namespace {

// Append w to the orthonormal set `basis` if it has a component outside it.
bool extend(std::vector<Eigen::VectorXd>& basis, Eigen::VectorXd w, double drop_tol)
{
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : basis) {
      w -= q.dot(w) * q;
    }
  }
  const double n = w.norm();
  if (n <= drop_tol) {
    return false;
  }
  basis.push_back(w / n);
  return true;
}

}  // namespace

Subalgebra generated_subalgebra(std::span<const AlgebraElement> gens, const GroupSpec& spec)
{
  double scale = 0.0;
  for (const auto& g : gens) {
    spec.require_member(g, "generated_subalgebra");
    scale = std::max(scale, g.norm());
  }
  std::vector<Eigen::VectorXd> basis;
  if (scale == 0.0) {
    return {};
  }
  for (const auto& g : gens) {
    extend(basis, g.coeffs, kClosureTol * scale);
  }

  // bracket every pair once; new vectors get paired with all earlier ones
  for (std::size_t j = 1; j < basis.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const AlgebraElement z =
          bracket(AlgebraElement(basis[i]), AlgebraElement(basis[j]), spec);
      extend(basis, z.coeffs, kClosureTol);
      if (static_cast<int>(basis.size()) == spec.dim()) {
        break;
      }
    }
  }

  Subalgebra out;
  for (auto& v : basis) {
    out.basis.emplace_back(std::move(v));
  }
  return out;
}

Subalgebra centralizer(std::span<const AlgebraElement> s, const GroupSpec& spec)
{
  const int d = spec.dim();
  if (s.empty()) {
    return Subalgebra::from_columns(Eigen::MatrixXd::Identity(d, d));
  }
  Eigen::MatrixXd stacked(d * static_cast<Eigen::Index>(s.size()), d);
  for (std::size_t k = 0; k < s.size(); ++k) {
    spec.require_member(s[k], "centralizer");
    // x -> [x, s_k] = -ad(s_k) x
    stacked.middleRows(static_cast<Eigen::Index>(k) * d, d) = -spec.ad(s[k]);
  }
  const Eigen::MatrixXd kernel = linalg::nullspace(stacked);
  return Subalgebra::from_columns(linalg::canonical_basis(kernel));
}

AlgebraElement adjoint_rotate(const AlgebraElement& x, const Eigen::MatrixXcd& g,
                              const GroupSpec& spec)
{
  spec.require_member(x, "adjoint_rotate");
  return AlgebraElement(spec.adjoint_matrix(g) * x.coeffs);
}

Eigen::MatrixXcd group_exp(const AlgebraElement& x, const GroupSpec& spec)
{
  // X antihermitian, so H = iX is hermitian and exp(X) = V exp(-i D) V^dagger
  const Eigen::MatrixXcd h = I * spec.to_matrix(x);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const Eigen::VectorXd d = es.eigenvalues();
  Eigen::VectorXcd phases(d.size());
  for (Eigen::Index k = 0; k < d.size(); ++k) {
    phases(k) = std::exp(-I * d(k));
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXcd random_group_element(const GroupSpec& spec, std::mt19937_64& rng)
{
  const int n = spec.n();
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd z(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      z(i, j) = cd(normal(rng), normal(rng));
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const double m = std::abs(r(j, j));
    if (m > 0.0) {
      q.col(j) *= r(j, j) / m;
    }
  }
  const cd det = q.determinant();
  q *= std::pow(det, -1.0 / n);
  return q;
}

double structure_constant_residual(const GroupSpec& spec)
{
  const int d = spec.dim();
  const auto& t = spec.basis();
  double worst = 0.0;
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      Eigen::MatrixXcd diff = t[a] * t[b] - t[b] * t[a];
      for (int c = 0; c < d; ++c) {
        diff -= spec.f(a, b, c) * t[c];
        worst = std::max(worst, std::abs(spec.f(a, b, c) + spec.f(b, a, c)));
        worst = std::max(worst, std::abs(spec.f(a, b, c) + spec.f(a, c, b)));
      }
      worst = std::max(worst, diff.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

bool contains(const Subalgebra& outer, const Subalgebra& inner, double tol)
{
  for (const auto& v : inner.basis) {
    if (outer.residual(v) > tol) {
      return false;
    }
  }
  return true;
}

bool same_span(const Subalgebra& a, const Subalgebra& b, double tol)
{
  return a.dim() == b.dim() && contains(a, b, tol) && contains(b, a, tol);
}

}  // namespace liealg
}  // namespace gaugestrata
