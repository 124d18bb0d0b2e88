#include "gaugestrata/constraints.hpp"

#include "gaugestrata/errors.hpp"
#include "gaugestrata/linalg.hpp"

#include <cmath>
#include <string>

namespace gaugestrata {

namespace {

struct StructureEntry {
  int a;
  int b;
  int c;
  double f;
};

/// Nonzero f_abc of the group, so brackets skip the zero entries.
std::vector<StructureEntry> structure_entries(const GroupSpec& spec)
{
  std::vector<StructureEntry> out;
  const int d = spec.dim();
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      for (int c = 0; c < d; ++c) {
        if (spec.f(a, b, c) != 0.0) {
          out.push_back({a, b, c, spec.f(a, b, c)});
        }
      }
    }
  }
  return out;
}

const std::vector<StructureEntry>& entries(GroupId id)
{
  static const std::vector<StructureEntry> su2 = structure_entries(GroupSpec::get(GroupId::SU2));
  static const std::vector<StructureEntry> su3 = structure_entries(GroupSpec::get(GroupId::SU3));
  return id == GroupId::SU2 ? su2 : su3;
}

/// out_c += s * sum_i [X_i, Y_i]_c at every site.
void add_pairwise_bracket(const LatticeBackground& bg, const Eigen::VectorXd& x,
                          const Eigen::VectorXd& y, double s, Eigen::VectorXd& out)
{
  const int d = bg.dim();
  const auto& fe = entries(bg.group);
  for (int site = 0; site < bg.sites(); ++site) {
    for (int i = 0; i < 3; ++i) {
      const Eigen::Index base = bg.index(site, i, 0);
      for (const auto& t : fe) {
        out(Eigen::Index(site) * d + t.c) += s * t.f * x(base + t.a) * y(base + t.b);
      }
    }
  }
}

/// out_{i,c} += s * [v, Y_i]_c at every site.
void add_section_bracket(const LatticeBackground& bg, const Eigen::VectorXd& v,
                         const Eigen::VectorXd& y, double s, Eigen::VectorXd& out)
{
  const int d = bg.dim();
  const auto& fe = entries(bg.group);
  for (int site = 0; site < bg.sites(); ++site) {
    const Eigen::Index vs = Eigen::Index(site) * d;
    for (int i = 0; i < 3; ++i) {
      const Eigen::Index base = bg.index(site, i, 0);
      for (const auto& t : fe) {
        out(base + t.c) += s * t.f * v(vs + t.a) * y(base + t.b);
      }
    }
  }
}

void require_field(const LatticeBackground& bg, const Eigen::VectorXd& x, const char* what)
{
  if (x.size() != bg.field_size()) {
    throw InvalidInput(std::string(what) + ": expected " + std::to_string(bg.field_size()) +
                       " entries, got " + std::to_string(x.size()));
  }
}

void require_tangent(const LatticeBackground& bg, const TangentPair& t)
{
  require_field(bg, t.a, "tangent a");
  require_field(bg, t.e, "tangent e");
}

void require_section(const LatticeBackground& bg, const DualSection& v)
{
  if (v.v.size() != bg.section_size()) {
    throw InvalidInput("dual section: expected " + std::to_string(bg.section_size()) +
                       " entries, got " + std::to_string(v.v.size()));
  }
}

/// Neighbor of `site` shifted by `step` along axis i.
int shifted(const LatticeBackground& bg, int site, int i, int step)
{
  int c[3] = {site / (bg.L * bg.L), (site / bg.L) % bg.L, site % bg.L};
  c[i] += step;
  return bg.site(c[0], c[1], c[2]);
}

Eigen::VectorXd rotate_blocks(const Eigen::VectorXd& x, int d, const Eigen::MatrixXd& o)
{
  Eigen::VectorXd out = x;
  for (Eigen::Index k = 0; k + d <= x.size(); k += d) {
    out.segment(k, d) = o * x.segment(k, d);
  }
  return out;
}

}  // namespace

std::string_view to_string(DifferenceScheme scheme)
{
  return scheme == DifferenceScheme::Staggered ? "staggered" : "central";
}

std::optional<DifferenceScheme> parse_difference_scheme(std::string_view name)
{
  if (name == "staggered") {
    return DifferenceScheme::Staggered;
  }
  if (name == "central") {
    return DifferenceScheme::Central;
  }
  return std::nullopt;
}

int LatticeBackground::site(int x, int y, int z) const
{
  const auto wrap = [this](int c) { return ((c % L) + L) % L; };
  return (wrap(x) * L + wrap(y)) * L + wrap(z);
}

LatticeBackground LatticeBackground::zero(GroupId group, int L, double spacing, double g,
                                          DifferenceScheme scheme)
{
  LatticeBackground bg;
  bg.group = group;
  bg.L = L;
  bg.spacing = spacing;
  bg.g = g;
  bg.scheme = scheme;
  if (L < 2) {
    throw InvalidInput("lattice: L must be >= 2");
  }
  bg.A = Eigen::VectorXd::Zero(bg.field_size());
  bg.E = Eigen::VectorXd::Zero(bg.field_size());
  return bg;
}

void LatticeBackground::validate() const
{
  if (L < 2) {
    throw InvalidInput("lattice: L must be >= 2");
  }
  if (!(spacing > 0.0)) {
    throw InvalidInput("lattice: spacing must be positive");
  }
  if (!(g > 0.0)) {
    throw InvalidInput("lattice: coupling must be positive");
  }
  require_field(*this, A, "background A");
  require_field(*this, E, "background E");
}

TangentPair TangentPair::zero(const LatticeBackground& bg)
{
  return {Eigen::VectorXd::Zero(bg.field_size()), Eigen::VectorXd::Zero(bg.field_size())};
}

DualSection DualSection::zero(const LatticeBackground& bg)
{
  return {Eigen::VectorXd::Zero(bg.section_size())};
}

namespace constraints {

DualSection divergence(const LatticeBackground& bg, const Eigen::VectorXd& field)
{
  require_field(bg, field, "divergence");
  const int d = bg.dim();
  DualSection out = DualSection::zero(bg);
  const bool staggered = bg.scheme == DifferenceScheme::Staggered;
  const double w = staggered ? 1.0 / bg.spacing : 0.5 / bg.spacing;
  for (int site = 0; site < bg.sites(); ++site) {
    for (int i = 0; i < 3; ++i) {
      const int back = shifted(bg, site, i, -1);
      const int fwd = staggered ? site : shifted(bg, site, i, +1);
      for (int a = 0; a < d; ++a) {
        out.v(Eigen::Index(site) * d + a) +=
            w * (field(bg.index(fwd, i, a)) - field(bg.index(back, i, a)));
      }
    }
  }
  return out;
}

Eigen::VectorXd gradient(const LatticeBackground& bg, const DualSection& v)
{
  require_section(bg, v);
  const int d = bg.dim();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(bg.field_size());
  const bool staggered = bg.scheme == DifferenceScheme::Staggered;
  const double w = staggered ? 1.0 / bg.spacing : 0.5 / bg.spacing;
  for (int site = 0; site < bg.sites(); ++site) {
    for (int i = 0; i < 3; ++i) {
      const int fwd = shifted(bg, site, i, +1);
      const int back = staggered ? site : shifted(bg, site, i, -1);
      for (int a = 0; a < d; ++a) {
        out(bg.index(site, i, a)) =
            w * (v.v(Eigen::Index(fwd) * d + a) - v.v(Eigen::Index(back) * d + a));
      }
    }
  }
  return out;
}

DualSection momentum_map(const LatticeBackground& bg)
{
  bg.validate();
  DualSection out = divergence(bg, bg.E);
  add_pairwise_bracket(bg, bg.A, bg.E, bg.g, out.v);
  return out;
}

DualSection jprime(const LatticeBackground& bg, const TangentPair& t)
{
  bg.validate();
  require_tangent(bg, t);
  DualSection out = divergence(bg, t.e);
  add_pairwise_bracket(bg, bg.A, t.e, bg.g, out.v);
  add_pairwise_bracket(bg, t.a, bg.E, bg.g, out.v);
  return out;
}

TangentPair jprime_adjoint(const LatticeBackground& bg, const DualSection& v)
{
  bg.validate();
  require_section(bg, v);
  TangentPair out;
  out.a = Eigen::VectorXd::Zero(bg.field_size());
  add_section_bracket(bg, v.v, bg.E, -bg.g, out.a);
  out.e = -gradient(bg, v);
  add_section_bracket(bg, v.v, bg.A, bg.g, out.e);
  return out;
}

TangentPair apply_complex_structure(const TangentPair& t)
{
  return {-t.e, t.a};
}

DualSection quadratic_form(const LatticeBackground& bg, const TangentPair& t1,
                           const TangentPair& t2)
{
  require_tangent(bg, t1);
  require_tangent(bg, t2);
  DualSection out = DualSection::zero(bg);
  add_pairwise_bracket(bg, t1.a, t2.e, bg.g, out.v);
  add_pairwise_bracket(bg, t2.a, t1.e, bg.g, out.v);
  return out;
}

ConstraintReport qc_check(const LatticeBackground& bg, const TangentPair& t, double tol)
{
  if (!(tol >= 0.0)) {
    throw InvalidInput("qc_check: tolerance must be >= 0");
  }
  ConstraintReport r;
  r.tolerance = tol;
  r.slice_residual = norm(bg, jprime(bg, apply_complex_structure(t)));
  r.linear_residual = norm(bg, jprime(bg, t));
  // quadratic_form(t, t) is twice the diagonal [a ^ e]
  r.quadratic_residual = 0.5 * norm(bg, quadratic_form(bg, t, t));
  r.member = r.slice_residual <= tol && r.linear_residual <= tol && r.quadratic_residual <= tol;
  return r;
}

TangentPair gauge_variation(const LatticeBackground& bg, const DualSection& dalpha)
{
  bg.validate();
  require_section(bg, dalpha);
  TangentPair out;
  out.a = -gradient(bg, dalpha);
  add_section_bracket(bg, dalpha.v, bg.A, bg.g, out.a);
  out.e = Eigen::VectorXd::Zero(bg.field_size());
  add_section_bracket(bg, dalpha.v, bg.E, bg.g, out.e);
  return out;
}

double inner(const LatticeBackground& bg, const TangentPair& t, const TangentPair& s)
{
  require_tangent(bg, t);
  require_tangent(bg, s);
  const double h3 = std::pow(bg.spacing, 3);
  return h3 * (t.a.dot(s.a) + t.e.dot(s.e));
}

double inner(const LatticeBackground& bg, const DualSection& v, const DualSection& w)
{
  require_section(bg, v);
  require_section(bg, w);
  return std::pow(bg.spacing, 3) * v.v.dot(w.v);
}

double norm(const LatticeBackground& bg, const TangentPair& t)
{
  return std::sqrt(inner(bg, t, t));
}

double norm(const LatticeBackground& bg, const DualSection& v)
{
  return std::sqrt(inner(bg, v, v));
}

Eigen::VectorXd to_vector(const TangentPair& t)
{
  Eigen::VectorXd x(t.a.size() + t.e.size());
  x << t.a, t.e;
  return x;
}

TangentPair tangent_from_vector(const LatticeBackground& bg, const Eigen::VectorXd& x)
{
  const Eigen::Index n = bg.field_size();
  if (x.size() != 2 * n) {
    throw InvalidInput("tangent vector: expected " + std::to_string(2 * n) + " entries");
  }
  return {x.head(n), x.tail(n)};
}

void require_dense_size(const LatticeBackground& bg)
{
  const int cap = bg.group == GroupId::SU2 ? kMaxDenseL_SU2 : kMaxDenseL_SU3;
  if (bg.L > cap) {
    throw ResourceLimit("dense assembly limited to L <= " + std::to_string(cap) + " for " +
                        std::string(to_string(bg.group)) + ", got L = " +
                        std::to_string(bg.L));
  }
}

Eigen::MatrixXd assemble_jprime(const LatticeBackground& bg)
{
  bg.validate();
  require_dense_size(bg);
  const Eigen::Index n = bg.field_size();
  Eigen::MatrixXd m(bg.section_size(), 2 * n);
  TangentPair t = TangentPair::zero(bg);
  for (Eigen::Index j = 0; j < 2 * n; ++j) {
    Eigen::VectorXd& slot = j < n ? t.a : t.e;
    const Eigen::Index k = j < n ? j : j - n;
    slot(k) = 1.0;
    m.col(j) = jprime(bg, t).v;
    slot(k) = 0.0;
  }
  return m;
}

Eigen::MatrixXd assemble_jprime_adjoint(const LatticeBackground& bg)
{
  bg.validate();
  require_dense_size(bg);
  Eigen::MatrixXd m(2 * bg.field_size(), bg.section_size());
  DualSection v = DualSection::zero(bg);
  for (Eigen::Index j = 0; j < bg.section_size(); ++j) {
    v.v(j) = 1.0;
    m.col(j) = to_vector(jprime_adjoint(bg, v));
    v.v(j) = 0.0;
  }
  return m;
}

std::vector<DualSection> symmetry_space(const LatticeBackground& bg)
{
  const Eigen::MatrixXd adj = assemble_jprime_adjoint(bg);
  const Eigen::MatrixXd ker = linalg::canonical_basis(linalg::nullspace(adj));
  std::vector<DualSection> out;
  for (Eigen::Index j = 0; j < ker.cols(); ++j) {
    out.push_back({ker.col(j)});
  }
  return out;
}

SplittingReport verify_splittings(const LatticeBackground& bg)
{
  const Eigen::MatrixXd jp = assemble_jprime(bg);
  const Eigen::MatrixXd adj = assemble_jprime_adjoint(bg);
  const linalg::SubspaceSplit sj = linalg::split(jp);
  const linalg::SubspaceSplit sa = linalg::split(adj);

  SplittingReport r;
  r.dim_total = static_cast<int>(jp.cols());
  r.dim_section = static_cast<int>(jp.rows());
  r.dim_ker_jprime = static_cast<int>(sj.kernel.cols());
  r.dim_im_jprime = static_cast<int>(sj.image.cols());
  r.dim_im_jprime_adj = static_cast<int>(sa.image.cols());
  r.dim_ker_jprime_adj = static_cast<int>(sa.kernel.cols());
  r.adjoint_residual = (jp.transpose() - adj).cwiseAbs().maxCoeff();
  r.orth_residual = (sj.kernel.cols() > 0 && sa.image.cols() > 0)
                        ? (sj.kernel.transpose() * sa.image).cwiseAbs().maxCoeff()
                        : 0.0;
  return r;
}

TangentSplit decompose_tangent(const LatticeBackground& bg, const TangentPair& t)
{
  require_tangent(bg, t);
  const Eigen::MatrixXd jp = assemble_jprime(bg);
  const Eigen::MatrixXd adj = assemble_jprime_adjoint(bg);
  const Eigen::VectorXd x = to_vector(t);

  const Eigen::MatrixXd ker = linalg::nullspace(jp);
  const Eigen::VectorXd k = ker * (ker.transpose() * x);

  // image part from its own SVD basis, so the residual tests both subspaces
  const Eigen::MatrixXd im = linalg::split(adj).image;
  const Eigen::VectorXd r = im * (im.transpose() * x);

  TangentSplit out;
  out.kernel_part = tangent_from_vector(bg, k);
  out.image_part = tangent_from_vector(bg, r);
  const double xn = x.norm();
  out.residual = xn > 0.0 ? (x - k - r).norm() / xn : (k + r).norm();
  return out;
}

Eigen::MatrixXd slice_constraint_kernel(const LatticeBackground& bg)
{
  const Eigen::MatrixXd jp = assemble_jprime(bg);
  const Eigen::Index n = bg.field_size();
  // J'(J t) for t = [a; e] is J'_a (-e) + J'_e a
  Eigen::MatrixXd stacked(2 * jp.rows(), jp.cols());
  stacked.topLeftCorner(jp.rows(), n) = jp.rightCols(n);
  stacked.topRightCorner(jp.rows(), n) = -jp.leftCols(n);
  stacked.bottomRows(jp.rows()) = jp;
  return linalg::nullspace(stacked);
}

std::vector<TangentPair> same_symmetry_tangents(const LatticeBackground& bg)
{
  const Eigen::MatrixXd w = slice_constraint_kernel(bg);
  const Eigen::Index k = w.cols();
  const Eigen::Index m = bg.section_size();
  if (double(k) * double(k) * double(m) > kMaxBilinearEntries) {
    throw ResourceLimit("same_symmetry_tangents: bilinear system with " + std::to_string(k) +
                        " basis tangents exceeds the dense budget");
  }
  std::vector<TangentPair> basis;
  basis.reserve(static_cast<std::size_t>(k));
  for (Eigen::Index j = 0; j < k; ++j) {
    basis.push_back(tangent_from_vector(bg, w.col(j)));
  }

  // rows (j, b): coefficient i of quadratic_form(w_i, w_j)_b
  Eigen::MatrixXd q(k * m, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i; j < k; ++j) {
      const Eigen::VectorXd qij =
          quadratic_form(bg, basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)]).v;
      q.block(j * m, i, m, 1) = qij;
      q.block(i * m, j, m, 1) = qij;
    }
  }
  std::vector<TangentPair> out;
  if (k == 0) {
    return out;
  }
  const Eigen::MatrixXd c = linalg::nullspace(q);
  const Eigen::MatrixXd t = linalg::canonical_basis(linalg::orthonormalize(w * c, 1e-8));
  for (Eigen::Index j = 0; j < t.cols(); ++j) {
    out.push_back(tangent_from_vector(bg, t.col(j)));
  }
  return out;
}

LatticeBackground random_background(GroupId group, int L, std::mt19937_64& rng, double scale,
                                    double spacing, double g, DifferenceScheme scheme)
{
  LatticeBackground bg = LatticeBackground::zero(group, L, spacing, g, scheme);
  std::normal_distribution<double> nd(0.0, scale);
  for (Eigen::Index j = 0; j < bg.A.size(); ++j) {
    bg.A(j) = nd(rng);
  }
  for (Eigen::Index j = 0; j < bg.E.size(); ++j) {
    bg.E(j) = nd(rng);
  }
  bg.validate();
  return bg;
}

TangentPair random_tangent(const LatticeBackground& bg, std::mt19937_64& rng, double scale)
{
  TangentPair t = TangentPair::zero(bg);
  std::normal_distribution<double> nd(0.0, scale);
  for (Eigen::Index j = 0; j < t.a.size(); ++j) {
    t.a(j) = nd(rng);
  }
  for (Eigen::Index j = 0; j < t.e.size(); ++j) {
    t.e(j) = nd(rng);
  }
  return t;
}

DualSection random_section(const LatticeBackground& bg, std::mt19937_64& rng, double scale)
{
  DualSection v = DualSection::zero(bg);
  std::normal_distribution<double> nd(0.0, scale);
  for (Eigen::Index j = 0; j < v.v.size(); ++j) {
    v.v(j) = nd(rng);
  }
  return v;
}

LatticeBackground constant_background(GroupId group, int L, const Eigen::MatrixXd& a,
                                      const Eigen::MatrixXd& e, double spacing, double g,
                                      DifferenceScheme scheme)
{
  LatticeBackground bg = LatticeBackground::zero(group, L, spacing, g, scheme);
  const int d = bg.dim();
  if (a.rows() != 3 || a.cols() != d || e.rows() != 3 || e.cols() != d) {
    throw InvalidInput("constant background: expected 3x" + std::to_string(d) + " matrices");
  }
  for (int site = 0; site < bg.sites(); ++site) {
    for (int i = 0; i < 3; ++i) {
      bg.A.segment(bg.index(site, i, 0), d) = a.row(i).transpose();
      bg.E.segment(bg.index(site, i, 0), d) = e.row(i).transpose();
    }
  }
  bg.validate();
  return bg;
}

LatticeBackground rotate_color(const LatticeBackground& bg, const Eigen::MatrixXcd& u)
{
  bg.validate();
  const Eigen::MatrixXd o = bg.spec().adjoint_matrix(u);
  LatticeBackground out = bg;
  out.A = rotate_blocks(bg.A, bg.dim(), o);
  out.E = rotate_blocks(bg.E, bg.dim(), o);
  return out;
}

TangentPair rotate_color(const LatticeBackground& bg, const TangentPair& t,
                         const Eigen::MatrixXcd& u)
{
  require_tangent(bg, t);
  const Eigen::MatrixXd o = bg.spec().adjoint_matrix(u);
  return {rotate_blocks(t.a, bg.dim(), o), rotate_blocks(t.e, bg.dim(), o)};
}

DualSection rotate_color(const LatticeBackground& bg, const DualSection& v,
                         const Eigen::MatrixXcd& u)
{
  require_section(bg, v);
  const Eigen::MatrixXd o = bg.spec().adjoint_matrix(u);
  return {rotate_blocks(v.v, bg.dim(), o)};
}

}  // namespace constraints
}  // namespace gaugestrata
