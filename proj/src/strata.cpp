#include "gaugestrata/strata.hpp"

#include "gaugestrata/errors.hpp"
#include "gaugestrata/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace gaugestrata {

namespace {

constexpr std::array<StratumRow, 3> kSu2Table = {{
    {1, "Z_2", "SU(2)", 0},
    {2, "U(1)", "U(1)", 1},
    {3, "SU(2)", "Z_2", 3},
}};

constexpr std::array<StratumRow, 5> kSu3Table = {{
    {1, "Z_3", "SU(3)", 0},
    {2, "U(1)", "U(2)", 1},
    {3, "U(1)xU(1)", "U(1)xU(1)", 2},
    {4, "U(2)", "U(1)", 4},
    {5, "SU(3)", "Z_3", 8},
}};

int levi_civita(int i, int j, int k)
{
  if (i == j || j == k || i == k) {
    return 0;
  }
  return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

}  // namespace

ConstantField ConstantField::zero(GroupId group, double g, double volume)
{
  const int d = GroupSpec::get(group).dim();
  ConstantField f;
  f.group = group;
  f.a = {AlgebraElement::zero(d), AlgebraElement::zero(d), AlgebraElement::zero(d)};
  f.g = g;
  f.volume = volume;
  return f;
}

ConstantField ConstantField::from_components(GroupId group, const Eigen::MatrixXd& components,
                                             double g, double volume)
{
  const int d = GroupSpec::get(group).dim();
  if (components.rows() != 3 || components.cols() != d) {
    throw InvalidInput("constant field: expected a 3x" + std::to_string(d) +
                       " coefficient matrix for " + std::string(to_string(group)));
  }
  ConstantField f = zero(group, g, volume);
  for (int i = 0; i < 3; ++i) {
    f.a[i] = AlgebraElement(components.row(i).transpose());
  }
  return f;
}

Eigen::MatrixXd ConstantField::components() const
{
  const int d = spec().dim();
  Eigen::MatrixXd m(3, d);
  for (int i = 0; i < 3; ++i) {
    m.row(i) = a[i].coeffs.transpose();
  }
  return m;
}

void ConstantField::validate() const
{
  for (const auto& ai : a) {
    spec().require_member(ai, "constant field");
  }
}

ConstantField rotate_spatial(const ConstantField& field, const Eigen::Matrix3d& rotation)
{
  field.validate();
  ConstantField out = field;
  const Eigen::MatrixXd c = rotation * field.components();
  for (int i = 0; i < 3; ++i) {
    out.a[i] = AlgebraElement(c.row(i).transpose());
  }
  return out;
}

ConstantField rotate_color(const ConstantField& field, const Eigen::MatrixXcd& g)
{
  field.validate();
  const Eigen::MatrixXd o = field.spec().adjoint_matrix(g);
  ConstantField out = field;
  for (auto& ai : out.a) {
    ai.coeffs = o * ai.coeffs;
  }
  return out;
}

std::string_view to_string(HolonomyMode mode)
{
  return mode == HolonomyMode::CurvatureSpan ? "curvature" : "ambrose-singer";
}

std::span<const StratumRow> strata_table(GroupId group)
{
  if (group == GroupId::SU2) {
    return kSu2Table;
  }
  return kSu3Table;
}

namespace strata {

std::array<AlgebraElement, 3> curvature(const ConstantField& field)
{
  field.validate();
  const GroupSpec& spec = field.spec();
  const int d = spec.dim();
  std::array<AlgebraElement, 3> b{AlgebraElement::zero(d), AlgebraElement::zero(d),
                                  AlgebraElement::zero(d)};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        const int e = levi_civita(i, j, k);
        if (e == 0) {
          continue;
        }
        b[i] += (-0.5 * field.g * e) * liealg::bracket(field.a[j], field.a[k], spec);
      }
    }
  }
  return b;
}

Subalgebra holonomy_algebra(const ConstantField& field, HolonomyMode mode)
{
  const GroupSpec& spec = field.spec();
  const auto b = curvature(field);
  Subalgebra hol = liealg::generated_subalgebra(b, spec);
  if (mode == HolonomyMode::CurvatureSpan || hol.dim() == 0) {
    return hol;
  }

  // Ambrose-Singer: close under ad(A_j) as well as under brackets
  double a_scale = 0.0;
  for (const auto& aj : field.a) {
    a_scale = std::max(a_scale, aj.norm());
  }
  if (a_scale == 0.0) {
    return hol;
  }
  while (hol.dim() < spec.dim()) {
    std::vector<AlgebraElement> gens = hol.basis;
    for (const auto& v : hol.basis) {
      for (const auto& aj : field.a) {
        AlgebraElement w = liealg::bracket(aj, v, spec);
        // ignore directions that are round-off relative to |A_j|
        if (w.norm() > 1e-9 * a_scale) {
          gens.push_back((1.0 / a_scale) * w);
        }
      }
    }
    Subalgebra next = liealg::generated_subalgebra(gens, spec);
    if (next.dim() == hol.dim()) {
      break;
    }
    hol = std::move(next);
  }
  return hol;
}

Subalgebra isotropy_algebra(const ConstantField& field, HolonomyMode mode)
{
  const Subalgebra hol = holonomy_algebra(field, mode);
  return liealg::centralizer(hol.basis, field.spec());
}

StratumReport classify(const ConstantField& field, HolonomyMode mode)
{
  const Subalgebra hol = holonomy_algebra(field, mode);
  const Subalgebra iso = liealg::centralizer(hol.basis, field.spec());

  StratumReport report;
  report.group = field.group;
  report.mode = mode;
  report.holonomy_dim = hol.dim();
  report.isotropy_dim = iso.dim();
  for (const auto& row : strata_table(field.group)) {
    if (row.isotropy_dim == iso.dim()) {
      report.stratum_index = row.index;
      report.isotropy_label = std::string(row.isotropy);
      report.subbundle_label = std::string(row.subbundle);
      return report;
    }
  }
  throw InternalError("classify: isotropy dimension " + std::to_string(iso.dim()) +
                      " matches no stratum of " + std::string(to_string(field.group)));
}

std::string_view to_string(TypeOrder order)
{
  switch (order) {
    case TypeOrder::Less: return "less";
    case TypeOrder::Greater: return "greater";
    case TypeOrder::Equal: return "equal";
    case TypeOrder::Incomparable: return "incomparable";
  }
  return "incomparable";
}

TypeOrder type_order(const StratumReport& r1, const StratumReport& r2)
{
  if (r1.group != r2.group) {
    throw InvalidInput("type_order: reports belong to different groups");
  }
  const auto table = strata_table(r1.group);
  const auto valid = [&](int idx) { return idx >= 1 && idx <= static_cast<int>(table.size()); };
  if (!valid(r1.stratum_index) || !valid(r2.stratum_index)) {
    throw InvalidInput("type_order: stratum index outside the table");
  }
  // both tables are chains: higher index = larger isotropy = smaller type
  if (r1.stratum_index == r2.stratum_index) {
    return TypeOrder::Equal;
  }
  return r1.stratum_index > r2.stratum_index ? TypeOrder::Less : TypeOrder::Greater;
}

CanonicalForm canonicalize_spatial(const ConstantField& field)
{
  field.validate();
  const Eigen::MatrixXd comps = field.components();
  const Eigen::Matrix3d m = comps * comps.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(m);

  // eigen returns ascending order
  Eigen::Matrix3d rot;
  for (int r = 0; r < 3; ++r) {
    rot.row(r) = es.eigenvectors().col(2 - r).transpose();
  }
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 3; ++c) {
      if (std::abs(rot(r, c)) > 1e-12) {
        if (rot(r, c) < 0.0) {
          rot.row(r) *= -1.0;
        }
        break;
      }
    }
  }
  rot.row(2) = rot.row(0).cross(rot.row(1));

  CanonicalForm out;
  out.rotation = rot;
  out.field = rotate_spatial(field, rot);
  const int d = field.spec().dim();
  out.color_rotation = Eigen::MatrixXd::Identity(d, d);
  if (field.group != GroupId::SU2) {
    return out;
  }

  // For su(2) the adjoint action is all of SO(3): send the (mutually
  // orthogonal) color vectors A'_i to the coordinate axes.
  const Eigen::MatrixXd c = out.field.components();
  double scale = c.norm();
  std::vector<Eigen::Vector3d> frame;
  std::vector<bool> from_field;
  for (int i = 0; i < 3; ++i) {
    Eigen::Vector3d v = c.row(i).transpose();
    for (const auto& q : frame) {
      v -= q.dot(v) * q;
    }
    if (scale > 0.0 && v.norm() > 1e-12 * scale) {
      frame.push_back(v.normalized());
      from_field.push_back(true);
    } else {
      frame.emplace_back(Eigen::Vector3d::Zero());
      from_field.push_back(false);
    }
  }
  // complete missing directions from the standard basis
  for (int i = 0; i < 3; ++i) {
    if (from_field[i]) {
      continue;
    }
    for (int e = 0; e < 3; ++e) {
      Eigen::Vector3d v = Eigen::Vector3d::Unit(e);
      for (int j = 0; j < 3; ++j) {
        if (j != i && frame[j].squaredNorm() > 0.0) {
          v -= frame[j].dot(v) * frame[j];
        }
      }
      if (v.norm() > 1e-6) {
        frame[i] = v.normalized();
        break;
      }
    }
  }
  Eigen::Matrix3d o;
  for (int i = 0; i < 3; ++i) {
    o.row(i) = frame[i].transpose();
  }
  if (o.determinant() < 0.0) {
    // prefer flipping an axis the field does not occupy
    int flip = 2;
    for (int i = 2; i >= 0; --i) {
      if (!from_field[i]) {
        flip = i;
        break;
      }
    }
    o.row(flip) *= -1.0;
  }
  out.color_rotation = o;
  for (auto& ai : out.field.a) {
    ai.coeffs = o * ai.coeffs;
  }
  return out;
}

}  // namespace strata
}  // namespace gaugestrata
