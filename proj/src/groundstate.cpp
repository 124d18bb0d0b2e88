#include "gaugestrata/groundstate.hpp"

#include "gaugestrata/errors.hpp"
#include "gaugestrata/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <string>

namespace gaugestrata {

namespace {

/// |r| at or below this multiple of max(1, max|r|) is rounding noise.
constexpr double kRoundingFloor = 1e-13;

constexpr std::array<std::string_view, 3> kSu2DiagParams = {"a1", "a2", "a3"};
constexpr std::array<std::string_view, 3> kSu3IParams = {"a1", "a2", "a3"};
constexpr std::array<std::string_view, 3> kSu3IIParams = {"a1", "a2", "a8"};
constexpr std::array<std::string_view, 3> kSu3IIIParams = {"a4", "a5", "a8"};
constexpr std::array<std::string_view, 2> kSu3IVParams = {"a2", "a3"};

constexpr std::array<std::pair<Ansatz, std::string_view>, 5> kAnsatzNames = {{
    {Ansatz::SU2_DIAG, "SU2_DIAG"},
    {Ansatz::SU3_I, "SU3_I"},
    {Ansatz::SU3_II, "SU3_II"},
    {Ansatz::SU3_III, "SU3_III"},
    {Ansatz::SU3_IV, "SU3_IV"},
}};

constexpr std::array<std::pair<ClosedFormCase, std::string_view>, 7> kCaseNames = {{
    {ClosedFormCase::SU2_DIAG, "SU2_DIAG"},
    {ClosedFormCase::SU3_II, "SU3_II"},
    {ClosedFormCase::SU3_III, "SU3_III"},
    {ClosedFormCase::SU3_IV, "SU3_IV"},
    {ClosedFormCase::SU3_III_A4ZERO, "SU3_III_A4ZERO"},
    {ClosedFormCase::SU3_III_A5ZERO, "SU3_III_A5ZERO"},
    {ClosedFormCase::SU3_III_A8ZERO, "SU3_III_A8ZERO"},
}};

int closed_form_arity(ClosedFormCase c)
{
  switch (c) {
    case ClosedFormCase::SU2_DIAG:
    case ClosedFormCase::SU3_III: return 3;
    default: return 2;
  }
}

int levi_civita(int i, int j, int k)
{
  if (i == j || j == k || i == k) {
    return 0;
  }
  return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

double safe_ratio(double num, double den)
{
  // every printed form vanishes with its numerator, including at 0/0 points
  if (num == 0.0) {
    return 0.0;
  }
  return num / den;
}

}  // namespace

std::string_view to_string(SigmaMethod method)
{
  return method == SigmaMethod::Spectral ? "spectral" : "quadrature";
}

std::string_view to_string(Ansatz ansatz)
{
  for (const auto& [a, name] : kAnsatzNames) {
    if (a == ansatz) {
      return name;
    }
  }
  return "?";
}

std::optional<Ansatz> parse_ansatz(std::string_view name)
{
  for (const auto& [a, n] : kAnsatzNames) {
    if (n == name) {
      return a;
    }
  }
  return std::nullopt;
}

GroupId ansatz_group(Ansatz ansatz)
{
  return ansatz == Ansatz::SU2_DIAG ? GroupId::SU2 : GroupId::SU3;
}

std::span<const std::string_view> ansatz_parameters(Ansatz ansatz)
{
  switch (ansatz) {
    case Ansatz::SU2_DIAG: return kSu2DiagParams;
    case Ansatz::SU3_I: return kSu3IParams;
    case Ansatz::SU3_II: return kSu3IIParams;
    case Ansatz::SU3_III: return kSu3IIIParams;
    case Ansatz::SU3_IV: return kSu3IVParams;
  }
  return {};
}

ConstantField ansatz_field(Ansatz ansatz, std::span<const double> params, double g,
                           double volume)
{
  const auto names = ansatz_parameters(ansatz);
  if (params.size() != names.size()) {
    throw InvalidInput(std::string(to_string(ansatz)) + " takes " +
                       std::to_string(names.size()) + " parameters, got " +
                       std::to_string(params.size()));
  }
  ConstantField f = ConstantField::zero(ansatz_group(ansatz), g, volume);
  const double sqrt2 = std::numbers::sqrt2;
  switch (ansatz) {
    case Ansatz::SU2_DIAG:
    case Ansatz::SU3_I:
      f.a[0].coeffs(0) = params[0];
      f.a[1].coeffs(1) = params[1];
      f.a[2].coeffs(2) = params[2];
      break;
    case Ansatz::SU3_II:
      f.a[0].coeffs(0) = params[0];
      f.a[1].coeffs(1) = params[1];
      f.a[2].coeffs(7) = params[2];
      break;
    case Ansatz::SU3_III:
      f.a[0].coeffs(3) = params[0];
      f.a[1].coeffs(4) = params[1];
      f.a[2].coeffs(7) = params[2];
      break;
    case Ansatz::SU3_IV:
      f.a[1].coeffs(3) = sqrt2 * params[0];
      f.a[1].coeffs(0) = params[0];
      f.a[2].coeffs(4) = -sqrt2 * params[1];
      f.a[2].coeffs(1) = params[1];
      break;
  }
  return f;
}

std::string_view to_string(ClosedFormCase c)
{
  for (const auto& [k, name] : kCaseNames) {
    if (k == c) {
      return name;
    }
  }
  return "?";
}

std::optional<ClosedFormCase> parse_closed_form_case(std::string_view name)
{
  for (const auto& [k, n] : kCaseNames) {
    if (n == name) {
      return k;
    }
  }
  return std::nullopt;
}

double closed_form(ClosedFormCase c, std::span<const double> params, double lambda,
                   PrintedVariant variant)
{
  if (static_cast<int>(params.size()) != closed_form_arity(c)) {
    throw InvalidInput(std::string("closed_form ") + std::string(to_string(c)) + " takes " +
                       std::to_string(closed_form_arity(c)) + " parameters");
  }
  const double l = lambda;
  switch (c) {
    case ClosedFormCase::SU2_DIAG: {
      const double a1 = params[0] * params[0];
      const double a2 = params[1] * params[1];
      const double a3 = params[2] * params[2];
      const double s = a1 + a2 + a3;
      const double num = a1 * a2 * a3 * s +
                         l * (a1 * a1 * (a2 + a3) + a2 * a2 * (a1 + a3) + a3 * a3 * (a1 + a2)) +
                         l * l * (a2 * a3 + a1 * a3 + a1 * a2);
      const double den = 4.0 * a1 * a2 * a3 + l * (l + s) * (l + s);
      return safe_ratio(num, den);
    }
    case ClosedFormCase::SU3_II: {
      const double a1 = params[0] * params[0];
      const double a2 = params[1] * params[1];
      return safe_ratio(a1 * a2, l + a1 + a2);
    }
    case ClosedFormCase::SU3_III: {
      const double a4 = params[0] * params[0];
      const double a5 = params[1] * params[1];
      const double a8 = params[2] * params[2];
      const double num =
          (16 * a4 * a5 + 12 * a5 * a8 + 12 * a4 * a8) * l * l +
          (16 * a4 * a5 * a5 + 16 * a4 * a4 * a5 + 12 * a5 * a5 * a8 + 9 * a5 * a8 * a8 +
           12 * a4 * a4 * a8 + 9 * a4 * a8 * a8) *
              l +
          12 * a4 * a4 * a5 * a8 + 12 * a4 * a5 * a5 * a8 + 9 * a4 * a5 * a8 * a8;
      const double a5_quartic =
          variant == PrintedVariant::AsPrinted ? 16 * a5 * a5 * l : 16 * a5 * a5;
      const double den = 16 * l * l * l + (32 * a5 + 32 * a4 + 24 * a8) * l * l +
                         (16 * a4 * a4 + a5_quartic + 9 * a8 * a8 + 32 * a4 * a5 +
                          24 * a8 * a4 + 24 * a5 * a8) *
                             l +
                         48 * a5 * a8 * a4;
      return safe_ratio(4.0 * num, den);
    }
    case ClosedFormCase::SU3_IV: {
      const double a2 = params[0] * params[0];
      const double a3 = params[1] * params[1];
      const double num = 12.0 * a2 * a3 * (4 * l * l + 9 * l * (a2 + a3) + 18 * a2 * a3);
      const double den = (4 * l + 3 * a2 + 3 * a3) * (l * l + 3 * l * (a2 + a3) + 6 * a2 * a3);
      return safe_ratio(num, den);
    }
    case ClosedFormCase::SU3_III_A4ZERO:
    case ClosedFormCase::SU3_III_A5ZERO: {
      const double x = params[0] * params[0];
      const double a8 = params[1] * params[1];
      return safe_ratio(12.0 * x * a8, 4 * l + 4 * x + 3 * a8);
    }
    case ClosedFormCase::SU3_III_A8ZERO: {
      const double a4 = params[0] * params[0];
      const double a5 = params[1] * params[1];
      return safe_ratio(4.0 * a4 * a5, l + a4 + a5);
    }
  }
  return 0.0;
}

double printed_normalization(ClosedFormCase c)
{
  switch (c) {
    case ClosedFormCase::SU2_DIAG:
    case ClosedFormCase::SU3_II: return 1.0;
    default: return 4.0;
  }
}

ConstantField closed_form_field(ClosedFormCase c, std::span<const double> params)
{
  const bool su3_ii_with_a8 = c == ClosedFormCase::SU3_II && params.size() == 3;
  if (static_cast<int>(params.size()) != closed_form_arity(c) && !su3_ii_with_a8) {
    throw InvalidInput(std::string("closed_form_field ") + std::string(to_string(c)) +
                       ": wrong number of parameters");
  }
  switch (c) {
    case ClosedFormCase::SU2_DIAG: return ansatz_field(Ansatz::SU2_DIAG, params);
    case ClosedFormCase::SU3_II: {
      const std::array<double, 3> p = {params[0], params[1], su3_ii_with_a8 ? params[2] : 1.0};
      return ansatz_field(Ansatz::SU3_II, p);
    }
    case ClosedFormCase::SU3_III: return ansatz_field(Ansatz::SU3_III, params);
    case ClosedFormCase::SU3_IV: return ansatz_field(Ansatz::SU3_IV, params);
    case ClosedFormCase::SU3_III_A4ZERO: {
      const std::array<double, 3> p = {0.0, params[0], params[1]};
      return ansatz_field(Ansatz::SU3_III, p);
    }
    case ClosedFormCase::SU3_III_A5ZERO: {
      const std::array<double, 3> p = {params[0], 0.0, params[1]};
      return ansatz_field(Ansatz::SU3_III, p);
    }
    case ClosedFormCase::SU3_III_A8ZERO: {
      const std::array<double, 3> p = {params[0], params[1], 0.0};
      return ansatz_field(Ansatz::SU3_III, p);
    }
  }
  throw InvalidInput("closed_form_field: unknown case");
}

namespace groundstate {

ROperator build_R(const ConstantField& field)
{
  field.validate();
  const GroupSpec& spec = field.spec();
  const int d = spec.dim();
  ROperator r{Eigen::MatrixXd::Zero(3 * d, 3 * d)};
  for (int m = 0; m < 3; ++m) {
    // D_m = -g ad(A_m) in the constant-mode sector: (D_m)_{a a'} = -g f_{a a' c} A_m^c
    Eigen::MatrixXd dm = Eigen::MatrixXd::Zero(d, d);
    for (int a = 0; a < d; ++a) {
      for (int ap = 0; ap < d; ++ap) {
        double s = 0.0;
        for (int c = 0; c < d; ++c) {
          s += spec.f(a, ap, c) * field.a[m].coeffs(c);
        }
        dm(a, ap) = -field.g * s;
      }
    }
    for (int n = 0; n < 3; ++n) {
      for (int np = 0; np < 3; ++np) {
        const int e = levi_civita(n, m, np);
        if (e != 0) {
          r.matrix.block(n * d, np * d, d, d) += e * dm;
        }
      }
    }
  }
  return r;
}

Eigen::VectorXd curvature_vector(const ConstantField& field)
{
  const auto b = strata::curvature(field);
  const int d = field.spec().dim();
  Eigen::VectorXd v(3 * d);
  for (int n = 0; n < 3; ++n) {
    v.segment(n * d, d) = b[n].coeffs;
  }
  return v;
}

SigmaResult spectral_exponent(const Eigen::MatrixXd& r, const Eigen::VectorXd& b,
                              const KernelTolerance& tol)
{
  if (r.rows() != r.cols() || r.rows() != b.size()) {
    throw InvalidInput("sigma: R must be square and match the size of B");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r);
  const Eigen::VectorXd rev = es.eigenvalues();
  const Eigen::Index n = rev.size();

  // eigenpairs of R.R are (r_i^2, v_i); order by r_i^2
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index i, Eigen::Index j) { return std::abs(rev(i)) < std::abs(rev(j)); });

  SigmaResult out;
  out.method = SigmaMethod::Spectral;
  out.eigenvalues.resize(n);
  out.projections.resize(n);
  Eigen::VectorXd abs_r(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index i = order[static_cast<std::size_t>(k)];
    abs_r(k) = std::abs(rev(i));
    out.eigenvalues(k) = rev(i) * rev(i);
    const double c = es.eigenvectors().col(i).dot(b);
    out.projections(k) = c * c;
  }

  const double mu_max = n > 0 ? out.eigenvalues.maxCoeff() : 0.0;
  const double kernel_cut = tol.eigenvalue_rel * std::max(1.0, mu_max);
  // The kernel cut only decides divergence. Small but resolved |r_i| still
  // contribute: for B = -R A / 2 the term is |r_i| (A.v_i)^2 / 4, which the
  // quadrature route sees too. Only rounding-level |r_i| are skipped.
  const double noise_floor = kRoundingFloor * std::max(1.0, std::sqrt(mu_max));
  double kernel_weight = 0.0;
  double sigma = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (out.eigenvalues(k) <= kernel_cut) {
      kernel_weight += out.projections(k);
    }
    if (abs_r(k) > noise_floor) {
      sigma += out.projections(k) / abs_r(k);
    }
  }
  out.divergent = kernel_weight > tol.projection_rel * b.squaredNorm();
  out.sigma = out.divergent ? std::numeric_limits<double>::infinity() : sigma;
  return out;
}

SigmaResult quadrature_exponent(const Eigen::MatrixXd& r, const Eigen::VectorXd& b,
                                const QuadratureConfig& quad)
{
  if (r.rows() != r.cols() || r.rows() != b.size()) {
    throw InvalidInput("sigma: R must be square and match the size of B");
  }
  const Eigen::Index n = r.rows();
  SigmaResult out;
  out.method = SigmaMethod::Quadrature;

  // kernel detection from the SVD of R (ker R = ker R.R)
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(r, Eigen::ComputeFullV);
  const Eigen::VectorXd s = svd.singularValues();
  out.eigenvalues = s.array().square().reverse();
  out.projections.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double c = svd.matrixV().col(n - 1 - k).dot(b);
    out.projections(k) = c * c;
  }
  const double mu_max = n > 0 ? out.eigenvalues.maxCoeff() : 0.0;
  const double kernel_cut = quad.kernel.eigenvalue_rel * std::max(1.0, mu_max);
  double kernel_weight = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (out.eigenvalues(k) <= kernel_cut) {
      kernel_weight += out.projections(k);
    }
  }
  out.divergent = kernel_weight > quad.kernel.projection_rel * b.squaredNorm();
  if (out.divergent) {
    out.sigma = std::numeric_limits<double>::infinity();
    return out;
  }
  if (b.squaredNorm() == 0.0) {
    out.sigma = 0.0;
    return out;
  }

  // lambda = u^2 / (1-u)^2 turns (1/pi) int_0^inf lambda^{-1/2} B (lambda + RR)^{-1} B
  // into (2/pi) int_0^1 B (u^2 + (1-u)^2 RR)^{-1} B du, bounded at both ends
  Eigen::MatrixXd rr = r * r;
  rr = 0.5 * (rr + rr.transpose());
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const auto integrand = [&](double u) {
    const double w = (1.0 - u) * (1.0 - u);
    const Eigen::MatrixXd m = u * u * id + w * rr;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(m);
    return (2.0 / std::numbers::pi) * b.dot(ldlt.solve(b));
  };
  // Each |r| puts a plateau of width ~|r| in u followed by a 1/u^2 tail, so
  // narrow ones hide between the nodes of a single panel. Panel edges graded
  // by a factor 4 from the smallest resolved |r| to beyond the largest keep
  // every such scale next to an edge.
  std::vector<double> cuts = {0.0};
  const double s_max = s.size() ? s(0) : 0.0;
  const double floor = kRoundingFloor * std::max(1.0, s_max);
  double s_min = 0.0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > floor) {
      s_min = s(k);
    }
  }
  if (s_min > 0.0) {
    for (double sc = s_min; sc < 4.0 * s_max; sc *= 4.0) {
      cuts.push_back(sc / (1.0 + sc));
    }
  }
  cuts.push_back(1.0);

  const auto res =
      quadrature::gauss_kronrod(integrand, cuts, quad.rel_tol, 0.0, quad.max_evaluations);
  out.evaluations = res.evaluations;
  out.error_estimate = res.error;
  if (!res.converged) {
    throw NumericalError("sigma quadrature did not converge within " +
                             std::to_string(quad.max_evaluations) + " evaluations",
                         res.value, res.error);
  }
  out.sigma = res.value;
  return out;
}

namespace {

SigmaResult normalize(SigmaResult r, const ConstantField& field)
{
  if (!r.divergent && field.g != 1.0) {
    r.sigma /= field.g;
    r.error_estimate /= field.g;
  }
  r.log_psi0 = r.divergent ? -std::numeric_limits<double>::infinity()
                           : -0.5 * field.volume * field.g * r.sigma;
  return r;
}

void require_positive_coupling(const ConstantField& field)
{
  if (!(field.g > 0.0)) {
    throw InvalidInput("coupling must be positive");
  }
}

}  // namespace

SigmaResult sigma_spectral(const ConstantField& field, const KernelTolerance& tol)
{
  require_positive_coupling(field);
  const ROperator r = build_R(field);
  return normalize(spectral_exponent(r.matrix, curvature_vector(field), tol), field);
}

SigmaResult sigma_quadrature(const ConstantField& field, const QuadratureConfig& quad)
{
  require_positive_coupling(field);
  const ROperator r = build_R(field);
  return normalize(quadrature_exponent(r.matrix, curvature_vector(field), quad), field);
}

double resolvent_form(const ConstantField& field, double lambda, const KernelTolerance& tol)
{
  return resolvent(build_R(field).matrix, curvature_vector(field), lambda, tol);
}

double resolvent(const Eigen::MatrixXd& r, const Eigen::VectorXd& b, double lambda,
                 const KernelTolerance& tol)
{
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw InvalidInput("resolvent: lambda must be finite and >= 0");
  }
  if (r.rows() != r.cols() || r.rows() != b.size()) {
    throw InvalidInput("resolvent: R must be square and match the size of B");
  }
  const Eigen::Index n = r.rows();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r);
  const Eigen::VectorXd mu = es.eigenvalues().array().square();
  const double kernel_cut = tol.eigenvalue_rel * std::max(1.0, mu.maxCoeff());

  if (lambda > kernel_cut) {
    Eigen::MatrixXd m = r * r;
    m = 0.5 * (m + m.transpose());
    m.diagonal().array() += lambda;
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() == Eigen::Success) {
      return b.dot(llt.solve(b));
    }
    Eigen::LDLT<Eigen::MatrixXd> ldlt(m);
    return b.dot(ldlt.solve(b));
  }

  // lambda is numerically zero: pseudo-inverse on the range, check the kernel
  double value = 0.0;
  double kernel_weight = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double c = es.eigenvectors().col(i).dot(b);
    if (mu(i) <= kernel_cut) {
      kernel_weight += c * c;
    } else {
      value += c * c / (lambda + mu(i));
    }
  }
  if (kernel_weight > tol.projection_rel * b.squaredNorm()) {
    throw DivergenceError("resolvent: curvature has weight on ker(R.R) at lambda = 0");
  }
  return value;
}

ScanTable scan_grid(const ScanSpec& spec)
{
  const auto names = ansatz_parameters(spec.ansatz);
  // slot of each ansatz parameter: >= 0 axis index, -1 pinned
  std::vector<int> axis_of(names.size(), -2);
  std::vector<double> base(names.size(), 0.0);

  for (std::size_t k = 0; k < spec.axes.size(); ++k) {
    const auto& ax = spec.axes[k];
    const auto it = std::find(names.begin(), names.end(), ax.name);
    if (it == names.end()) {
      throw InvalidInput("scan: " + ax.name + " is not a parameter of " +
                         std::string(to_string(spec.ansatz)));
    }
    const auto slot = static_cast<std::size_t>(it - names.begin());
    if (axis_of[slot] != -2) {
      throw InvalidInput("scan: parameter " + ax.name + " given twice");
    }
    if (ax.steps < 2) {
      throw InvalidInput("scan: axis " + ax.name + " needs steps >= 2");
    }
    if (!(ax.max > ax.min) || !std::isfinite(ax.min) || !std::isfinite(ax.max)) {
      throw InvalidInput("scan: axis " + ax.name + " needs finite min < max");
    }
    axis_of[slot] = static_cast<int>(k);
  }
  for (const auto& [name, value] : spec.pinned) {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) {
      throw InvalidInput("scan: " + name + " is not a parameter of " +
                         std::string(to_string(spec.ansatz)));
    }
    const auto slot = static_cast<std::size_t>(it - names.begin());
    if (axis_of[slot] != -2) {
      throw InvalidInput("scan: parameter " + name + " is both scanned and pinned");
    }
    axis_of[slot] = -1;
    base[slot] = value;
  }
  for (std::size_t slot = 0; slot < names.size(); ++slot) {
    if (axis_of[slot] == -2) {
      throw InvalidInput("scan: parameter " + std::string(names[slot]) +
                         " is neither scanned nor pinned");
    }
  }

  std::size_t total = 1;
  for (const auto& ax : spec.axes) {
    total *= static_cast<std::size_t>(ax.steps);
    if (total > spec.max_points) {
      throw InvalidInput("scan: grid exceeds the cap of " + std::to_string(spec.max_points) +
                         " points");
    }
  }

  ScanTable table;
  for (const auto& ax : spec.axes) {
    table.columns.push_back(ax.name);
  }
  table.params.reserve(total);
  table.sigma.reserve(total);
  table.divergent.reserve(total);

  std::vector<int> index(spec.axes.size(), 0);
  std::vector<double> point = base;
  for (std::size_t row = 0; row < total; ++row) {
    std::vector<double> axis_values(spec.axes.size());
    for (std::size_t k = 0; k < spec.axes.size(); ++k) {
      const auto& ax = spec.axes[k];
      axis_values[k] = index[k] == ax.steps - 1
                           ? ax.max
                           : ax.min + (ax.max - ax.min) * index[k] / (ax.steps - 1);
    }
    for (std::size_t slot = 0; slot < names.size(); ++slot) {
      if (axis_of[slot] >= 0) {
        point[slot] = axis_values[static_cast<std::size_t>(axis_of[slot])];
      }
    }
    const SigmaResult s =
        sigma_spectral(ansatz_field(spec.ansatz, point, spec.g, spec.volume));
    table.params.push_back(std::move(axis_values));
    table.sigma.push_back(s.sigma);
    table.divergent.push_back(s.divergent);

    // advance the multi-index, last axis fastest
    for (int k = static_cast<int>(index.size()) - 1; k >= 0; --k) {
      if (++index[static_cast<std::size_t>(k)] < spec.axes[static_cast<std::size_t>(k)].steps) {
        break;
      }
      index[static_cast<std::size_t>(k)] = 0;
    }
  }
  return table;
}

void write_table(std::ostream& os, const ScanTable& table)
{
  const auto old_precision = os.precision(12);
  for (const auto& c : table.columns) {
    os << c << ',';
  }
  os << "sigma,divergent\n";
  for (std::size_t r = 0; r < table.rows(); ++r) {
    for (double v : table.params[r]) {
      os << v << ',';
    }
    os << table.sigma[r] << ',' << (table.divergent[r] ? 1 : 0) << '\n';
  }
  os.precision(old_precision);
}

}  // namespace groundstate
}  // namespace gaugestrata
