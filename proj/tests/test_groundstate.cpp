#include "gaugestrata/errors.hpp"
#include "gaugestrata/groundstate.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

using namespace gaugestrata;

namespace {

ConstantField su2_diag(double a1, double a2, double a3)
{
  const std::array<double, 3> p = {a1, a2, a3};
  return ansatz_field(Ansatz::SU2_DIAG, p);
}

ConstantField random_field(GroupId id, std::mt19937_64& rng, double scale = 1.0)
{
  const int d = GroupSpec::get(id).dim();
  Eigen::MatrixXd c(3, d);
  for (int i = 0; i < 3; ++i) {
    c.row(i) = oracle::gaussian(d, rng, scale).transpose();
  }
  return ConstantField::from_components(id, c);
}

/// R built from commutators of explicit matrices: column (n', a') is
/// -g sum_m eps_{n m n'} [A_m, t_a'] placed in block n.
Eigen::MatrixXd r_oracle(const ConstantField& f)
{
  const int n = f.spec().n();
  const int d = f.spec().dim();
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(3 * d, 3 * d);
  for (int np = 0; np < 3; ++np) {
    for (int ap = 0; ap < d; ++ap) {
      for (int nn = 0; nn < 3; ++nn) {
        for (int m = 0; m < 3; ++m) {
          const int e = oracle::levi_civita(nn, m, np);
          if (e == 0) {
            continue;
          }
          // f_{a a' c} A_m^c = ([t_a', A_m])_a  ->  R_{(n,a),(n',a')} = -g e [t_a', A_m]_a
          const Eigen::VectorXd c =
              oracle::commutator(Eigen::VectorXd::Unit(d, ap), f.a[m].coeffs, n);
          r.block(nn * d, np * d + ap, d, 1) += -f.g * e * c;
        }
      }
    }
  }
  return r;
}

/// 1/4 A^T |R| A at g = 1, using B = -R A / 2.
double quarter_abs_r(const ConstantField& f)
{
  const Eigen::MatrixXd r = r_oracle(f);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r);
  const Eigen::MatrixXd absr =
      es.eigenvectors() * es.eigenvalues().cwiseAbs().asDiagonal() * es.eigenvectors().transpose();
  const int d = f.spec().dim();
  Eigen::VectorXd a(3 * d);
  for (int i = 0; i < 3; ++i) {
    a.segment(i * d, d) = f.a[i].coeffs;
  }
  return 0.25 * a.dot(absr * a);
}

/// sigma = (2/pi) int_0^inf F(s^2) ds through s = t/(1-t), composite Gauss-Legendre.
double sigma_from_closed_form(ClosedFormCase c, std::span<const double> p)
{
  const auto integrand = [&](double t) {
    const double s = t / (1.0 - t);
    return closed_form(c, p, s * s) / ((1.0 - t) * (1.0 - t));
  };
  return (2.0 / M_PI) * oracle::composite_gl(integrand, 0.0, 1.0, 400);
}

}  // namespace

TEST_CASE("R operator: zero field, single component spectrum, oracle entries, symmetry")
{
  CHECK(groundstate::build_R(ConstantField::zero(GroupId::SU3)).matrix.norm() == 0.0);

  const double a1 = 1.7;
  const Eigen::MatrixXd r = groundstate::build_R(su2_diag(a1, 0, 0)).matrix;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r * r);
  const Eigen::VectorXd mu = es.eigenvalues();
  for (int i = 0; i < 5; ++i) {
    CHECK(std::abs(mu(i)) <= 1e-12);
  }
  for (int i = 5; i < 9; ++i) {
    CHECK(mu(i) == doctest::Approx(a1 * a1).epsilon(1e-12));
  }

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    ConstantField f = random_field(GroupId::SU3, rng);
    f.g = 0.3 + 0.01 * trial;
    const Eigen::MatrixXd rr = groundstate::build_R(f).matrix;
    CHECK((rr - rr.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((rr - r_oracle(f)).cwiseAbs().maxCoeff() <= 1e-12);
    // B = -R A / 2
    const int d = 8;
    Eigen::VectorXd a(3 * d);
    for (int i = 0; i < 3; ++i) {
      a.segment(i * d, d) = f.a[i].coeffs;
    }
    CHECK((groundstate::curvature_vector(f) + 0.5 * rr * a).norm() <= 1e-11);
  }
}

TEST_CASE("sigma examples")
{
  const std::array<double, 3> abelian = {0.0, 0.0, 2.0};
  auto s = groundstate::sigma_spectral(ansatz_field(Ansatz::SU2_DIAG, abelian));
  CHECK(s.sigma == 0.0);
  CHECK_FALSE(s.divergent);
  s = groundstate::sigma_quadrature(ansatz_field(Ansatz::SU2_DIAG, abelian));
  CHECK(s.sigma == 0.0);

  CHECK(groundstate::sigma_spectral(su2_diag(0, 1, 1)).sigma ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(groundstate::sigma_quadrature(su2_diag(0, 1, 1)).sigma ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-8));

  // regression constant for the fully diagonal su(2) field
  const double s111 = groundstate::sigma_spectral(su2_diag(1, 1, 1)).sigma;
  CHECK(s111 == doctest::Approx(1.5).epsilon(1e-12));
  const std::array<double, 3> ones = {1.0, 1.0, 1.0};
  CHECK(sigma_from_closed_form(ClosedFormCase::SU2_DIAG, ones) == doctest::Approx(s111).epsilon(1e-8));
  CHECK(groundstate::sigma_quadrature(su2_diag(1, 1, 1)).sigma == doctest::Approx(s111).epsilon(1e-8));
}

TEST_CASE("sigma equals A^T|R|A / 4 on random fields")
{
  std::mt19937_64 rng(19);
  for (GroupId id : {GroupId::SU2, GroupId::SU3}) {
    for (int trial = 0; trial < 30; ++trial) {
      const ConstantField f = random_field(id, rng);
      const SigmaResult s = groundstate::sigma_spectral(f);
      CHECK_FALSE(s.divergent);
      CHECK(s.sigma == doctest::Approx(quarter_abs_r(f)).epsilon(1e-10));
      // invariant: sigma is the spectral sum over the reported eigenpairs
      double sum = 0.0;
      for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
        if (s.eigenvalues(i) > 1e-10 * std::max(1.0, s.eigenvalues.maxCoeff())) {
          sum += s.projections(i) / std::sqrt(s.eigenvalues(i));
        }
      }
      CHECK(s.sigma == doctest::Approx(sum).epsilon(1e-12));
    }
  }
}

TEST_CASE("closed form in the two-component limit over a grid")
{
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int i = 1; i <= 20; ++i) {
    for (int j = 1; j <= 20; ++j) {
      const double a2 = 0.1 + (3.0 - 0.1) * (i - 1) / 19.0;
      const double a3 = 0.1 + (3.0 - 0.1) * (j - 1) / 19.0;
      const double ref = a2 * a2 * a3 * a3 / std::sqrt(a2 * a2 + a3 * a3);
      worst = std::max(worst, oracle::rel(groundstate::sigma_spectral(su2_diag(0, a2, a3)).sigma, ref));
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(worst <= 1e-8);
  CHECK(secs < 1.0);
}

TEST_CASE("coupling, volume and scaling laws")
{
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    ConstantField f = random_field(GroupId::SU3, rng);
    const double s1 = groundstate::sigma_spectral(f).sigma;
    // independent of g, psi0 exponent carries V g / 2
    f.g = 2.5;
    f.volume = 3.0;
    const SigmaResult sg = groundstate::sigma_spectral(f);
    CHECK(sg.sigma == doctest::Approx(s1).epsilon(1e-10));
    CHECK(sg.log_psi0 == doctest::Approx(-0.5 * 3.0 * 2.5 * s1).epsilon(1e-10));
    f.g = 1.0;
    f.volume = 1.0;

    const double c = 0.5 + 0.1 * trial;
    ConstantField fc = f;
    for (auto& ai : fc.a) {
      ai *= c;
    }
    CHECK(groundstate::sigma_spectral(fc).sigma == doctest::Approx(c * c * c * s1).epsilon(1e-10));
    const double lam = 0.3 + trial;
    CHECK(groundstate::resolvent_form(fc, c * c * lam) ==
          doctest::Approx(c * c * groundstate::resolvent_form(f, lam)).epsilon(1e-10));
  }
}

TEST_CASE("resolvent is non-increasing in lambda and decays like c / lambda")
{
  std::mt19937_64 rng(37);
  const ConstantField f = random_field(GroupId::SU3, rng);
  double prev = groundstate::resolvent_form(f, 0.0);
  for (double lam = 0.1; lam < 1e4; lam *= 2.0) {
    const double v = groundstate::resolvent_form(f, lam);
    CHECK(v <= prev * (1 + 1e-14));
    prev = v;
  }
  const double b2 = groundstate::curvature_vector(f).squaredNorm();
  CHECK(1e8 * groundstate::resolvent_form(f, 1e8) == doctest::Approx(b2).epsilon(1e-6));
}

TEST_CASE("printed rational functions: spot values")
{
  const std::array<double, 3> ones3 = {1, 1, 1};
  const std::array<double, 2> ones2 = {1, 1};
  CHECK(closed_form(ClosedFormCase::SU2_DIAG, ones3, 1.0) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(closed_form(ClosedFormCase::SU3_II, ones2, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(closed_form(ClosedFormCase::SU3_IV, ones2, 0.0) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(closed_form(ClosedFormCase::SU3_III_A8ZERO, ones2, 0.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(closed_form(ClosedFormCase::SU3_III_A4ZERO, ones2, 0.0) ==
        doctest::Approx(12.0 / 7.0).epsilon(1e-15));

  // resolvent side, including the factor between the two conventions
  CHECK(groundstate::resolvent_form(su2_diag(1, 1, 1), 1.0) == doctest::Approx(0.6).epsilon(1e-12));
  for (double a8 : {0.0, 0.3, 2.0}) {
    const std::array<double, 3> p = {1.0, 1.0, a8};
    CHECK(groundstate::resolvent_form(ansatz_field(Ansatz::SU3_II, p), 0.0) ==
          doctest::Approx(0.5).epsilon(1e-12));
  }
  CHECK(groundstate::resolvent_form(ansatz_field(Ansatz::SU3_IV, ones2), 0.0) ==
        doctest::Approx(6.0 / 4.0).epsilon(1e-12));
  const std::array<double, 3> a8zero = {1.0, 1.0, 0.0};
  CHECK(groundstate::resolvent_form(ansatz_field(Ansatz::SU3_III, a8zero), 0.0) ==
        doctest::Approx(2.0 / 4.0).epsilon(1e-12));

  // zero-curvature points give 0 even where the printed denominator vanishes
  const std::array<double, 3> zeros3 = {0, 0, 0};
  const std::array<double, 2> zeros2 = {0, 0};
  for (ClosedFormCase c : {ClosedFormCase::SU3_II, ClosedFormCase::SU3_IV,
                           ClosedFormCase::SU3_III_A4ZERO, ClosedFormCase::SU3_III_A5ZERO,
                           ClosedFormCase::SU3_III_A8ZERO}) {
    CHECK(closed_form(c, zeros2, 0.0) == 0.0);
  }
  CHECK(closed_form(ClosedFormCase::SU2_DIAG, zeros3, 0.0) == 0.0);
  CHECK(closed_form(ClosedFormCase::SU3_III, zeros3, 0.0) == 0.0);
  CHECK_THROWS_AS(closed_form(ClosedFormCase::SU3_IV, ones3, 0.0), InvalidInput);
}

TEST_CASE("printed rational functions agree with the resolvent on random samples")
{
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> ud(0.1, 3.0);
  std::uniform_real_distribution<double> ld(0.0, 5.0);
  for (ClosedFormCase c : {ClosedFormCase::SU2_DIAG, ClosedFormCase::SU3_II, ClosedFormCase::SU3_III,
                           ClosedFormCase::SU3_IV, ClosedFormCase::SU3_III_A4ZERO,
                           ClosedFormCase::SU3_III_A5ZERO, ClosedFormCase::SU3_III_A8ZERO}) {
    const int arity = (c == ClosedFormCase::SU2_DIAG || c == ClosedFormCase::SU3_III) ? 3 : 2;
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      std::vector<double> p;
      for (int i = 0; i < arity; ++i) {
        p.push_back(ud(rng));
      }
      const double lam = ld(rng);
      const double printed = closed_form(c, p, lam);
      const double ours = groundstate::resolvent_form(closed_form_field(c, p), lam);
      worst = std::max(worst, oracle::rel(printed_normalization(c) * ours, printed));
    }
    INFO("case " << to_string(c));
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("general SU3_III denominator: only the corrected reading matches")
{
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> ud(0.2, 2.0);
  int printed_misses = 0;
  for (int k = 0; k < 100; ++k) {
    const std::array<double, 3> p = {ud(rng), ud(rng), ud(rng)};
    const double lam = 0.5 + ud(rng);
    const double ours = 4.0 * groundstate::resolvent_form(closed_form_field(ClosedFormCase::SU3_III, p), lam);
    CHECK(oracle::rel(ours, closed_form(ClosedFormCase::SU3_III, p, lam, PrintedVariant::AsCorrected)) <=
          1e-10);
    if (oracle::rel(ours, closed_form(ClosedFormCase::SU3_III, p, lam, PrintedVariant::AsPrinted)) > 1e-6) {
      ++printed_misses;
    }
  }
  CHECK(printed_misses == 100);
}

TEST_CASE("case (ii) closed form does not depend on a8")
{
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> ud(0.1, 3.0);
  for (int k = 0; k < 20; ++k) {
    const double a1 = ud(rng);
    const double a2 = ud(rng);
    const double lam = ud(rng);
    const std::array<double, 3> p = {a1, a2, ud(rng)};
    const std::array<double, 2> q = {a1, a2};
    CHECK(groundstate::resolvent_form(ansatz_field(Ansatz::SU3_II, p), lam) ==
          doctest::Approx(closed_form(ClosedFormCase::SU3_II, q, lam)).epsilon(1e-10));
  }
}

TEST_CASE("divergence detection at operator level")
{
  // R with a kernel direction e_0; B with weight on it
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(3, 3);
  r(1, 1) = 2.0;
  r(2, 2) = -3.0;
  Eigen::VectorXd b(3);
  b << 0.5, 1.0, 1.0;
  const SigmaResult s = groundstate::spectral_exponent(r, b);
  CHECK(s.divergent);
  CHECK(std::isinf(s.sigma));
  const SigmaResult q = groundstate::quadrature_exponent(r, b);
  CHECK(q.divergent);
  CHECK(std::isinf(q.sigma));
  CHECK_THROWS_AS(groundstate::resolvent(r, b, 0.0), DivergenceError);
  CHECK(groundstate::resolvent(r, b, 1.0) == doctest::Approx(0.25 + 1.0 / 5.0 + 1.0 / 10.0));

  // same R, B orthogonal to the kernel: finite and equal to the direct sum
  b(0) = 0.0;
  const SigmaResult s2 = groundstate::spectral_exponent(r, b);
  CHECK_FALSE(s2.divergent);
  CHECK(s2.sigma == doctest::Approx(1.0 / 2.0 + 1.0 / 3.0).epsilon(1e-14));
  CHECK(groundstate::quadrature_exponent(r, b).sigma == doctest::Approx(s2.sigma).epsilon(1e-9));
  CHECK(groundstate::resolvent(r, b, 0.0) == doctest::Approx(1.0 / 4.0 + 1.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("resolved eigenvalues under the divergence cut still contribute")
{
  // mu = 1e-12 is below the cut but far above rounding; weight 1e-14 is not divergent
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(2, 2);
  r(0, 0) = 1e-6;
  r(1, 1) = 2.0;
  Eigen::VectorXd b(2);
  b << 1e-7, 1.0;
  const SigmaResult s = groundstate::spectral_exponent(r, b);
  CHECK_FALSE(s.divergent);
  CHECK(s.sigma == doctest::Approx(0.5 + 1e-8).epsilon(1e-15));
  const SigmaResult q = groundstate::quadrature_exponent(r, b);
  CHECK_FALSE(q.divergent);
  CHECK(q.sigma == doctest::Approx(s.sigma).epsilon(1e-9));

  // rounding-level eigenvalues are skipped
  r(0, 0) = 1e-17;
  CHECK(groundstate::spectral_exponent(r, b).sigma == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("constant fields are never divergent")
{
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 50; ++trial) {
    const ConstantField f = random_field(trial % 2 ? GroupId::SU3 : GroupId::SU2, rng);
    CHECK_FALSE(groundstate::sigma_spectral(f).divergent);
  }
}

TEST_CASE("error paths")
{
  const ConstantField f = su2_diag(1, 2, 3);
  CHECK_THROWS_AS(groundstate::resolvent_form(f, -1.0), InvalidInput);
  CHECK_THROWS_AS(groundstate::resolvent_form(f, std::numeric_limits<double>::infinity()),
                  InvalidInput);
  ConstantField bad = f;
  bad.g = 0.0;
  CHECK_THROWS_AS(groundstate::sigma_spectral(bad), InvalidInput);
  CHECK_THROWS_AS(groundstate::spectral_exponent(Eigen::MatrixXd::Zero(3, 3), Eigen::VectorXd::Zero(2)),
                  InvalidInput);

  QuadratureConfig tight;
  tight.max_evaluations = 15;
  tight.rel_tol = 1e-14;
  try {
    groundstate::sigma_quadrature(f, tight);
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(e.partial_estimate() > 0.0);
    CHECK(e.error_estimate() > 0.0);
  }
  const std::array<double, 2> two = {1.0, 2.0};
  CHECK_THROWS_AS(ansatz_field(Ansatz::SU2_DIAG, two), InvalidInput);
}

TEST_CASE("scan grid: contract, validation, determinism")
{
  groundstate::ScanSpec spec;
  spec.ansatz = Ansatz::SU2_DIAG;
  spec.axes = {{"a2", 0.0, 2.0, 5}, {"a3", 0.0, 2.0, 4}};
  spec.pinned = {{"a1", 0.0}};
  const auto table = groundstate::scan_grid(spec);
  REQUIRE(table.rows() == 20);
  CHECK(table.params[0] == std::vector<double>{0.0, 0.0});
  CHECK(table.params[1] == std::vector<double>{0.0, 2.0 / 3.0});
  CHECK(table.params[19] == std::vector<double>{2.0, 2.0});
  for (std::size_t r = 0; r < table.rows(); ++r) {
    const double a2 = table.params[r][0];
    const double a3 = table.params[r][1];
    CHECK(table.sigma[r] == groundstate::sigma_spectral(su2_diag(0, a2, a3)).sigma);
  }
  std::ostringstream o1, o2;
  groundstate::write_table(o1, table);
  groundstate::write_table(o2, groundstate::scan_grid(spec));
  CHECK(o1.str() == o2.str());
  CHECK(o1.str().rfind("a2,a3,sigma,divergent\n", 0) == 0);
  CHECK(o1.str().back() == '\n');

  groundstate::ScanSpec single = spec;
  single.axes = {{"a2", 1.0, 2.0, 2}};
  single.pinned = {{"a1", 0.5}, {"a3", 0.7}};
  const auto t1 = groundstate::scan_grid(single);
  CHECK(t1.sigma[0] == groundstate::sigma_spectral(su2_diag(0.5, 1.0, 0.7)).sigma);

  // su(3) case (ii): constant along a8
  groundstate::ScanSpec s2;
  s2.ansatz = Ansatz::SU3_II;
  s2.axes = {{"a1", 0.5, 1.5, 3}, {"a2", 0.5, 1.5, 3}, {"a8", 0.0, 3.0, 4}};
  const auto t2 = groundstate::scan_grid(s2);
  for (std::size_t r = 0; r < t2.rows(); r += 4) {
    for (std::size_t k = 1; k < 4; ++k) {
      CHECK(t2.sigma[r + k] == doctest::Approx(t2.sigma[r]).epsilon(1e-10));
    }
  }

  groundstate::ScanSpec bad = spec;
  bad.axes[0].steps = 1;
  CHECK_THROWS_AS(groundstate::scan_grid(bad), InvalidInput);
  bad = spec;
  bad.pinned.clear();
  CHECK_THROWS_AS(groundstate::scan_grid(bad), InvalidInput);
  bad = spec;
  bad.pinned["a2"] = 1.0;
  CHECK_THROWS_AS(groundstate::scan_grid(bad), InvalidInput);
  bad = spec;
  bad.axes[0].name = "a8";
  CHECK_THROWS_AS(groundstate::scan_grid(bad), InvalidInput);
  bad = spec;
  bad.max_points = 19;
  CHECK_THROWS_AS(groundstate::scan_grid(bad), InvalidInput);
  bad = spec;
  bad.axes[1].max = -1.0;
  CHECK_THROWS_AS(groundstate::scan_grid(bad), InvalidInput);
}

TEST_CASE("ansatz metadata and parsing")
{
  CHECK(parse_ansatz("SU3_IV") == Ansatz::SU3_IV);
  CHECK_FALSE(parse_ansatz("SU4").has_value());
  CHECK(ansatz_parameters(Ansatz::SU3_IV).size() == 2);
  CHECK(ansatz_group(Ansatz::SU3_I) == GroupId::SU3);
  CHECK(parse_closed_form_case("SU3_III_A5ZERO") == ClosedFormCase::SU3_III_A5ZERO);
  CHECK(printed_normalization(ClosedFormCase::SU2_DIAG) == 1.0);
  CHECK(printed_normalization(ClosedFormCase::SU3_IV) == 4.0);
}
