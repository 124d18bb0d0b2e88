#ifndef GAUGESTRATA_GROUNDSTATE_HPP
#define GAUGESTRATA_GROUNDSTATE_HPP

#include "gaugestrata/strata.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gaugestrata {

/// R(A)_{(n,a),(n',a')} = -g sum_m eps_{n m n'} f_{a a' c} A_m^c on the
/// composite index n * dim + a (constant-mode sector, so no derivative term).
struct ROperator {
  Eigen::MatrixXd matrix;
};

enum class SigmaMethod { Spectral, Quadrature };

std::string_view to_string(SigmaMethod method);

/// Leading-order vacuum exponent, normalized so that
/// psi_0(A) = exp(-(V g / 2) sigma). sigma = B.(R.R)^{-1/2}.B / g, which does
/// not depend on g; at g = 1 it is exactly sum_i projections_i / sqrt(eigenvalues_i).
struct SigmaResult {
  double sigma = 0.0;  ///< +infinity when divergent
  Eigen::VectorXd eigenvalues;  ///< spectrum of R.R, ascending
  Eigen::VectorXd projections;  ///< (B . v_i)^2 for the matching eigenvectors
  bool divergent = false;
  SigmaMethod method = SigmaMethod::Spectral;
  double log_psi0 = 0.0;       ///< -(V g / 2) sigma
  double error_estimate = 0.0; ///< quadrature only
  int evaluations = 0;         ///< quadrature only
};

/// Thresholds for deciding that B has weight on ker(R.R).
struct KernelTolerance {
  double eigenvalue_rel = 1e-10;   ///< mu <= eigenvalue_rel * max(1, |R.R|)
  double projection_rel = 1e-10;   ///< weight > projection_rel * |B|^2
};

struct QuadratureConfig {
  double rel_tol = 1e-10;
  int max_evaluations = 10000;
  KernelTolerance kernel{};
};

/// Parametrized constant-field families.
///   SU2_DIAG (a1,a2,a3): A_1 = a1 t1, A_2 = a2 t2, A_3 = a3 t3 in su(2)
///   SU3_I    (a1,a2,a3): same components inside su(3)
///   SU3_II   (a1,a2,a8): A_1 = a1 t1, A_2 = a2 t2, A_3 = a8 t8
///   SU3_III  (a4,a5,a8): A_1 = a4 t4, A_2 = a5 t5, A_3 = a8 t8
///   SU3_IV   (a2,a3):    A_1 = 0, A_2 = a2 (sqrt2 t4 + t1), A_3 = a3 (-sqrt2 t5 + t2)
enum class Ansatz { SU2_DIAG, SU3_I, SU3_II, SU3_III, SU3_IV };

std::string_view to_string(Ansatz ansatz);
std::optional<Ansatz> parse_ansatz(std::string_view name);
GroupId ansatz_group(Ansatz ansatz);
std::span<const std::string_view> ansatz_parameters(Ansatz ansatz);
ConstantField ansatz_field(Ansatz ansatz, std::span<const double> params, double g = 1.0,
                           double volume = 1.0);

/// Rational functions of lambda available in closed form for the families above.
enum class ClosedFormCase {
  SU2_DIAG,        ///< params (a1, a2, a3)
  SU3_II,          ///< params (a1, a2)   -- a8 drops out
  SU3_III,         ///< params (a4, a5, a8)
  SU3_IV,          ///< params (a2, a3)
  SU3_III_A4ZERO,  ///< params (a5, a8)
  SU3_III_A5ZERO,  ///< params (a4, a8)
  SU3_III_A8ZERO,  ///< params (a4, a5)
};

std::string_view to_string(ClosedFormCase c);
std::optional<ClosedFormCase> parse_closed_form_case(std::string_view name);

/// Which reading of the general SU3_III denominator to use. AsPrinted takes the
/// stray "la" factor in the 16 a5^4 term as lambda; AsCorrected drops it, which
/// is the form that agrees with the resolvent for all parameters.
enum class PrintedVariant { AsCorrected, AsPrinted };

/// Printed rational function of lambda, evaluated verbatim (test oracle).
/// Throws InvalidInput on an arity mismatch.
double closed_form(ClosedFormCase c, std::span<const double> params, double lambda,
                   PrintedVariant variant = PrintedVariant::AsCorrected);

/// Constant relating a printed rational function to resolvent_form() in this
/// library's basis: closed_form = printed_normalization * resolvent_form.
/// It is 4 for the su(3) families written with lambda_4, lambda_5 and 1 otherwise.
double printed_normalization(ClosedFormCase c);

/// Field on which a closed-form case is evaluated (g = 1), e.g. SU3_III_A4ZERO
/// (a5, a8) is the SU3_III field with a4 = 0.
ConstantField closed_form_field(ClosedFormCase c, std::span<const double> params);

namespace groundstate {

ROperator build_R(const ConstantField& field);

/// Curvature flattened to the composite index n * dim + a.
Eigen::VectorXd curvature_vector(const ConstantField& field);

SigmaResult sigma_spectral(const ConstantField& field, const KernelTolerance& tol = {});
SigmaResult sigma_quadrature(const ConstantField& field, const QuadratureConfig& quad = {});

/// Operator-level versions: B.(R.R)^{-1/2}.B without any coupling normalization.
SigmaResult spectral_exponent(const Eigen::MatrixXd& r, const Eigen::VectorXd& b,
                              const KernelTolerance& tol = {});
SigmaResult quadrature_exponent(const Eigen::MatrixXd& r, const Eigen::VectorXd& b,
                                const QuadratureConfig& quad = {});

/// B^T (lambda + R.R)^{-1} B. Throws InvalidInput for lambda < 0 and
/// DivergenceError when lambda = 0 and B has weight on ker(R.R).
double resolvent_form(const ConstantField& field, double lambda,
                      const KernelTolerance& tol = {});

/// Operator-level B^T (lambda + R.R)^{-1} B with the same error behavior.
double resolvent(const Eigen::MatrixXd& r, const Eigen::VectorXd& b, double lambda,
                 const KernelTolerance& tol = {});

struct ScanAxis {
  std::string name;
  double min = 0.0;
  double max = 1.0;
  int steps = 2;

  bool operator==(const ScanAxis&) const = default;
};

struct ScanSpec {
  Ansatz ansatz = Ansatz::SU2_DIAG;
  std::vector<ScanAxis> axes;           ///< first axis varies slowest
  std::map<std::string, double> pinned; ///< remaining parameters
  std::size_t max_points = 1'000'000;
  double g = 1.0;
  double volume = 1.0;
};

struct ScanTable {
  std::vector<std::string> columns;  ///< scanned parameter names
  std::vector<std::vector<double>> params;
  std::vector<double> sigma;
  std::vector<bool> divergent;

  std::size_t rows() const { return sigma.size(); }
};

/// sigma_spectral on every grid point, row-major over the axes.
/// Throws InvalidInput on unknown/missing parameters, steps < 2 or a grid
/// larger than max_points.
ScanTable scan_grid(const ScanSpec& spec);

/// Comma-separated: header "<params>,sigma,divergent", 12 significant digits,
/// divergent as 0/1, one newline-terminated line per row.
void write_table(std::ostream& os, const ScanTable& table);

}  // namespace groundstate
}  // namespace gaugestrata

#endif
