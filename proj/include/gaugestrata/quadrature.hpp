#ifndef GAUGESTRATA_QUADRATURE_HPP
#define GAUGESTRATA_QUADRATURE_HPP

#include <functional>
#include <span>

namespace gaugestrata::quadrature {

struct Result {
  double value = 0.0;
  double error = 0.0;  ///< sum over panels of |K15 - G7|
  int evaluations = 0;
  bool converged = false;
};

/// Globally adaptive 7/15-point Gauss-Kronrod on the finite interval [a, b].
/// Bisects the panel with the largest error estimate until the total error is
/// below max(abs_tol, rel_tol * |value|) or the evaluation budget would be
/// exceeded. Never evaluates f at the endpoints.
Result gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                     double rel_tol, double abs_tol, int max_evaluations);

/// Same loop started from one panel per consecutive pair of breakpoints
/// (ascending). The tolerance applies to the total, not to each piece.
Result gauss_kronrod(const std::function<double(double)>& f, std::span<const double> breakpoints,
                     double rel_tol, double abs_tol, int max_evaluations);

}  // namespace gaugestrata::quadrature

#endif
