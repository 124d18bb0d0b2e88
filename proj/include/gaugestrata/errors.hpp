#ifndef GAUGESTRATA_ERRORS_HPP
#define GAUGESTRATA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gaugestrata {

/// Caller supplied arguments that violate an operation's precondition.
class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure did not reach its tolerance within budget.
/// Carries whatever estimate was available when it gave up.
class NumericalError : public std::runtime_error {
public:
  NumericalError(const std::string& what, double partial_estimate, double error_estimate)
    : std::runtime_error(what), m_partial(partial_estimate), m_error(error_estimate) {}

  double partial_estimate() const { return m_partial; }
  double error_estimate() const { return m_error; }

private:
  double m_partial;
  double m_error;
};

/// Resolvent evaluated at lambda = 0 on a curvature with weight in ker(R.R).
class DivergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Dense assembly requested beyond the configured size caps.
class ResourceLimit : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invariant broken inside the library (should be unreachable).
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace gaugestrata

#endif
