#ifndef GAUGESTRATA_COMMANDS_HPP
#define GAUGESTRATA_COMMANDS_HPP

#include "gaugestrata/config.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace gaugestrata {

enum ExitCode : int { kExitOk = 0, kExitInvalid = 2, kExitNumerical = 3 };

/// Command-line overrides applied on top of a RunConfig.
struct RunFlags {
  std::optional<std::string> out;     ///< tabular output path (scan)
  std::optional<HolonomyMode> mode;
  std::optional<double> tol;          ///< membership (qc-check) or quadrature tolerance (sigma)
  std::optional<std::uint64_t> seed;  ///< replaces lattice.seed
};

namespace commands {

std::span<const std::string_view> names();

/// Run one subcommand. The report goes to `out`, diagnostics to `err`.
/// Returns 0 on success, 2 for invalid input or configuration, 3 for
/// numerical or resource failures. A divergent sigma is a success.
int run(std::string_view command, const RunConfig& cfg, const RunFlags& flags, std::ostream& out,
        std::ostream& err);

}  // namespace commands
}  // namespace gaugestrata

#endif
