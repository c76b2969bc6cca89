// cli.hpp — the `rabi` command line: spectrum, crossings, dynamics, epsilon-c, scan, plot

#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "rabi/config.hpp"
#include "rabi/table.hpp"

namespace rabi::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;

/// `args` excludes the program name. Returns the process exit code.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

/// Commands on an already merged configuration; each returns the table it writes.
Table spectrum_table(const RunConfig& cfg);
Table crossings_table(const RunConfig& cfg);
Table dynamics_table(const RunConfig& cfg);
Table scan_table(const RunConfig& cfg);
double epsilon_c_value(const RunConfig& cfg);

/// Throws NumericalQualityError unless the lowest levels at coupling `g` move by
/// less than 1e-8 (energy units) when the truncation grows by max(8, n_max/3).
void require_converged(const RunConfig& cfg, double g);

}  // namespace rabi::cli
