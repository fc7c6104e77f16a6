#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace proxsmooth {

// Bad arguments or invalid instance parameters (lambda outside (0, 1/rho),
// malformed catalog ids, ...). The CLI maps this to exit code 2.
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Every sample weight vanished (or fewer than two acceptances at the draw
// cap). Carries the draw statistics. CLI exit code 3.
struct ZeroMassError : std::runtime_error {
  ZeroMassError(const std::string& what, std::uint64_t drawn_, std::uint64_t accepted_)
      : std::runtime_error(what), drawn(drawn_), accepted(accepted_) {}
  std::uint64_t drawn = 0;
  std::uint64_t accepted = 0;
};

// A target function returned NaN at a sample point.
struct EvaluationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Grid refinement hit its limit without meeting the agreement tolerance.
struct AccuracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The integration box edge carries non-negligible mass under the growth
// envelope; the box (or its defaults) must be enlarged.
struct BoxError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Conditional mass below the representable floor even after the log shift.
struct MassUnderflowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Too few usable sweep points for a log-log fit, or a zero error inside the
// fit window. CLI exit code 4 for degenerate sweeps.
struct DegenerateFitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The brute-force 1-D minimizer ended on its search window edge.
struct WindowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace proxsmooth
