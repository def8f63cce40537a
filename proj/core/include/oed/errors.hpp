#ifndef OED_ERRORS_HPP
#define OED_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace oed {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Matrix argument left the positive definite cone (or was never in it).
struct NotPositiveDefiniteError : Error {
  explicit NotPositiveDefiniteError(const std::string& msg = "matrix not positive definite")
      : Error(msg) {}
};

// Budget C incompatible with the cell volumes (needs 0 < C < sum |E_i|,
// or C <= sum |E_i| for the upper-bounded set).
struct BudgetInfeasibleError : Error {
  explicit BudgetInfeasibleError(const std::string& msg = "budget infeasible") : Error(msg) {}
};

// Operation needs grid metadata but the FIM set carries none.
struct NoGridError : Error {
  explicit NoGridError(const std::string& msg = "fim set has no grid metadata") : Error(msg) {}
};

// Fixed point characterization requires alpha > 0.
struct AlphaZeroError : Error {
  explicit AlphaZeroError(const std::string& msg = "alpha must be positive") : Error(msg) {}
};

// State or sensitivity blow-up during time integration.
struct OverflowError : Error {
  explicit OverflowError(const std::string& msg = "trajectory overflow") : Error(msg) {}
};

// Active set escalation cannot restore budget feasibility.
struct EscalationStallError : Error {
  explicit EscalationStallError(const std::string& msg = "active set escalation stalled")
      : Error(msg) {}
};

// FIM cache file problems, discriminated by kind.
struct FimFileError : Error {
  enum class Kind { Io, Corrupt, VersionMismatch, DimensionMismatch };
  Kind kind;
  FimFileError(Kind k, const std::string& msg) : Error(msg), kind(k) {}
};

}  // namespace oed

#endif
