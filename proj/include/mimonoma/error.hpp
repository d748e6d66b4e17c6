#ifndef MIMONOMA_ERROR_HPP
#define MIMONOMA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace mimonoma {

enum class ErrorCode {
  kInvalidArgument,
  // Signal alignment needs 2N > M.
  kAlignmentInfeasible,
  // Rank-deficient draw or ill-conditioned ZF inverse; callers resample.
  kDegenerateChannel,
  // Closed-form preconditions violated (e.g. Gamma2 == 0, lo > hi).
  kInfeasible,
  // Bisection found no sign change in the parity gap.
  kNoSignChange,
  kNotConverged,
  kIo,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mimonoma

#endif  // MIMONOMA_ERROR_HPP
