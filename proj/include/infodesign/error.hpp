#pragma once

#include <stdexcept>
#include <string>

namespace infodesign {

enum class ErrorCode {
  InvalidArgument,
  InvalidInterval,
  DegeneratePrior,
  NotIncentiveCompatible,
  NotBayesPlausible,
  DegenerateCutoffs,
  BoundaryCase,
  NoEfficientSignalFound,
  ZeroProbabilityRealization,
  InfeasibleConstraints,
  NotFullSupport,
  Parse,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool condition, ErrorCode code, const char* what) {
  if (!condition) throw Error(code, what);
}

}  // namespace infodesign
