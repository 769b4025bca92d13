#include "infodesign/error.hpp"

namespace infodesign {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidInterval: return "InvalidInterval";
    case ErrorCode::DegeneratePrior: return "DegeneratePrior";
    case ErrorCode::NotIncentiveCompatible: return "NotIncentiveCompatible";
    case ErrorCode::NotBayesPlausible: return "NotBayesPlausible";
    case ErrorCode::DegenerateCutoffs: return "DegenerateCutoffs";
    case ErrorCode::BoundaryCase: return "BoundaryCase";
    case ErrorCode::NoEfficientSignalFound: return "NoEfficientSignalFound";
    case ErrorCode::ZeroProbabilityRealization: return "ZeroProbabilityRealization";
    case ErrorCode::InfeasibleConstraints: return "InfeasibleConstraints";
    case ErrorCode::NotFullSupport: return "NotFullSupport";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace infodesign
