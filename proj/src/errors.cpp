#include "errors.hpp"

namespace optoring {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPhysicalParameter: return "NonPhysicalParameter";
    case ErrorCode::UnstableDynamics: return "UnstableDynamics";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::UnphysicalInvariants: return "UnphysicalInvariants";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::EigenSolverFailure: return "EigenSolverFailure";
    case ErrorCode::HorizonTooShort: return "HorizonTooShort";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NoCrossing: return "NoCrossing";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace optoring
