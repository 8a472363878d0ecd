#pragma once

#include <stdexcept>
#include <string>

namespace optoring {

enum class ErrorCode {
  NonPhysicalParameter,
  UnstableDynamics,
  SingularSystem,
  UnphysicalInvariants,
  DomainError,
  EigenSolverFailure,
  HorizonTooShort,
  CapExceeded,
  NoCrossing,
  ConfigError,
  IoError,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace optoring
