// Error taxonomy shared by the library and the CLI exit-code mapping.
#pragma once

#include <stdexcept>
#include <string>

namespace laxkit {

enum class Errc {
  NotClosedUnderBracket,
  JacobiFailure,
  GradingViolation,
  NotAntisymmetric,
  DegenerateForm,
  BadParameters,
  NoClosedForm,
  UnresolvedKernelComponent,
  BadInput,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotClosedUnderBracket: return "NotClosedUnderBracket";
    case Errc::JacobiFailure: return "JacobiFailure";
    case Errc::GradingViolation: return "GradingViolation";
    case Errc::NotAntisymmetric: return "NotAntisymmetric";
    case Errc::DegenerateForm: return "DegenerateForm";
    case Errc::BadParameters: return "BadParameters";
    case Errc::NoClosedForm: return "NoClosedForm";
    case Errc::UnresolvedKernelComponent: return "UnresolvedKernelComponent";
    case Errc::BadInput: return "BadInput";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace laxkit
