#pragma once

#include <stdexcept>
#include <string>

namespace gdseries {

enum class Errc {
  ExponentDenominatorMismatch,
  SpecMismatch,
  DivisionByZero,
  VariableSetMismatch,
  NonzeroConstantTerm,
  BadConstantTerm,
  UnknownFamily,
  UnsupportedAlpha,
  RecurrenceMismatch,
  UnknownGrade,
  GradeTooHigh,
  NotTransferable,
  TruncationError,
  SizeLimit,
  CalibrationAmbiguous,
  CalibrationFailed,
  InvalidArgument,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::ExponentDenominatorMismatch: return "ExponentDenominatorMismatch";
    case Errc::SpecMismatch: return "SpecMismatch";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::VariableSetMismatch: return "VariableSetMismatch";
    case Errc::NonzeroConstantTerm: return "NonzeroConstantTerm";
    case Errc::BadConstantTerm: return "BadConstantTerm";
    case Errc::UnknownFamily: return "UnknownFamily";
    case Errc::UnsupportedAlpha: return "UnsupportedAlpha";
    case Errc::RecurrenceMismatch: return "RecurrenceMismatch";
    case Errc::UnknownGrade: return "UnknownGrade";
    case Errc::GradeTooHigh: return "GradeTooHigh";
    case Errc::NotTransferable: return "NotTransferable";
    case Errc::TruncationError: return "TruncationError";
    case Errc::SizeLimit: return "SizeLimit";
    case Errc::CalibrationAmbiguous: return "CalibrationAmbiguous";
    case Errc::CalibrationFailed: return "CalibrationFailed";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace gdseries
