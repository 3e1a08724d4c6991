#pragma once

#include <stdexcept>
#include <string>

namespace biherm {

// Broad failure categories. The CLI maps them onto process exit codes.
enum class ErrorKind {
  Parse,          // malformed input document
  Classification, // group data rejected by the classifier
  Analytic,       // positivity / plurisubharmonicity failure
  Numerical,      // integrator or root-finder failure
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define BIHERM_DEFINE_ERROR(Name, Kind)                                           \
  class Name : public Error {                                                     \
   public:                                                                        \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, #Name ": " + what) {} \
  }

BIHERM_DEFINE_ERROR(ParseError, Parse);
BIHERM_DEFINE_ERROR(DegenerateForm, Numerical);
BIHERM_DEFINE_ERROR(SingularMetric, Numerical);
BIHERM_DEFINE_ERROR(NotFinite, Classification);
BIHERM_DEFINE_ERROR(InvalidGroupData, Classification);
BIHERM_DEFINE_ERROR(ConstraintViolation, Classification);
BIHERM_DEFINE_ERROR(AmbiguousRadialTime, Numerical);
BIHERM_DEFINE_ERROR(NotPlurisubharmonic, Analytic);
BIHERM_DEFINE_ERROR(NotPositive, Analytic);
BIHERM_DEFINE_ERROR(StepSizeUnderflow, Numerical);

#undef BIHERM_DEFINE_ERROR

}  // namespace biherm
