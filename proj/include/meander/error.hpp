#pragma once

#include <stdexcept>
#include <string>

namespace meander {

// Root of every error raised by the library. Each subclass names one failure
// mode of the public contract so callers (and the CLI exit-code mapping) can
// dispatch on type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, int line, int column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

#define MEANDER_DEFINE_ERROR(Name)     \
  class Name : public Error {          \
   public:                             \
    using Error::Error;                \
  }

MEANDER_DEFINE_ERROR(RangeError);
MEANDER_DEFINE_ERROR(ParityError);
MEANDER_DEFINE_ERROR(InvalidCode);
MEANDER_DEFINE_ERROR(Overflow);
MEANDER_DEFINE_ERROR(ResourceLimit);
MEANDER_DEFINE_ERROR(NotASubmeander);
MEANDER_DEFINE_ERROR(FullInterval);
MEANDER_DEFINE_ERROR(ParityMismatch);
MEANDER_DEFINE_ERROR(IncompleteTable);
MEANDER_DEFINE_ERROR(NonUnitDivisor);
MEANDER_DEFINE_ERROR(CompositionValuation);
MEANDER_DEFINE_ERROR(SqrtDomain);
MEANDER_DEFINE_ERROR(NonIntegerCoefficient);
MEANDER_DEFINE_ERROR(NoRationalRoot);
MEANDER_DEFINE_ERROR(SingularDerivative);
MEANDER_DEFINE_ERROR(NetworkError);

#undef MEANDER_DEFINE_ERROR

}  // namespace meander
