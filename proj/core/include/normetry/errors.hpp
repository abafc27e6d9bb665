#pragma once

#include <stdexcept>
#include <string>

namespace normetry {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define NORMETRY_DEFINE_ERROR(Name)                 \
  class Name : public Error {                       \
  public:                                           \
    explicit Name(const std::string& what)          \
        : Error(std::string(#Name ": ") + what) {}  \
  }

/// The eigen/singular value iteration exhausted its budget.
NORMETRY_DEFINE_ERROR(ConvergenceFailure);
NORMETRY_DEFINE_ERROR(DomainError);
NORMETRY_DEFINE_ERROR(DimensionMismatch);
NORMETRY_DEFINE_ERROR(BadSpec);
NORMETRY_DEFINE_ERROR(ShapeValidationFailed);
NORMETRY_DEFINE_ERROR(MixedClass);
NORMETRY_DEFINE_ERROR(NotAContraction);
NORMETRY_DEFINE_ERROR(NotExpansive);
NORMETRY_DEFINE_ERROR(NotPositiveDefinite);
NORMETRY_DEFINE_ERROR(NotNormal);
NORMETRY_DEFINE_ERROR(IndexOutOfRange);
NORMETRY_DEFINE_ERROR(UnknownCheck);
NORMETRY_DEFINE_ERROR(ParseError);

#undef NORMETRY_DEFINE_ERROR

}  // namespace normetry
