#pragma once

#include <stdexcept>
#include <string>

namespace simlaw {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SIMLAW_DEFINE_ERROR(Name)          \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  };

SIMLAW_DEFINE_ERROR(DomainError)
SIMLAW_DEFINE_ERROR(RangeError)
SIMLAW_DEFINE_ERROR(NonMonotoneError)
SIMLAW_DEFINE_ERROR(NotInvertibleError)
SIMLAW_DEFINE_ERROR(ParamError)
SIMLAW_DEFINE_ERROR(DivisionError)
SIMLAW_DEFINE_ERROR(EmptyGridError)
SIMLAW_DEFINE_ERROR(ExclusionError)
SIMLAW_DEFINE_ERROR(GridSymmetryError)
SIMLAW_DEFINE_ERROR(LinkRangeError)
SIMLAW_DEFINE_ERROR(InsufficientDataError)
SIMLAW_DEFINE_ERROR(NonPositiveError)
SIMLAW_DEFINE_ERROR(DivergenceError)
SIMLAW_DEFINE_ERROR(ConstraintError)
SIMLAW_DEFINE_ERROR(ConfigError)
SIMLAW_DEFINE_ERROR(IoError)

#undef SIMLAW_DEFINE_ERROR

}  // namespace simlaw
