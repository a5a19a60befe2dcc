#pragma once

#include <stdexcept>
#include <string>

namespace hamforms {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define HAMFORMS_ERROR(Name)                 \
  class Name : public Error {                \
   public:                                   \
    using Error::Error;                      \
  }

HAMFORMS_ERROR(DivisionByZero);
HAMFORMS_ERROR(PoleError);
HAMFORMS_ERROR(DimensionMismatch);
HAMFORMS_ERROR(OddDimension);
HAMFORMS_ERROR(SingularMatrix);
HAMFORMS_ERROR(NotInThetaEta);
HAMFORMS_ERROR(DegenerateMetric);
HAMFORMS_ERROR(DegenerateImage);
HAMFORMS_ERROR(WrongTBlock);
HAMFORMS_ERROR(NullSystemOrbit);
HAMFORMS_ERROR(ShapeError);
HAMFORMS_ERROR(ParseError);
HAMFORMS_ERROR(ValidationError);

#undef HAMFORMS_ERROR

}  // namespace hamforms
