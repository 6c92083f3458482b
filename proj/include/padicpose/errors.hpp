#pragma once

#include <stdexcept>
#include <string>

namespace padicpose {

// Domain errors raised by the library. Each maps to one named failure mode.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PADICPOSE_ERROR(Name)                                   \
  class Name : public Error {                                   \
   public:                                                      \
    explicit Name(const std::string& what) : Error(what) {}     \
  };

PADICPOSE_ERROR(NotAUnit)
PADICPOSE_ERROR(MixedPrecision)
PADICPOSE_ERROR(ShapeMismatch)
PADICPOSE_ERROR(ZeroPolynomial)
PADICPOSE_ERROR(RankDeficient)
PADICPOSE_ERROR(NoLiftableSubsystem)
PADICPOSE_ERROR(ZeroPencilMod2)
PADICPOSE_ERROR(PivotFailure)
PADICPOSE_ERROR(SingleCluster)
PADICPOSE_ERROR(ZeroMatrix)
PADICPOSE_ERROR(NotSkew)
PADICPOSE_ERROR(NotEven)
PADICPOSE_ERROR(ZeroTranslation)
PADICPOSE_ERROR(DegenerateEpipolarLine)
PADICPOSE_ERROR(OutOfRange)
PADICPOSE_ERROR(InsufficientData)
PADICPOSE_ERROR(AllSamplesFailed)
PADICPOSE_ERROR(InputError)

#undef PADICPOSE_ERROR

}  // namespace padicpose
