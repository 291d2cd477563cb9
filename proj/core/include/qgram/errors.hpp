#ifndef QGRAM_ERRORS_HPP
#define QGRAM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qgram {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define QGRAM_DEFINE_ERROR(NAME)                    \
  class NAME : public Error {                       \
   public:                                          \
    using Error::Error;                             \
  }

// input shape / validation
QGRAM_DEFINE_ERROR(NonHermitianInput);
QGRAM_DEFINE_ERROR(DimensionMismatch);
QGRAM_DEFINE_ERROR(InvalidEnsemble);
QGRAM_DEFINE_ERROR(InvalidDistribution);
QGRAM_DEFINE_ERROR(NonUnitVector);
QGRAM_DEFINE_ERROR(IndexOutOfRange);
QGRAM_DEFINE_ERROR(ParseError);

// mathematical preconditions
QGRAM_DEFINE_ERROR(NotPositive);
QGRAM_DEFINE_ERROR(TraceNotOne);
QGRAM_DEFINE_ERROR(OutsideSimplex);
QGRAM_DEFINE_ERROR(Infeasible);
QGRAM_DEFINE_ERROR(DegenerateBasis);
QGRAM_DEFINE_ERROR(UndefinedPhase);
QGRAM_DEFINE_ERROR(GramMismatch);
QGRAM_DEFINE_ERROR(DiagonalMismatch);
QGRAM_DEFINE_ERROR(OverlapIncreaseFromZero);
QGRAM_DEFINE_ERROR(R2Violation);
QGRAM_DEFINE_ERROR(ShapeMismatch);
QGRAM_DEFINE_ERROR(NotPlanar);
QGRAM_DEFINE_ERROR(RankDeficient);
QGRAM_DEFINE_ERROR(MethodInapplicable);

#undef QGRAM_DEFINE_ERROR

}  // namespace qgram

#endif
