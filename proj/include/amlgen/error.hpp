#pragma once

#include <stdexcept>
#include <string>

namespace amlgen {

// Every failure raised by the library derives from Error so callers can
// catch broadly at the CLI boundary and narrowly in tests.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define AMLGEN_DEFINE_ERROR(Name)         \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  };

// config
AMLGEN_DEFINE_ERROR(ParseError)
AMLGEN_DEFINE_ERROR(ValidationError)
AMLGEN_DEFINE_ERROR(MissingSeed)

// model / population
AMLGEN_DEFINE_ERROR(UnsupportedEntityType)
AMLGEN_DEFINE_ERROR(UnknownCluster)
AMLGEN_DEFINE_ERROR(DanglingEndpoint)
AMLGEN_DEFINE_ERROR(OutOfWindow)
AMLGEN_DEFINE_ERROR(UnknownOwner)

// patterns
AMLGEN_DEFINE_ERROR(InvalidWindow)
AMLGEN_DEFINE_ERROR(InvalidPeriod)
AMLGEN_DEFINE_ERROR(PoolExhausted)
AMLGEN_DEFINE_ERROR(NoEligibleEntities)

#define AMLGEN_DEFINE_SELECTION_ERROR(Name)    \
  class Name : public NoEligibleEntities {     \
   public:                                     \
    using NoEligibleEntities::NoEligibleEntities; \
  };

AMLGEN_DEFINE_SELECTION_ERROR(NoEligibleSource)
AMLGEN_DEFINE_SELECTION_ERROR(NoOverseasDestinations)
AMLGEN_DEFINE_SELECTION_ERROR(NoEligibleBeneficiary)
AMLGEN_DEFINE_SELECTION_ERROR(NoEligibleBusiness)
AMLGEN_DEFINE_SELECTION_ERROR(InsufficientOverseasBusinesses)
AMLGEN_DEFINE_SELECTION_ERROR(InsufficientCoordinators)

#undef AMLGEN_DEFINE_SELECTION_ERROR

// background
AMLGEN_DEFINE_ERROR(UnknownType)
AMLGEN_DEFINE_ERROR(UnknownKind)
AMLGEN_DEFINE_ERROR(InvalidRatio)

// assemble / validate
AMLGEN_DEFINE_ERROR(TooFewEdges)
AMLGEN_DEFINE_ERROR(IoError)
AMLGEN_DEFINE_ERROR(UnknownTypology)

#undef AMLGEN_DEFINE_ERROR

}  // namespace amlgen
