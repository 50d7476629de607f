#pragma once

#include <stdexcept>
#include <string>

namespace bsl {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A boundary point sits within tolerance of an arc endpoint; the caller decides
// whether to retry at higher precision or treat the point as parabolic.
struct NearBoundaryAmbiguity : Error {
  using Error::Error;
};

struct PrecisionExhausted : Error {
  using Error::Error;
};

struct BacktrackingWord : Error {
  using Error::Error;
};

struct SuspectedParabolicPoint : Error {
  using Error::Error;
};

struct VertexNotResolved : Error {
  using Error::Error;
};

struct BetaZero : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct ValidationError : Error {
  using Error::Error;
};

struct BudgetExceeded : Error {
  using Error::Error;
};

struct InsufficientData : Error {
  using Error::Error;
};

struct RationalDetected : Error {
  using Error::Error;
};

struct ResolutionNotReached : Error {
  using Error::Error;
};

}  // namespace bsl
