#pragma once
// Error taxonomy shared by every module. Each failure kind is its own type so
// callers (and the CLI exit-code mapping) can dispatch on it.
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tileforge {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define TILEFORGE_ERROR(Name)                 \
  class Name : public Error {                 \
   public:                                    \
    explicit Name(const std::string& what)    \
        : Error(#Name ": " + what) {}         \
  }

TILEFORGE_ERROR(DimensionMismatch);
TILEFORGE_ERROR(PeriodMismatch);
TILEFORGE_ERROR(RegionIncompatible);
TILEFORGE_ERROR(NoRepeatFound);
TILEFORGE_ERROR(AgreementViolation);
TILEFORGE_ERROR(PrereqViolation);
TILEFORGE_ERROR(NotFinite);
TILEFORGE_ERROR(BadStackHeight);
TILEFORGE_ERROR(EmptyTile);
TILEFORGE_ERROR(BadBumpPosition);
TILEFORGE_ERROR(NotAPermutation);
TILEFORGE_ERROR(NotInCube);
TILEFORGE_ERROR(NotInFiber);
TILEFORGE_ERROR(PreconditionFailed);
TILEFORGE_ERROR(ParseError);
TILEFORGE_ERROR(NotASolution);
TILEFORGE_ERROR(NotTwoDimensional);

#undef TILEFORGE_ERROR

// Resource guard tripped. `stage` names the pass or operation that gave up.
class CostExceeded : public Error {
 public:
  CostExceeded(std::string stage, const std::string& what)
      : Error("CostExceeded[" + stage + "]: " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

// Two distinct representations a+f = a'+f' of the same element.
class OverlapError : public Error {
 public:
  OverlapError(std::vector<std::int64_t> witness, const std::string& what)
      : Error("OverlapError: " + what), witness_(std::move(witness)) {}
  const std::vector<std::int64_t>& witness() const { return witness_; }

 private:
  std::vector<std::int64_t> witness_;
};

}  // namespace tileforge
