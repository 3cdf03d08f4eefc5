#pragma once

#include <stdexcept>
#include <string>

namespace relgas {

// Two buckets, matching the CLI exit-code contract: invalid_input covers
// malformed configs and out-of-domain arguments (exit 1), runtime_guard covers
// state guards tripped during integration or diagnostics (exit 2).
enum class ErrorKind { invalid_input, runtime_guard };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

#define RELGAS_DEFINE_ERROR(Name, Kind)                       \
  struct Name : Error {                                       \
    explicit Name(const std::string& m)                       \
        : Error(ErrorKind::Kind, std::string(#Name ": ") + m) {} \
  }

RELGAS_DEFINE_ERROR(DomainError, invalid_input);
RELGAS_DEFINE_ERROR(ConfigError, invalid_input);
RELGAS_DEFINE_ERROR(OutOfRange, invalid_input);
RELGAS_DEFINE_ERROR(NotApplicable, invalid_input);
RELGAS_DEFINE_ERROR(InsufficientSnapshots, invalid_input);
RELGAS_DEFINE_ERROR(InsufficientSamples, invalid_input);

RELGAS_DEFINE_ERROR(SuperluminalState, runtime_guard);
RELGAS_DEFINE_ERROR(NonPositiveStretch, runtime_guard);
RELGAS_DEFINE_ERROR(DegenerateDenominator, runtime_guard);
RELGAS_DEFINE_ERROR(LossOfHyperbolicity, runtime_guard);
RELGAS_DEFINE_ERROR(UnstableTimestep, runtime_guard);
RELGAS_DEFINE_ERROR(BlowupDetected, runtime_guard);

#undef RELGAS_DEFINE_ERROR

}  // namespace relgas
