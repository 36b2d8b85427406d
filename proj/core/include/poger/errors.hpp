#pragma once

#include <stdexcept>
#include <string>

namespace poger {

struct EmptyTextError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BackendUnavailableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RateLimitedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AlignmentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedOperationError : std::logic_error {
  using std::logic_error::logic_error;
};

struct UnknownContextError : std::logic_error {
  using std::logic_error::logic_error;
};

struct InvalidBudgetError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct AllFilteredError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct IndexError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct DivergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidInputsError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct MissingDomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct MissingCheckpointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ManifestMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace poger
