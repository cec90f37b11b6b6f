#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qoscomp {

enum class ErrorCode {
  // qos_model
  EmptyCandidateSet,
  SchemaMismatch,
  OutOfRangeValue,
  NonFiniteValue,
  // cba
  ValueOutOfRange,
  EmptyTrainingSet,
  InvalidMiningConfig,
  // leveling
  DegenerateRequest,
  LevelOutOfRange,
  InvalidLevelScheme,
  TrainingSetTooLarge,
  // ontology
  UnknownConcept,
  DisjointMatch,
  NoSharedParameters,
  InconsistentTaxonomy,
  // composer
  CycleDetected,
  UnknownTask,
  UnknownService,
  NoEligibleCandidate,
  NoAdmissibleLink,
  NoAlternative,
  NotSelectedService,
  NoReplacementCandidate,
  // data_io
  IoError,
  ParseError,
  UnknownAttribute,
  EmptyRegistry,
  InvalidConfig,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Process exit status the CLI uses for a given error. Every code maps to a
/// distinct value; 1 is reserved for usage errors.
int exit_code(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

  /// Returns a copy whose message is prefixed with `context: `.
  Error with_context(std::string_view context) const;

 private:
  ErrorCode code_;
};

}  // namespace qoscomp
