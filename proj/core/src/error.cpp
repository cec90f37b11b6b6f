#include "qoscomp/error.hpp"

namespace qoscomp {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyCandidateSet: return "EmptyCandidateSet";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::OutOfRangeValue: return "OutOfRangeValue";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::ValueOutOfRange: return "ValueOutOfRange";
    case ErrorCode::EmptyTrainingSet: return "EmptyTrainingSet";
    case ErrorCode::InvalidMiningConfig: return "InvalidMiningConfig";
    case ErrorCode::DegenerateRequest: return "DegenerateRequest";
    case ErrorCode::LevelOutOfRange: return "LevelOutOfRange";
    case ErrorCode::InvalidLevelScheme: return "InvalidLevelScheme";
    case ErrorCode::TrainingSetTooLarge: return "TrainingSetTooLarge";
    case ErrorCode::UnknownConcept: return "UnknownConcept";
    case ErrorCode::DisjointMatch: return "DisjointMatch";
    case ErrorCode::NoSharedParameters: return "NoSharedParameters";
    case ErrorCode::InconsistentTaxonomy: return "InconsistentTaxonomy";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::UnknownTask: return "UnknownTask";
    case ErrorCode::UnknownService: return "UnknownService";
    case ErrorCode::NoEligibleCandidate: return "NoEligibleCandidate";
    case ErrorCode::NoAdmissibleLink: return "NoAdmissibleLink";
    case ErrorCode::NoAlternative: return "NoAlternative";
    case ErrorCode::NotSelectedService: return "NotSelectedService";
    case ErrorCode::NoReplacementCandidate: return "NoReplacementCandidate";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownAttribute: return "UnknownAttribute";
    case ErrorCode::EmptyRegistry: return "EmptyRegistry";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

int exit_code(ErrorCode code) noexcept {
  if (code == ErrorCode::IoError) return 2;
  return 10 + static_cast<int>(code);
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

Error Error::with_context(std::string_view context) const {
  std::string message(context);
  message += ": ";
  message += what();
  return Error(code_, message);
}

}  // namespace qoscomp
