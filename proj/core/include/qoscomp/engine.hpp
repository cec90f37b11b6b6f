#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qoscomp/cba.hpp"
#include "qoscomp/composer.hpp"
#include "qoscomp/error.hpp"
#include "qoscomp/leveling.hpp"
#include "qoscomp/ontology.hpp"
#include "qoscomp/registry.hpp"

namespace qoscomp {

struct EngineConfig {
  LevelScheme levels = LevelScheme::standard(3);
  cba::MiningConfig mining{};
  int bins = 4;
  double threshold = 0.25;
  std::uint64_t seed = 42;
  UserRequest request;

  /// Throws InvalidConfig (or the scheme/mining specific code).
  void validate() const;
};

/// Per-task record of how candidates fared before ranking.
struct TaskDiagnostics {
  std::string task_id;
  std::vector<ScoredService> scored;  // every candidate, registry order
  std::size_t eligible = 0;
};

/// Everything up to (but not including) the ranking phase.
struct PreparedRequest {
  AttributeExtremes global_extremes;
  cba::Classifier classifier;
  std::vector<TaskDiagnostics> tasks;  // topological order
  std::map<std::string, std::vector<ScoredService>> eligible;
};

struct ComposeResult {
  PreparedRequest prepared;
  SearchGraph graph;
  CompositeService primary;
  std::optional<Alternative> alternative;  // empty when NoAlternative
};

/// Trains the request classifier. Classification works in one frame shared
/// by all tasks: the training set and the discretized candidates both use
/// extremes over the whole registry.
cba::Classifier train_request_classifier(const Registry& registry, const EngineConfig& config,
                                         AttributeExtremes* global_extremes = nullptr);

/// Scaling, classification, utility and eligibility for every task. Utility
/// uses per-task extremes.
PreparedRequest prepare(const CompositionPlan& plan, const Registry& registry,
                        const EngineConfig& config);

/// Full pipeline: prepare, build the search graph, pick the primary composite
/// and its first alternative. Errors carry the failing stage as context.
ComposeResult compose(const CompositionPlan& plan, const Registry& registry,
                      const Taxonomy& taxonomy, const EngineConfig& config);

}  // namespace qoscomp
