#include "qoscomp/engine.hpp"

#include <utility>

namespace qoscomp {

namespace {

template <typename Fn>
auto in_stage(const std::string& stage, Fn&& fn) {
  try {
    return std::forward<Fn>(fn)();
  } catch (const Error& e) {
    throw e.with_context(stage);
  }
}

}  // namespace

void EngineConfig::validate() const {
  levels.validate();
  mining.validate();
  if (bins < 2) throw Error(ErrorCode::InvalidConfig, "bins must be at least 2");
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::InvalidConfig, "eligibility threshold must lie in [0,1]");
  }
}

cba::Classifier train_request_classifier(const Registry& registry, const EngineConfig& config,
                                         AttributeExtremes* global_extremes) {
  std::vector<QoSVector> all;
  all.reserve(registry.records().size());
  for (const auto& record : registry.records()) all.push_back(record.qos_vector());
  auto extremes = in_stage("scaling", [&] { return compute_extremes(all); });
  auto training = in_stage("training set", [&] {
    return synthesize_training_set(config.request, extremes, registry.schema(), config.levels,
                                   config.bins);
  });
  auto classifier = in_stage("rule mining", [&] { return cba::train(training, config.mining); });
  if (global_extremes != nullptr) *global_extremes = std::move(extremes);
  return classifier;
}

PreparedRequest prepare(const CompositionPlan& plan, const Registry& registry,
                        const EngineConfig& config) {
  in_stage("config", [&] { config.validate(); });
  PreparedRequest prepared;
  prepared.classifier = train_request_classifier(registry, config, &prepared.global_extremes);
  const auto& schema = registry.schema();

  for (const auto& task : plan.topological_order()) {
    const std::string stage = "task '" + task + "'";
    TaskDiagnostics diagnostics{task, {}, 0};
    const auto candidates = registry.qos_for(task);
    if (candidates.empty()) {
      throw Error(ErrorCode::NoEligibleCandidate, stage + ": no candidate services registered");
    }
    in_stage(stage, [&] {
      const auto local = normalize_all(candidates, schema);
      std::vector<NormalizedQoSVector> shared;
      for (const auto& c : candidates) shared.push_back(normalize(c, prepared.global_extremes, schema));
      const auto levels =
          classify_candidates(shared, prepared.classifier, config.levels, config.bins);
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        diagnostics.scored.push_back({local[i].service_id, local[i], levels[i].level,
                                      compute_utility(local[i], levels[i].level, config.levels)});
      }
    });
    auto eligible = filter_eligible(diagnostics.scored, config.threshold);
    diagnostics.eligible = eligible.size();
    prepared.eligible.emplace(task, std::move(eligible));
    prepared.tasks.push_back(std::move(diagnostics));
  }
  return prepared;
}

ComposeResult compose(const CompositionPlan& plan, const Registry& registry,
                      const Taxonomy& taxonomy, const EngineConfig& config) {
  ComposeResult result;
  result.prepared = prepare(plan, registry, config);
  const LinkModel links(plan, registry, taxonomy);
  auto search = in_stage("ranking", [&] {
    return build_search_graph(plan, result.prepared.eligible, links);
  });
  result.graph = std::move(search.graph);
  result.primary = std::move(search.primary);
  try {
    result.alternative = first_alternative(result.graph, result.primary, links);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoAlternative) throw e.with_context("alternative");
  }
  return result;
}

}  // namespace qoscomp
