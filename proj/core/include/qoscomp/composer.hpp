#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qoscomp/leveling.hpp"
#include "qoscomp/ontology.hpp"
#include "qoscomp/registry.hpp"

namespace qoscomp {

using TaskEdge = std::pair<std::string, std::string>;  // from, to

/// Abstract composition: tasks connected by data-flow edges. Each edge may
/// name the (output concept, input concept) pairs its data flow connects.
class CompositionPlan {
 public:
  CompositionPlan() = default;

  /// Throws UnknownTask for an edge endpoint (or link_pairs key) that is not
  /// a task, CycleDetected when the edges are cyclic, ParseError on duplicate
  /// tasks or edges.
  CompositionPlan(std::vector<std::string> tasks, std::vector<TaskEdge> edges,
                  std::map<TaskEdge, std::vector<ConceptPair>> link_pairs = {});

  const std::vector<std::string>& tasks() const noexcept { return tasks_; }
  const std::vector<TaskEdge>& edges() const noexcept { return edges_; }
  const std::map<TaskEdge, std::vector<ConceptPair>>& link_pairs() const noexcept {
    return link_pairs_;
  }

  bool contains(std::string_view task) const;

  /// Kahn order; among ready tasks the one declared first goes first.
  const std::vector<std::string>& topological_order() const noexcept { return order_; }
  const std::vector<std::string>& predecessors(std::string_view task) const;
  const std::vector<std::string>& successors(std::string_view task) const;

  /// Concept pairs annotated on an edge, or nullptr when the edge carries none.
  const std::vector<ConceptPair>* pairs_for(std::string_view from, std::string_view to) const;

  friend bool operator==(const CompositionPlan& a, const CompositionPlan& b) {
    return a.tasks_ == b.tasks_ && a.edges_ == b.edges_ && a.link_pairs_ == b.link_pairs_;
  }

 private:
  std::size_t index_of(std::string_view task) const;

  std::vector<std::string> tasks_;
  std::vector<TaskEdge> edges_;
  std::map<TaskEdge, std::vector<ConceptPair>> link_pairs_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::string>> predecessors_;
  std::vector<std::vector<std::string>> successors_;
  std::vector<std::string> order_;
};

struct Link {
  double quality = 1.0;
  std::vector<MatchType> matches;
};

/// Semantic links between concrete services along plan edges.
///
/// The pairs joining upstream service s to downstream service t are the
/// edge's annotated pairs whose output concept s produces and whose input
/// concept t consumes; an edge without annotations pairs every output of s
/// with every input of t. Match types are precomputed for all annotated
/// pairs at construction.
class LinkModel {
 public:
  /// Keeps references to all three arguments.
  LinkModel(const CompositionPlan& plan, const Registry& registry, const Taxonomy& taxonomy);

  /// nullopt when no pair connects the services or some pair is Disjoint.
  std::optional<Link> evaluate(std::string_view from_task, std::string_view from_service,
                               std::string_view to_task, std::string_view to_service) const;

  /// Mean link quality from several upstream selections into `to_service`.
  /// Empty `from` yields quality 1. nullopt if any link is inadmissible.
  std::optional<Link> evaluate_incoming(
      std::span<const std::pair<std::string, std::string>> from,  // (task, service)
      std::string_view to_task, std::string_view to_service) const;

  const CompositionPlan& plan() const noexcept { return *plan_; }

 private:
  const CompositionPlan* plan_;
  const Registry* registry_;
  const Taxonomy* taxonomy_;
  MatchCache cache_;
};

struct QueueEntry {
  std::string service_id;
  double utility = 0.0;        // U
  double final_utility = 0.0;  // F = U * link_quality
  double link_quality = 1.0;
  std::vector<MatchType> matches;
};

/// F descending, then service id ascending.
bool queue_before(const QueueEntry& a, const QueueEntry& b);

struct TaskNode {
  std::string task_id;
  std::vector<QueueEntry> queue;  // kept sorted with queue_before; head first
  std::size_t eligible = 0;       // candidates that entered consideration
};

struct SearchGraph {
  std::vector<TaskNode> nodes;  // topological order

  const TaskNode& node(std::string_view task) const;
  TaskNode& node(std::string_view task);
  std::size_t position(std::string_view task) const;
};

struct Selection {
  std::string task_id;
  std::string service_id;
  double utility = 0.0;
  double final_utility = 0.0;
  double link_quality = 1.0;
  std::vector<MatchType> matches;
};

struct CompositeService {
  std::vector<Selection> selections;  // topological order

  const Selection& at(std::string_view task) const;
  Selection& at(std::string_view task);
  /// Product of the selected F values.
  double aggregate_score() const;
  std::map<std::string, std::string> assignment() const;
};

struct SearchResult {
  SearchGraph graph;
  CompositeService primary;
};

struct Alternative {
  CompositeService composite;
  std::string swapped_task;
};

/// Greedy construction: source tasks rank candidates by U; every later task
/// ranks by F = U * q, where q comes from the already selected predecessors,
/// and takes its queue head.
///
/// Throws NoEligibleCandidate when a task has no eligible services and
/// NoAdmissibleLink when none of them links to the selected predecessors.
SearchResult build_search_graph(const CompositionPlan& plan,
                                const std::map<std::string, std::vector<ScoredService>>& eligible,
                                const LinkModel& links);

/// Best composite that differs from `primary` at exactly one task, where
/// that task takes its queue's second entry and the F values of its
/// successors are recomputed. Ties go to the earliest task.
/// Throws NoAlternative when no such composite exists.
Alternative first_alternative(const SearchGraph& graph, const CompositeService& primary,
                              const LinkModel& links);

/// Drops `failed_service` from its task queue and re-ranks the rest by
/// U * (mean of incoming and outgoing link quality against the current
/// neighbours' selections); the new head replaces the failed service.
/// `graph` is updated in place. Successor F values are recomputed against
/// the replacement; no other selection changes.
///
/// Throws UnknownTask, NotSelectedService, or NoReplacementCandidate.
CompositeService replace_unavailable(SearchGraph& graph, const CompositeService& composite,
                                     std::string_view failed_task,
                                     std::string_view failed_service, const LinkModel& links);

}  // namespace qoscomp
