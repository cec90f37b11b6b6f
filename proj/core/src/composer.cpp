#include "qoscomp/composer.hpp"

#include <algorithm>
#include <set>

#include "qoscomp/error.hpp"

namespace qoscomp {

namespace {

bool contains(const std::vector<std::string>& values, const std::string& wanted) {
  return std::find(values.begin(), values.end(), wanted) != values.end();
}

std::vector<ConceptPair> annotated_pairs(const CompositionPlan& plan) {
  std::vector<ConceptPair> all;
  for (const auto& [edge, pairs] : plan.link_pairs()) all.insert(all.end(), pairs.begin(), pairs.end());
  return all;
}

void adopt(Selection& selection, const QueueEntry& entry) {
  selection.service_id = entry.service_id;
  selection.utility = entry.utility;
  selection.final_utility = entry.final_utility;
  selection.link_quality = entry.link_quality;
  selection.matches = entry.matches;
}

std::vector<std::pair<std::string, std::string>> upstream_of(const CompositionPlan& plan,
                                                             const CompositeService& composite,
                                                             std::string_view task) {
  std::vector<std::pair<std::string, std::string>> from;
  for (const auto& p : plan.predecessors(task)) from.emplace_back(p, composite.at(p).service_id);
  return from;
}

// Recomputes F of every successor of `task` against the current selections.
bool refresh_successors(CompositeService& composite, std::string_view task,
                        const LinkModel& links) {
  const auto& plan = links.plan();
  for (const auto& succ : plan.successors(task)) {
    auto& selection = composite.at(succ);
    const auto link =
        links.evaluate_incoming(upstream_of(plan, composite, succ), succ, selection.service_id);
    if (!link) return false;
    selection.link_quality = link->quality;
    selection.final_utility = selection.utility * link->quality;
    selection.matches = link->matches;
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// CompositionPlan

CompositionPlan::CompositionPlan(std::vector<std::string> tasks, std::vector<TaskEdge> edges,
                                 std::map<TaskEdge, std::vector<ConceptPair>> link_pairs)
    : tasks_(std::move(tasks)), edges_(std::move(edges)), link_pairs_(std::move(link_pairs)) {
  for (std::size_t i = 0; i < tasks_.size(); ++i) {
    if (tasks_[i].empty()) throw Error(ErrorCode::ParseError, "task with empty id");
    if (!index_.emplace(tasks_[i], i).second) {
      throw Error(ErrorCode::ParseError, "task '" + tasks_[i] + "' declared twice");
    }
  }
  predecessors_.assign(tasks_.size(), {});
  successors_.assign(tasks_.size(), {});
  std::set<TaskEdge> seen;
  for (const auto& edge : edges_) {
    const auto from = index_of(edge.first);
    const auto to = index_of(edge.second);
    if (!seen.insert(edge).second) {
      throw Error(ErrorCode::ParseError, "edge " + edge.first + "->" + edge.second + " repeated");
    }
    if (from == to) {
      throw Error(ErrorCode::CycleDetected, "task '" + edge.first + "' feeds itself");
    }
    successors_[from].push_back(edge.second);
    predecessors_[to].push_back(edge.first);
  }
  for (const auto& [edge, pairs] : link_pairs_) {
    if (!seen.contains(edge)) {
      index_of(edge.first);
      index_of(edge.second);
      throw Error(ErrorCode::UnknownTask,
                  "link pairs given for missing edge " + edge.first + "->" + edge.second);
    }
  }

  std::vector<std::size_t> pending(tasks_.size());
  for (std::size_t i = 0; i < tasks_.size(); ++i) pending[i] = predecessors_[i].size();
  std::set<std::size_t> ready;
  for (std::size_t i = 0; i < tasks_.size(); ++i) {
    if (pending[i] == 0) ready.insert(i);
  }
  while (!ready.empty()) {
    const auto next = *ready.begin();
    ready.erase(ready.begin());
    order_.push_back(tasks_[next]);
    for (const auto& succ : successors_[next]) {
      const auto s = index_.at(succ);
      if (--pending[s] == 0) ready.insert(s);
    }
  }
  if (order_.size() != tasks_.size()) {
    throw Error(ErrorCode::CycleDetected, "composition plan contains a cycle");
  }
}

std::size_t CompositionPlan::index_of(std::string_view task) const {
  auto it = index_.find(std::string(task));
  if (it == index_.end()) {
    throw Error(ErrorCode::UnknownTask, "unknown task '" + std::string(task) + "'");
  }
  return it->second;
}

bool CompositionPlan::contains(std::string_view task) const {
  return index_.contains(std::string(task));
}

const std::vector<std::string>& CompositionPlan::predecessors(std::string_view task) const {
  return predecessors_[index_of(task)];
}

const std::vector<std::string>& CompositionPlan::successors(std::string_view task) const {
  return successors_[index_of(task)];
}

const std::vector<ConceptPair>* CompositionPlan::pairs_for(std::string_view from,
                                                           std::string_view to) const {
  auto it = link_pairs_.find(TaskEdge{std::string(from), std::string(to)});
  return it == link_pairs_.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// LinkModel

LinkModel::LinkModel(const CompositionPlan& plan, const Registry& registry,
                     const Taxonomy& taxonomy)
    : plan_(&plan),
      registry_(&registry),
      taxonomy_(&taxonomy),
      cache_(taxonomy, annotated_pairs(plan)) {}

std::optional<Link> LinkModel::evaluate(std::string_view from_task, std::string_view from_service,
                                        std::string_view to_task,
                                        std::string_view to_service) const {
  const auto* from = registry_->find(from_service);
  const auto* to = registry_->find(to_service);
  if (from == nullptr || to == nullptr) {
    throw Error(ErrorCode::UnknownService, "unknown service '" +
                                               std::string(from == nullptr ? from_service
                                                                           : to_service) +
                                               "'");
  }

  Link link{0.0, {}};
  double sum = 0.0;
  auto add = [&](const std::string& out, const std::string& in) {
    const auto m = cache_.lookup(out, in);
    link.matches.push_back(m);
    if (m != MatchType::Disjoint) sum += matching_quality(m);
  };
  if (const auto* pairs = plan_->pairs_for(from_task, to_task)) {
    for (const auto& pair : *pairs) {
      if (contains(from->outputs, pair.out) && contains(to->inputs, pair.in)) add(pair.out, pair.in);
    }
  } else {
    for (const auto& out : from->outputs) {
      for (const auto& in : to->inputs) add(out, in);
    }
  }
  if (link.matches.empty() ||
      std::find(link.matches.begin(), link.matches.end(), MatchType::Disjoint) !=
          link.matches.end()) {
    return std::nullopt;
  }
  link.quality = sum / static_cast<double>(link.matches.size());
  return link;
}

std::optional<Link> LinkModel::evaluate_incoming(
    std::span<const std::pair<std::string, std::string>> from, std::string_view to_task,
    std::string_view to_service) const {
  if (from.empty()) return Link{1.0, {}};
  Link combined{0.0, {}};
  double sum = 0.0;
  for (const auto& [task, service] : from) {
    auto link = evaluate(task, service, to_task, to_service);
    if (!link) return std::nullopt;
    sum += link->quality;
    combined.matches.insert(combined.matches.end(), link->matches.begin(), link->matches.end());
  }
  combined.quality = sum / static_cast<double>(from.size());
  return combined;
}

// ---------------------------------------------------------------------------
// Graph and composite accessors

bool queue_before(const QueueEntry& a, const QueueEntry& b) {
  if (a.final_utility != b.final_utility) return a.final_utility > b.final_utility;
  return a.service_id < b.service_id;
}

std::size_t SearchGraph::position(std::string_view task) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].task_id == task) return i;
  }
  throw Error(ErrorCode::UnknownTask, "task '" + std::string(task) + "' is not in the graph");
}

const TaskNode& SearchGraph::node(std::string_view task) const { return nodes[position(task)]; }
TaskNode& SearchGraph::node(std::string_view task) { return nodes[position(task)]; }

const Selection& CompositeService::at(std::string_view task) const {
  for (const auto& s : selections) {
    if (s.task_id == task) return s;
  }
  throw Error(ErrorCode::UnknownTask, "composite has no task '" + std::string(task) + "'");
}

Selection& CompositeService::at(std::string_view task) {
  return const_cast<Selection&>(std::as_const(*this).at(task));
}

double CompositeService::aggregate_score() const {
  double score = 1.0;
  for (const auto& s : selections) score *= s.final_utility;
  return score;
}

std::map<std::string, std::string> CompositeService::assignment() const {
  std::map<std::string, std::string> out;
  for (const auto& s : selections) out.emplace(s.task_id, s.service_id);
  return out;
}

// ---------------------------------------------------------------------------
// Operations

SearchResult build_search_graph(const CompositionPlan& plan,
                                const std::map<std::string, std::vector<ScoredService>>& eligible,
                                const LinkModel& links) {
  SearchResult result;
  for (const auto& task : plan.topological_order()) {
    auto candidates = eligible.find(task);
    if (candidates == eligible.end() || candidates->second.empty()) {
      throw Error(ErrorCode::NoEligibleCandidate, "task '" + task + "' has no eligible service");
    }
    TaskNode node{task, {}, candidates->second.size()};
    const auto from = upstream_of(plan, result.primary, task);
    for (const auto& candidate : candidates->second) {
      if (from.empty()) {
        node.queue.push_back({candidate.service_id, candidate.utility, candidate.utility, 1.0, {}});
        continue;
      }
      auto link = links.evaluate_incoming(from, task, candidate.service_id);
      if (!link) continue;
      node.queue.push_back({candidate.service_id, candidate.utility,
                            candidate.utility * link->quality, link->quality,
                            std::move(link->matches)});
    }
    if (node.queue.empty()) {
      throw Error(ErrorCode::NoAdmissibleLink,
                  "no candidate of task '" + task + "' links to the selected predecessors");
    }
    std::sort(node.queue.begin(), node.queue.end(), queue_before);

    Selection selection;
    selection.task_id = task;
    adopt(selection, node.queue.front());
    result.primary.selections.push_back(std::move(selection));
    result.graph.nodes.push_back(std::move(node));
  }
  return result;
}

Alternative first_alternative(const SearchGraph& graph, const CompositeService& primary,
                              const LinkModel& links) {
  std::optional<Alternative> best;
  double best_score = 0.0;
  for (const auto& node : graph.nodes) {
    if (node.queue.size() < 2) continue;
    CompositeService candidate = primary;
    adopt(candidate.at(node.task_id), node.queue[1]);
    if (!refresh_successors(candidate, node.task_id, links)) continue;
    const double score = candidate.aggregate_score();
    if (!best || score > best_score) {
      best_score = score;
      best = Alternative{std::move(candidate), node.task_id};
    }
  }
  if (!best) {
    throw Error(ErrorCode::NoAlternative, "no task offers a second admissible candidate");
  }
  return std::move(*best);
}

CompositeService replace_unavailable(SearchGraph& graph, const CompositeService& composite,
                                     std::string_view failed_task,
                                     std::string_view failed_service, const LinkModel& links) {
  const auto& plan = links.plan();
  if (!plan.contains(failed_task)) {
    throw Error(ErrorCode::UnknownTask, "unknown task '" + std::string(failed_task) + "'");
  }
  if (composite.at(failed_task).service_id != failed_service) {
    throw Error(ErrorCode::NotSelectedService, "'" + std::string(failed_service) +
                                                   "' is not selected for task '" +
                                                   std::string(failed_task) + "'");
  }

  TaskNode& node = graph.node(failed_task);
  const auto from = upstream_of(plan, composite, failed_task);
  const auto& successors = plan.successors(failed_task);

  std::vector<QueueEntry> requeued;
  for (const auto& entry : node.queue) {
    if (entry.service_id == failed_service) continue;

    std::optional<Link> incoming;
    if (!from.empty()) {
      incoming = links.evaluate_incoming(from, failed_task, entry.service_id);
      if (!incoming) continue;
    }
    std::optional<Link> outgoing;
    if (!successors.empty()) {
      outgoing = Link{0.0, {}};
      double sum = 0.0;
      for (const auto& succ : successors) {
        auto link = links.evaluate(failed_task, entry.service_id, succ,
                                   composite.at(succ).service_id);
        if (!link) {
          outgoing.reset();
          break;
        }
        sum += link->quality;
        outgoing->matches.insert(outgoing->matches.end(), link->matches.begin(),
                                 link->matches.end());
      }
      if (!outgoing) continue;
      outgoing->quality = sum / static_cast<double>(successors.size());
    }

    QueueEntry updated{entry.service_id, entry.utility, 0.0, 1.0, {}};
    if (incoming && outgoing) {
      updated.link_quality = (incoming->quality + outgoing->quality) / 2.0;
    } else if (incoming) {
      updated.link_quality = incoming->quality;
    } else if (outgoing) {
      updated.link_quality = outgoing->quality;
    }
    if (incoming) updated.matches = incoming->matches;
    if (outgoing) {
      updated.matches.insert(updated.matches.end(), outgoing->matches.begin(),
                             outgoing->matches.end());
    }
    updated.final_utility = updated.utility * updated.link_quality;
    requeued.push_back(std::move(updated));
  }
  if (requeued.empty()) {
    throw Error(ErrorCode::NoReplacementCandidate,
                "no admissible replacement for '" + std::string(failed_service) + "' in task '" +
                    std::string(failed_task) + "'");
  }
  std::sort(requeued.begin(), requeued.end(), queue_before);

  CompositeService replaced = composite;
  adopt(replaced.at(failed_task), requeued.front());
  if (!refresh_successors(replaced, failed_task, links)) {
    throw Error(ErrorCode::NoReplacementCandidate,
                "replacement for task '" + std::string(failed_task) + "' breaks a successor link");
  }
  node.queue = std::move(requeued);
  return replaced;
}

}  // namespace qoscomp
