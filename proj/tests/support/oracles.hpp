#pragma once

// Reference implementations used only by tests. They share types with the
// library but none of its algorithms: everything here is recomputed by
// direct enumeration over the raw inputs.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "qoscomp/cba.hpp"
#include "qoscomp/composer.hpp"
#include "qoscomp/error.hpp"
#include "qoscomp/leveling.hpp"
#include "qoscomp/ontology.hpp"
#include "qoscomp/registry.hpp"

namespace oracle {

using qoscomp::cba::Classifier;
using qoscomp::cba::TrainingInstance;

// ---------------------------------------------------------------------------
// Class association rules

/// (rendered antecedent, class, rule count, antecedent count)
using RuleKey = std::tuple<std::string, std::string, std::size_t, std::size_t>;

/// Every (antecedent, class) pair over `data` passing both thresholds,
/// found by trying each attribute subset against each row's projection.
std::set<RuleKey> brute_force_cars(const std::vector<TrainingInstance>& data, double min_support,
                                   double min_confidence, std::size_t max_size);

std::set<RuleKey> keys_of(const std::vector<qoscomp::cba::ClassAssociationRule>& rules);

/// Direct recount of support and confidence for one rule.
std::pair<double, double> recount(const qoscomp::cba::ClassAssociationRule& rule,
                                  const std::vector<TrainingInstance>& data);

/// Replays the coverage pass of a built classifier. Empty string when every
/// kept rule correctly classified an uncovered instance at its turn and the
/// default class is the majority of what stays uncovered; otherwise a
/// description of the first violation.
std::string replay_coverage(const Classifier& classifier,
                            const std::vector<TrainingInstance>& data);

/// Random training set: up to `max_rows` rows, `attributes` attributes with
/// up to `labels` values each, up to `classes` class labels.
std::vector<TrainingInstance> random_training_set(std::mt19937_64& rng, int max_rows,
                                                  int attributes, int labels, int classes);

// ---------------------------------------------------------------------------
// Taxonomy reasoning by graph search over the raw axioms

class NaiveTaxonomy {
 public:
  explicit NaiveTaxonomy(qoscomp::Taxonomy::Axioms axioms);

  bool subsumed(const std::string& a, const std::string& b) const;
  bool declared_disjoint(const std::string& a, const std::string& b) const;
  bool share_descendant(const std::string& a, const std::string& b) const;
  qoscomp::MatchType match(const std::string& out, const std::string& in) const;

  const qoscomp::Taxonomy::Axioms& axioms() const { return axioms_; }

 private:
  std::set<std::string> equivalents(const std::string& c) const;

  qoscomp::Taxonomy::Axioms axioms_;
};

double q_m(qoscomp::MatchType m);

// ---------------------------------------------------------------------------
// Composition instances and the step-by-step greedy reference

struct Instance {
  qoscomp::Taxonomy::Axioms axioms;
  qoscomp::Registry registry;
  qoscomp::CompositionPlan plan;
  std::map<std::string, std::vector<qoscomp::ScoredService>> eligible;
};

struct InstanceShape {
  int min_tasks = 1;
  int max_tasks = 5;
  int max_candidates = 5;
  bool chain_backbone = false;  // always link consecutive tasks
};

Instance random_instance(std::mt19937_64& rng, const InstanceShape& shape);

struct NaiveEntry {
  std::string service;
  double u = 0.0;
  double q = 1.0;
  double f = 0.0;
};

struct NaiveComposite {
  std::vector<std::string> order;                  // topological
  std::map<std::string, std::string> assignment;   // task -> service
  std::map<std::string, double> f;                 // task -> F
  std::map<std::string, std::vector<NaiveEntry>> queues;
  std::optional<qoscomp::ErrorCode> error;
};

/// Optional link quality from service `s` (task `from`) to service `t`
/// (task `to`); nullopt when no pair connects them or a pair is Disjoint.
std::optional<double> naive_link(const Instance& inst, const NaiveTaxonomy& tax,
                                 const std::string& from, const std::string& s,
                                 const std::string& to, const std::string& t);

std::vector<std::string> naive_topological_order(const qoscomp::CompositionPlan& plan);

NaiveComposite naive_greedy(const Instance& inst, const NaiveTaxonomy& tax);

struct NaiveAlternative {
  std::string task;
  std::map<std::string, std::string> assignment;
  double score = 0.0;
};

/// Tries every task's second queue entry and keeps the best product of F.
std::optional<NaiveAlternative> naive_first_alternative(const Instance& inst,
                                                        const NaiveTaxonomy& tax,
                                                        const NaiveComposite& primary);

struct NaiveReplacement {
  std::string service;
  double u = 0.0;
  std::optional<double> q_in;
  std::optional<double> q_out;
  double q = 1.0;
  double f = 0.0;
};

std::optional<NaiveReplacement> naive_replace(const Instance& inst, const NaiveTaxonomy& tax,
                                              const NaiveComposite& primary,
                                              const std::string& task);

}  // namespace oracle
