#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qoscomp/composer.hpp"
#include "qoscomp/leveling.hpp"
#include "qoscomp/ontology.hpp"
#include "qoscomp/registry.hpp"

namespace qoscomp {

/// Value range a synthetic attribute is drawn from. The defaults follow the
/// magnitudes of the public QWS measurements; they are generator policy, not
/// reference data.
struct AttributeProfile {
  QoSAttribute attribute;
  double min = 0.0;
  double max = 1.0;
};

/// Response time, availability, throughput, reliability, then the remaining
/// QWS columns; beyond nine attributes, generic positive [0,1] attributes.
std::vector<AttributeProfile> qws_profiles(int attributes);

/// Asks for the better half of every profile range, ranked in profile order.
UserRequest default_request(const std::vector<AttributeProfile>& profiles);

struct SyntheticInstance {
  Registry registry;
  CompositionPlan plan;
  Taxonomy taxonomy;
  UserRequest request;
};

/// Chain of `tasks` tasks with `candidates_per_task` services each.
///
/// The taxonomy holds four concepts per task: a hub under an earlier hub
/// (forming a random tree), two children of the hub and one concept below
/// both children, plus sparse disjointness between blocks. Services of task
/// k output one concept of block k; services of task k+1 consume one of the
/// hub, its children or the hub's parent, so every match type except
/// Disjoint occurs along an edge. Identical seeds give identical output.
SyntheticInstance generate_synthetic(int tasks, int candidates_per_task, int attributes,
                                     std::uint64_t seed);

}  // namespace qoscomp
