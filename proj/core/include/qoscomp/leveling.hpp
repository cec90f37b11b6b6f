#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "qoscomp/cba.hpp"
#include "qoscomp/qos_model.hpp"

namespace qoscomp {

struct RequestedRange {
  double lo = 0.0;
  double hi = 0.0;
  int rank = 1;  // 1 = most important

  friend bool operator==(const RequestedRange&, const RequestedRange&) = default;
};

/// QoS ranges the user asks for, in raw attribute units.
struct UserRequest {
  std::map<std::string, RequestedRange> ranges;

  /// Every schema attribute present, nothing else, lo <= hi, rank >= 1.
  void validate(const AttributeSchema& schema) const;

  friend bool operator==(const UserRequest&, const UserRequest&) = default;
};

struct LevelScheme {
  int n_levels = 3;
  std::vector<double> coefficients{1.0, 0.75, 0.25};

  /// Coefficients for `n` levels: (1, 3/4, 1/4) for three levels, otherwise
  /// evenly spaced (n-k+1)/n.
  static LevelScheme standard(int n = 3);

  /// Throws InvalidLevelScheme unless n >= 2, there are n coefficients in
  /// (0,1], the first is 1 and they strictly decrease.
  void validate() const;

  /// Throws LevelOutOfRange for a level outside [1, n].
  double coefficient(int level) const;

  friend bool operator==(const LevelScheme&, const LevelScheme&) = default;
};

struct ScoredService {
  std::string service_id;
  NormalizedQoSVector normalized;
  int level = 1;
  double utility = 0.0;
};

struct LevelAssignment {
  std::string service_id;
  int level = 1;

  friend bool operator==(const LevelAssignment&, const LevelAssignment&) = default;
};

/// Class label used for a level in training data and classifiers.
std::string level_label(int level);
int parse_level_label(const std::string& label, const LevelScheme& scheme);

/// Lower edge of the requested range in normalized space, per attribute.
/// Values at or above it satisfy the request. Throws DegenerateRequest when
/// the requested range does not overlap the observed [min, max].
std::map<std::string, double> normalized_request_floor(const UserRequest& request,
                                                       const AttributeExtremes& extremes,
                                                       const AttributeSchema& schema);

/// Level of one attribute bin. A bin whose upper edge reaches `floor` is
/// inside the request (level 1); otherwise the relative shortfall
/// (floor - edge) / floor is split into n-1 equal bands giving levels 2..n.
int bin_level(int label, int bins, double floor, int n_levels);

/// Expert training set: one instance per combination of attribute bins,
/// labelled with the level of its worst attribute. Items are ordered by
/// preference rank so the most important attribute comes first.
std::vector<cba::TrainingInstance> synthesize_training_set(const UserRequest& request,
                                                           const AttributeExtremes& extremes,
                                                           const AttributeSchema& schema,
                                                           const LevelScheme& scheme, int bins);

/// Discretized view of a normalized vector, as classifier input.
std::vector<cba::Item> to_items(const NormalizedQoSVector& normalized, int bins);

std::vector<LevelAssignment> classify_candidates(std::span<const NormalizedQoSVector> candidates,
                                                 const cba::Classifier& classifier,
                                                 const LevelScheme& scheme, int bins);

/// U = coefficient(level) * mean of the normalized values.
double compute_utility(const NormalizedQoSVector& normalized, int level,
                       const LevelScheme& scheme);

/// Services whose utility is strictly above `threshold`, in input order.
std::vector<ScoredService> filter_eligible(std::span<const ScoredService> scored,
                                           double threshold);

}  // namespace qoscomp
