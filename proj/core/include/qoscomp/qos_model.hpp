#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

namespace qoscomp {

enum class Polarity {
  Positive,  // larger is better (availability, reliability)
  Negative,  // smaller is better (response time, price)
};

struct QoSAttribute {
  std::string name;
  Polarity polarity = Polarity::Positive;
  std::string unit;

  friend bool operator==(const QoSAttribute&, const QoSAttribute&) = default;
};

/// Ordered attribute list; names are unique.
using AttributeSchema = std::vector<QoSAttribute>;

/// Throws SchemaMismatch on an empty schema or a duplicated name.
void validate_schema(const AttributeSchema& schema);

/// Raw measurements for one candidate service.
struct QoSVector {
  std::string service_id;
  std::map<std::string, double> values;

  friend bool operator==(const QoSVector&, const QoSVector&) = default;
};

/// Values scaled into [0,1] where larger always means better.
struct NormalizedQoSVector {
  std::string service_id;
  std::map<std::string, double> values;

  friend bool operator==(const NormalizedQoSVector&, const NormalizedQoSVector&) = default;
};

struct Range {
  double min = 0.0;
  double max = 0.0;

  double spread() const noexcept { return max - min; }
  friend bool operator==(const Range&, const Range&) = default;
};

using AttributeExtremes = std::map<std::string, Range>;

/// Per-attribute min/max over exactly the given candidates.
///
/// Throws EmptyCandidateSet for an empty list, SchemaMismatch when the
/// candidates do not all carry the same attribute names, NonFiniteValue on
/// NaN or infinity.
AttributeExtremes compute_extremes(std::span<const QoSVector> candidates);

/// Scales a single value. Negative attributes map max to 0 and min to 1,
/// positive ones the other way round; a zero spread yields 1.
double scale_value(double value, const Range& range, Polarity polarity);

/// Scaling phase for one candidate. Every value must lie inside its
/// extremes (exact comparison, no epsilon); otherwise OutOfRangeValue.
NormalizedQoSVector normalize(const QoSVector& candidate,
                              const AttributeExtremes& extremes,
                              const AttributeSchema& schema);

/// Normalizes a whole candidate set against its own extremes.
std::vector<NormalizedQoSVector> normalize_all(std::span<const QoSVector> candidates,
                                               const AttributeSchema& schema);

}  // namespace qoscomp
