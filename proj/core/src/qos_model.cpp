#include "qoscomp/qos_model.hpp"

#include <cmath>
#include <set>

#include "qoscomp/error.hpp"

namespace qoscomp {

namespace {

void require_same_keys(const std::map<std::string, double>& values,
                       const std::map<std::string, double>& reference,
                       const std::string& service_id) {
  bool same = values.size() == reference.size();
  for (auto a = values.begin(), b = reference.begin(); same && a != values.end(); ++a, ++b) {
    same = a->first == b->first;
  }
  if (!same) {
    throw Error(ErrorCode::SchemaMismatch,
                "service '" + service_id + "' does not share the candidate attribute set");
  }
}

}  // namespace

void validate_schema(const AttributeSchema& schema) {
  if (schema.empty()) {
    throw Error(ErrorCode::SchemaMismatch, "attribute schema is empty");
  }
  std::set<std::string> seen;
  for (const auto& attribute : schema) {
    if (attribute.name.empty()) {
      throw Error(ErrorCode::SchemaMismatch, "attribute with empty name");
    }
    if (!seen.insert(attribute.name).second) {
      throw Error(ErrorCode::SchemaMismatch, "duplicate attribute '" + attribute.name + "'");
    }
  }
}

AttributeExtremes compute_extremes(std::span<const QoSVector> candidates) {
  if (candidates.empty()) {
    throw Error(ErrorCode::EmptyCandidateSet, "cannot compute extremes of an empty candidate set");
  }
  AttributeExtremes extremes;
  const auto& reference = candidates.front().values;
  for (const auto& candidate : candidates) {
    require_same_keys(candidate.values, reference, candidate.service_id);
    for (const auto& [name, value] : candidate.values) {
      if (!std::isfinite(value)) {
        throw Error(ErrorCode::NonFiniteValue,
                    "service '" + candidate.service_id + "' has a non-finite '" + name + "'");
      }
      auto [it, inserted] = extremes.try_emplace(name, Range{value, value});
      if (!inserted) {
        it->second.min = std::min(it->second.min, value);
        it->second.max = std::max(it->second.max, value);
      }
    }
  }
  return extremes;
}

double scale_value(double value, const Range& range, Polarity polarity) {
  const double spread = range.spread();
  if (spread == 0.0) return 1.0;
  return polarity == Polarity::Negative ? (range.max - value) / spread
                                        : (value - range.min) / spread;
}

NormalizedQoSVector normalize(const QoSVector& candidate, const AttributeExtremes& extremes,
                              const AttributeSchema& schema) {
  if (candidate.values.size() != schema.size() || extremes.size() != schema.size()) {
    throw Error(ErrorCode::SchemaMismatch,
                "service '" + candidate.service_id + "' attribute count differs from the schema");
  }
  NormalizedQoSVector out{candidate.service_id, {}};
  for (const auto& attribute : schema) {
    auto value = candidate.values.find(attribute.name);
    auto range = extremes.find(attribute.name);
    if (value == candidate.values.end() || range == extremes.end()) {
      throw Error(ErrorCode::SchemaMismatch, "attribute '" + attribute.name +
                                                 "' missing for service '" +
                                                 candidate.service_id + "'");
    }
    const double q = value->second;
    if (!std::isfinite(q)) {
      throw Error(ErrorCode::NonFiniteValue,
                  "service '" + candidate.service_id + "' has a non-finite '" + attribute.name + "'");
    }
    if (q < range->second.min || q > range->second.max) {
      throw Error(ErrorCode::OutOfRangeValue,
                  "service '" + candidate.service_id + "' value of '" + attribute.name +
                      "' lies outside its extremes");
    }
    out.values.emplace(attribute.name, scale_value(q, range->second, attribute.polarity));
  }
  return out;
}

std::vector<NormalizedQoSVector> normalize_all(std::span<const QoSVector> candidates,
                                               const AttributeSchema& schema) {
  const auto extremes = compute_extremes(candidates);
  std::vector<NormalizedQoSVector> out;
  out.reserve(candidates.size());
  for (const auto& candidate : candidates) {
    out.push_back(normalize(candidate, extremes, schema));
  }
  return out;
}

}  // namespace qoscomp
