#include "qoscomp/leveling.hpp"

#include <algorithm>
#include <cmath>

#include "qoscomp/error.hpp"

namespace qoscomp {

namespace {

constexpr std::size_t kMaxTrainingRows = std::size_t{1} << 20;

}  // namespace

void UserRequest::validate(const AttributeSchema& schema) const {
  if (ranges.size() != schema.size()) {
    throw Error(ErrorCode::SchemaMismatch, "request does not cover exactly the schema attributes");
  }
  for (const auto& attribute : schema) {
    auto it = ranges.find(attribute.name);
    if (it == ranges.end()) {
      throw Error(ErrorCode::SchemaMismatch, "request lacks attribute '" + attribute.name + "'");
    }
    const auto& r = it->second;
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi) {
      throw Error(ErrorCode::InvalidConfig,
                  "requested range of '" + attribute.name + "' must satisfy lo <= hi");
    }
    if (r.rank < 1) {
      throw Error(ErrorCode::InvalidConfig,
                  "preference rank of '" + attribute.name + "' must be positive");
    }
  }
}

LevelScheme LevelScheme::standard(int n) {
  LevelScheme scheme;
  scheme.n_levels = n;
  scheme.coefficients.clear();
  if (n == 3) {
    scheme.coefficients = {1.0, 0.75, 0.25};
  } else {
    for (int k = 1; k <= n; ++k) {
      scheme.coefficients.push_back(static_cast<double>(n - k + 1) / n);
    }
  }
  scheme.validate();
  return scheme;
}

void LevelScheme::validate() const {
  if (n_levels < 2) {
    throw Error(ErrorCode::InvalidLevelScheme, "at least two QoS levels are required");
  }
  if (coefficients.size() != static_cast<std::size_t>(n_levels)) {
    throw Error(ErrorCode::InvalidLevelScheme, "need exactly one coefficient per level");
  }
  if (coefficients.front() != 1.0) {
    throw Error(ErrorCode::InvalidLevelScheme, "the first level coefficient must be 1");
  }
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    if (!(coefficients[k] > 0.0 && coefficients[k] <= 1.0)) {
      throw Error(ErrorCode::InvalidLevelScheme, "level coefficients must lie in (0,1]");
    }
    if (k > 0 && !(coefficients[k] < coefficients[k - 1])) {
      throw Error(ErrorCode::InvalidLevelScheme, "level coefficients must strictly decrease");
    }
  }
}

double LevelScheme::coefficient(int level) const {
  if (level < 1 || level > n_levels) {
    throw Error(ErrorCode::LevelOutOfRange,
                "level " + std::to_string(level) + " outside [1, " + std::to_string(n_levels) + "]");
  }
  return coefficients[static_cast<std::size_t>(level - 1)];
}

std::string level_label(int level) { return std::to_string(level); }

int parse_level_label(const std::string& label, const LevelScheme& scheme) {
  int level = 0;
  try {
    std::size_t used = 0;
    level = std::stoi(label, &used);
    if (used != label.size()) level = 0;
  } catch (const std::exception&) {
    level = 0;
  }
  if (level < 1 || level > scheme.n_levels) {
    throw Error(ErrorCode::LevelOutOfRange, "class '" + label + "' is not a valid level");
  }
  return level;
}

std::map<std::string, double> normalized_request_floor(const UserRequest& request,
                                                       const AttributeExtremes& extremes,
                                                       const AttributeSchema& schema) {
  request.validate(schema);
  std::map<std::string, double> floors;
  for (const auto& attribute : schema) {
    const auto& wanted = request.ranges.at(attribute.name);
    auto it = extremes.find(attribute.name);
    if (it == extremes.end()) {
      throw Error(ErrorCode::SchemaMismatch, "no extremes for '" + attribute.name + "'");
    }
    const Range& range = it->second;
    if (wanted.hi < range.min || wanted.lo > range.max) {
      throw Error(ErrorCode::DegenerateRequest,
                  "requested range of '" + attribute.name + "' lies outside every candidate");
    }
    if (range.spread() == 0.0) {
      floors.emplace(attribute.name, 0.0);
      continue;
    }
    // The worse end of the requested range bounds the accepted region.
    const double worse_end = attribute.polarity == Polarity::Positive ? wanted.lo : wanted.hi;
    const double floor = scale_value(worse_end, range, attribute.polarity);
    floors.emplace(attribute.name, std::clamp(floor, 0.0, 1.0));
  }
  return floors;
}

int bin_level(int label, int bins, double floor, int n_levels) {
  const double upper_edge = static_cast<double>(label + 1) / bins;
  if (upper_edge >= floor) return 1;
  const double shortfall = (floor - upper_edge) / floor;
  const int band = static_cast<int>(std::ceil(shortfall * (n_levels - 1)));
  return 1 + std::clamp(band, 1, n_levels - 1);
}

std::vector<cba::TrainingInstance> synthesize_training_set(const UserRequest& request,
                                                           const AttributeExtremes& extremes,
                                                           const AttributeSchema& schema,
                                                           const LevelScheme& scheme, int bins) {
  scheme.validate();
  if (bins < 2) {
    throw Error(ErrorCode::InvalidConfig, "discretization needs at least two bins");
  }
  const auto floors = normalized_request_floor(request, extremes, schema);

  std::vector<const QoSAttribute*> ordered;
  for (const auto& attribute : schema) ordered.push_back(&attribute);
  std::stable_sort(ordered.begin(), ordered.end(), [&](const auto* a, const auto* b) {
    return request.ranges.at(a->name).rank < request.ranges.at(b->name).rank;
  });

  std::size_t rows = 1;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    rows *= static_cast<std::size_t>(bins);
    if (rows > kMaxTrainingRows) {
      throw Error(ErrorCode::TrainingSetTooLarge,
                  "bins^attributes exceeds " + std::to_string(kMaxTrainingRows) + " rows");
    }
  }

  std::vector<std::vector<int>> level_of(ordered.size());
  for (std::size_t a = 0; a < ordered.size(); ++a) {
    for (int label = 0; label < bins; ++label) {
      level_of[a].push_back(bin_level(label, bins, floors.at(ordered[a]->name), scheme.n_levels));
    }
  }

  std::vector<cba::TrainingInstance> data;
  data.reserve(rows);
  std::vector<int> digits(ordered.size(), 0);  // most important attribute is the slowest digit
  for (std::size_t row = 0; row < rows; ++row) {
    cba::TrainingInstance instance;
    int worst = 1;
    for (std::size_t a = 0; a < ordered.size(); ++a) {
      instance.items.push_back({ordered[a]->name, std::to_string(digits[a])});
      worst = std::max(worst, level_of[a][static_cast<std::size_t>(digits[a])]);
    }
    instance.class_label = level_label(worst);
    data.push_back(std::move(instance));

    for (std::size_t a = ordered.size(); a-- > 0;) {
      if (++digits[a] < bins) break;
      digits[a] = 0;
    }
  }
  return data;
}

std::vector<cba::Item> to_items(const NormalizedQoSVector& normalized, int bins) {
  std::vector<cba::Item> items;
  items.reserve(normalized.values.size());
  for (const auto& [name, value] : normalized.values) {
    items.push_back({name, std::to_string(cba::discretize(value, bins))});
  }
  return items;
}

std::vector<LevelAssignment> classify_candidates(std::span<const NormalizedQoSVector> candidates,
                                                 const cba::Classifier& classifier,
                                                 const LevelScheme& scheme, int bins) {
  std::vector<LevelAssignment> out;
  out.reserve(candidates.size());
  for (const auto& candidate : candidates) {
    const auto items = to_items(candidate, bins);
    out.push_back({candidate.service_id,
                   parse_level_label(cba::predict(classifier, items), scheme)});
  }
  return out;
}

double compute_utility(const NormalizedQoSVector& normalized, int level,
                       const LevelScheme& scheme) {
  const double coefficient = scheme.coefficient(level);
  if (normalized.values.empty()) {
    throw Error(ErrorCode::SchemaMismatch, "cannot score a service without attributes");
  }
  double sum = 0.0;
  for (const auto& [name, value] : normalized.values) sum += value;
  return coefficient * (sum / static_cast<double>(normalized.values.size()));
}

std::vector<ScoredService> filter_eligible(std::span<const ScoredService> scored,
                                           double threshold) {
  std::vector<ScoredService> out;
  std::copy_if(scored.begin(), scored.end(), std::back_inserter(out),
               [threshold](const ScoredService& s) { return s.utility > threshold; });
  return out;
}

}  // namespace qoscomp
