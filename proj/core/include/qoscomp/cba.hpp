#pragma once

// Classification based on associations: class association rules mined with a
// level-wise Apriori pass, ordered by precedence, pruned to a classifier by
// one coverage pass over the training data, with a default class fallback.

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qoscomp::cba {

/// One attribute/value pair. Ordered by attribute first, so a sorted item
/// list doubles as a canonical antecedent.
struct Item {
  std::string attribute;
  std::string value;

  friend auto operator<=>(const Item&, const Item&) = default;
};

std::string to_string(const Item& item);

struct TrainingInstance {
  std::vector<Item> items;
  std::string class_label;

  friend bool operator==(const TrainingInstance&, const TrainingInstance&) = default;
};

struct ClassAssociationRule {
  std::vector<Item> antecedent;  // sorted, one item per attribute at most
  std::string consequent_class;
  double support = 0.0;
  double confidence = 0.0;
  std::size_t rule_count = 0;        // instances matching antecedent and class
  std::size_t antecedent_count = 0;  // instances matching antecedent

  /// `attr=value,attr=value` in canonical order.
  std::string render_antecedent() const;

  /// True when every antecedent item appears in `items`.
  bool matches(std::span<const Item> items) const;

  friend bool operator==(const ClassAssociationRule&, const ClassAssociationRule&) = default;
};

struct MiningConfig {
  double min_support = 0.01;
  double min_confidence = 0.5;
  std::size_t max_antecedent_size = 0;  // 0: number of attributes

  /// Throws InvalidMiningConfig unless both thresholds lie in (0,1].
  void validate() const;
};

struct Classifier {
  std::vector<std::string> attributes;  // may be empty for a deserialized classifier
  std::vector<ClassAssociationRule> rules;
  std::string default_class;
};

/// Equal-width bin index of a value in [0,1]; 1.0 lands in the top bin.
int discretize(double value, int bins);

/// All CARs meeting both thresholds, in no particular order.
std::vector<ClassAssociationRule> mine_cars(std::span<const TrainingInstance> data,
                                            const MiningConfig& config);

/// Strict precedence: higher confidence, higher support, shorter antecedent,
/// lexicographically smaller antecedent text, smaller class label.
bool precedes(const ClassAssociationRule& a, const ClassAssociationRule& b);

std::vector<ClassAssociationRule> sort_rules(std::vector<ClassAssociationRule> rules);

/// Single coverage pass over `sorted_rules`. A rule is kept if it correctly
/// classifies at least one instance not yet covered; everything it matches
/// then becomes covered. The default class is the majority among whatever
/// remains uncovered (or among all of `data` if nothing does), ties going to
/// the lexicographically smallest label.
Classifier build_classifier(std::span<const TrainingInstance> data,
                            std::vector<ClassAssociationRule> sorted_rules);

/// Convenience: mine, sort and build in one call.
Classifier train(std::span<const TrainingInstance> data, const MiningConfig& config);

std::string predict(const Classifier& classifier, std::span<const Item> instance);

// Text formats.
//
// Classifier: one rule per line, `item,item,... => class [support confidence]`,
// followed by a final `DEFAULT class` line. Training set: CSV with one column
// per attribute and a trailing `class` column.

std::string write_classifier(const Classifier& classifier);
Classifier read_classifier(std::string_view text);

std::string write_training_csv(std::span<const TrainingInstance> data);
std::vector<TrainingInstance> read_training_csv(std::string_view text);

}  // namespace qoscomp::cba
