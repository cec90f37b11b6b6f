#include "qoscomp/cba.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include "bitset.hpp"
#include "qoscomp/error.hpp"
#include "text.hpp"

namespace qoscomp::cba {

namespace {

using TidSet = detail::Bitset;

// Training data re-encoded with dense item and class ids. Item ids follow
// the sorted order of Item, so sorted id lists are canonical antecedents.
struct Encoded {
  std::vector<Item> items;            // id -> item
  std::vector<std::size_t> attribute; // id -> attribute index
  std::vector<std::string> classes;   // id -> label
  std::vector<TidSet> item_rows;
  std::vector<TidSet> class_rows;
  std::size_t rows = 0;
  std::size_t attributes = 0;
};

std::vector<std::string> attribute_names(const TrainingInstance& instance) {
  std::vector<std::string> names;
  names.reserve(instance.items.size());
  for (const auto& item : instance.items) names.push_back(item.attribute);
  std::sort(names.begin(), names.end());
  return names;
}

std::vector<std::string> check_schema(std::span<const TrainingInstance> data) {
  auto names = attribute_names(data.front());
  if (std::adjacent_find(names.begin(), names.end()) != names.end()) {
    throw Error(ErrorCode::SchemaMismatch, "training instance repeats an attribute");
  }
  for (const auto& instance : data) {
    if (attribute_names(instance) != names) {
      throw Error(ErrorCode::SchemaMismatch,
                  "training instances do not share one attribute schema");
    }
  }
  return names;
}

Encoded encode(std::span<const TrainingInstance> data) {
  const auto names = check_schema(data);
  Encoded enc;
  enc.rows = data.size();
  enc.attributes = names.size();

  std::set<Item> item_set;
  std::set<std::string> class_set;
  for (const auto& instance : data) {
    item_set.insert(instance.items.begin(), instance.items.end());
    class_set.insert(instance.class_label);
  }
  enc.items.assign(item_set.begin(), item_set.end());
  enc.classes.assign(class_set.begin(), class_set.end());

  std::map<Item, std::size_t> item_id;
  for (std::size_t i = 0; i < enc.items.size(); ++i) {
    item_id.emplace(enc.items[i], i);
    const auto pos = std::lower_bound(names.begin(), names.end(), enc.items[i].attribute);
    enc.attribute.push_back(static_cast<std::size_t>(pos - names.begin()));
  }

  enc.item_rows.assign(enc.items.size(), TidSet(enc.rows));
  enc.class_rows.assign(enc.classes.size(), TidSet(enc.rows));
  for (std::size_t row = 0; row < data.size(); ++row) {
    for (const auto& item : data[row].items) enc.item_rows[item_id.at(item)].set(row);
    const auto cls = std::lower_bound(enc.classes.begin(), enc.classes.end(),
                                      data[row].class_label);
    enc.class_rows[static_cast<std::size_t>(cls - enc.classes.begin())].set(row);
  }
  return enc;
}

using ItemIds = std::vector<std::size_t>;

struct RuleItem {
  ItemIds items;
  std::size_t cls = 0;
  std::size_t rule_count = 0;
  std::size_t antecedent_count = 0;
};

bool passes(std::size_t count, std::size_t total, double threshold) {
  return static_cast<double>(count) / static_cast<double>(total) >= threshold;
}

}  // namespace

std::string to_string(const Item& item) { return item.attribute + "=" + item.value; }

std::string ClassAssociationRule::render_antecedent() const {
  std::string out;
  for (const auto& item : antecedent) {
    if (!out.empty()) out += ',';
    out += to_string(item);
  }
  return out;
}

bool ClassAssociationRule::matches(std::span<const Item> items) const {
  return std::all_of(antecedent.begin(), antecedent.end(), [&](const Item& wanted) {
    return std::find(items.begin(), items.end(), wanted) != items.end();
  });
}

void MiningConfig::validate() const {
  if (!(min_support > 0.0 && min_support <= 1.0)) {
    throw Error(ErrorCode::InvalidMiningConfig, "min_support must lie in (0,1]");
  }
  if (!(min_confidence > 0.0 && min_confidence <= 1.0)) {
    throw Error(ErrorCode::InvalidMiningConfig, "min_confidence must lie in (0,1]");
  }
}

int discretize(double value, int bins) {
  if (bins < 2) {
    throw Error(ErrorCode::InvalidMiningConfig, "discretization needs at least two bins");
  }
  if (!(value >= 0.0 && value <= 1.0)) {
    throw Error(ErrorCode::ValueOutOfRange, "value to discretize lies outside [0,1]");
  }
  const int label = static_cast<int>(std::floor(value * bins));
  return std::min(label, bins - 1);
}

std::vector<ClassAssociationRule> mine_cars(std::span<const TrainingInstance> data,
                                            const MiningConfig& config) {
  if (data.empty()) {
    throw Error(ErrorCode::EmptyTrainingSet, "cannot mine rules from an empty training set");
  }
  config.validate();
  const Encoded enc = encode(data);
  const std::size_t max_size = config.max_antecedent_size == 0
                                   ? enc.attributes
                                   : std::min(config.max_antecedent_size, enc.attributes);

  std::vector<ClassAssociationRule> rules;
  auto emit = [&](const RuleItem& ri) {
    if (!passes(ri.rule_count, ri.antecedent_count, config.min_confidence)) return;
    ClassAssociationRule rule;
    for (auto id : ri.items) rule.antecedent.push_back(enc.items[id]);
    rule.consequent_class = enc.classes[ri.cls];
    rule.rule_count = ri.rule_count;
    rule.antecedent_count = ri.antecedent_count;
    rule.support = static_cast<double>(ri.rule_count) / static_cast<double>(enc.rows);
    rule.confidence =
        static_cast<double>(ri.rule_count) / static_cast<double>(ri.antecedent_count);
    rules.push_back(std::move(rule));
  };

  // Level 1.
  std::vector<RuleItem> frequent;
  for (std::size_t id = 0; id < enc.items.size(); ++id) {
    const std::size_t antecedent_count = enc.item_rows[id].count();
    for (std::size_t cls = 0; cls < enc.classes.size(); ++cls) {
      TidSet rows = enc.item_rows[id];
      rows &= enc.class_rows[cls];
      const std::size_t count = rows.count();
      if (passes(count, enc.rows, config.min_support)) {
        frequent.push_back({{id}, cls, count, antecedent_count});
      }
    }
  }

  for (std::size_t size = 1; !frequent.empty(); ++size) {
    for (const auto& ri : frequent) emit(ri);
    if (size == max_size) break;

    // Frequent (itemset, class) pairs of this level, for subset pruning.
    std::set<std::pair<ItemIds, std::size_t>> known;
    for (const auto& ri : frequent) known.emplace(ri.items, ri.cls);

    // Sort so that join partners (same class, same prefix) are adjacent.
    std::sort(frequent.begin(), frequent.end(), [](const RuleItem& a, const RuleItem& b) {
      return std::tie(a.cls, a.items) < std::tie(b.cls, b.items);
    });

    std::vector<RuleItem> next;
    std::map<ItemIds, std::size_t> antecedent_counts;
    for (std::size_t i = 0; i < frequent.size(); ++i) {
      const auto& a = frequent[i];
      for (std::size_t j = i + 1; j < frequent.size(); ++j) {
        const auto& b = frequent[j];
        if (b.cls != a.cls ||
            !std::equal(a.items.begin(), a.items.end() - 1, b.items.begin())) {
          break;
        }
        const auto last_a = a.items.back();
        const auto last_b = b.items.back();
        if (enc.attribute[last_a] == enc.attribute[last_b]) continue;

        ItemIds candidate = a.items;
        candidate.push_back(last_b);

        bool all_subsets_frequent = true;
        for (std::size_t drop = 0; drop + 2 < candidate.size() && all_subsets_frequent; ++drop) {
          ItemIds subset;
          for (std::size_t k = 0; k < candidate.size(); ++k) {
            if (k != drop) subset.push_back(candidate[k]);
          }
          all_subsets_frequent = known.contains({subset, a.cls});
        }
        if (!all_subsets_frequent) continue;

        TidSet rows = enc.item_rows[candidate.front()];
        for (std::size_t k = 1; k < candidate.size(); ++k) rows &= enc.item_rows[candidate[k]];
        auto [it, inserted] = antecedent_counts.try_emplace(candidate, 0);
        if (inserted) it->second = rows.count();
        rows &= enc.class_rows[a.cls];
        const std::size_t count = rows.count();
        if (passes(count, enc.rows, config.min_support)) {
          next.push_back({std::move(candidate), a.cls, count, it->second});
        }
      }
    }
    frequent = std::move(next);
  }
  return rules;
}

bool precedes(const ClassAssociationRule& a, const ClassAssociationRule& b) {
  if (a.confidence != b.confidence) return a.confidence > b.confidence;
  if (a.support != b.support) return a.support > b.support;
  if (a.antecedent.size() != b.antecedent.size()) {
    return a.antecedent.size() < b.antecedent.size();
  }
  const auto ra = a.render_antecedent();
  const auto rb = b.render_antecedent();
  if (ra != rb) return ra < rb;
  return a.consequent_class < b.consequent_class;
}

std::vector<ClassAssociationRule> sort_rules(std::vector<ClassAssociationRule> rules) {
  std::stable_sort(rules.begin(), rules.end(), precedes);
  return rules;
}

Classifier build_classifier(std::span<const TrainingInstance> data,
                            std::vector<ClassAssociationRule> sorted_rules) {
  if (data.empty()) {
    throw Error(ErrorCode::EmptyTrainingSet, "cannot build a classifier without training data");
  }
  Classifier classifier;
  classifier.attributes = check_schema(data);

  std::vector<bool> covered(data.size(), false);
  for (auto& rule : sorted_rules) {
    bool classifies_uncovered = false;
    for (std::size_t i = 0; i < data.size() && !classifies_uncovered; ++i) {
      classifies_uncovered = !covered[i] && data[i].class_label == rule.consequent_class &&
                             rule.matches(data[i].items);
    }
    if (!classifies_uncovered) continue;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (!covered[i] && rule.matches(data[i].items)) covered[i] = true;
    }
    classifier.rules.push_back(std::move(rule));
  }

  std::map<std::string, std::size_t> votes;
  const bool any_uncovered = std::find(covered.begin(), covered.end(), false) != covered.end();
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!any_uncovered || !covered[i]) ++votes[data[i].class_label];
  }
  // std::map iterates labels in ascending order, so `>` keeps the smallest on ties.
  std::size_t best = 0;
  for (const auto& [label, count] : votes) {
    if (count > best) {
      best = count;
      classifier.default_class = label;
    }
  }
  return classifier;
}

Classifier train(std::span<const TrainingInstance> data, const MiningConfig& config) {
  return build_classifier(data, sort_rules(mine_cars(data, config)));
}

std::string predict(const Classifier& classifier, std::span<const Item> instance) {
  std::vector<std::string> names;
  for (const auto& item : instance) names.push_back(item.attribute);
  std::sort(names.begin(), names.end());
  if (std::adjacent_find(names.begin(), names.end()) != names.end() ||
      (!classifier.attributes.empty() && names != classifier.attributes)) {
    throw Error(ErrorCode::SchemaMismatch, "instance does not match the classifier schema");
  }
  for (const auto& rule : classifier.rules) {
    if (rule.matches(instance)) return rule.consequent_class;
  }
  return classifier.default_class;
}

std::string write_classifier(const Classifier& classifier) {
  std::string out;
  for (const auto& rule : classifier.rules) {
    out += rule.render_antecedent();
    out += " => ";
    out += rule.consequent_class;
    out += " [";
    out += text::format_double(rule.support);
    out += ' ';
    out += text::format_double(rule.confidence);
    out += "]\n";
  }
  out += "DEFAULT ";
  out += classifier.default_class;
  out += '\n';
  return out;
}

namespace {

[[noreturn]] void parse_failure(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

}  // namespace

Classifier read_classifier(std::string_view input) {
  Classifier classifier;
  bool saw_default = false;
  const auto rows = text::lines(input);
  for (std::size_t n = 0; n < rows.size(); ++n) {
    const auto line = text::trim(rows[n]);
    if (line.empty()) continue;
    if (saw_default) parse_failure(n + 1, "content after DEFAULT line");
    if (line.starts_with("DEFAULT ")) {
      classifier.default_class = std::string(text::trim(line.substr(8)));
      if (classifier.default_class.empty()) parse_failure(n + 1, "missing default class");
      saw_default = true;
      continue;
    }
    const auto arrow = line.find(" => ");
    const auto open = line.rfind('[');
    const auto close = line.rfind(']');
    if (arrow == std::string_view::npos || open == std::string_view::npos ||
        close != line.size() - 1 || open < arrow) {
      parse_failure(n + 1, "expected `items => class [support confidence]`");
    }
    ClassAssociationRule rule;
    for (auto token : text::split(line.substr(0, arrow), ',')) {
      token = text::trim(token);
      const auto eq = token.find('=');
      if (eq == std::string_view::npos || eq == 0 || eq + 1 == token.size()) {
        parse_failure(n + 1, "malformed item '" + std::string(token) + "'");
      }
      rule.antecedent.push_back({std::string(token.substr(0, eq)), std::string(token.substr(eq + 1))});
    }
    std::sort(rule.antecedent.begin(), rule.antecedent.end());
    rule.consequent_class = std::string(text::trim(line.substr(arrow + 4, open - arrow - 4)));
    const auto numbers = text::split_whitespace(line.substr(open + 1, close - open - 1));
    const auto support = numbers.size() == 2 ? text::parse_double(numbers[0]) : std::nullopt;
    const auto confidence = numbers.size() == 2 ? text::parse_double(numbers[1]) : std::nullopt;
    if (rule.consequent_class.empty() || !support || !confidence) {
      parse_failure(n + 1, "malformed consequent or measures");
    }
    rule.support = *support;
    rule.confidence = *confidence;
    classifier.rules.push_back(std::move(rule));
  }
  if (!saw_default) {
    throw Error(ErrorCode::ParseError, "classifier text has no DEFAULT line");
  }
  return classifier;
}

std::string write_training_csv(std::span<const TrainingInstance> data) {
  if (data.empty()) return "class\n";
  std::string out;
  for (const auto& item : data.front().items) out += item.attribute + ",";
  out += "class\n";
  for (const auto& instance : data) {
    for (const auto& column : data.front().items) {
      auto it = std::find_if(instance.items.begin(), instance.items.end(),
                             [&](const Item& i) { return i.attribute == column.attribute; });
      if (it == instance.items.end()) {
        throw Error(ErrorCode::SchemaMismatch, "training instance lacks '" + column.attribute + "'");
      }
      out += it->value + ",";
    }
    out += instance.class_label + "\n";
  }
  return out;
}

std::vector<TrainingInstance> read_training_csv(std::string_view input) {
  const auto rows = text::lines(input);
  if (rows.empty()) throw Error(ErrorCode::ParseError, "training CSV has no header");
  std::vector<std::string> header;
  for (auto cell : text::split(text::trim(rows.front()), ',')) header.emplace_back(text::trim(cell));
  if (header.size() < 2) parse_failure(1, "header needs at least one attribute and a class column");

  std::vector<TrainingInstance> data;
  for (std::size_t n = 1; n < rows.size(); ++n) {
    const auto line = text::trim(rows[n]);
    if (line.empty()) continue;
    const auto cells = text::split(line, ',');
    if (cells.size() != header.size()) parse_failure(n + 1, "wrong number of columns");
    TrainingInstance instance;
    for (std::size_t c = 0; c + 1 < cells.size(); ++c) {
      const auto value = text::trim(cells[c]);
      if (value.empty()) parse_failure(n + 1, "empty value");
      instance.items.push_back({header[c], std::string(value)});
    }
    instance.class_label = std::string(text::trim(cells.back()));
    if (instance.class_label.empty()) parse_failure(n + 1, "empty class label");
    data.push_back(std::move(instance));
  }
  return data;
}

}  // namespace qoscomp::cba
