#include "qoscomp/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "qoscomp/error.hpp"

namespace qoscomp {

namespace {

// mt19937_64 output is fixed by the standard; the distributions are not, so
// draw through these helpers to keep generated files identical everywhere.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

 private:
  std::mt19937_64 engine_;
};

std::string padded(const char* prefix, int value, int width) {
  auto digits = std::to_string(value);
  if (static_cast<int>(digits.size()) < width) {
    digits.insert(0, static_cast<std::size_t>(width) - digits.size(), '0');
  }
  return prefix + digits;
}

int digits(int n) { return n < 10 ? 1 : 1 + digits(n / 10); }

struct Block {
  std::string hub, left, right, meet, parent;
};

}  // namespace

std::vector<AttributeProfile> qws_profiles(int attributes) {
  static const std::vector<AttributeProfile> qws = {
      {{"response_time", Polarity::Negative, "ms"}, 37.0, 4990.0},
      {{"availability", Polarity::Positive, "%"}, 7.0, 100.0},
      {{"throughput", Polarity::Positive, "req/s"}, 0.1, 43.1},
      {{"reliability", Polarity::Positive, "%"}, 33.0, 89.0},
      {{"successability", Polarity::Positive, "%"}, 8.0, 100.0},
      {{"compliance", Polarity::Positive, "%"}, 33.0, 100.0},
      {{"best_practices", Polarity::Positive, "%"}, 5.0, 95.0},
      {{"latency", Polarity::Negative, "ms"}, 0.25, 4140.0},
      {{"documentation", Polarity::Positive, "%"}, 1.0, 96.0},
  };
  std::vector<AttributeProfile> out;
  for (int i = 0; i < attributes; ++i) {
    if (static_cast<std::size_t>(i) < qws.size()) {
      out.push_back(qws[static_cast<std::size_t>(i)]);
    } else {
      out.push_back({{"attribute_" + std::to_string(i + 1), Polarity::Positive, ""}, 0.0, 1.0});
    }
  }
  return out;
}

UserRequest default_request(const std::vector<AttributeProfile>& profiles) {
  UserRequest request;
  int rank = 1;
  for (const auto& p : profiles) {
    const double span = p.max - p.min;
    RequestedRange r;
    if (p.attribute.polarity == Polarity::Positive) {
      r.lo = p.min + 0.5 * span;
      r.hi = p.max;
    } else {
      r.lo = p.min;
      r.hi = p.min + 0.5 * span;
    }
    r.rank = rank++;
    request.ranges.emplace(p.attribute.name, r);
  }
  return request;
}

SyntheticInstance generate_synthetic(int tasks, int candidates_per_task, int attributes,
                                     std::uint64_t seed) {
  if (tasks < 1 || candidates_per_task < 1 || attributes < 1) {
    throw Error(ErrorCode::InvalidConfig, "synthetic sizes must all be at least 1");
  }
  Draw draw(seed);
  const auto profiles = qws_profiles(attributes);
  const int task_width = digits(tasks);
  const int candidate_width = digits(candidates_per_task);

  // Taxonomy.
  Taxonomy::Axioms axioms;
  std::vector<Block> blocks;
  for (int k = 0; k < tasks; ++k) {
    const std::string base = padded("c", k + 1, task_width);
    Block b{base + "_hub", base + "_left", base + "_right", base + "_meet", ""};
    axioms.concepts.insert(axioms.concepts.end(), {b.hub, b.left, b.right, b.meet});
    if (k > 0) {
      b.parent = blocks[draw.index(static_cast<std::size_t>(k))].hub;
      axioms.subclass.emplace_back(b.hub, b.parent);
    }
    axioms.subclass.emplace_back(b.left, b.hub);
    axioms.subclass.emplace_back(b.right, b.hub);
    axioms.subclass.emplace_back(b.meet, b.left);
    axioms.subclass.emplace_back(b.meet, b.right);
    blocks.push_back(std::move(b));
  }
  // left_k and right_j of different blocks are never related by subsumption.
  if (tasks > 1) {
    for (int k = 0; k < tasks; ++k) {
      if (draw.index(5) != 0) continue;
      const auto offset = 1 + draw.index(static_cast<std::size_t>(tasks - 1));
      const auto j = (static_cast<std::size_t>(k) + offset) % static_cast<std::size_t>(tasks);
      axioms.disjoint.emplace_back(blocks[static_cast<std::size_t>(k)].left, blocks[j].right);
    }
  }

  auto outputs_of = [&](std::size_t k) {
    const auto& b = blocks[k];
    return std::vector<std::string>{b.hub, b.left, b.right, b.meet};
  };
  auto inputs_from = [&](std::size_t k) {
    const auto& b = blocks[k];
    return std::vector<std::string>{b.hub, b.left, b.right, b.parent.empty() ? b.hub : b.parent};
  };

  // Plan: a chain with every output/input option of the edge's block paired.
  std::vector<std::string> task_ids;
  for (int k = 0; k < tasks; ++k) task_ids.push_back(padded("T", k + 1, task_width));
  std::vector<TaskEdge> edges;
  std::map<TaskEdge, std::vector<ConceptPair>> link_pairs;
  for (std::size_t k = 0; k + 1 < task_ids.size(); ++k) {
    TaskEdge edge{task_ids[k], task_ids[k + 1]};
    edges.push_back(edge);
    auto& pairs = link_pairs[edge];
    for (const auto& out : outputs_of(k)) {
      for (const auto& in : inputs_from(k)) {
        ConceptPair pair{out, in};
        if (std::find(pairs.begin(), pairs.end(), pair) == pairs.end()) pairs.push_back(pair);
      }
    }
  }

  // Registry.
  AttributeSchema schema;
  for (const auto& p : profiles) schema.push_back(p.attribute);
  std::vector<RegistryRecord> records;
  for (std::size_t k = 0; k < task_ids.size(); ++k) {
    const auto outputs = outputs_of(k);
    const auto inputs = inputs_from(k == 0 ? 0 : k - 1);
    for (int c = 0; c < candidates_per_task; ++c) {
      RegistryRecord record;
      record.service_id = "S" + task_ids[k].substr(1) + padded("_", c + 1, candidate_width);
      record.task_id = task_ids[k];
      for (const auto& p : profiles) {
        const double raw = p.min + draw.uniform01() * (p.max - p.min);
        record.qos.emplace(p.attribute.name, std::clamp(std::round(raw * 100.0) / 100.0, p.min, p.max));
      }
      record.inputs = {inputs[draw.index(inputs.size())]};
      record.outputs = {outputs[draw.index(outputs.size())]};
      records.push_back(std::move(record));
    }
  }

  return SyntheticInstance{Registry(std::move(schema), std::move(records)),
                           CompositionPlan(task_ids, std::move(edges), std::move(link_pairs)),
                           Taxonomy(std::move(axioms)), default_request(profiles)};
}

}  // namespace qoscomp
