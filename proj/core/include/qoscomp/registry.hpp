#pragma once

#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qoscomp/qos_model.hpp"

namespace qoscomp {

struct RegistryRecord {
  std::string service_id;
  std::string task_id;
  std::map<std::string, double> qos;
  std::vector<std::string> inputs;   // concepts
  std::vector<std::string> outputs;  // concepts

  QoSVector qos_vector() const { return {service_id, qos}; }

  friend bool operator==(const RegistryRecord&, const RegistryRecord&) = default;
};

/// Candidate services of every task, plus the attribute schema they share.
class Registry {
 public:
  Registry() = default;
  /// Throws SchemaMismatch / ParseError on duplicate ids or records whose
  /// attributes disagree with the schema, EmptyRegistry when empty.
  Registry(AttributeSchema schema, std::vector<RegistryRecord> records);

  const AttributeSchema& schema() const noexcept { return schema_; }
  const std::vector<RegistryRecord>& records() const noexcept { return records_; }

  /// nullptr when unknown.
  const RegistryRecord* find(std::string_view service_id) const;

  /// Records of one task, in registry order.
  std::vector<const RegistryRecord*> candidates_for(std::string_view task_id) const;
  std::vector<QoSVector> qos_for(std::string_view task_id) const;

  friend bool operator==(const Registry& a, const Registry& b) {
    return a.schema_ == b.schema_ && a.records_ == b.records_;
  }

 private:
  AttributeSchema schema_;
  std::vector<RegistryRecord> records_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

}  // namespace qoscomp
