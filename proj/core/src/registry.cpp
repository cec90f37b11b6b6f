#include "qoscomp/registry.hpp"

#include <cmath>

#include "qoscomp/error.hpp"

namespace qoscomp {

Registry::Registry(AttributeSchema schema, std::vector<RegistryRecord> records)
    : schema_(std::move(schema)), records_(std::move(records)) {
  validate_schema(schema_);
  if (records_.empty()) throw Error(ErrorCode::EmptyRegistry, "registry has no services");
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& record = records_[i];
    if (record.service_id.empty() || record.task_id.empty()) {
      throw Error(ErrorCode::ParseError, "record " + std::to_string(i + 1) + " lacks an id");
    }
    if (!by_id_.emplace(record.service_id, i).second) {
      throw Error(ErrorCode::ParseError, "duplicate service id '" + record.service_id + "'");
    }
    if (record.qos.size() != schema_.size()) {
      throw Error(ErrorCode::SchemaMismatch,
                  "service '" + record.service_id + "' does not match the attribute schema");
    }
    for (const auto& attribute : schema_) {
      auto it = record.qos.find(attribute.name);
      if (it == record.qos.end()) {
        throw Error(ErrorCode::SchemaMismatch,
                    "service '" + record.service_id + "' lacks '" + attribute.name + "'");
      }
      if (!std::isfinite(it->second)) {
        throw Error(ErrorCode::NonFiniteValue,
                    "service '" + record.service_id + "' has a non-finite '" + attribute.name + "'");
      }
    }
  }
}

const RegistryRecord* Registry::find(std::string_view service_id) const {
  auto it = by_id_.find(std::string(service_id));
  return it == by_id_.end() ? nullptr : &records_[it->second];
}

std::vector<const RegistryRecord*> Registry::candidates_for(std::string_view task_id) const {
  std::vector<const RegistryRecord*> out;
  for (const auto& record : records_) {
    if (record.task_id == task_id) out.push_back(&record);
  }
  return out;
}

std::vector<QoSVector> Registry::qos_for(std::string_view task_id) const {
  std::vector<QoSVector> out;
  for (const auto& record : records_) {
    if (record.task_id == task_id) out.push_back(record.qos_vector());
  }
  return out;
}

}  // namespace qoscomp
