#include "qoscomp/report.hpp"

#include <nlohmann/json.hpp>

#include "qoscomp/error.hpp"

namespace qoscomp {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json matches_json(const std::vector<MatchType>& matches) {
  ordered_json out = ordered_json::array();
  for (auto m : matches) out.push_back(std::string(to_string(m)));
  return out;
}

ordered_json composite_json(const CompositeService& composite, const PreparedRequest* prepared) {
  ordered_json out;
  out["aggregate_score"] = composite.aggregate_score();
  out["selections"] = ordered_json::array();
  for (const auto& s : composite.selections) {
    ordered_json row;
    row["task"] = s.task_id;
    row["service"] = s.service_id;
    if (prepared != nullptr) {
      for (const auto& task : prepared->tasks) {
        if (task.task_id != s.task_id) continue;
        for (const auto& scored : task.scored) {
          if (scored.service_id == s.service_id) row["level"] = scored.level;
        }
      }
    }
    row["utility"] = s.utility;
    row["final_utility"] = s.final_utility;
    row["link_quality"] = s.link_quality;
    row["match_types"] = matches_json(s.matches);
    out["selections"].push_back(std::move(row));
  }
  return out;
}

}  // namespace

std::string render_compose_report(const ComposeResult& result) {
  ordered_json doc;
  doc["primary"] = composite_json(result.primary, &result.prepared);
  if (result.alternative) {
    ordered_json alt;
    alt["swapped_task"] = result.alternative->swapped_task;
    const auto body = composite_json(result.alternative->composite, &result.prepared);
    for (const auto& [key, value] : body.items()) {
      alt[key] = value;
    }
    doc["alternative"] = std::move(alt);
  } else {
    doc["alternative"] = nullptr;
  }

  doc["classifier"] = {{"rules", result.prepared.classifier.rules.size()},
                       {"default_class", result.prepared.classifier.default_class}};

  doc["tasks"] = ordered_json::array();
  for (const auto& task : result.prepared.tasks) {
    ordered_json row;
    row["task"] = task.task_id;
    row["candidates"] = task.scored.size();
    row["eligible"] = task.eligible;
    row["levels"] = ordered_json::object();
    for (const auto& s : task.scored) row["levels"][s.service_id] = s.level;
    row["queue"] = ordered_json::array();
    for (const auto& node : result.graph.nodes) {
      if (node.task_id != task.task_id) continue;
      for (const auto& e : node.queue) {
        row["queue"].push_back({{"service", e.service_id},
                                {"utility", e.utility},
                                {"final_utility", e.final_utility},
                                {"link_quality", e.link_quality}});
      }
    }
    doc["tasks"].push_back(std::move(row));
  }
  return doc.dump(2) + "\n";
}

std::string render_replacement_report(const CompositeService& before,
                                      const CompositeService& after,
                                      std::string_view failed_task,
                                      std::string_view failed_service) {
  ordered_json doc;
  doc["failed"] = {{"task", std::string(failed_task)}, {"service", std::string(failed_service)}};
  doc["replacement"] = after.at(failed_task).service_id;
  doc["before"] = composite_json(before, nullptr);
  doc["after"] = composite_json(after, nullptr);
  return doc.dump(2) + "\n";
}

std::map<std::string, std::string> read_primary_assignment(std::string_view report_json) {
  try {
    const auto doc = nlohmann::json::parse(report_json.begin(), report_json.end());
    std::map<std::string, std::string> out;
    for (const auto& s : doc.at("primary").at("selections")) {
      out.emplace(s.at("task").get<std::string>(), s.at("service").get<std::string>());
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("compose report: ") + e.what());
  }
}

}  // namespace qoscomp
