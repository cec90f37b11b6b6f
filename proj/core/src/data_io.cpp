#include "qoscomp/data_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qoscomp/error.hpp"
#include "text.hpp"

namespace qoscomp {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void parse_failure(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_concepts(std::string_view cell) {
  std::vector<std::string> out;
  cell = text::trim(cell);
  if (cell.empty()) return out;
  for (auto part : text::split(cell, ';')) {
    part = text::trim(part);
    if (!part.empty()) out.emplace_back(part);
  }
  return out;
}

std::string join(const std::vector<std::string>& values, char sep) {
  std::string out;
  for (const auto& v : values) {
    if (!out.empty()) out += sep;
    out += v;
  }
  return out;
}

std::string edge_key(const TaskEdge& edge) { return edge.first + "->" + edge.second; }

TaskEdge parse_edge_key(const std::string& key) {
  const auto arrow = key.find("->");
  if (arrow == std::string::npos || arrow == 0 || arrow + 2 == key.size()) {
    throw Error(ErrorCode::ParseError, "link_pairs key '" + key + "' is not `from->to`");
  }
  return {key.substr(0, arrow), key.substr(arrow + 2)};
}

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string(what) + ": " + e.what());
  }
}

template <typename T>
T field(const json& object, const char* key, T fallback) {
  if (!object.contains(key) || object.at(key).is_null()) return fallback;
  try {
    return object.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Registry

Registry parse_registry(std::string_view input) {
  const auto rows = text::lines(input);
  if (rows.empty()) throw Error(ErrorCode::ParseError, "registry has no header");

  const auto header = text::split(text::trim(rows.front()), ',');
  if (header.size() < 5 || text::trim(header[0]) != "service_id" ||
      text::trim(header[1]) != "task_id" || text::trim(header[header.size() - 2]) != "inputs" ||
      text::trim(header.back()) != "outputs") {
    parse_failure(1, "header must be service_id,task_id,<attributes...>,inputs,outputs");
  }
  AttributeSchema schema;
  for (std::size_t c = 2; c + 2 < header.size(); ++c) {
    const auto parts = text::split(text::trim(header[c]), ':');
    if (parts.size() < 2 || parts.size() > 3 || parts[0].empty()) {
      throw Error(ErrorCode::UnknownAttribute,
                  "line 1: attribute column '" + std::string(header[c]) + "' is not name:+ or name:-");
    }
    QoSAttribute attribute{std::string(parts[0]), Polarity::Positive,
                           parts.size() == 3 ? std::string(parts[2]) : std::string()};
    if (parts[1] == "-") {
      attribute.polarity = Polarity::Negative;
    } else if (parts[1] != "+") {
      throw Error(ErrorCode::UnknownAttribute,
                  "line 1: unknown polarity '" + std::string(parts[1]) + "'");
    }
    schema.push_back(std::move(attribute));
  }
  try {
    validate_schema(schema);
  } catch (const Error& e) {
    throw e.with_context("line 1");
  }

  std::vector<RegistryRecord> records;
  std::set<std::string> ids;
  for (std::size_t n = 1; n < rows.size(); ++n) {
    const auto line = text::trim(rows[n]);
    if (line.empty()) continue;
    const auto cells = text::split(line, ',');
    if (cells.size() != header.size()) parse_failure(n + 1, "wrong number of columns");
    RegistryRecord record;
    record.service_id = std::string(text::trim(cells[0]));
    record.task_id = std::string(text::trim(cells[1]));
    if (record.service_id.empty() || record.task_id.empty()) parse_failure(n + 1, "empty id");
    if (!ids.insert(record.service_id).second) {
      parse_failure(n + 1, "duplicate service_id '" + record.service_id + "'");
    }
    for (std::size_t a = 0; a < schema.size(); ++a) {
      const auto value = text::parse_double(text::trim(cells[a + 2]));
      if (!value) parse_failure(n + 1, "'" + schema[a].name + "' is not a number");
      if (!std::isfinite(*value)) {
        throw Error(ErrorCode::NonFiniteValue,
                    "line " + std::to_string(n + 1) + ": '" + schema[a].name + "' is not finite");
      }
      record.qos.emplace(schema[a].name, *value);
    }
    record.inputs = split_concepts(cells[cells.size() - 2]);
    record.outputs = split_concepts(cells.back());
    records.push_back(std::move(record));
  }
  if (records.empty()) throw Error(ErrorCode::EmptyRegistry, "registry has no services");
  return Registry(std::move(schema), std::move(records));
}

std::string write_registry(const Registry& registry) {
  std::string out = "service_id,task_id";
  for (const auto& attribute : registry.schema()) {
    out += ',' + attribute.name + (attribute.polarity == Polarity::Positive ? ":+" : ":-");
    if (!attribute.unit.empty()) out += ':' + attribute.unit;
  }
  out += ",inputs,outputs\n";
  for (const auto& record : registry.records()) {
    out += record.service_id + ',' + record.task_id;
    for (const auto& attribute : registry.schema()) {
      out += ',' + text::format_double(record.qos.at(attribute.name));
    }
    out += ',' + join(record.inputs, ';') + ',' + join(record.outputs, ';') + '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Plan

CompositionPlan parse_plan(std::string_view input) {
  const json doc = parse_json(input, "plan");
  try {
    std::vector<std::string> tasks = doc.at("tasks").get<std::vector<std::string>>();
    std::vector<TaskEdge> edges;
    for (const auto& e : doc.value("edges", json::array())) {
      if (!e.is_array() || e.size() != 2) {
        throw Error(ErrorCode::ParseError, "plan edge must be a [from, to] pair");
      }
      edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
    std::map<TaskEdge, std::vector<ConceptPair>> link_pairs;
    const json annotated = doc.value("link_pairs", json::object());
    for (const auto& [key, pairs] : annotated.items()) {
      auto& list = link_pairs[parse_edge_key(key)];
      for (const auto& p : pairs) {
        if (!p.is_array() || p.size() != 2) {
          throw Error(ErrorCode::ParseError, "link pair must be an [out, in] concept pair");
        }
        list.push_back({p[0].get<std::string>(), p[1].get<std::string>()});
      }
    }
    return CompositionPlan(std::move(tasks), std::move(edges), std::move(link_pairs));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("plan: ") + e.what());
  }
}

std::string write_plan(const CompositionPlan& plan) {
  ordered_json doc;
  doc["tasks"] = plan.tasks();
  doc["edges"] = ordered_json::array();
  for (const auto& [from, to] : plan.edges()) doc["edges"].push_back({from, to});
  doc["link_pairs"] = ordered_json::object();
  for (const auto& edge : plan.edges()) {
    const auto* pairs = plan.pairs_for(edge.first, edge.second);
    if (pairs == nullptr) continue;
    auto& list = doc["link_pairs"][edge_key(edge)] = ordered_json::array();
    for (const auto& p : *pairs) list.push_back({p.out, p.in});
  }
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Taxonomy

Taxonomy parse_taxonomy(std::string_view input) {
  Taxonomy::Axioms axioms;
  const auto rows = text::lines(input);
  for (std::size_t n = 0; n < rows.size(); ++n) {
    auto line = rows[n];
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tokens = text::split_whitespace(text::trim(line));
    if (tokens.empty()) continue;
    const auto kind = tokens[0];
    if (kind == "concept") {
      if (tokens.size() != 2) parse_failure(n + 1, "expected `concept <id>`");
      axioms.concepts.emplace_back(tokens[1]);
      continue;
    }
    if (tokens.size() != 3) parse_failure(n + 1, "expected `" + std::string(kind) + " <a> <b>`");
    std::pair<std::string, std::string> pair{std::string(tokens[1]), std::string(tokens[2])};
    if (kind == "subclass") {
      axioms.subclass.push_back(std::move(pair));
    } else if (kind == "equiv") {
      axioms.equivalent.push_back(std::move(pair));
    } else if (kind == "disjoint") {
      axioms.disjoint.push_back(std::move(pair));
    } else {
      parse_failure(n + 1, "unknown record '" + std::string(kind) + "'");
    }
  }
  return Taxonomy(std::move(axioms));
}

std::string write_taxonomy(const Taxonomy& taxonomy) {
  const auto& axioms = taxonomy.axioms();
  std::string out;
  for (const auto& c : axioms.concepts) out += "concept " + c + "\n";
  for (const auto& [a, b] : axioms.subclass) out += "subclass " + a + " " + b + "\n";
  for (const auto& [a, b] : axioms.equivalent) out += "equiv " + a + " " + b + "\n";
  for (const auto& [a, b] : axioms.disjoint) out += "disjoint " + a + " " + b + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Config

EngineConfig parse_config(std::string_view input) {
  const json doc = parse_json(input, "config");
  if (!doc.is_object()) throw Error(ErrorCode::InvalidConfig, "config must be a JSON object");
  EngineConfig config;

  if (doc.contains("levels")) {
    const auto& levels = doc.at("levels");
    const int count = field<int>(levels, "count", 3);
    if (levels.contains("coefficients")) {
      config.levels.n_levels = count;
      config.levels.coefficients = field<std::vector<double>>(levels, "coefficients", {});
    } else {
      if (count < 2) throw Error(ErrorCode::InvalidLevelScheme, "at least two QoS levels are required");
      config.levels = LevelScheme::standard(count);
    }
  }
  if (doc.contains("mining")) {
    const auto& mining = doc.at("mining");
    config.mining.min_support = field<double>(mining, "min_support", config.mining.min_support);
    config.mining.min_confidence =
        field<double>(mining, "min_confidence", config.mining.min_confidence);
    config.mining.max_antecedent_size =
        field<std::size_t>(mining, "max_antecedent_size", config.mining.max_antecedent_size);
  }
  config.bins = field<int>(doc, "bins", config.bins);
  config.threshold = field<double>(doc, "threshold", config.threshold);
  config.seed = field<std::uint64_t>(doc, "seed", config.seed);
  if (doc.contains("request")) {
    for (const auto& [name, range] : doc.at("request").items()) {
      RequestedRange r;
      if (!range.contains("lo") || !range.contains("hi")) {
        throw Error(ErrorCode::InvalidConfig, "request for '" + name + "' needs lo and hi");
      }
      r.lo = field<double>(range, "lo", 0.0);
      r.hi = field<double>(range, "hi", 0.0);
      r.rank = field<int>(range, "rank", 1);
      config.request.ranges.emplace(name, r);
    }
  }
  config.validate();
  return config;
}

std::string write_config(const EngineConfig& config) {
  ordered_json doc;
  doc["levels"] = {{"count", config.levels.n_levels},
                   {"coefficients", config.levels.coefficients}};
  doc["mining"] = {{"min_support", config.mining.min_support},
                   {"min_confidence", config.mining.min_confidence},
                   {"max_antecedent_size", config.mining.max_antecedent_size}};
  doc["bins"] = config.bins;
  doc["threshold"] = config.threshold;
  doc["seed"] = config.seed;
  doc["request"] = ordered_json::object();
  for (const auto& [name, r] : config.request.ranges) {
    doc["request"][name] = {{"lo", r.lo}, {"hi", r.hi}, {"rank", r.rank}};
  }
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Files

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path.string() + "' failed");
}

namespace {

template <typename Fn>
auto load(const std::filesystem::path& path, Fn&& parse) {
  const auto content = read_file(path);
  try {
    return parse(content);
  } catch (const Error& e) {
    throw e.with_context(path.string());
  }
}

}  // namespace

Registry load_registry(const std::filesystem::path& path) { return load(path, parse_registry); }
CompositionPlan load_plan(const std::filesystem::path& path) { return load(path, parse_plan); }
Taxonomy load_taxonomy(const std::filesystem::path& path) { return load(path, parse_taxonomy); }
EngineConfig load_config(const std::filesystem::path& path) { return load(path, parse_config); }

void validate_references(const Registry& registry, const CompositionPlan& plan,
                         const Taxonomy& taxonomy, const EngineConfig* config) {
  auto require_concept = [&](const std::string& c, const std::string& where) {
    if (!taxonomy.contains(c)) {
      throw Error(ErrorCode::UnknownConcept, where + " references unknown concept '" + c + "'");
    }
  };
  for (const auto& record : registry.records()) {
    if (!plan.contains(record.task_id)) {
      throw Error(ErrorCode::UnknownTask, "service '" + record.service_id +
                                              "' belongs to unknown task '" + record.task_id + "'");
    }
    for (const auto& c : record.inputs) require_concept(c, "service '" + record.service_id + "'");
    for (const auto& c : record.outputs) require_concept(c, "service '" + record.service_id + "'");
  }
  for (const auto& [edge, pairs] : plan.link_pairs()) {
    for (const auto& p : pairs) {
      require_concept(p.out, "link pair on " + edge_key(edge));
      require_concept(p.in, "link pair on " + edge_key(edge));
    }
  }
  if (config != nullptr) {
    for (const auto& [name, range] : config->request.ranges) {
      bool known = false;
      for (const auto& a : registry.schema()) known = known || a.name == name;
      if (!known) {
        throw Error(ErrorCode::UnknownAttribute, "request names unknown attribute '" + name + "'");
      }
    }
    try {
      config->request.validate(registry.schema());
    } catch (const Error& e) {
      throw e.with_context("request");
    }
  }
}

}  // namespace qoscomp
