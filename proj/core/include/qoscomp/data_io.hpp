#pragma once

// File formats.
//
// Registry (CSV, no quoting):
//   service_id,task_id,<attr>:<+|->[:unit],...,inputs,outputs
//   S1,T1,100.5,0.89,...,ConceptA;ConceptB,ConceptC
// `+` marks a positive attribute, `-` a negative one. Concept lists are
// semicolon separated and may be empty.
//
// Plan (JSON):
//   {"tasks": ["T1", "T2"], "edges": [["T1", "T2"]],
//    "link_pairs": {"T1->T2": [["OutConcept", "InConcept"]]}}
//
// Taxonomy (line records, `#` starts a comment):
//   concept <id>
//   subclass <child> <parent>
//   equiv <a> <b>
//   disjoint <a> <b>
//
// Config (JSON): see parse_config.

#include <filesystem>
#include <string>
#include <string_view>

#include "qoscomp/composer.hpp"
#include "qoscomp/engine.hpp"
#include "qoscomp/ontology.hpp"
#include "qoscomp/registry.hpp"

namespace qoscomp {

Registry parse_registry(std::string_view text);
std::string write_registry(const Registry& registry);

CompositionPlan parse_plan(std::string_view json);
std::string write_plan(const CompositionPlan& plan);

Taxonomy parse_taxonomy(std::string_view text);
std::string write_taxonomy(const Taxonomy& taxonomy);

/// {"levels": {"count": 3, "coefficients": [1, 0.75, 0.25]},
///  "mining": {"min_support": 0.01, "min_confidence": 0.5, "max_antecedent_size": 0},
///  "bins": 4, "threshold": 0.25, "seed": 42,
///  "request": {"<attr>": {"lo": 0, "hi": 500, "rank": 1}, ...}}
/// Every key is optional; omitted ones take EngineConfig defaults, and a
/// level count without coefficients uses LevelScheme::standard.
EngineConfig parse_config(std::string_view json);
std::string write_config(const EngineConfig& config);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

Registry load_registry(const std::filesystem::path& path);
CompositionPlan load_plan(const std::filesystem::path& path);
Taxonomy load_taxonomy(const std::filesystem::path& path);
EngineConfig load_config(const std::filesystem::path& path);

/// Cross-file checks: every registry task is a plan task, every concept the
/// registry or plan mentions exists in the taxonomy, and the request names
/// only schema attributes. Throws UnknownTask, UnknownConcept,
/// UnknownAttribute.
void validate_references(const Registry& registry, const CompositionPlan& plan,
                         const Taxonomy& taxonomy, const EngineConfig* config = nullptr);

}  // namespace qoscomp
