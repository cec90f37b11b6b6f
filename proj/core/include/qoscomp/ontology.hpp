#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace qoscomp {

/// Degree of match between an output concept and an input concept,
/// ordered so that a larger enumerator is a better match.
enum class MatchType { Disjoint, Intersection, Subsume, PlugIn, Exact };

std::string_view to_string(MatchType match) noexcept;
std::optional<MatchType> parse_match_type(std::string_view name) noexcept;

/// q_m of an admissible match: 1, 3/4, 1/2, 1/4. Throws DisjointMatch.
double matching_quality(MatchType match);

struct ConceptPair {
  std::string out;
  std::string in;

  friend auto operator<=>(const ConceptPair&, const ConceptPair&) = default;
};

/// Concept subsumption DAG with equivalence and disjointness axioms.
///
/// Reasoning is reachability over the DAG obtained by collapsing equivalence
/// classes. Disjointness is inherited: if A and B are declared disjoint, so
/// are every descendant of A and every descendant of B.
class Taxonomy {
 public:
  struct Axioms {
    std::vector<std::string> concepts;
    std::vector<std::pair<std::string, std::string>> subclass;  // child, parent
    std::vector<std::pair<std::string, std::string>> equivalent;
    std::vector<std::pair<std::string, std::string>> disjoint;

    friend bool operator==(const Axioms&, const Axioms&) = default;
  };

  Taxonomy() = default;

  /// Validates and indexes the axioms. Throws UnknownConcept for a reference
  /// to an undeclared concept, CycleDetected when subsumption is cyclic once
  /// equivalents are merged, and InconsistentTaxonomy when a declared-disjoint
  /// pair is also related by subsumption or equivalence.
  explicit Taxonomy(Axioms axioms);

  const Axioms& axioms() const noexcept { return axioms_; }
  std::size_t size() const noexcept { return axioms_.concepts.size(); }
  bool contains(std::string_view concept_id) const;

  bool equivalent(std::string_view a, std::string_view b) const;
  /// `a` is subsumed by `b` (reflexive).
  bool subsumed_by(std::string_view a, std::string_view b) const;
  bool disjoint(std::string_view a, std::string_view b) const;
  bool share_descendant(std::string_view a, std::string_view b) const;

  MatchType match(std::string_view out, std::string_view in) const;

 private:
  std::size_t class_of(std::string_view concept_id) const;

  Axioms axioms_;
  std::unordered_map<std::string, std::size_t> index_;  // concept -> class id
  std::vector<std::vector<std::uint64_t>> ancestors_;    // reflexive, per class
  std::vector<std::vector<std::uint64_t>> descendants_;  // reflexive, per class
  std::vector<std::vector<std::size_t>> declared_disjoint_;
};

/// Match types of a fixed set of concept pairs, computed once up front.
class MatchCache {
 public:
  MatchCache() = default;
  MatchCache(const Taxonomy& taxonomy, std::span<const ConceptPair> pairs);

  /// Cached result, falling back to the taxonomy for pairs not precomputed.
  MatchType lookup(std::string_view out, std::string_view in) const;
  std::size_t size() const noexcept { return table_.size(); }

 private:
  const Taxonomy* taxonomy_ = nullptr;
  std::unordered_map<std::string, MatchType> table_;
};

struct SemanticLink {
  std::string from_service;
  std::string to_service;
  std::vector<ConceptPair> pairs;
  std::vector<MatchType> matches;  // parallel to pairs
  double quality = 0.0;
};

/// Mean q_m over every (out, in) pair connecting two services. Throws
/// NoSharedParameters for an empty pair list and DisjointMatch if any pair
/// is Disjoint.
double link_quality(const Taxonomy& taxonomy, std::span<const ConceptPair> pairs);

SemanticLink make_link(const Taxonomy& taxonomy, std::string from_service,
                       std::string to_service, std::span<const ConceptPair> pairs);

}  // namespace qoscomp
