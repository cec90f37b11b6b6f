#include "qoscomp/ontology.hpp"

#include <algorithm>
#include <numeric>

#include "qoscomp/error.hpp"

namespace qoscomp {

namespace {

using Words = std::vector<std::uint64_t>;

void set_bit(Words& w, std::size_t i) { w[i / 64] |= std::uint64_t{1} << (i % 64); }
bool test_bit(const Words& w, std::size_t i) { return (w[i / 64] >> (i % 64)) & 1U; }
void merge(Words& into, const Words& from) {
  for (std::size_t i = 0; i < into.size(); ++i) into[i] |= from[i];
}
bool intersects(const Words& a, const Words& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] & b[i]) return true;
  }
  return false;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::string cache_key(std::string_view out, std::string_view in) {
  std::string key(out);
  key += '\x1f';
  key += in;
  return key;
}

}  // namespace

std::string_view to_string(MatchType match) noexcept {
  switch (match) {
    case MatchType::Exact: return "Exact";
    case MatchType::PlugIn: return "PlugIn";
    case MatchType::Subsume: return "Subsume";
    case MatchType::Intersection: return "Intersection";
    case MatchType::Disjoint: return "Disjoint";
  }
  return "Disjoint";
}

std::optional<MatchType> parse_match_type(std::string_view name) noexcept {
  for (auto m : {MatchType::Exact, MatchType::PlugIn, MatchType::Subsume,
                 MatchType::Intersection, MatchType::Disjoint}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

double matching_quality(MatchType match) {
  switch (match) {
    case MatchType::Exact: return 1.0;
    case MatchType::PlugIn: return 0.75;
    case MatchType::Subsume: return 0.5;
    case MatchType::Intersection: return 0.25;
    case MatchType::Disjoint: break;
  }
  throw Error(ErrorCode::DisjointMatch, "a Disjoint match has no matching quality");
}

Taxonomy::Taxonomy(Axioms axioms) : axioms_(std::move(axioms)) {
  const std::size_t n = axioms_.concepts.size();
  std::unordered_map<std::string, std::size_t> concept_index;
  for (std::size_t i = 0; i < n; ++i) {
    if (!concept_index.emplace(axioms_.concepts[i], i).second) {
      throw Error(ErrorCode::InconsistentTaxonomy,
                  "concept '" + axioms_.concepts[i] + "' declared twice");
    }
  }
  auto lookup = [&](const std::string& c) {
    auto it = concept_index.find(c);
    if (it == concept_index.end()) {
      throw Error(ErrorCode::UnknownConcept, "unknown concept '" + c + "'");
    }
    return it->second;
  };

  UnionFind uf(n);
  for (const auto& [a, b] : axioms_.equivalent) uf.unite(lookup(a), lookup(b));

  std::vector<std::size_t> class_of_root(n, n);
  std::size_t classes = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto root = uf.find(i);
    if (class_of_root[root] == n) class_of_root[root] = classes++;
    index_.emplace(axioms_.concepts[i], class_of_root[root]);
  }

  std::vector<std::vector<std::size_t>> parents(classes), children(classes);
  for (const auto& [child, parent] : axioms_.subclass) {
    const auto c = index_.at(axioms_.concepts[lookup(child)]);
    const auto p = index_.at(axioms_.concepts[lookup(parent)]);
    if (c == p) continue;
    parents[c].push_back(p);
    children[p].push_back(c);
  }

  // Kahn over child -> parent edges: children come out before their parents.
  std::vector<std::size_t> pending(classes, 0), order;
  for (std::size_t c = 0; c < classes; ++c) pending[c] = children[c].size();
  for (std::size_t c = 0; c < classes; ++c) {
    if (pending[c] == 0) order.push_back(c);
  }
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (auto p : parents[order[head]]) {
      if (--pending[p] == 0) order.push_back(p);
    }
  }
  if (order.size() != classes) {
    throw Error(ErrorCode::CycleDetected, "subsumption hierarchy contains a cycle");
  }

  const std::size_t words = (classes + 63) / 64;
  ancestors_.assign(classes, Words(words, 0));
  descendants_.assign(classes, Words(words, 0));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    set_bit(ancestors_[*it], *it);
    for (auto p : parents[*it]) merge(ancestors_[*it], ancestors_[p]);
  }
  for (auto c : order) {
    set_bit(descendants_[c], c);
    for (auto ch : children[c]) merge(descendants_[c], descendants_[ch]);
  }

  declared_disjoint_.assign(classes, {});
  for (const auto& [a, b] : axioms_.disjoint) {
    const auto ca = index_.at(axioms_.concepts[lookup(a)]);
    const auto cb = index_.at(axioms_.concepts[lookup(b)]);
    if (test_bit(ancestors_[ca], cb) || test_bit(ancestors_[cb], ca)) {
      throw Error(ErrorCode::InconsistentTaxonomy,
                  "'" + a + "' and '" + b + "' are declared disjoint but related by subsumption");
    }
    declared_disjoint_[ca].push_back(cb);
    declared_disjoint_[cb].push_back(ca);
  }
}

bool Taxonomy::contains(std::string_view concept_id) const {
  return index_.contains(std::string(concept_id));
}

std::size_t Taxonomy::class_of(std::string_view concept_id) const {
  auto it = index_.find(std::string(concept_id));
  if (it == index_.end()) {
    throw Error(ErrorCode::UnknownConcept, "unknown concept '" + std::string(concept_id) + "'");
  }
  return it->second;
}

bool Taxonomy::equivalent(std::string_view a, std::string_view b) const {
  return class_of(a) == class_of(b);
}

bool Taxonomy::subsumed_by(std::string_view a, std::string_view b) const {
  return test_bit(ancestors_[class_of(a)], class_of(b));
}

bool Taxonomy::disjoint(std::string_view a, std::string_view b) const {
  const auto ca = class_of(a);
  const auto& anc_b = ancestors_[class_of(b)];
  for (std::size_t x = 0; x < ancestors_.size(); ++x) {
    if (!test_bit(ancestors_[ca], x)) continue;
    for (auto y : declared_disjoint_[x]) {
      if (test_bit(anc_b, y)) return true;
    }
  }
  return false;
}

bool Taxonomy::share_descendant(std::string_view a, std::string_view b) const {
  return intersects(descendants_[class_of(a)], descendants_[class_of(b)]);
}

MatchType Taxonomy::match(std::string_view out, std::string_view in) const {
  const auto co = class_of(out);
  const auto ci = class_of(in);
  if (co == ci) return MatchType::Exact;
  if (test_bit(ancestors_[co], ci)) return MatchType::PlugIn;
  if (test_bit(ancestors_[ci], co)) return MatchType::Subsume;
  if (disjoint(out, in)) return MatchType::Disjoint;
  if (intersects(descendants_[co], descendants_[ci])) return MatchType::Intersection;
  return MatchType::Disjoint;
}

MatchCache::MatchCache(const Taxonomy& taxonomy, std::span<const ConceptPair> pairs)
    : taxonomy_(&taxonomy) {
  for (const auto& pair : pairs) {
    auto key = cache_key(pair.out, pair.in);
    if (!table_.contains(key)) table_.emplace(std::move(key), taxonomy.match(pair.out, pair.in));
  }
}

MatchType MatchCache::lookup(std::string_view out, std::string_view in) const {
  auto it = table_.find(cache_key(out, in));
  if (it != table_.end()) return it->second;
  if (taxonomy_ == nullptr) {
    throw Error(ErrorCode::UnknownConcept, "match cache has no taxonomy");
  }
  return taxonomy_->match(out, in);
}

double link_quality(const Taxonomy& taxonomy, std::span<const ConceptPair> pairs) {
  return make_link(taxonomy, {}, {}, pairs).quality;
}

SemanticLink make_link(const Taxonomy& taxonomy, std::string from_service,
                       std::string to_service, std::span<const ConceptPair> pairs) {
  if (pairs.empty()) {
    throw Error(ErrorCode::NoSharedParameters,
                "no parameters connect '" + from_service + "' to '" + to_service + "'");
  }
  SemanticLink link{std::move(from_service), std::move(to_service),
                    {pairs.begin(), pairs.end()}, {}, 0.0};
  double sum = 0.0;
  for (const auto& pair : pairs) {
    const auto m = taxonomy.match(pair.out, pair.in);
    if (m == MatchType::Disjoint) {
      throw Error(ErrorCode::DisjointMatch,
                  "'" + pair.out + "' and '" + pair.in + "' are disjoint");
    }
    link.matches.push_back(m);
    sum += matching_quality(m);
  }
  link.quality = sum / static_cast<double>(pairs.size());
  return link;
}

}  // namespace qoscomp
