#include <gtest/gtest.h>

#include <map>
#include <string>
#include <vector>

#include "expect_error.hpp"
#include "qoscomp/composer.hpp"

using namespace qoscomp;

namespace {

struct Svc {
  std::string id;
  std::string task;
  double u;
  std::vector<std::string> in;
  std::vector<std::string> out;
};

Taxonomy vehicles() {
  Taxonomy::Axioms ax;
  ax.concepts = {"Vehicle", "Car", "Boat", "AmphibiousCar", "Bicycle"};
  ax.subclass = {{"Car", "Vehicle"},
                 {"Boat", "Vehicle"},
                 {"AmphibiousCar", "Car"},
                 {"AmphibiousCar", "Boat"},
                 {"Bicycle", "Vehicle"}};
  ax.disjoint = {{"Bicycle", "Car"}};
  return Taxonomy(ax);
}

// Owns everything the link model points at.
struct World {
  Taxonomy taxonomy = vehicles();
  CompositionPlan plan;
  Registry registry;
  std::map<std::string, std::vector<ScoredService>> eligible;
  std::unique_ptr<LinkModel> links;

  World(std::vector<std::string> tasks, std::vector<TaskEdge> edges, const std::vector<Svc>& services)
      : plan(std::move(tasks), std::move(edges)) {
    std::vector<RegistryRecord> records;
    for (const auto& s : services) {
      records.push_back({s.id, s.task, {{"q", s.u}}, s.in, s.out});
      ScoredService scored;
      scored.service_id = s.id;
      scored.normalized = {s.id, {{"q", s.u}}};
      scored.utility = s.u;
      eligible[s.task].push_back(scored);
    }
    registry = Registry({{"q", Polarity::Positive, ""}}, std::move(records));
    links = std::make_unique<LinkModel>(plan, registry, taxonomy);
  }

  SearchResult build() const { return build_search_graph(plan, eligible, *links); }
};

}  // namespace

TEST(Plan, TopologicalOrderPrefersDeclarationOrder) {
  const CompositionPlan plan({"C", "A", "B"}, {{"A", "B"}});
  EXPECT_EQ(plan.topological_order(), (std::vector<std::string>{"C", "A", "B"}));
  const CompositionPlan chain({"C", "A", "B"}, {{"B", "C"}, {"A", "B"}});
  EXPECT_EQ(chain.topological_order(), (std::vector<std::string>{"A", "B", "C"}));
  EXPECT_EQ(chain.predecessors("C"), (std::vector<std::string>{"B"}));
  EXPECT_EQ(chain.successors("A"), (std::vector<std::string>{"B"}));
}

TEST(Plan, Validation) {
  EXPECT_EQ(code_of([] { CompositionPlan({"A", "B"}, {{"A", "B"}, {"B", "A"}}); }),
            ErrorCode::CycleDetected);
  EXPECT_EQ(code_of([] { CompositionPlan({"A"}, {{"A", "A"}}); }), ErrorCode::CycleDetected);
  EXPECT_EQ(code_of([] { CompositionPlan({"A"}, {{"A", "Z"}}); }), ErrorCode::UnknownTask);
  EXPECT_EQ(code_of([] { CompositionPlan({"A", "A"}, {}); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { CompositionPlan({"A", "B"}, {{"A", "B"}, {"A", "B"}}); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] {
              CompositionPlan({"A", "B"}, {{"A", "B"}}, {{{"A", "Z"}, {{"Car", "Car"}}}});
            }),
            ErrorCode::UnknownTask);
}

TEST(LinkModelTest, AnnotatedPairsAreFilteredByServiceConcepts) {
  const Taxonomy taxonomy = vehicles();
  const CompositionPlan plan({"A", "B"}, {{"A", "B"}},
                             {{{"A", "B"}, {{"Car", "Vehicle"}, {"Boat", "Vehicle"}}}});
  const Registry registry({{"q", Polarity::Positive, ""}},
                          {{"a", "A", {{"q", 1}}, {}, {"Car"}},
                           {"b", "B", {{"q", 1}}, {"Vehicle"}, {}},
                           {"c", "B", {{"q", 1}}, {"Car"}, {}}});
  const LinkModel links(plan, registry, taxonomy);
  const auto ab = links.evaluate("A", "a", "B", "b");
  ASSERT_TRUE(ab.has_value());
  EXPECT_EQ(ab->quality, 0.75);
  EXPECT_EQ(ab->matches, (std::vector<MatchType>{MatchType::PlugIn}));
  EXPECT_FALSE(links.evaluate("A", "a", "B", "c").has_value());
}

TEST(LinkModelTest, UnannotatedEdgeUsesEveryPair) {
  const World w({"A", "B"}, {{"A", "B"}},
                {{"a", "A", 1, {}, {"Car", "AmphibiousCar"}}, {"b", "B", 1, {"Vehicle"}, {}},
                 {"x", "B", 1, {"Bicycle"}, {}}});
  const auto link = w.links->evaluate("A", "a", "B", "b");
  ASSERT_TRUE(link.has_value());
  EXPECT_EQ(link->quality, 0.75);
  EXPECT_FALSE(w.links->evaluate("A", "a", "B", "x").has_value());
  const std::vector<std::pair<std::string, std::string>> none;
  EXPECT_EQ(w.links->evaluate_incoming(none, "A", "a")->quality, 1.0);
}

TEST(Build, SingleTaskPicksHighestUtility) {
  const World w({"A"}, {}, {{"lo", "A", 0.4, {}, {}}, {"hi", "A", 0.9, {}, {}}});
  const auto r = w.build();
  EXPECT_EQ(r.primary.at("A").service_id, "hi");
  EXPECT_EQ(r.primary.at("A").final_utility, 0.9);
  EXPECT_EQ(r.primary.at("A").link_quality, 1.0);
  ASSERT_EQ(r.graph.node("A").queue.size(), 2u);
  EXPECT_EQ(r.graph.node("A").queue[1].service_id, "lo");
}

TEST(Build, LinkQualityOutweighsUtility) {
  const World w({"T1", "T2"}, {{"T1", "T2"}},
                {{"a", "T1", 0.9, {}, {"Car"}},
                 {"exact", "T2", 0.8, {"Car"}, {}},
                 {"subsume", "T2", 0.9, {"AmphibiousCar"}, {}}});
  const auto r = w.build();
  EXPECT_EQ(r.primary.at("T2").service_id, "exact");
  const auto& queue = r.graph.node("T2").queue;
  ASSERT_EQ(queue.size(), 2u);
  EXPECT_EQ(queue[0].final_utility, 0.8);
  EXPECT_EQ(queue[1].final_utility, 0.45);
  EXPECT_EQ(queue[1].matches, (std::vector<MatchType>{MatchType::Subsume}));
  EXPECT_DOUBLE_EQ(r.primary.aggregate_score(), 0.9 * 0.8);
}

TEST(Build, TiesBreakByServiceId) {
  const World w({"A"}, {}, {{"s2", "A", 0.5, {}, {}}, {"s1", "A", 0.5, {}, {}}});
  EXPECT_EQ(w.build().primary.at("A").service_id, "s1");
}

TEST(Build, MeanOverSeveralPredecessors) {
  const World w({"A", "B", "C"}, {{"A", "C"}, {"B", "C"}},
                {{"a", "A", 1, {}, {"Car"}},
                 {"b", "B", 1, {}, {"AmphibiousCar"}},
                 {"c", "C", 1, {"Vehicle"}, {}}});
  const auto r = w.build();
  EXPECT_EQ(r.primary.at("C").link_quality, 0.75);
  EXPECT_EQ(r.primary.at("C").matches, (std::vector<MatchType>{MatchType::PlugIn, MatchType::PlugIn}));
}

TEST(Build, Errors) {
  World empty({"A", "B"}, {{"A", "B"}}, {{"a", "A", 1, {}, {"Car"}}});
  EXPECT_EQ(code_of([&] { empty.build(); }), ErrorCode::NoEligibleCandidate);

  const World disjoint({"A", "B"}, {{"A", "B"}},
                       {{"a", "A", 1, {}, {"Car"}}, {"b", "B", 1, {"Bicycle"}, {}}});
  EXPECT_EQ(code_of([&] { disjoint.build(); }), ErrorCode::NoAdmissibleLink);
}

TEST(Alternative, AllQueuesSingleton) {
  const World w({"A", "B"}, {{"A", "B"}}, {{"a", "A", 1, {}, {"Car"}}, {"b", "B", 1, {"Car"}, {}}});
  const auto r = w.build();
  EXPECT_EQ(code_of([&] { first_alternative(r.graph, r.primary, *w.links); }), ErrorCode::NoAlternative);
}

TEST(Alternative, SmallestDropWins) {
  const World w({"A", "B"}, {},
                {{"a1", "A", 0.9, {}, {}}, {"a2", "A", 0.8, {}, {}},
                 {"b1", "B", 0.9, {}, {}}, {"b2", "B", 0.6, {}, {}}});
  const auto r = w.build();
  const auto alt = first_alternative(r.graph, r.primary, *w.links);
  EXPECT_EQ(alt.swapped_task, "A");
  EXPECT_EQ(alt.composite.at("A").service_id, "a2");
  EXPECT_EQ(alt.composite.at("B").service_id, "b1");
}

TEST(Alternative, DownstreamLinksAreRecomputed) {
  const World w({"T1", "T2"}, {{"T1", "T2"}},
                {{"a1", "T1", 0.9, {}, {"Car"}},
                 {"a2", "T1", 0.8, {}, {"Vehicle"}},
                 {"b", "T2", 0.8, {"Car"}, {}}});
  const auto r = w.build();
  EXPECT_EQ(r.primary.at("T2").final_utility, 0.8);
  const auto alt = first_alternative(r.graph, r.primary, *w.links);
  EXPECT_EQ(alt.swapped_task, "T1");
  EXPECT_EQ(alt.composite.at("T2").service_id, "b");
  EXPECT_EQ(alt.composite.at("T2").link_quality, 0.5);
  EXPECT_EQ(alt.composite.at("T2").final_utility, 0.4);
}

TEST(Alternative, SwapThatBreaksALinkIsSkipped) {
  const World w({"T1", "T2"}, {{"T1", "T2"}},
                {{"a1", "T1", 0.9, {}, {"Car"}},
                 {"a2", "T1", 0.8, {}, {"Bicycle"}},
                 {"b1", "T2", 0.8, {"Car"}, {}},
                 {"b2", "T2", 0.1, {"Car"}, {}}});
  const auto r = w.build();
  const auto alt = first_alternative(r.graph, r.primary, *w.links);
  EXPECT_EQ(alt.swapped_task, "T2");
  EXPECT_EQ(alt.composite.at("T2").service_id, "b2");
}

TEST(Replace, MiddleNodeAveragesBothSides) {
  World w({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}},
          {{"a", "A", 1, {}, {"Car"}},
           {"b1", "B", 0.9, {"Car"}, {"Car"}},
           {"b2", "B", 0.8, {"Car"}, {"Vehicle"}},
           {"b3", "B", 0.5, {"Car"}, {"Car"}},
           {"c", "C", 0.6, {"Car"}, {}}});
  auto r = w.build();
  ASSERT_EQ(r.primary.at("B").service_id, "b1");
  const auto after = replace_unavailable(r.graph, r.primary, "B", "b1", *w.links);
  const auto& b = after.at("B");
  EXPECT_EQ(b.service_id, "b2");
  EXPECT_EQ(b.link_quality, 0.75);
  EXPECT_EQ(b.final_utility, 0.8 * 0.75);
  EXPECT_EQ(after.at("A").service_id, "a");
  EXPECT_EQ(after.at("C").service_id, "c");
  EXPECT_EQ(after.at("C").final_utility, 0.6 * 0.5);
  const auto& queue = r.graph.node("B").queue;
  ASSERT_EQ(queue.size(), 2u);
  EXPECT_EQ(queue[0].service_id, "b2");
  EXPECT_EQ(queue[1].service_id, "b3");
}

TEST(Replace, SourceNodeUsesOutgoingSideOnly) {
  World w({"A", "B"}, {{"A", "B"}},
          {{"a1", "A", 0.9, {}, {"Car"}},
           {"a2", "A", 0.8, {}, {"AmphibiousCar"}},
           {"b", "B", 1, {"Vehicle"}, {}}});
  auto r = w.build();
  const auto after = replace_unavailable(r.graph, r.primary, "A", "a1", *w.links);
  EXPECT_EQ(after.at("A").service_id, "a2");
  EXPECT_EQ(after.at("A").link_quality, 0.75);
  EXPECT_EQ(after.at("A").final_utility, 0.8 * 0.75);
}

TEST(Replace, ForcedChoice) {
  World w({"A"}, {}, {{"a1", "A", 0.9, {}, {}}, {"a2", "A", 0.1, {}, {}}});
  auto r = w.build();
  const auto after = replace_unavailable(r.graph, r.primary, "A", "a1", *w.links);
  EXPECT_EQ(after.at("A").service_id, "a2");
  EXPECT_EQ(after.at("A").final_utility, 0.1);
}

TEST(Replace, Errors) {
  World w({"A", "B"}, {{"A", "B"}},
          {{"a1", "A", 0.9, {}, {"Car"}},
           {"a2", "A", 0.8, {}, {"Bicycle"}},
           {"b", "B", 1, {"Car"}, {}}});
  auto r = w.build();
  EXPECT_EQ(code_of([&] { replace_unavailable(r.graph, r.primary, "Z", "a1", *w.links); }),
            ErrorCode::UnknownTask);
  EXPECT_EQ(code_of([&] { replace_unavailable(r.graph, r.primary, "A", "a2", *w.links); }),
            ErrorCode::NotSelectedService);
  EXPECT_EQ(code_of([&] { replace_unavailable(r.graph, r.primary, "A", "a1", *w.links); }),
            ErrorCode::NoReplacementCandidate);
  EXPECT_EQ(code_of([&] { replace_unavailable(r.graph, r.primary, "B", "b", *w.links); }),
            ErrorCode::NoReplacementCandidate);
}
