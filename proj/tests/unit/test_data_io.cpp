#include <gtest/gtest.h>

#include <filesystem>
#include <string>

#include "expect_error.hpp"
#include "qoscomp/data_io.hpp"
#include "qoscomp/error.hpp"

using namespace qoscomp;

namespace {

const std::filesystem::path kFixtures{QOSCOMP_FIXTURE_DIR};

const char* kRegistry =
    "service_id,task_id,response_time:-:ms,availability:+,inputs,outputs\n"
    "S1,T1,100.5,0.89,,City\n"
    "S2,T2,250,0.97,City;Airport,Booking\n";

const char* kTaxonomy =
    "# travel concepts\n"
    "concept Location\n"
    "concept City\n"
    "concept Airport\n"
    "concept Booking\n"
    "subclass City Location\n"
    "subclass Airport Location\n"
    "disjoint Booking Location\n";

const char* kPlan = R"({"tasks": ["T1", "T2"], "edges": [["T1", "T2"]]})";

std::string message_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Registry, ParsesQwsStyleRows) {
  const auto registry = parse_registry(kRegistry);
  ASSERT_EQ(registry.records().size(), 2u);
  const auto* s1 = registry.find("S1");
  ASSERT_NE(s1, nullptr);
  EXPECT_EQ(s1->qos.at("response_time"), 100.5);
  EXPECT_EQ(s1->qos.at("availability"), 0.89);
  EXPECT_TRUE(s1->inputs.empty());
  EXPECT_EQ(s1->outputs, (std::vector<std::string>{"City"}));
  EXPECT_EQ(registry.find("S2")->inputs, (std::vector<std::string>{"City", "Airport"}));
  EXPECT_EQ(registry.schema()[0].polarity, Polarity::Negative);
  EXPECT_EQ(registry.schema()[0].unit, "ms");
  EXPECT_EQ(registry.schema()[1].polarity, Polarity::Positive);
  EXPECT_EQ(registry.candidates_for("T2").size(), 1u);
  EXPECT_EQ(registry.find("S9"), nullptr);
}

TEST(Registry, Errors) {
  const std::string header = "service_id,task_id,rt:-,inputs,outputs\n";
  EXPECT_EQ(code_of([&] { parse_registry(header); }), ErrorCode::EmptyRegistry);
  EXPECT_EQ(code_of([] { parse_registry(""); }), ErrorCode::ParseError);

  const std::string dup = header + "S1,T1,1,,\nS1,T1,2,,\n";
  EXPECT_EQ(code_of([&] { parse_registry(dup); }), ErrorCode::ParseError);
  EXPECT_NE(message_of([&] { parse_registry(dup); }).find("line 3"), std::string::npos);

  EXPECT_EQ(code_of([&] { parse_registry(header + "S1,T1,inf,,\n"); }), ErrorCode::NonFiniteValue);
  EXPECT_EQ(code_of([&] { parse_registry(header + "S1,T1,abc,,\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([&] { parse_registry(header + "S1,T1,1,\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_registry("service_id,task_id,rt:?,inputs,outputs\nS1,T1,1,,\n"); }),
            ErrorCode::UnknownAttribute);
  EXPECT_EQ(code_of([] { parse_registry("service_id,task_id,rt,inputs,outputs\nS1,T1,1,,\n"); }),
            ErrorCode::UnknownAttribute);
}

TEST(Registry, RoundTrip) {
  const auto registry = parse_registry(kRegistry);
  const auto text = write_registry(registry);
  EXPECT_EQ(parse_registry(text), registry);
  EXPECT_EQ(write_registry(parse_registry(text)), text);
}

TEST(PlanIo, MinimalChain) {
  const auto plan = parse_plan(kPlan);
  EXPECT_EQ(plan.tasks().size(), 2u);
  ASSERT_EQ(plan.edges().size(), 1u);
  EXPECT_EQ(plan.edges()[0], (TaskEdge{"T1", "T2"}));
}

TEST(PlanIo, Errors) {
  EXPECT_EQ(code_of([] { parse_plan(R"({"tasks": ["A", "B"], "edges": [["A", "B"], ["B", "A"]]})"); }),
            ErrorCode::CycleDetected);
  EXPECT_EQ(code_of([] { parse_plan(R"({"tasks": ["A"], "edges": [["A", "Z"]]})"); }),
            ErrorCode::UnknownTask);
  EXPECT_EQ(code_of([] { parse_plan("{not json"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_plan(R"({"tasks": ["A", "B"], "edges": [["A"]]})"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] {
              parse_plan(R"({"tasks": ["A", "B"], "edges": [["A", "B"]], "link_pairs": {"AB": []}})");
            }),
            ErrorCode::ParseError);
}

TEST(PlanIo, RoundTripWithLinkPairs) {
  const auto plan = parse_plan(
      R"({"tasks": ["A", "B"], "edges": [["A", "B"]], "link_pairs": {"A->B": [["City", "Location"]]}})");
  ASSERT_NE(plan.pairs_for("A", "B"), nullptr);
  EXPECT_EQ(plan.pairs_for("A", "B")->front(), (ConceptPair{"City", "Location"}));
  EXPECT_EQ(parse_plan(write_plan(plan)), plan);
}

TEST(TaxonomyIo, ParseAndRoundTrip) {
  const auto taxonomy = parse_taxonomy(kTaxonomy);
  EXPECT_EQ(taxonomy.size(), 4u);
  EXPECT_EQ(taxonomy.match("City", "Location"), MatchType::PlugIn);
  EXPECT_TRUE(taxonomy.disjoint("Booking", "City"));
  EXPECT_EQ(parse_taxonomy(write_taxonomy(taxonomy)).axioms(), taxonomy.axioms());
}

TEST(TaxonomyIo, Errors) {
  EXPECT_EQ(code_of([] { parse_taxonomy("concept A\nsubclass A B\n"); }), ErrorCode::UnknownConcept);
  EXPECT_EQ(code_of([] { parse_taxonomy("concept A\nconcept B\nsubclass A B\nsubclass B A\n"); }),
            ErrorCode::CycleDetected);
  EXPECT_EQ(code_of([] { parse_taxonomy("concept A\nfrobnicate A\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_taxonomy("concept\n"); }), ErrorCode::ParseError);
}

TEST(ConfigIo, DefaultsAndRoundTrip) {
  const auto defaults = parse_config("{}");
  EXPECT_EQ(defaults.levels, LevelScheme::standard(3));
  EXPECT_EQ(defaults.bins, 4);
  EXPECT_EQ(defaults.threshold, 0.25);

  const auto config = parse_config(
      R"({"levels": {"count": 4}, "bins": 5, "threshold": 0.1, "seed": 9,
          "request": {"rt": {"lo": 0, "hi": 500, "rank": 2}}})");
  EXPECT_EQ(config.levels, LevelScheme::standard(4));
  EXPECT_EQ(config.seed, 9u);
  EXPECT_EQ(config.request.ranges.at("rt"), (RequestedRange{0, 500, 2}));
  const auto again = parse_config(write_config(config));
  EXPECT_EQ(again.levels, config.levels);
  EXPECT_EQ(again.request, config.request);
  EXPECT_EQ(again.bins, config.bins);
  EXPECT_EQ(write_config(again), write_config(config));
}

TEST(ConfigIo, Errors) {
  EXPECT_EQ(code_of([] { parse_config("[]"); }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] { parse_config(R"({"bins": "four"})"); }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] { parse_config(R"({"levels": {"count": 1}})"); }), ErrorCode::InvalidLevelScheme);
  EXPECT_EQ(code_of([] { parse_config(R"({"request": {"rt": {"lo": 1}}})"); }), ErrorCode::InvalidConfig);
}

TEST(References, Validation) {
  const auto registry = parse_registry(kRegistry);
  const auto taxonomy = parse_taxonomy(kTaxonomy);
  EXPECT_NO_THROW(validate_references(registry, parse_plan(kPlan), taxonomy));

  const auto other_tasks = parse_plan(R"({"tasks": ["T1", "T3"], "edges": []})");
  EXPECT_EQ(code_of([&] { validate_references(registry, other_tasks, taxonomy); }), ErrorCode::UnknownTask);

  const auto unknown_pair = parse_plan(
      R"({"tasks": ["T1", "T2"], "edges": [["T1", "T2"]], "link_pairs": {"T1->T2": [["City", "Harbour"]]}})");
  EXPECT_EQ(code_of([&] { validate_references(registry, unknown_pair, taxonomy); }),
            ErrorCode::UnknownConcept);

  const auto small = parse_taxonomy("concept City\nconcept Booking\n");
  EXPECT_EQ(code_of([&] { validate_references(registry, parse_plan(kPlan), small); }),
            ErrorCode::UnknownConcept);

  EngineConfig config;
  config.request.ranges["throughput"] = {0, 1, 1};
  EXPECT_EQ(code_of([&] { validate_references(registry, parse_plan(kPlan), taxonomy, &config); }),
            ErrorCode::UnknownAttribute);
}

TEST(Files, LoadFixturesAndMissingFile) {
  EXPECT_NO_THROW(load_registry(kFixtures / "travel" / "registry.csv"));
  EXPECT_NO_THROW(load_plan(kFixtures / "travel" / "plan.json"));
  EXPECT_NO_THROW(load_taxonomy(kFixtures / "travel" / "taxonomy.txt"));
  EXPECT_NO_THROW(load_config(kFixtures / "travel" / "config.json"));
  EXPECT_EQ(code_of([] { load_registry(kFixtures / "nope.csv"); }), ErrorCode::IoError);
}

TEST(Files, WriteThenRead) {
  const auto path = std::filesystem::temp_directory_path() / "qoscomp_io_test.txt";
  write_file(path, "abc\n");
  EXPECT_EQ(read_file(path), "abc\n");
  std::filesystem::remove(path);
}
