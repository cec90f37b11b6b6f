// qoscomp: compose, replace, classify, generate and bench from the shell.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "qoscomp/bench.hpp"
#include "qoscomp/data_io.hpp"
#include "qoscomp/engine.hpp"
#include "qoscomp/error.hpp"
#include "qoscomp/report.hpp"
#include "qoscomp/synthetic.hpp"

namespace fs = std::filesystem;
using namespace qoscomp;

namespace {

struct Inputs {
  std::string registry;
  std::string plan;
  std::string taxonomy;
  std::string config;
};

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> threshold;
  std::optional<int> levels;
  std::optional<int> bins;

  void apply(EngineConfig& config) const {
    if (seed) config.seed = *seed;
    if (threshold) config.threshold = *threshold;
    if (levels) config.levels = LevelScheme::standard(*levels);
    if (bins) config.bins = *bins;
  }
};

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--seed", o.seed, "Random seed");
  cmd->add_option("--threshold", o.threshold, "Eligibility threshold on U");
  cmd->add_option("--levels", o.levels, "Number of QoS levels (standard coefficients)");
  cmd->add_option("--bins", o.bins, "Discretization bins per attribute");
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    write_file(out_path, content);
  }
}

struct Loaded {
  Registry registry;
  CompositionPlan plan;
  Taxonomy taxonomy;
  EngineConfig config;
};

template <typename T, typename Fn>
T in_stage(const char* stage, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw e.with_context(stage);
  }
}

Loaded load_all(const Inputs& in, const Overrides& overrides) {
  Loaded l{in_stage<Registry>("registry", [&] { return load_registry(in.registry); }),
           in_stage<CompositionPlan>("plan", [&] { return load_plan(in.plan); }),
           in_stage<Taxonomy>("taxonomy", [&] { return load_taxonomy(in.taxonomy); }),
           in_stage<EngineConfig>("config", [&] { return load_config(in.config); })};
  overrides.apply(l.config);
  try {
    validate_references(l.registry, l.plan, l.taxonomy, &l.config);
  } catch (const Error& e) {
    throw e.with_context("validation");
  }
  return l;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QoS-aware service composition"};
  app.require_subcommand(1);

  Inputs inputs;
  Overrides overrides;
  std::string out;

  auto* compose_cmd = app.add_subcommand("compose", "Select the primary composite and its first alternative");
  auto add_inputs = [&](CLI::App* cmd, bool with_plan) {
    cmd->add_option("--registry", inputs.registry, "Registry CSV")->required();
    if (with_plan) {
      cmd->add_option("--plan", inputs.plan, "Plan JSON")->required();
      cmd->add_option("--taxonomy", inputs.taxonomy, "Taxonomy file")->required();
    }
    cmd->add_option("--config", inputs.config, "Config JSON")->required();
    add_overrides(cmd, overrides);
    cmd->add_option("--out", out, "Output file (default stdout)");
  };
  add_inputs(compose_cmd, true);

  auto* classify_cmd = app.add_subcommand("classify", "Train the request classifier and dump its rules");
  add_inputs(classify_cmd, false);

  auto* replace_cmd = app.add_subcommand("replace", "Replace a failed service in a saved composite");
  add_inputs(replace_cmd, true);
  std::string report_path, failed_task, failed_service;
  replace_cmd->add_option("--report", report_path, "Report written by compose")->required();
  replace_cmd->add_option("--task", failed_task, "Task of the failed service")->required();
  replace_cmd->add_option("--service", failed_service, "Failed service")->required();

  auto* generate_cmd = app.add_subcommand("generate", "Write a synthetic instance");
  int gen_tasks = 10, gen_candidates = 10, gen_attributes = 4;
  std::uint64_t gen_seed = 42;
  generate_cmd->add_option("--tasks", gen_tasks, "Tasks in the chain")->capture_default_str();
  generate_cmd->add_option("--candidates", gen_candidates, "Candidates per task")->capture_default_str();
  generate_cmd->add_option("--attributes", gen_attributes, "QoS attributes")->capture_default_str();
  generate_cmd->add_option("--seed", gen_seed, "Random seed")->capture_default_str();
  generate_cmd->add_option("--out", out, "Output directory")->required();

  auto* bench_cmd = app.add_subcommand("bench", "Time the ranking phase over a size grid (CSV)");
  std::string grid = "10:50:10", task_grid, candidate_grid;
  BenchOptions bench_options;
  bench_cmd->add_option("--grid", grid, "Sizes for both axes: start:stop:step or a,b,c")->capture_default_str();
  bench_cmd->add_option("--task-grid", task_grid, "Task sizes (overrides --grid)");
  bench_cmd->add_option("--candidate-grid", candidate_grid, "Candidate sizes (overrides --grid)");
  bench_cmd->add_option("--reps", bench_options.repetitions, "Repetitions per point")->capture_default_str();
  bench_cmd->add_option("--seed", bench_options.seed, "Base seed")->capture_default_str();
  bench_cmd->add_option("--attributes", bench_options.attributes, "QoS attributes")->capture_default_str();
  bench_cmd->add_option("--threshold", bench_options.threshold, "Eligibility threshold")->capture_default_str();
  bench_cmd->add_flag("--include-classification", bench_options.include_classification,
                      "Also time scaling and classification");
  bench_cmd->add_option("--out", out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*compose_cmd) {
      const auto l = load_all(inputs, overrides);
      emit(out, render_compose_report(compose(l.plan, l.registry, l.taxonomy, l.config)));
    } else if (*classify_cmd) {
      auto registry = in_stage<Registry>("registry", [&] { return load_registry(inputs.registry); });
      auto config = in_stage<EngineConfig>("config", [&] { return load_config(inputs.config); });
      overrides.apply(config);
      try {
        config.validate();
        config.request.validate(registry.schema());
      } catch (const Error& e) {
        throw e.with_context("config");
      }
      emit(out, cba::write_classifier(train_request_classifier(registry, config)));
    } else if (*replace_cmd) {
      const auto l = load_all(inputs, overrides);
      const auto saved = in_stage<std::map<std::string, std::string>>(
          "report", [&] { return read_primary_assignment(read_file(report_path)); });
      auto result = compose(l.plan, l.registry, l.taxonomy, l.config);
      if (result.primary.assignment() != saved) {
        throw Error(ErrorCode::InvalidConfig,
                    "replace: report does not match the composite these inputs produce");
      }
      const LinkModel links(l.plan, l.registry, l.taxonomy);
      CompositeService after;
      try {
        after = replace_unavailable(result.graph, result.primary, failed_task, failed_service, links);
      } catch (const Error& e) {
        throw e.with_context("replacement");
      }
      emit(out, render_replacement_report(result.primary, after, failed_task, failed_service));
    } else if (*generate_cmd) {
      const auto instance = generate_synthetic(gen_tasks, gen_candidates, gen_attributes, gen_seed);
      EngineConfig config;
      config.seed = gen_seed;
      config.request = instance.request;
      const fs::path dir(out);
      std::error_code ec;
      fs::create_directories(dir, ec);
      if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
      write_file(dir / "registry.csv", write_registry(instance.registry));
      write_file(dir / "plan.json", write_plan(instance.plan));
      write_file(dir / "taxonomy.txt", write_taxonomy(instance.taxonomy));
      write_file(dir / "config.json", write_config(config));
    } else if (*bench_cmd) {
      const auto tasks = parse_grid(task_grid.empty() ? grid : task_grid);
      const auto candidates = parse_grid(candidate_grid.empty() ? grid : candidate_grid);
      emit(out, bench_csv(run_bench_grid(tasks, candidates, bench_options)));
    }
  } catch (const Error& e) {
    std::cerr << "qoscomp: error [" << to_string(e.code()) << "] " << e.what() << '\n';
    return exit_code(e.code());
  }
  return 0;
}
