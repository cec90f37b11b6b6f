#include "qoscomp/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "qoscomp/engine.hpp"
#include "qoscomp/error.hpp"
#include "qoscomp/synthetic.hpp"
#include "text.hpp"

namespace qoscomp {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point from, Clock::time_point to) {
  return std::chrono::duration<double, std::milli>(to - from).count();
}

double mean(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::uint64_t point_seed(std::uint64_t base, int tasks, int candidates) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(tasks * 1000 + candidates);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) out[order[k]] = rank;
    i = j + 1;
  }
  return out;
}

}  // namespace

BenchResult run_bench_point(int tasks, int candidates, const BenchOptions& options) {
  if (options.repetitions < 1) throw Error(ErrorCode::InvalidConfig, "repetitions must be positive");
  const auto instance = generate_synthetic(tasks, candidates, options.attributes,
                                           point_seed(options.seed, tasks, candidates));
  EngineConfig config;
  config.request = instance.request;
  config.threshold = options.threshold;
  config.seed = options.seed;

  BenchResult result;
  result.tasks = tasks;
  result.candidates = candidates;
  result.repetitions = options.repetitions;

  auto prepared = prepare(instance.plan, instance.registry, config);
  const LinkModel links(instance.plan, instance.registry, instance.taxonomy);

  // Untimed warm-up so the first repetition does not pay for cold caches.
  {
    auto search = build_search_graph(instance.plan, prepared.eligible, links);
    try {
      (void)first_alternative(search.graph, search.primary, links);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoAlternative) throw;
    }
  }

  std::vector<double> primary_ms;
  std::vector<double> alternative_ms;
  std::vector<double> classification_ms;
  for (int rep = 0; rep < options.repetitions; ++rep) {
    if (options.include_classification) {
      const auto t0 = Clock::now();
      prepared = prepare(instance.plan, instance.registry, config);
      classification_ms.push_back(elapsed_ms(t0, Clock::now()));
    }
    const auto t0 = Clock::now();
    auto search = build_search_graph(instance.plan, prepared.eligible, links);
    const auto t1 = Clock::now();
    try {
      (void)first_alternative(search.graph, search.primary, links);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoAlternative) throw;
    }
    const auto t2 = Clock::now();
    primary_ms.push_back(elapsed_ms(t0, t1));
    alternative_ms.push_back(elapsed_ms(t1, t2));
    result.run_ms.push_back(elapsed_ms(t0, t2));
    if (rep == 0) result.assignment = search.primary.assignment();
  }
  result.mean_ranking_ms = mean(result.run_ms);
  result.mean_primary_ms = mean(primary_ms);
  result.mean_alternative_ms = mean(alternative_ms);
  if (options.include_classification) result.mean_classification_ms = mean(classification_ms);
  return result;
}

std::vector<BenchResult> run_bench_grid(const std::vector<int>& task_sizes,
                                        const std::vector<int>& candidate_sizes,
                                        const BenchOptions& options) {
  std::vector<BenchResult> out;
  for (int t : task_sizes) {
    for (int c : candidate_sizes) out.push_back(run_bench_point(t, c, options));
  }
  return out;
}

std::string bench_csv(const std::vector<BenchResult>& results) {
  const bool with_classification =
      std::any_of(results.begin(), results.end(),
                  [](const BenchResult& r) { return r.mean_classification_ms.has_value(); });
  std::string out = "tasks,candidates,repetitions,mean_ranking_ms,mean_primary_ms,mean_alternative_ms";
  if (with_classification) out += ",mean_classification_ms";
  out += '\n';
  for (const auto& r : results) {
    out += std::to_string(r.tasks) + ',' + std::to_string(r.candidates) + ',' +
           std::to_string(r.repetitions) + ',' + text::format_double(r.mean_ranking_ms) + ',' +
           text::format_double(r.mean_primary_ms) + ',' +
           text::format_double(r.mean_alternative_ms);
    if (with_classification) {
      out += ',' + (r.mean_classification_ms ? text::format_double(*r.mean_classification_ms)
                                             : std::string());
    }
    out += '\n';
  }
  return out;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::InvalidConfig, "spearman needs two equal-length series of at least 2");
  }
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const double mx = mean(rx);
  const double my = mean(ry);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

std::vector<int> parse_grid(std::string_view text) {
  auto to_int = [&](std::string_view s) {
    const auto d = text::parse_double(text::trim(s));
    if (!d || *d != std::floor(*d) || *d < 1 || *d > 100000) {
      throw Error(ErrorCode::InvalidConfig, "bad grid value '" + std::string(s) + "'");
    }
    return static_cast<int>(*d);
  };
  std::vector<int> out;
  if (text.find(':') != std::string_view::npos) {
    const auto parts = text::split(text, ':');
    if (parts.size() != 3) throw Error(ErrorCode::InvalidConfig, "grid range must be start:stop:step");
    const int start = to_int(parts[0]);
    const int stop = to_int(parts[1]);
    const int step = to_int(parts[2]);
    if (start > stop) throw Error(ErrorCode::InvalidConfig, "grid start exceeds stop");
    for (int v = start; v <= stop; v += step) out.push_back(v);
  } else {
    for (const auto& part : text::split(text, ',')) out.push_back(to_int(part));
  }
  if (out.empty()) throw Error(ErrorCode::InvalidConfig, "empty grid");
  return out;
}

}  // namespace qoscomp
