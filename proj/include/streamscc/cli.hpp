#pragma once

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "streamscc/ingest.hpp"
#include "streamscc/latency.hpp"
#include "streamscc/scc.hpp"
#include "streamscc/stats.hpp"

namespace streamscc {

struct run_config {
  std::string input;
  std::string format = "segments";  // interactions | segments
  tick delta = 0;                   // delta-analysis duration
  std::vector<tick> Deltas;         // approximation sweep values; 0 = none
  std::string algorithm = "direct";
  std::string out_dir = ".";
  bool count_only = false;
  unsigned jobs = 1;
  tick time_scale = 1;
  bool allow_large_Delta = false;
  std::uint64_t latency_budget = default_latency_budget;
};

namespace cli_detail {

inline std::string real9(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

inline stream_graph load_stream(const run_config& cfg) {
  std::ifstream in(cfg.input);
  if (!in) throw error("cannot open input file: " + cfg.input);
  if (cfg.format == "interactions")
    return parse_interactions(in, {cfg.delta}, cfg.time_scale);
  if (cfg.format == "segments") return parse_segments(in, cfg.time_scale);
  throw error("unknown input format: " + cfg.format);
}

inline void check_Deltas(const run_config& cfg) {
  if (cfg.Deltas.empty()) throw error("no Delta values given");
  for (tick D : cfg.Deltas) {
    if (D < 0) throw error("negative Delta: " + std::to_string(D));
    if (D == 0) continue;
    if (cfg.format == "interactions" && !cfg.allow_large_Delta &&
        D >= cfg.delta)
      throw error("Delta " + std::to_string(D) + " >= delta " +
                  std::to_string(cfg.delta) +
                  " (pass --allow-large-Delta to override)");
  }
}

inline std::filesystem::path out_path(const run_config& cfg,
                                      const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  return std::filesystem::path(cfg.out_dir) / name;
}

inline void write_summary_json(const run_config& cfg, const stream_graph& s,
                               const scc_summary& sum) {
  auto st = s.stats();
  nlohmann::json j{{"algorithm", cfg.algorithm},
                   {"N", st.node_segment_count},
                   {"M", st.link_segment_count},
                   {"n", st.n},
                   {"m", st.m},
                   {"event_times", st.event_time_count},
                   {"component_count", sum.component_count},
                   {"max_component_size", sum.max_component_size},
                   {"wall_ms", sum.wall_ms}};
  std::ofstream out(out_path(cfg, "summary.json"));
  out << j.dump() << "\n";
}

// One run over an already-approximated stream, for sweeps.
struct sweep_row {
  tick Delta = 0;
  std::uint64_t component_count = 0;
  std::size_t event_time_count = 0;
  double wall_ms = 0;
};

inline sweep_row run_one_delta(const stream_graph& s, tick Delta,
                               scc_algorithm algo) {
  sweep_row row;
  row.Delta = Delta;
  counting_sink sink;
  if (Delta == 0) {
    auto sum = algo(s, sink);
    row.component_count = sum.component_count;
    row.event_time_count = s.event_times().size();
    row.wall_ms = sum.wall_ms;
  } else {
    auto approx = approximate(s, {Delta});
    auto sum = algo(approx.stream, sink);
    row.component_count = sum.component_count;
    row.event_time_count = approx.stream.event_times().size();
    row.wall_ms = sum.wall_ms;
  }
  return row;
}

template <typename Fn>
void parallel_for_deltas(const std::vector<tick>& Deltas, unsigned jobs, Fn fn) {
  if (jobs <= 1 || Deltas.size() <= 1) {
    for (std::size_t i = 0; i < Deltas.size(); ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  unsigned workers = std::min<unsigned>(jobs, Deltas.size());
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < Deltas.size();
           i = next.fetch_add(1))
        fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace cli_detail

// Runs one SCC computation and writes the sorted canonical components file
// plus a one-line summary. Exit 0 on success, 2 on input errors, 3 when a
// budget is exceeded.
inline int cmd_scc(const run_config& cfg, std::ostream& err = std::cerr) {
  try {
    stream_graph s = cli_detail::load_stream(cfg);
    auto algo = algorithm_by_name(cfg.algorithm);
    scc_summary sum;
    if (cfg.count_only) {
      counting_sink sink;
      sum = algo(s, sink);
    } else {
      collecting_sink sink;
      sum = algo(s, sink);
      auto& comps = sink.components();
      std::sort(comps.begin(), comps.end(), canonical_less);
      std::ofstream out(cli_detail::out_path(cfg, "components.txt"));
      for (const auto& c : comps) out << render_component(c, s) << "\n";
    }
    cli_detail::write_summary_json(cfg, s, sum);
    return 0;
  } catch (const budget_exceeded& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

// Runs the chosen algorithm once per Delta value and writes one CSV row per
// Delta: component count, event time count and wall time.
inline int cmd_sweep(const run_config& cfg, std::ostream& err = std::cerr) {
  try {
    cli_detail::check_Deltas(cfg);
    stream_graph s = cli_detail::load_stream(cfg);
    auto algo = algorithm_by_name(cfg.algorithm);
    std::vector<cli_detail::sweep_row> rows(cfg.Deltas.size());
    cli_detail::parallel_for_deltas(cfg.Deltas, cfg.jobs, [&](std::size_t i) {
      rows[i] = cli_detail::run_one_delta(s, cfg.Deltas[i], algo);
    });
    std::ofstream out(cli_detail::out_path(cfg, "sweep.csv"));
    out << "Delta,component_count,event_time_count,wall_ms\n";
    for (const auto& r : rows) {
      char wall[32];
      std::snprintf(wall, sizeof(wall), "%.3f", r.wall_ms);
      out << r.Delta << "," << r.component_count << "," << r.event_time_count
          << "," << wall << "\n";
    }
    return 0;
  } catch (const budget_exceeded& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

// Latency comparison between the stream and each of its approximations;
// writes CSV and JSONL rows of the error metrics.
inline int cmd_latency_compare(const run_config& cfg,
                               std::ostream& err = std::cerr) {
  try {
    cli_detail::check_Deltas(cfg);
    stream_graph s = cli_detail::load_stream(cfg);
    latency_matrix base = latencies(s, cfg.latency_budget);
    std::vector<approx_report> reports(cfg.Deltas.size());
    std::exception_ptr failure;
    cli_detail::parallel_for_deltas(cfg.Deltas, cfg.jobs, [&](std::size_t i) {
      try {
        if (cfg.Deltas[i] == 0) {
          reports[i] = compare_latency_matrices(base, base);
        } else {
          auto approx = approximate(s, {cfg.Deltas[i]});
          reports[i] = compare_latency_matrices(
              base, latencies(approx.stream, cfg.latency_budget));
        }
      } catch (...) {
        failure = std::current_exception();
      }
    });
    if (failure) std::rethrow_exception(failure);

    std::ofstream csv(cli_detail::out_path(cfg, "latency_compare.csv"));
    std::ofstream jsonl(cli_detail::out_path(cfg, "latency_compare.jsonl"));
    csv << "Delta,lrmse,avg_difference,avg_stretch,missing_paths,pair_count_"
           "used\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const auto& r = reports[i];
      using cli_detail::real9;
      csv << cfg.Deltas[i] << "," << real9(r.lrmse) << ","
          << real9(r.avg_difference) << "," << real9(r.avg_stretch) << ","
          << r.missing_paths << "," << r.pair_count_used << "\n";
      jsonl << "{\"Delta\":" << cfg.Deltas[i] << ",\"lrmse\":" << real9(r.lrmse)
            << ",\"avg_difference\":" << real9(r.avg_difference)
            << ",\"avg_stretch\":" << real9(r.avg_stretch)
            << ",\"missing_paths\":" << r.missing_paths
            << ",\"pair_count_used\":" << r.pair_count_used << "}\n";
    }
    return 0;
  } catch (const budget_exceeded& e) {
    err << "error: " << e.what() << "\n";
    err << "hint: raise --latency-budget or use a smaller stream\n";
    return 3;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

// Component size/duration statistics: per-component CSV plus a JSON summary.
inline int cmd_stats(const run_config& cfg, std::ostream& err = std::cerr) {
  try {
    stream_graph s = cli_detail::load_stream(cfg);
    auto algo = algorithm_by_name(cfg.algorithm);
    stats_sink sink;
    algo(s, sink);
    auto st = compute_component_stats(sink.records());

    std::ofstream csv(cli_detail::out_path(cfg, "stats.csv"));
    csv << "size,duration\n";
    for (const auto& r : st.records) csv << r.size << "," << r.duration << "\n";

    nlohmann::json j{{"count", st.count},
                     {"size_p50", st.size_p50},
                     {"size_p90", st.size_p90},
                     {"size_p99", st.size_p99},
                     {"duration_p50", st.duration_p50},
                     {"duration_p90", st.duration_p90},
                     {"duration_p99", st.duration_p99},
                     {"size_hist", st.size_hist},
                     {"duration_hist", st.duration_hist}};
    std::ofstream js(cli_detail::out_path(cfg, "stats_summary.json"));
    js << j.dump() << "\n";
    return 0;
  } catch (const budget_exceeded& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace streamscc
