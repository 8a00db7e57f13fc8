// Command line front end: scc, sweep, latency-compare and stats subcommands
// over interaction or segment files.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "streamscc/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"strongly connected components of stream graphs"};
  app.require_subcommand(1);

  streamscc::run_config cfg;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "input file")->required();
    sub->add_option("--format", cfg.format,
                    "input format: interactions | segments")
        ->check(CLI::IsMember({"interactions", "segments"}));
    sub->add_option("--delta", cfg.delta,
                    "interaction duration for delta-analysis (ticks)");
    sub->add_option("--algorithm", cfg.algorithm, "naive | direct | fd")
        ->check(CLI::IsMember({"naive", "direct", "fd"}));
    sub->add_option("--out", cfg.out_dir, "output directory");
    sub->add_option("--time-scale", cfg.time_scale,
                    "multiply timestamps by this factor to get ticks")
        ->check(CLI::PositiveNumber);
    sub->add_option("--jobs", cfg.jobs, "parallel workers for sweeps");
  };
  auto add_deltas = [&](CLI::App* sub) {
    sub->add_option("--Delta", cfg.Deltas,
                    "approximation grid step; repeatable; 0 = no approximation");
    sub->add_flag("--allow-large-Delta", cfg.allow_large_Delta,
                  "allow Delta >= delta");
  };

  auto* scc = app.add_subcommand("scc", "compute components once");
  add_common(scc);
  scc->add_flag("--count-only", cfg.count_only,
                "count components without writing them");

  auto* sweep = app.add_subcommand("sweep", "component counts per Delta");
  add_common(sweep);
  add_deltas(sweep);

  auto* lat = app.add_subcommand("latency-compare",
                                 "latency error metrics per Delta");
  add_common(lat);
  add_deltas(lat);
  lat->add_option("--latency-budget", cfg.latency_budget,
                  "max n*event_times for exact latency computation");

  auto* stats = app.add_subcommand("stats", "component size/duration stats");
  add_common(stats);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (scc->parsed()) return streamscc::cmd_scc(cfg);
  if (sweep->parsed()) return streamscc::cmd_sweep(cfg);
  if (lat->parsed()) return streamscc::cmd_latency_compare(cfg);
  if (stats->parsed()) return streamscc::cmd_stats(cfg);
  return 2;
}
