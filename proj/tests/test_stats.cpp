#include <catch2/catch_amalgamated.hpp>

#include "streamscc/stats.hpp"

using namespace streamscc;

TEST_CASE("instantaneous component has duration zero") {
  std::vector<component_record> recs{{3, 0}};
  auto st = compute_component_stats(recs);
  REQUIRE(st.count == 1);
  CHECK(st.records[0].size == 3);
  CHECK(st.records[0].duration == 0);
}

TEST_CASE("duration ignores endpoint openness") {
  // ([0,2[,{u}) has length e - b = 2
  stats_sink sink;
  node_id u = 0;
  sink.on_component({0, 2, true, false}, std::span<const node_id>(&u, 1));
  REQUIRE(sink.records().size() == 1);
  CHECK(sink.records()[0].size == 1);
  CHECK(sink.records()[0].duration == 2);
}

TEST_CASE("empty list gives empty stats") {
  auto st = compute_component_stats({});
  CHECK(st.count == 0);
  CHECK(st.size_hist.empty());
}

TEST_CASE("nearest-rank percentiles") {
  std::vector<component_record> recs;
  for (std::size_t s = 1; s <= 10; ++s) recs.push_back({s, tick(s * 10)});
  auto st = compute_component_stats(recs);
  CHECK(st.size_p50 == 5);
  CHECK(st.size_p90 == 9);
  CHECK(st.size_p99 == 10);
  CHECK(st.duration_p50 == 50);
  CHECK(st.duration_p90 == 90);
  CHECK(st.duration_p99 == 100);
}

TEST_CASE("log-binned histograms") {
  std::vector<component_record> recs{{1, 0}, {1, 0}, {2, 1}, {3, 2}, {5, 9}};
  auto st = compute_component_stats(recs);
  // sizes: 1,1 -> bucket0; 2,3 -> bucket1; 5 -> bucket2
  REQUIRE(st.size_hist.size() == 3);
  CHECK(st.size_hist[0] == 2);
  CHECK(st.size_hist[1] == 2);
  CHECK(st.size_hist[2] == 1);
  // durations: 0,0 -> bucket0; 1 -> bucket1; 2 -> bucket2; 9 -> bucket4
  REQUIRE(st.duration_hist.size() == 5);
  CHECK(st.duration_hist[0] == 2);
  CHECK(st.duration_hist[1] == 1);
  CHECK(st.duration_hist[2] == 1);
  CHECK(st.duration_hist[4] == 1);
}
