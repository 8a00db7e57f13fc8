#include <catch2/catch_amalgamated.hpp>

#include "streamscc/scc.hpp"
#include "support/stream_gen.hpp"

using namespace streamscc;

namespace {

std::vector<component> run(scc_algorithm algo, const stream_graph& s) {
  collecting_sink sink;
  algo(s, sink);
  auto comps = sink.components();
  std::sort(comps.begin(), comps.end(), canonical_less);
  return comps;
}

stream_graph two_nodes_one_link() {
  raw_stream raw;
  raw.node_segments = {{{0, 9}, 0}, {{0, 9}, 1}};
  raw.link_segments = {{{2, 5}, 0, 1}};
  return build_stream(raw);
}

component comp(tick b, bool bc, tick e, bool ec, std::vector<node_id> nodes) {
  return component{{b, e, bc, ec}, std::move(nodes)};
}

}  // namespace

TEST_CASE("two nodes with one mid-life link split into five components") {
  auto s = two_nodes_one_link();
  std::vector<component> expected = {
      comp(0, true, 2, false, {0}), comp(0, true, 2, false, {1}),
      comp(2, true, 5, true, {0, 1}), comp(5, false, 9, true, {0}),
      comp(5, false, 9, true, {1})};
  std::sort(expected.begin(), expected.end(), canonical_less);
  for (auto algo : {&scc_naive, &scc_direct, &scc_fd}) {
    auto got = run(algo, s);
    CHECK(got == expected);
  }
}

TEST_CASE("single node with no links is one component") {
  raw_stream raw;
  raw.node_segments = {{{0, 9}, 0}};
  auto s = build_stream(raw);
  for (auto algo : {&scc_naive, &scc_direct, &scc_fd}) {
    auto got = run(algo, s);
    REQUIRE(got.size() == 1);
    CHECK(got[0] == comp(0, true, 9, true, {0}));
  }
}

TEST_CASE("instantaneous link yields a closed instantaneous component") {
  raw_stream raw;
  raw.node_segments = {{{0, 6}, 0}, {{0, 6}, 1}};
  raw.link_segments = {{{3, 3}, 0, 1}};
  auto s = build_stream(raw);
  std::vector<component> expected = {
      comp(0, true, 3, false, {0}),  comp(0, true, 3, false, {1}),
      comp(3, true, 3, true, {0, 1}), comp(3, false, 6, true, {0}),
      comp(3, false, 6, true, {1})};
  std::sort(expected.begin(), expected.end(), canonical_less);
  for (auto algo : {&scc_naive, &scc_direct, &scc_fd})
    CHECK(run(algo, s) == expected);
}

TEST_CASE("merge then split at the same instant") {
  raw_stream raw;
  raw.node_segments = {{{0, 10}, 0}, {{0, 10}, 1}, {{0, 10}, 2}};
  raw.link_segments = {{{0, 10}, 0, 1}, {{4, 4}, 1, 2}};
  auto s = build_stream(raw);
  std::vector<component> expected = {
      comp(0, true, 4, false, {0, 1}),  comp(0, true, 4, false, {2}),
      comp(4, true, 4, true, {0, 1, 2}), comp(4, false, 10, true, {0, 1}),
      comp(4, false, 10, true, {2})};
  std::sort(expected.begin(), expected.end(), canonical_less);
  for (auto algo : {&scc_naive, &scc_direct, &scc_fd})
    CHECK(run(algo, s) == expected);
}

TEST_CASE("path split when the bridge departs") {
  raw_stream raw;
  raw.node_segments = {{{0, 10}, 0}, {{0, 10}, 1}, {{0, 10}, 2}};
  raw.link_segments = {{{0, 10}, 0, 1}, {{0, 6}, 1, 2}};
  auto s = build_stream(raw);
  std::vector<component> expected = {comp(0, true, 6, true, {0, 1, 2}),
                                     comp(6, false, 10, true, {0, 1}),
                                     comp(6, false, 10, true, {2})};
  std::sort(expected.begin(), expected.end(), canonical_less);
  for (auto algo : {&scc_naive, &scc_direct, &scc_fd})
    CHECK(run(algo, s) == expected);
}

TEST_CASE("isolated node segments each form one component") {
  raw_stream raw;
  for (node_id u = 0; u < 7; ++u)
    raw.node_segments.push_back({{tick(u), tick(u + 3)}, u});
  auto s = build_stream(raw);
  for (auto algo : {&scc_naive, &scc_direct, &scc_fd})
    CHECK(run(algo, s).size() == 7);
}

TEST_CASE("empty stream has no components") {
  auto s = build_stream({});
  for (auto algo : {&scc_naive, &scc_direct, &scc_fd})
    CHECK(run(algo, s).empty());
}

TEST_CASE("three-way equivalence and partition on random streams") {
  for (unsigned seed = 1; seed <= 60; ++seed) {
    auto s = testsupport::random_stream({.seed = seed,
                                         .max_nodes = 8,
                                         .node_segments = 10,
                                         .link_segments = 14,
                                         .time_range = 25,
                                         .max_len = 10});
    auto a = run(&scc_naive, s);
    auto b = run(&scc_direct, s);
    auto c = run(&scc_fd, s);
    REQUIRE(a == b);
    REQUIRE(a == c);
    CHECK(verify_partition(s, a));
    auto st = s.stats();
    CHECK(a.size() <= st.node_segment_count + 4 * st.link_segment_count);
  }
}

TEST_CASE("component count lower bound: linkless segments") {
  // node segments with no incident link each stand alone
  raw_stream raw;
  raw.node_segments = {{{0, 5}, 0}, {{10, 15}, 0}, {{0, 20}, 1}, {{0, 20}, 2}};
  raw.link_segments = {{{3, 4}, 1, 2}};
  auto s = build_stream(raw);
  auto comps = run(&scc_direct, s);
  // the two linkless segments of node 0 appear as-is
  CHECK(std::count_if(comps.begin(), comps.end(), [](const component& c) {
          return c.nodes == std::vector<node_id>{0};
        }) == 2);
  CHECK(comps.size() >= 2);
}

TEST_CASE("verify_partition rejects tampered component lists") {
  auto s = two_nodes_one_link();
  auto comps = run(&scc_direct, s);
  REQUIRE(verify_partition(s, comps));

  SECTION("dropping a component") {
    auto broken = comps;
    broken.pop_back();
    CHECK_FALSE(verify_partition(s, broken));
  }
  SECTION("widening an interval by one tick") {
    auto broken = comps;
    broken[0].iv.e += 1;
    CHECK_FALSE(verify_partition(s, broken));
  }
  SECTION("flipping an endpoint open") {
    auto broken = comps;
    // ([0,2[,{0}) -> (]0,2[,{0}) uncovers instant 0
    REQUIRE(broken[0].iv.b_closed);
    broken[0].iv.b_closed = false;
    CHECK_FALSE(verify_partition(s, broken));
  }
}

TEST_CASE("emitted components stream out in closing order") {
  struct order_sink final : component_sink {
    std::vector<tick> closes;
    void on_component(const bounded_interval& iv,
                      std::span<const node_id>) override {
      closes.push_back(iv.e);
    }
  };
  for (unsigned seed = 1; seed <= 10; ++seed) {
    auto s = testsupport::random_stream({.seed = seed + 41});
    for (auto algo : {&scc_naive, &scc_direct, &scc_fd}) {
      order_sink sink;
      algo(s, sink);
      CHECK(std::is_sorted(sink.closes.begin(), sink.closes.end()));
    }
  }
}

TEST_CASE("emitted intervals are well formed") {
  for (unsigned seed = 1; seed <= 20; ++seed) {
    auto s = testsupport::random_stream({.seed = seed + 900});
    for (const auto& c : run(&scc_direct, s)) {
      CHECK(c.iv.valid());
      CHECK(!c.nodes.empty());
      if (c.iv.b == c.iv.e) {
        CHECK(c.iv.b_closed);
        CHECK(c.iv.e_closed);
      }
    }
  }
}

TEST_CASE("component line rendering") {
  auto s = two_nodes_one_link();
  CHECK(render_component(comp(2, true, 5, true, {0, 1}), s) == "[2 5] 2 0 1");
  CHECK(render_component(comp(5, false, 9, true, {0}), s) == "]5 9] 1 0");
  CHECK(render_component(comp(0, true, 2, false, {1}), s) == "[0 2[ 1 1");
}

TEST_CASE("summary reports counts and max size") {
  auto s = two_nodes_one_link();
  counting_sink sink;
  auto sum = scc_direct(s, sink);
  CHECK(sum.component_count == 5);
  CHECK(sink.count() == 5);
  CHECK(sum.max_component_size == 2);
}
