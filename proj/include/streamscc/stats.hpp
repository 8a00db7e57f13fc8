#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "streamscc/scc.hpp"

namespace streamscc {

struct component_record {
  std::size_t size = 0;  // |X|
  tick duration = 0;     // e - b; 0 for instantaneous components
};

// Aggregate size/duration statistics of a component collection: per
// component records, nearest-rank percentiles and log2-binned histograms.
struct component_stats {
  std::vector<component_record> records;
  std::size_t count = 0;
  std::size_t size_p50 = 0, size_p90 = 0, size_p99 = 0;
  tick duration_p50 = 0, duration_p90 = 0, duration_p99 = 0;
  // bucket k of size_hist counts sizes in [2^k, 2^(k+1));
  // duration_hist has a leading bucket for duration 0, then [2^k, 2^(k+1))
  std::vector<std::uint64_t> size_hist;
  std::vector<std::uint64_t> duration_hist;
};

namespace detail {

template <typename T>
T nearest_rank(std::vector<T> v, int pct) {
  // 1-indexed ceil(pct/100 * n)-th smallest
  std::sort(v.begin(), v.end());
  std::size_t rank = (v.size() * pct + 99) / 100;
  if (rank == 0) rank = 1;
  return v[rank - 1];
}

inline std::size_t log2_bucket(std::uint64_t x) {
  std::size_t k = 0;
  while (x >= 2) {
    x >>= 1;
    ++k;
  }
  return k;
}

}  // namespace detail

inline component_stats compute_component_stats(
    std::span<const component_record> records) {
  component_stats st;
  st.records.assign(records.begin(), records.end());
  st.count = records.size();
  if (records.empty()) return st;

  std::vector<std::size_t> sizes;
  std::vector<tick> durs;
  sizes.reserve(records.size());
  durs.reserve(records.size());
  for (const auto& r : records) {
    sizes.push_back(r.size);
    durs.push_back(r.duration);
    std::size_t sb = detail::log2_bucket(r.size);
    if (st.size_hist.size() <= sb) st.size_hist.resize(sb + 1, 0);
    std::size_t db =
        r.duration == 0
            ? 0
            : 1 + detail::log2_bucket(static_cast<std::uint64_t>(r.duration));
    if (st.duration_hist.size() <= db) st.duration_hist.resize(db + 1, 0);
    ++st.size_hist[sb];
    ++st.duration_hist[db];
  }
  st.size_p50 = detail::nearest_rank(sizes, 50);
  st.size_p90 = detail::nearest_rank(sizes, 90);
  st.size_p99 = detail::nearest_rank(sizes, 99);
  st.duration_p50 = detail::nearest_rank(durs, 50);
  st.duration_p90 = detail::nearest_rank(durs, 90);
  st.duration_p99 = detail::nearest_rank(durs, 99);
  return st;
}

// Streams (size, duration) records off the sweep without keeping node lists.
class stats_sink final : public component_sink {
 public:
  void on_component(const bounded_interval& iv,
                    std::span<const node_id> nodes) override {
    records_.push_back({nodes.size(), iv.length()});
  }
  const std::vector<component_record>& records() const { return records_; }

 private:
  std::vector<component_record> records_;
};

}  // namespace streamscc
