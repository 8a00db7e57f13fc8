#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace streamscc {

// Time coordinate. One stream uses one unit (e.g. milliseconds); all
// comparisons are exact integer comparisons. Real-world timestamps are
// scaled to ticks at ingestion.
using tick = std::int64_t;

// Dense node index assigned at ingestion; a side dictionary maps back to
// the original string labels.
using node_id = std::uint32_t;

// Closed interval [b, e]. b == e denotes the singleton {b}.
struct interval {
  tick b = 0;
  tick e = 0;

  friend bool operator==(const interval&, const interval&) = default;
  friend auto operator<=>(const interval&, const interval&) = default;

  bool contains(tick t) const { return b <= t && t <= e; }
  bool contains(const interval& o) const { return b <= o.b && o.e <= e; }
  tick length() const { return e - b; }
};

// Interval whose endpoints are independently open or closed.
// Membership: t in <b,e> iff b < t < e, or t == b and b_closed,
// or t == e and e_closed. A point interval (b == e) must be closed-closed.
struct bounded_interval {
  tick b = 0;
  tick e = 0;
  bool b_closed = true;
  bool e_closed = true;

  friend bool operator==(const bounded_interval&, const bounded_interval&) = default;

  bool contains(tick t) const {
    return (b < t && t < e) || (t == b && b_closed) || (t == e && e_closed);
  }
  // Membership at a doubled-coordinate instant (2*t for real instants,
  // odd values for midpoints between consecutive ticks).
  bool contains_scaled(tick t2) const {
    return (2 * b < t2 && t2 < 2 * e) || (t2 == 2 * b && b_closed) ||
           (t2 == 2 * e && e_closed);
  }
  bool valid() const { return b < e || (b == e && b_closed && e_closed); }
  tick length() const { return e - b; }
};

inline bounded_interval closed(tick b, tick e) { return {b, e, true, true}; }

// Largest multiple of step <= t (floor toward -infinity, not toward zero).
inline tick floor_to_multiple(tick t, tick step) {
  tick q = t / step;
  if (t % step != 0 && t < 0) --q;
  return q * step;
}

// Smallest multiple of step >= t.
inline tick ceil_to_multiple(tick t, tick step) {
  tick q = t / step;
  if (t % step != 0 && t > 0) ++q;
  return q * step;
}

// Base class for all errors raised by this library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct link_outside_node_presence : error {
  using error::error;
};
struct segment_outside_horizon : error {
  using error::error;
};
struct self_loop : error {
  using error::error;
};
struct time_outside_horizon : error {
  using error::error;
};
struct no_predecessor_event_time : error {
  using error::error;
};
struct malformed_line : error {
  malformed_line(std::size_t line_no, const std::string& what)
      : error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
  std::size_t line;
};
struct non_positive_delta : error {
  using error::error;
};
struct budget_exceeded : error {
  using error::error;
};
struct mismatched_node_sets : error {
  using error::error;
};

}  // namespace streamscc
