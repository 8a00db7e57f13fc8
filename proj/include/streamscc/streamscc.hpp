#pragma once

// Strongly connected components of stream graphs: data model, sweep
// algorithms, fully dynamic connectivity, approximation and latency metrics.

#include "streamscc/core.hpp"
#include "streamscc/dynamic_connectivity.hpp"
#include "streamscc/events.hpp"
#include "streamscc/ingest.hpp"
#include "streamscc/latency.hpp"
#include "streamscc/scc.hpp"
#include "streamscc/stats.hpp"
#include "streamscc/stream_graph.hpp"
