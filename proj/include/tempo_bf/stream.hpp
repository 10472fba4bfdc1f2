#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <exception>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "tempo_bf/combine.hpp"
#include "tempo_bf/graph.hpp"
#include "tempo_bf/twin_index.hpp"
#include "tempo_bf/types.hpp"
#include "tempo_bf/wedge.hpp"

namespace tempo_bf {

/// An edge together with its identity in a streaming graph.
struct StreamEdge {
  TemporalEdge edge;
  EdgeId id = 0;
};

class StreamError : public std::runtime_error {
 public:
  StreamError(std::size_t position, const TemporalEdge& e, const std::string& what)
      : std::runtime_error(what), position_(position), edge_(e) {}
  std::size_t position() const noexcept { return position_; }
  const TemporalEdge& edge() const noexcept { return edge_; }

 private:
  std::size_t position_;
  TemporalEdge edge_;
};

/// Exact per-type count of butterflies containing one edge, over a
/// chronologically sorted graph.
///
/// With e = (u, v, t), wedges u-x-w through other middles x (both edges
/// within delta of t) form one set per end vertex w, wedges through e
/// itself form the other, and a single twin-tree set_cross between the two
/// yields the counts. Scratch is kept between calls.
class EdgeDeltaCounter {
 public:
  CountVector count(const TemporalBipartiteGraph& g, Duration delta, const TemporalEdge& e, EdgeId id) {
    if (g.order() != AdjacencyOrder::time && g.edge_count() > 1)
      throw std::logic_error("delta counting requires chronological adjacency");
    if (!g.contains(e, id)) throw std::invalid_argument("delta_count_edge: edge not in graph");
    if (slot_.size() < g.vertex_count()) slot_.assign(g.vertex_count(), -1);

    const VertexId u = g.upper_vertex(e.u), v = g.lower_vertex(e.v);
    const Timestamp t = e.t;
    const Timestamp lo = sub_saturated(t, delta), hi = add_saturated(t, delta);

    for (const auto& ux : g.time_range(u, lo, hi)) {
      if (ux.neighbor == v || ux.t == t) continue;
      const Timestamp lo2 = sub_saturated(std::max(t, ux.t), delta);
      const Timestamp hi2 = add_saturated(std::min(t, ux.t), delta);
      for (const auto& xw : g.time_range(ux.neighbor, lo2, hi2)) {
        if (xw.neighbor == u || xw.t == t || xw.t == ux.t) continue;
        if (auto w = make_wedge(ux.neighbor, ux.t, xw.t, delta)) sets(xw.neighbor).other.push_back(*w);
      }
    }
    for (const auto& vw : g.time_range(v, lo, hi)) {
      if (vw.neighbor == u || vw.t == t) continue;
      if (auto w = make_wedge(v, t, vw.t, delta)) sets(vw.neighbor).via.push_back(*w);
    }

    CountVector acc;
    for (VertexId end : touched_) {
      auto& s = pool_[static_cast<std::size_t>(slot_[end])];
      if (!s.other.empty() && !s.via.empty()) {
        set_cross(split(s.other), split(s.via), delta, index_,
                  [&](const Wedge& w, const auto& same, const auto& diff) {
                    tally_twin(w, same, diff, Layer::upper, acc);
                  });
      }
      s.other.clear();
      s.via.clear();
      slot_[end] = -1;
    }
    touched_.clear();
    used_ = 0;
    return acc;
  }

 private:
  struct PairSets {
    std::vector<Wedge> other, via;
  };

  PairSets& sets(VertexId end) {
    if (slot_[end] < 0) {
      if (used_ == pool_.size()) pool_.emplace_back();
      slot_[end] = static_cast<std::int64_t>(used_++);
      touched_.push_back(end);
    }
    return pool_[static_cast<std::size_t>(slot_[end])];
  }

  static WedgeSetView split(std::vector<Wedge>& s) {
    std::sort(s.begin(), s.end(), [](const Wedge& a, const Wedge& b) {
      if (a.forward != b.forward) return a.forward;
      return WedgePriorityLess{}(a, b);
    });
    const auto mid = std::partition_point(s.begin(), s.end(), [](const Wedge& w) { return w.forward; });
    const auto n = static_cast<std::size_t>(mid - s.begin());
    return {std::span<const Wedge>(s).subspan(0, n), std::span<const Wedge>(s).subspan(n)};
  }

  std::vector<std::int64_t> slot_;
  std::vector<PairSets> pool_;
  std::size_t used_ = 0;
  std::vector<VertexId> touched_;
  std::array<TwinOrderedIndex, 4> index_;
};

inline CountVector delta_count_edge(const TemporalBipartiteGraph& g, Duration delta,
                                    const TemporalEdge& e, EdgeId id) {
  EdgeDeltaCounter counter;
  return counter.count(g, delta, e, id);
}

/// Subtracts the butterflies of `e` from `live`, then removes `e`.
inline void stream_delete(TemporalBipartiteGraph& g, Duration delta, const TemporalEdge& e, EdgeId id,
                          CountVector& live, EdgeDeltaCounter* counter = nullptr) {
  EdgeDeltaCounter local;
  live -= (counter ? *counter : local).count(g, delta, e, id);
  g.remove_edge(e, id);
}

/// Inserts `e` at its chronological position, then adds its butterflies.
inline EdgeId stream_insert(TemporalBipartiteGraph& g, Duration delta, const TemporalEdge& e,
                            CountVector& live, EdgeDeltaCounter* counter = nullptr) {
  EdgeDeltaCounter local;
  const EdgeId id = g.insert_edge(e);
  live += (counter ? *counter : local).count(g, delta, e, id);
  return id;
}

/// Per-end-vertex wedge timestamps kept as independently sorted columns:
/// start and arrival times of forward and of backward wedges.
struct SortedWedgeColumns {
  std::vector<Timestamp> forward_start, forward_arrival, backward_start, backward_arrival;
  bool sorted = false;

  void clear() {
    forward_start.clear();
    forward_arrival.clear();
    backward_start.clear();
    backward_arrival.clear();
    sorted = false;
  }

  void add(const Wedge& w) {
    (w.forward ? forward_start : backward_start).push_back(w.ts);
    (w.forward ? forward_arrival : backward_arrival).push_back(w.ta);
    sorted = false;
  }

  void sort_if_needed() {
    if (sorted) return;
    for (auto* col : {&forward_start, &forward_arrival, &backward_start, &backward_arrival})
      std::sort(col->begin(), col->end());
    sorted = true;
  }

  static std::size_t count(const std::vector<Timestamp>& col, Compare op, Timestamp x) {
    return detail::count_sorted(col, op, x);
  }
};

/// Parallel batch maintenance over a chronologically sorted graph.
///
/// Deleted edges contribute the butterflies in which they carry the minimum
/// timestamp, inserted edges those in which they carry the maximum, so each
/// affected butterfly is counted once. Requires the deletions to be an
/// oldest-timestamp prefix of the graph and the insertions to be a
/// non-decreasing suffix beyond its newest edge; under that condition a
/// butterfly mixing deleted and inserted edges is subtracted and added once
/// each and cancels out.
class BatchUpdater {
 public:
  /// Applies the batch and returns the identities of the inserted edges.
  std::vector<StreamEdge> update(TemporalBipartiteGraph& g, Duration delta,
                                 std::span<const StreamEdge> deletions,
                                 std::span<const TemporalEdge> insertions, CountVector& live,
                                 unsigned workers) {
    if (workers < 1) throw std::invalid_argument("batch_update: workers must be at least 1");
    if (g.order() != AdjacencyOrder::time && g.edge_count() > 1)
      throw std::logic_error("batch_update requires chronological adjacency");
    check_deletions(g, deletions);
    check_insertions(g, insertions);

    std::vector<StreamEdge> inserted;
    inserted.reserve(insertions.size());
    for (const auto& e : insertions) inserted.push_back({e, g.insert_edge(e)});

    const std::size_t tasks = deletions.size() + inserted.size();
    if (workers_.size() < workers) workers_.resize(workers);
    for (unsigned k = 0; k < workers; ++k) workers_[k].reset(g.vertex_count());

    auto run = [&](unsigned k) {
      auto& wk = workers_[k];
      try {
        for (std::size_t i = k; i < tasks; i += workers) {
          if (i < deletions.size())
            wk.removed += wk.count(g, delta, deletions[i].edge, Extreme::earliest);
          else
            wk.added += wk.count(g, delta, inserted[i - deletions.size()].edge, Extreme::latest);
        }
      } catch (...) {
        wk.error = std::current_exception();
      }
    };
    if (workers == 1 || tasks < 2) {
      for (unsigned k = 0; k < workers; ++k) run(k);
    } else {
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      for (unsigned k = 0; k < workers; ++k) pool.emplace_back(run, k);
    }

    CountVector removed, added;
    for (unsigned k = 0; k < workers; ++k) {
      if (workers_[k].error) std::rethrow_exception(workers_[k].error);
      removed += workers_[k].removed;
      added += workers_[k].added;
    }
    live += added;
    live -= removed;
    for (const auto& d : deletions) g.remove_edge(d.edge, d.id);
    return inserted;
  }

 private:
  enum class Extreme { earliest, latest };

  struct Worker {
    std::vector<std::int64_t> slot;
    std::vector<SortedWedgeColumns> pool;
    std::size_t used = 0;
    std::vector<VertexId> touched;
    CountVector removed, added;
    std::exception_ptr error;

    void reset(std::size_t vertices) {
      if (slot.size() < vertices) slot.assign(vertices, -1);
      removed = {};
      added = {};
      error = nullptr;
    }

    SortedWedgeColumns& columns(VertexId end) {
      if (slot[end] < 0) {
        if (used == pool.size()) pool.emplace_back();
        slot[end] = static_cast<std::int64_t>(used++);
        touched.push_back(end);
      }
      return pool[static_cast<std::size_t>(slot[end])];
    }

    SortedWedgeColumns* find(VertexId end) {
      return slot[end] < 0 ? nullptr : &pool[static_cast<std::size_t>(slot[end])];
    }

    /// Butterflies in which `e` holds the minimum (earliest) or maximum
    /// (latest) timestamp. Other edges are taken from (t, t+delta] or
    /// [t-delta, t) respectively.
    CountVector count(const TemporalBipartiteGraph& g, Duration delta, const TemporalEdge& e, Extreme side) {
      const VertexId u = g.upper_vertex(e.u), v = g.lower_vertex(e.v);
      const Timestamp t = e.t;
      CountVector acc;
      Timestamp lo, hi;
      if (side == Extreme::earliest) {
        if (t == std::numeric_limits<Timestamp>::max()) return acc;
        lo = t + 1;
        hi = add_saturated(t, delta);
      } else {
        if (t == std::numeric_limits<Timestamp>::min()) return acc;
        lo = sub_saturated(t, delta);
        hi = t - 1;
      }
      if (lo > hi) return acc;

      for (const auto& ux : g.time_range(u, lo, hi)) {
        if (ux.neighbor == v) continue;
        for (const auto& xw : g.time_range(ux.neighbor, lo, hi)) {
          if (xw.neighbor == u || xw.t == ux.t) continue;
          columns(xw.neighbor).add(ux.t < xw.t ? Wedge{ux.t, xw.t, ux.neighbor, true}
                                               : Wedge{xw.t, ux.t, ux.neighbor, false});
        }
      }
      for (const auto& vw : g.time_range(v, lo, hi)) {
        if (vw.neighbor == u) continue;
        auto* cols = find(vw.neighbor);
        if (!cols) continue;
        cols->sort_if_needed();
        const Timestamp x = vw.t;
        using C = SortedWedgeColumns;
        if (side == Extreme::earliest) {
          // Query wedge (t, x) runs forward.
          auto tally = [&](const std::vector<Timestamp>& vs, const std::vector<Timestamp>& va, bool same) {
            acc.add(butterfly_type(Coverage::non_overlap, same, Layer::upper), C::count(vs, Compare::greater, x));
            acc.add(butterfly_type(Coverage::intersecting, same, Layer::upper),
                    C::count(va, Compare::greater, x) - C::count(vs, Compare::greater_equal, x));
            acc.add(butterfly_type(Coverage::covering, same, Layer::upper), C::count(va, Compare::less, x));
          };
          tally(cols->forward_start, cols->forward_arrival, true);
          tally(cols->backward_start, cols->backward_arrival, false);
        } else {
          // Query wedge normalized to (x, t) runs backward.
          auto tally = [&](const std::vector<Timestamp>& vs, const std::vector<Timestamp>& va, bool same) {
            acc.add(butterfly_type(Coverage::non_overlap, same, Layer::upper), C::count(va, Compare::less, x));
            acc.add(butterfly_type(Coverage::intersecting, same, Layer::upper),
                    C::count(vs, Compare::less, x) - C::count(va, Compare::less_equal, x));
            acc.add(butterfly_type(Coverage::covering, same, Layer::upper), C::count(vs, Compare::greater, x));
          };
          tally(cols->backward_start, cols->backward_arrival, true);
          tally(cols->forward_start, cols->forward_arrival, false);
        }
      }

      for (VertexId end : touched) {
        pool[static_cast<std::size_t>(slot[end])].clear();
        slot[end] = -1;
      }
      touched.clear();
      used = 0;
      return acc;
    }
  };

  static void check_deletions(const TemporalBipartiteGraph& g, std::span<const StreamEdge> deletions) {
    if (deletions.empty()) return;
    std::unordered_set<EdgeId> ids;
    Timestamp newest = std::numeric_limits<Timestamp>::min();
    for (std::size_t i = 0; i < deletions.size(); ++i) {
      const auto& d = deletions[i];
      if (!ids.insert(d.id).second || !g.contains(d.edge, d.id))
        throw StreamError(i, d.edge, "batch_update: deletion is not a distinct edge of the graph");
      newest = std::max(newest, d.edge.t);
    }
    std::size_t older = 0;
    for (const auto& d : deletions) older += d.edge.t < newest ? 1 : 0;
    if (g.count_before(newest, older) != older)
      throw StreamError(0, deletions[0].edge, "batch_update: deletions are not an oldest-timestamp prefix");
  }

  static void check_insertions(const TemporalBipartiteGraph& g, std::span<const TemporalEdge> insertions) {
    Timestamp last = g.edge_count() ? g.max_time() : std::numeric_limits<Timestamp>::min();
    for (std::size_t i = 0; i < insertions.size(); ++i) {
      if (insertions[i].t < last)
        throw StreamError(i, insertions[i], "batch_update: insertions are not a chronological suffix");
      last = insertions[i].t;
    }
  }

  std::vector<Worker> workers_;
};

inline std::vector<StreamEdge> batch_update(TemporalBipartiteGraph& g, Duration delta,
                                            std::span<const StreamEdge> deletions,
                                            std::span<const TemporalEdge> insertions, CountVector& live,
                                            unsigned workers) {
  BatchUpdater updater;
  return updater.update(g, delta, deletions, insertions, live, workers);
}

enum class StreamEngine { stbc, stbc_plus };

struct WindowConfig {
  std::size_t window = 0;
  std::size_t stride = 1;
  StreamEngine engine = StreamEngine::stbc_plus;
  unsigned workers = 1;
};

struct WindowEmission {
  std::size_t step = 0;
  Timestamp window_start = 0;
  Timestamp window_end = 0;
  CountVector counts;
};

/// Sliding window over a chronological edge stream: holds the most recent
/// `window` edges and the exact butterfly counts among them.
class SlidingWindow {
 public:
  SlidingWindow(std::size_t upper_count, std::size_t lower_count, Duration delta, WindowConfig cfg)
      : graph_(upper_count, lower_count), delta_(delta), cfg_(cfg) {
    if (cfg.stride < 1) throw std::invalid_argument("stride must be at least 1");
    if (cfg.window < cfg.stride) throw std::invalid_argument("window must be at least the stride");
    if (cfg.workers < 1) throw std::invalid_argument("workers must be at least 1");
  }

  /// Adds the incoming edges (at most one stride), evicts the oldest edges
  /// beyond the window size and returns the new emission.
  WindowEmission advance(std::span<const TemporalEdge> incoming) {
    if (incoming.size() > cfg_.stride) throw std::invalid_argument("more edges than one stride");
    Timestamp last = buffer_.empty() ? std::numeric_limits<Timestamp>::min() : buffer_.back().edge.t;
    for (std::size_t i = 0; i < incoming.size(); ++i) {
      if (incoming[i].t < last)
        throw StreamError(consumed_ + i, incoming[i], "stream is not chronologically ordered");
      last = incoming[i].t;
    }
    const std::size_t total = buffer_.size() + incoming.size();
    const std::size_t excess = total > cfg_.window ? total - cfg_.window : 0;

    if (cfg_.engine == StreamEngine::stbc) {
      for (const auto& e : incoming) buffer_.push_back({e, stream_insert(graph_, delta_, e, live_, &counter_)});
      for (std::size_t i = 0; i < excess; ++i) {
        stream_delete(graph_, delta_, buffer_.front().edge, buffer_.front().id, live_, &counter_);
        buffer_.pop_front();
      }
    } else {
      const std::vector<StreamEdge> doomed(buffer_.begin(), buffer_.begin() + static_cast<std::ptrdiff_t>(excess));
      auto added = updater_.update(graph_, delta_, doomed, incoming, live_, cfg_.workers);
      buffer_.erase(buffer_.begin(), buffer_.begin() + static_cast<std::ptrdiff_t>(excess));
      buffer_.insert(buffer_.end(), added.begin(), added.end());
    }
    consumed_ += incoming.size();

    WindowEmission out;
    out.step = step_++;
    out.counts = live_;
    if (!buffer_.empty()) {
      out.window_start = buffer_.front().edge.t;
      out.window_end = buffer_.back().edge.t;
    }
    return out;
  }

  const TemporalBipartiteGraph& graph() const noexcept { return graph_; }
  const std::deque<StreamEdge>& buffer() const noexcept { return buffer_; }
  const CountVector& live() const noexcept { return live_; }
  const WindowConfig& config() const noexcept { return cfg_; }

 private:
  TemporalBipartiteGraph graph_;
  Duration delta_;
  WindowConfig cfg_;
  std::deque<StreamEdge> buffer_;
  CountVector live_;
  EdgeDeltaCounter counter_;
  BatchUpdater updater_;
  std::size_t step_ = 0;
  std::size_t consumed_ = 0;
};

/// Index of the first edge whose timestamp is older than its predecessor's.
inline void check_chronological(std::span<const TemporalEdge> stream) {
  for (std::size_t i = 1; i < stream.size(); ++i)
    if (stream[i].t < stream[i - 1].t)
      throw StreamError(i, stream[i], "stream is not chronologically ordered at edge " + std::to_string(i));
}

/// Slides a window over the stream, `stride` edges per step, and passes one
/// emission per step to `sink`. The first steps fill the window.
template <class Sink>
void run_sliding_window(std::span<const TemporalEdge> stream, std::size_t upper_count,
                        std::size_t lower_count, Duration delta, WindowConfig cfg, Sink&& sink) {
  check_chronological(stream);
  SlidingWindow sw(upper_count, lower_count, delta, cfg);
  for (std::size_t pos = 0; pos < stream.size(); pos += cfg.stride) {
    const std::size_t n = std::min(cfg.stride, stream.size() - pos);
    sink(sw.advance(stream.subspan(pos, n)));
  }
}

}  // namespace tempo_bf
