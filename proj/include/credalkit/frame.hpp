#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "credalkit/errors.hpp"
#include "credalkit/geometry.hpp"

namespace credalkit {

// An event is a bitmask over frame indices; bit i stands for labels()[i].
using Event = std::uint32_t;

// Finite frame of discernment: an ordered list of distinct outcome labels.
class Frame {
 public:
  Frame() = default;
  explicit Frame(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) fail(errc::empty_input, "frame: no outcomes");
    if (labels_.size() > 32) fail(errc::frame_too_large, "frame: more than 32 outcomes");
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i].empty()) fail(errc::invalid_input, "frame: empty label");
      for (std::size_t j = i + 1; j < labels_.size(); ++j) {
        if (labels_[i] == labels_[j]) {
          fail(errc::invalid_input, "frame: duplicate label '" + labels_[i] + "'");
        }
      }
    }
  }

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }

  std::size_t index_of(const std::string& name) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i] == name) return i;
    }
    fail(errc::unknown_reference, "frame: no outcome named '" + name + "'");
  }

  Event event_of(const std::vector<std::string>& names) const {
    Event e = 0;
    for (const std::string& n : names) e |= Event{1} << index_of(n);
    return e;
  }

  Event full_event() const {
    return size() == 32 ? ~Event{0} : (Event{1} << size()) - 1;
  }

  std::string event_label(Event e) const {
    if (e == 0) return "∅";
    std::string out;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (e >> i & 1) {
        if (!out.empty()) out += ',';
        out += labels_[i];
      }
    }
    return out;
  }

  bool operator==(const Frame& o) const { return labels_ == o.labels_; }

 private:
  std::vector<std::string> labels_;
};

// Product frame with labels "<u>,<v>" in row-major order (u outer, v inner).
inline Frame product_frame(const Frame& a, const Frame& b) {
  std::vector<std::string> labels;
  labels.reserve(a.size() * b.size());
  for (const std::string& u : a.labels()) {
    for (const std::string& v : b.labels()) labels.push_back(u + "," + v);
  }
  return Frame(std::move(labels));
}

inline double event_sum(const geom::Vec& values, Event e) {
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (e >> i & 1) s += values[i];
  }
  return s;
}

// All 2^m events ordered by cardinality, then by mask value — the order used
// for rendered tables.
inline std::vector<Event> all_events_by_size(std::size_t m) {
  std::vector<Event> out;
  out.reserve(std::size_t{1} << m);
  for (Event e = 0; e < (Event{1} << m); ++e) out.push_back(e);
  std::stable_sort(out.begin(), out.end(), [](Event a, Event b) {
    const int ca = std::popcount(a), cb = std::popcount(b);
    return ca != cb ? ca < cb : a < b;
  });
  return out;
}

// Dense per-event bounds over all 2^m events, indexed by event mask.
// Used both for credal envelopes and for possibility consistency tables.
struct EventTable {
  Frame frame;
  std::vector<double> lower, upper;

  double lo(Event e) const { return lower.at(e); }
  double up(Event e) const { return upper.at(e); }
};

// Sparse event -> [lower, upper] rows, kept in query order.
struct IntervalTable {
  struct Row {
    Event event;
    double lower, upper;
  };
  Frame frame;
  std::vector<Row> rows;

  const Row& lookup(Event e) const {
    for (const Row& r : rows) {
      if (r.event == e) return r;
    }
    fail(errc::unknown_reference, "interval table: no row for event");
  }
};

}  // namespace credalkit
