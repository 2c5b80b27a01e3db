#include "credalkit/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace credalkit {

namespace {

constexpr double kNullTol = 1e-9;

void check_event_in_frame(const Frame& f, Event e) {
  if (f.size() < 32 && (e >> f.size()) != 0) {
    fail(errc::invalid_input, "event mask references outcomes beyond the frame");
  }
}

}  // namespace

CombinedSet combine(const CredalSet& c, const EvidenceSet& e) {
  if (!(c.frame == e.frame)) fail(errc::dimension_mismatch, "combine: frames differ");
  if (c.empty()) fail(errc::empty_set, "combine: empty credal set");
  const std::size_t m = c.frame.size();
  std::vector<geom::Vec> pts;
  pts.reserve(c.extremes.size() * e.extremes.size() + 1);
  pts.emplace_back(m, 0.0);  // null function joins the hull
  for (const geom::Vec& p : c.extremes) {
    for (const geom::Vec& l : e.extremes) {
      geom::Vec h(m);
      for (std::size_t i = 0; i < m; ++i) h[i] = p[i] * l[i];
      pts.push_back(std::move(h));
    }
  }
  geom::Polytope hull = geom::convex_hull(std::move(pts));
  return CombinedSet{c.frame, std::move(hull.vertices)};
}

ConditionalEnsemble ensemble_of(const CombinedSet& h) {
  ConditionalEnsemble ens;
  ens.frame = h.frame;
  for (const geom::Vec& hx : h.extremes) {
    const double w = std::accumulate(hx.begin(), hx.end(), 0.0);
    if (w <= kNullTol) continue;  // the null extreme carries no conditional
    geom::Vec cond(hx.size());
    for (std::size_t i = 0; i < hx.size(); ++i) cond[i] = hx[i] / w;
    ens.members.push_back({std::move(cond), w});
    ens.normalizer = std::max(ens.normalizer, w);
  }
  if (ens.members.empty()) {
    fail(errc::total_conflict, "ensemble_of: all combined extremes are null");
  }
  if (ens.members.size() > 63) {
    fail(errc::invalid_input, "ensemble_of: more than 63 members");
  }
  return ens;
}

double EnsembleMeasurePair::upper(std::uint64_t members) const {
  double mx = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (members >> k & 1) mx = std::max(mx, weights[k]);
  }
  return mx / normalizer;
}

EnsembleMeasurePair measures_of(const ConditionalEnsemble& ens) {
  EnsembleMeasurePair g;
  g.normalizer = ens.normalizer;
  g.weights.reserve(ens.members.size());
  for (const ConditionalEnsemble::Member& mem : ens.members) g.weights.push_back(mem.weight);
  g.all = ens.members.size() == 64 ? ~std::uint64_t{0}
                                   : (std::uint64_t{1} << ens.members.size()) - 1;
  return g;
}

double choquet_integral(const std::vector<double>& f,
                        const std::function<double(std::uint64_t)>& g) {
  if (f.size() > 63) fail(errc::invalid_input, "choquet_integral: more than 63 entries");
  for (double v : f) {
    if (!(v >= -1e-12)) fail(errc::invalid_input, "choquet_integral: negative integrand");
  }
  std::vector<std::size_t> order(f.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return f[a] > f[b]; });

  double total = 0.0;
  std::uint64_t level = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    level |= std::uint64_t{1} << order[i];
    const double cur = std::max(0.0, f[order[i]]);
    const double next = i + 1 < order.size() ? std::max(0.0, f[order[i + 1]]) : 0.0;
    if (cur > next) total += (cur - next) * g(level);
  }
  return total;
}

IntervalTable conditional_intervals(const ConditionalEnsemble& ens,
                                    const std::vector<Event>& events) {
  const EnsembleMeasurePair g = measures_of(ens);
  const auto upper_fn = [&](std::uint64_t d) { return g.upper(d); };
  const auto lower_fn = [&](std::uint64_t d) { return g.lower(d); };

  IntervalTable out;
  out.frame = ens.frame;
  out.rows.reserve(events.size());
  std::vector<double> f(ens.members.size());
  for (Event e : events) {
    check_event_in_frame(ens.frame, e);
    for (std::size_t k = 0; k < ens.members.size(); ++k) {
      f[k] = event_sum(ens.members[k].conditional, e);
    }
    out.rows.push_back({e, choquet_integral(f, lower_fn), choquet_integral(f, upper_fn)});
  }
  return out;
}

IntervalTable upper_lower_conditioning(const ConditionalEnsemble& ens,
                                       const std::vector<Event>& events) {
  IntervalTable out;
  out.frame = ens.frame;
  out.rows.reserve(events.size());
  for (Event e : events) {
    check_event_in_frame(ens.frame, e);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const ConditionalEnsemble::Member& mem : ens.members) {
      const double s = event_sum(mem.conditional, e);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    out.rows.push_back({e, lo, hi});
  }
  return out;
}

}  // namespace credalkit
