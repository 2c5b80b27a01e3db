#include "credalkit/credal.hpp"

#include <bit>
#include <cmath>
#include <limits>

namespace credalkit {

namespace {

void check_frame_size_for_tables(const Frame& f) {
  if (f.size() > 16) fail(errc::frame_too_large, "event tables need a frame of at most 16 outcomes");
}

void check_same_frame(const CredalSet& a, const CredalSet& b, const char* op) {
  if (!(a.frame == b.frame)) {
    fail(errc::dimension_mismatch, std::string(op) + ": frames differ");
  }
}

std::set<std::string> context_union(const CredalSet& a, const CredalSet& b) {
  std::set<std::string> u = a.contexts;
  u.insert(b.contexts.begin(), b.contexts.end());
  return u;
}

}  // namespace

ProbVector make_prob_vector(Frame frame, geom::Vec values) {
  if (values.size() != frame.size()) {
    fail(errc::dimension_mismatch, "probability vector length differs from frame size");
  }
  double sum = 0.0;
  for (double v : values) {
    if (!std::isfinite(v)) fail(errc::invalid_input, "probability vector: non-finite value");
    if (v < -kSumTol || v > 1.0 + kSumTol) {
      fail(errc::invalid_input, "probability vector: value outside [0,1]");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSumTol) {
    fail(errc::invalid_input, "probability vector: values do not sum to 1");
  }
  return ProbVector{std::move(frame), std::move(values)};
}

CredalSet make_credal_set(Frame frame, std::vector<geom::Vec> distributions,
                          std::set<std::string> contexts) {
  if (distributions.empty()) fail(errc::empty_input, "credal set: no distributions");
  for (const geom::Vec& v : distributions) {
    make_prob_vector(frame, v);  // validation only
  }
  geom::Polytope hull = geom::convex_hull(std::move(distributions));
  return CredalSet{std::move(frame), std::move(hull.vertices), std::move(contexts)};
}

CredalSet conjunction(const CredalSet& a, const CredalSet& b, bool assume_no_interaction) {
  check_same_frame(a, b, "conjunction");
  if (a.contexts != b.contexts && !assume_no_interaction) {
    fail(errc::context_mismatch,
         "conjunction: differing contexts need an explicit no-interaction assumption");
  }
  CredalSet out{a.frame, {}, context_union(a, b)};
  if (a.empty() || b.empty()) return out;
  geom::Polytope isect = geom::intersect(a.polytope(), b.polytope());
  out.extremes = std::move(isect.vertices);
  return out;
}

CredalSet disjunction(const CredalSet& a, const CredalSet& b) {
  check_same_frame(a, b, "disjunction");
  if (a.contexts != b.contexts) {
    fail(errc::context_mismatch, "disjunction: contexts differ");
  }
  if (a.empty()) return b;
  if (b.empty()) return a;
  std::vector<geom::Vec> pts = a.extremes;
  pts.insert(pts.end(), b.extremes.begin(), b.extremes.end());
  geom::Polytope hull = geom::convex_hull(std::move(pts));
  return CredalSet{a.frame, std::move(hull.vertices), a.contexts};
}

Envelope envelope_of(const CredalSet& c) {
  if (c.empty()) fail(errc::empty_set, "envelope_of: empty credal set");
  check_frame_size_for_tables(c.frame);
  const std::size_t m = c.frame.size();
  const std::size_t n_events = std::size_t{1} << m;
  Envelope env{c.frame, std::vector<double>(n_events), std::vector<double>(n_events)};
  for (Event e = 0; e < n_events; ++e) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const geom::Vec& p : c.extremes) {
      const double s = event_sum(p, e);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    env.lower[e] = lo;
    env.upper[e] = hi;
  }
  // Exact values at the trivial events regardless of summation noise.
  env.lower[0] = env.upper[0] = 0.0;
  env.lower[n_events - 1] = env.upper[n_events - 1] = 1.0;
  return env;
}

CredalSet maximal_family(const Envelope& env) {
  check_frame_size_for_tables(env.frame);
  const std::size_t m = env.frame.size();
  const std::size_t n_events = std::size_t{1} << m;
  if (env.lower.size() != n_events || env.upper.size() != n_events) {
    fail(errc::invalid_input, "maximal_family: table size differs from 2^m");
  }
  for (Event e = 0; e < n_events; ++e) {
    if (env.lower[e] > env.upper[e] + kSumTol) {
      fail(errc::invalid_input, "maximal_family: lower exceeds upper");
    }
  }
  if (std::abs(env.lower[0]) > kSumTol || std::abs(env.upper[0]) > kSumTol ||
      std::abs(env.lower[n_events - 1] - 1.0) > kSumTol ||
      std::abs(env.upper[n_events - 1] - 1.0) > kSumTol) {
    fail(errc::invalid_input, "maximal_family: trivial events must carry [0,0] and [1,1]");
  }

  // H-form: the simplex plus a two-sided constraint per proper event.
  std::vector<geom::AffineEq> eqs;
  const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(m));
  eqs.push_back({geom::Vec(m, inv_sqrt_m), inv_sqrt_m});

  std::vector<geom::Halfspace> ineqs;
  for (std::size_t i = 0; i < m; ++i) {
    geom::Vec a(m, 0.0);
    a[i] = -1.0;
    ineqs.push_back({std::move(a), 0.0});
  }
  for (Event e = 1; e + 1 < n_events; ++e) {
    const double nrm = std::sqrt(static_cast<double>(std::popcount(e)));
    geom::Vec up(m, 0.0), lo(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      if (e >> i & 1) {
        up[i] = 1.0 / nrm;
        lo[i] = -1.0 / nrm;
      }
    }
    ineqs.push_back({std::move(up), env.upper[e] / nrm});
    ineqs.push_back({std::move(lo), -env.lower[e] / nrm});
  }

  std::vector<geom::Vec> verts = geom::enumerate_vertices(m, eqs, ineqs);
  if (verts.empty()) fail(errc::empty_set, "maximal_family: envelope admits no distribution");
  geom::Polytope hull = geom::convex_hull(std::move(verts));
  return CredalSet{env.frame, std::move(hull.vertices), {}};
}

CredalSet independent_product(const CredalSet& a, const CredalSet& b) {
  if (a.empty() || b.empty()) fail(errc::empty_set, "independent_product: empty input");
  Frame pf = product_frame(a.frame, b.frame);
  std::vector<geom::Vec> products;
  products.reserve(a.extremes.size() * b.extremes.size());
  for (const geom::Vec& p : a.extremes) {
    for (const geom::Vec& q : b.extremes) {
      geom::Vec prod(pf.size());
      for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = 0; j < q.size(); ++j) prod[i * q.size() + j] = p[i] * q[j];
      }
      products.push_back(std::move(prod));
    }
  }
  geom::Polytope hull = geom::convex_hull(std::move(products));
  return CredalSet{std::move(pf), std::move(hull.vertices), context_union(a, b)};
}

}  // namespace credalkit
