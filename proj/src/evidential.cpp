#include "credalkit/evidential.hpp"

#include <algorithm>
#include <cmath>

namespace credalkit {

namespace {

constexpr double kValueTol = 1e-9;

void check_same_frame(const EvidenceSet& a, const EvidenceSet& b, const char* op) {
  if (!(a.frame == b.frame)) fail(errc::dimension_mismatch, std::string(op) + ": frames differ");
}

void validate_likelihood_values(const Frame& frame, const geom::Vec& values) {
  if (values.size() != frame.size()) {
    fail(errc::dimension_mismatch, "likelihood length differs from frame size");
  }
  for (double v : values) {
    if (!std::isfinite(v)) fail(errc::invalid_input, "likelihood: non-finite value");
    if (v < -kValueTol || v > 1.0 + kValueTol) {
      fail(errc::invalid_input, "likelihood: value outside [0,1]");
    }
  }
}

// Canonical hull: null likelihood first, then the given vectors, minimized.
EvidenceSet canonical_hull(Frame frame, std::vector<geom::Vec> vectors) {
  std::vector<geom::Vec> pts;
  pts.reserve(vectors.size() + 1);
  pts.emplace_back(frame.size(), 0.0);
  for (geom::Vec& v : vectors) pts.push_back(std::move(v));
  geom::Polytope hull = geom::convex_hull(std::move(pts));
  return EvidenceSet{std::move(frame), std::move(hull.vertices), true};
}

// Corners of the axis-aligned box [lo, hi]; coordinates with a degenerate
// range are kept fixed so the corner count stays 2^(free coordinates).
std::vector<geom::Vec> box_corners(const geom::Vec& lo, const geom::Vec& hi) {
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (hi[i] - lo[i] > kValueTol) free.push_back(i);
  }
  if (free.size() > 16) fail(errc::frame_too_large, "box enumeration: too many free coordinates");
  std::vector<geom::Vec> corners;
  corners.reserve(std::size_t{1} << free.size());
  for (std::size_t bits = 0; bits < (std::size_t{1} << free.size()); ++bits) {
    geom::Vec c = lo;
    for (std::size_t j = 0; j < free.size(); ++j) {
      if (bits >> j & 1) c[free[j]] = hi[free[j]];
    }
    corners.push_back(std::move(c));
  }
  return corners;
}

}  // namespace

LikelihoodVector make_likelihood(Frame frame, geom::Vec values) {
  validate_likelihood_values(frame, values);
  return LikelihoodVector{std::move(frame), std::move(values)};
}

EvidenceSet make_evidence_set(Frame frame, std::vector<geom::Vec> likelihoods) {
  if (likelihoods.empty()) fail(errc::empty_input, "evidence set: no likelihood vectors");
  for (const geom::Vec& v : likelihoods) validate_likelihood_values(frame, v);
  geom::Polytope hull = geom::convex_hull(std::move(likelihoods));
  return EvidenceSet{std::move(frame), std::move(hull.vertices), false};
}

EvidenceSet canonicalize(const EvidenceSet& e) {
  if (e.canonical) return e;
  return canonical_hull(e.frame, e.extremes);
}

bool equivalent(const EvidenceSet& a, const EvidenceSet& b) {
  check_same_frame(a, b, "equivalent");
  const EvidenceSet ca = canonicalize(a);
  const EvidenceSet cb = canonicalize(b);
  const geom::Polytope pa = ca.polytope();
  const geom::Polytope pb = cb.polytope();
  for (const geom::Vec& v : ca.extremes) {
    if (!geom::contains(pb, v)) return false;
  }
  for (const geom::Vec& v : cb.extremes) {
    if (!geom::contains(pa, v)) return false;
  }
  return true;
}

EvidenceSet interval_evidence(const LikelihoodVector& lower, const LikelihoodVector& upper) {
  if (!(lower.frame == upper.frame)) {
    fail(errc::dimension_mismatch, "interval_evidence: frames differ");
  }
  for (std::size_t i = 0; i < lower.values.size(); ++i) {
    if (lower.values[i] > upper.values[i] + kValueTol) {
      fail(errc::invalid_bounds,
           "interval_evidence: lower exceeds upper at outcome '" + lower.frame.label(i) + "'");
    }
  }
  return canonical_hull(lower.frame, box_corners(lower.values, upper.values));
}

PossibilityDist possibility_of(const EvidenceSet& e) {
  geom::Vec pi(e.frame.size(), 0.0);
  for (const geom::Vec& l : e.extremes) {
    for (std::size_t i = 0; i < pi.size(); ++i) pi[i] = std::max(pi[i], l[i]);
  }
  return PossibilityDist{e.frame, std::move(pi)};
}

double possibility_measure(const PossibilityDist& pi, Event event) {
  double mx = 0.0;
  for (std::size_t i = 0; i < pi.values.size(); ++i) {
    if (event >> i & 1) mx = std::max(mx, pi.values[i]);
  }
  return mx;
}

ConsistencyTable consistency_table(const PossibilityDist& pi) {
  if (pi.frame.size() > 16) {
    fail(errc::frame_too_large, "consistency_table: frame above 16 outcomes");
  }
  const Event full = pi.frame.full_event();
  const double pi_u = possibility_measure(pi, full);
  if (pi_u <= 0.0) fail(errc::total_conflict, "consistency_table: possibility of the frame is 0");

  const std::size_t n_events = std::size_t{1} << pi.frame.size();
  ConsistencyTable t{pi.frame, std::vector<double>(n_events), std::vector<double>(n_events)};
  for (Event e = 0; e < n_events; ++e) {
    t.upper[e] = possibility_measure(pi, e) / pi_u;
  }
  for (Event e = 0; e < n_events; ++e) {
    t.lower[e] = 1.0 - t.upper[full & ~e];
  }
  return t;
}

EvidenceSet evid_conjunction(const EvidenceSet& a, const EvidenceSet& b) {
  check_same_frame(a, b, "evid_conjunction");
  const EvidenceSet ca = canonicalize(a);
  const EvidenceSet cb = canonicalize(b);
  geom::Polytope isect = geom::intersect(ca.polytope(), cb.polytope());
  // Canonical forms both contain the null likelihood, so the meet is never
  // empty; it is at least {null}.
  if (isect.vertices.empty()) {
    fail(errc::numeric_failure, "evid_conjunction: intersection of canonical forms came up empty");
  }
  return EvidenceSet{a.frame, std::move(isect.vertices), true};
}

EvidenceSet evid_disjunction(const EvidenceSet& a, const EvidenceSet& b) {
  check_same_frame(a, b, "evid_disjunction");
  std::vector<geom::Vec> pts = a.extremes;
  pts.insert(pts.end(), b.extremes.begin(), b.extremes.end());
  return canonical_hull(a.frame, std::move(pts));
}

EvidenceSet observe_and_frechet(const EvidenceSet& a, const EvidenceSet& b) {
  check_same_frame(a, b, "observe_and_frechet");
  const EvidenceSet ca = canonicalize(a);
  const EvidenceSet cb = canonicalize(b);
  const std::size_t m = a.frame.size();
  std::vector<geom::Vec> pts;
  for (const geom::Vec& l1 : ca.extremes) {
    for (const geom::Vec& l2 : cb.extremes) {
      geom::Vec lo(m), hi(m);
      for (std::size_t i = 0; i < m; ++i) {
        hi[i] = std::min(l1[i], l2[i]);
        // The sum bound never exceeds the min bound in exact arithmetic; when
        // rounding brings the two within tolerance of each other, collapse the
        // coordinate onto the exact min so the corner keeps that value.
        const double sum_lo = std::max(0.0, l1[i] + l2[i] - 1.0);
        lo[i] = (hi[i] - sum_lo <= kValueTol) ? hi[i] : sum_lo;
      }
      for (geom::Vec& c : box_corners(lo, hi)) pts.push_back(std::move(c));
    }
  }
  return canonical_hull(a.frame, std::move(pts));
}

EvidenceSet observe_and_independent(const EvidenceSet& a, const EvidenceSet& b) {
  check_same_frame(a, b, "observe_and_independent");
  const EvidenceSet ca = canonicalize(a);
  const EvidenceSet cb = canonicalize(b);
  const std::size_t m = a.frame.size();
  std::vector<geom::Vec> pts;
  pts.reserve(ca.extremes.size() * cb.extremes.size());
  for (const geom::Vec& l1 : ca.extremes) {
    for (const geom::Vec& l2 : cb.extremes) {
      geom::Vec prod(m);
      for (std::size_t i = 0; i < m; ++i) prod[i] = l1[i] * l2[i];
      pts.push_back(std::move(prod));
    }
  }
  return canonical_hull(a.frame, std::move(pts));
}

}  // namespace credalkit
