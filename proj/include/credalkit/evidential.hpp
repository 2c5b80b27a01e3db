#pragma once

#include <vector>

#include "credalkit/frame.hpp"
#include "credalkit/geometry.hpp"

namespace credalkit {

// One likelihood function: per-outcome observation probabilities in [0,1].
// No normalization constraint.
struct LikelihoodVector {
  Frame frame;
  geom::Vec values;
};

LikelihoodVector make_likelihood(Frame frame, geom::Vec values);

// Convex set of likelihood functions in minimal V-representation. When
// `canonical` is set, the extremes are the minimal representation of the
// canonical form hull(E ∪ {null}), where the null likelihood is identically
// zero. Two evidence sets carry the same information iff their canonical
// forms coincide.
struct EvidenceSet {
  Frame frame;
  std::vector<geom::Vec> extremes;
  bool canonical = false;

  geom::Polytope polytope() const { return geom::Polytope{frame.size(), extremes}; }
};

// Builds an evidence set from explicit likelihood vectors (minimal hull, not
// canonicalized). Errors: EmptyInput, DimensionMismatch, InvalidInput.
EvidenceSet make_evidence_set(Frame frame, std::vector<geom::Vec> likelihoods);

// Joins the null likelihood and re-minimizes; scaled-down copies a*l (a <= 1)
// are absorbed. Idempotent.
EvidenceSet canonicalize(const EvidenceSet& e);

// Information equivalence: canonical hulls mutually contain each other's
// vertices (within the geometric tolerance).
bool equivalent(const EvidenceSet& a, const EvidenceSet& b);

// Evidence "the likelihood lies in the axis-aligned box [lower, upper]",
// returned canonical. Errors: InvalidBounds when lower > upper somewhere,
// DimensionMismatch, FrameTooLarge.
EvidenceSet interval_evidence(const LikelihoodVector& lower, const LikelihoodVector& upper);

// Upper-envelope possibility distribution pi(a) = max_{l in E} l(a).
struct PossibilityDist {
  Frame frame;
  geom::Vec values;
};

PossibilityDist possibility_of(const EvidenceSet& e);

// Pi(A) = max_{a in A} pi(a); 0 for the empty event.
double possibility_measure(const PossibilityDist& pi, Event event);

// Normalized consistency bounds for every event:
//   upper g*(A) = Pi(A)/Pi(U),  lower g_*(A) = 1 - g*(complement A).
// Errors: TotalConflict when Pi(U) = 0, FrameTooLarge.
using ConsistencyTable = EventTable;
ConsistencyTable consistency_table(const PossibilityDist& pi);

// Meet and join of the information orders: intersection / convex union of the
// canonical forms. Results are canonical.
EvidenceSet evid_conjunction(const EvidenceSet& a, const EvidenceSet& b);
EvidenceSet evid_disjunction(const EvidenceSet& a, const EvidenceSet& b);

// Fusion of two observations into evidence about their joint occurrence.
// Fréchet: per extreme pair, the box max{0, l1+l2-1} <= l <= min{l1, l2};
// the fused set is the canonical hull of all box corners. Conditional
// independence: canonical hull of coordinatewise products of extreme pairs.
EvidenceSet observe_and_frechet(const EvidenceSet& a, const EvidenceSet& b);
EvidenceSet observe_and_independent(const EvidenceSet& a, const EvidenceSet& b);

}  // namespace credalkit
