#pragma once

#include <set>
#include <string>
#include <vector>

#include "credalkit/frame.hpp"
#include "credalkit/geometry.hpp"

namespace credalkit {

// A single probability distribution over a frame (nonnegative, sums to 1
// within kSumTol).
struct ProbVector {
  Frame frame;
  geom::Vec values;
};

constexpr double kSumTol = 1e-9;

ProbVector make_prob_vector(Frame frame, geom::Vec values);

// Convex set of probability distributions in minimal V-representation,
// tagged with the contexts (information sources) it reflects. May be empty —
// but only as the result of a conjunction.
struct CredalSet {
  Frame frame;
  std::vector<geom::Vec> extremes;
  std::set<std::string> contexts;

  bool empty() const { return extremes.empty(); }
  geom::Polytope polytope() const { return geom::Polytope{frame.size(), extremes}; }
};

// Builds a credal set from candidate distributions; reduces to the minimal
// extreme list. Errors: EmptyInput, DimensionMismatch, InvalidInput.
CredalSet make_credal_set(Frame frame, std::vector<geom::Vec> distributions,
                          std::set<std::string> contexts = {});

// Lower/upper probability envelope of a credal set: l(A) = min P(A),
// u(A) = max P(A) over the extremes, for all 2^m events.
using Envelope = EventTable;

// Intersection of two credal sets over the same frame. When the context sets
// differ the caller must pass assume_no_interaction = true; the result carries
// the union of contexts. The result may be empty.
CredalSet conjunction(const CredalSet& a, const CredalSet& b,
                      bool assume_no_interaction = false);

// Convex hull of the union; requires identical contexts.
CredalSet disjunction(const CredalSet& a, const CredalSet& b);

// Errors: EmptySet (empty input), FrameTooLarge (more than 16 outcomes).
Envelope envelope_of(const CredalSet& c);

// The largest credal set consistent with the envelope:
//   {P : l(A) <= P(A) <= u(A) for all A}.
// Errors: EmptySet when the constraints are infeasible, InvalidInput when the
// table is malformed (l > u, or bad values at the empty/full events).
CredalSet maximal_family(const Envelope& env);

// Credal set over the product frame spanned by products of extreme pairs
// (independent choice from each set). Errors: EmptySet on empty inputs.
CredalSet independent_product(const CredalSet& a, const CredalSet& b);

}  // namespace credalkit
