#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "credalkit/credal.hpp"
#include "credalkit/evidential.hpp"
#include "credalkit/frame.hpp"

namespace credalkit {

// Canonical convex set of combined functions h = p * l (coordinatewise
// products of a prior and a likelihood): nonnegative, sum at most 1, null
// function joined.
struct CombinedSet {
  Frame frame;
  std::vector<geom::Vec> extremes;
};

// H = hull({p x l : p extreme of c, l extreme of e} ∪ {null}), minimized.
// Exact: products distribute over convex mixtures, so extreme pairs span the
// full image. Errors: EmptySet (empty credal set), DimensionMismatch.
CombinedSet combine(const CredalSet& c, const EvidenceSet& e);

// The non-null extremes of a combined set, normalized: each member carries
// the conditional distribution h/sum(h) and the weight sum(h) (its
// possibility). The normalizer is the largest weight.
struct ConditionalEnsemble {
  Frame frame;
  struct Member {
    geom::Vec conditional;
    double weight;
  };
  std::vector<Member> members;
  double normalizer = 0.0;

  // Flags numerically suspect inputs: every member is nearly null.
  bool tiny_normalizer() const { return normalizer < 1e-6; }
};

// Errors: TotalConflict when every extreme is null.
ConditionalEnsemble ensemble_of(const CombinedSet& h);

// Possibility-style measure pair over subsets of ensemble members (bitmask
// over member indices):
//   upper g*(D) = max_{k in D} weight_k / normalizer,   lower = 1 - g*(~D).
struct EnsembleMeasurePair {
  std::vector<double> weights;
  double normalizer = 0.0;
  std::uint64_t all = 0;

  double upper(std::uint64_t members) const;
  double lower(std::uint64_t members) const { return 1.0 - upper(all & ~members); }
};

EnsembleMeasurePair measures_of(const ConditionalEnsemble& ens);

// Discrete Choquet integral of f against the monotone set function g
// (bitmask over indices of f, g(0) = 0): sort f descending and accumulate
// layer by layer. Errors: InvalidInput (negative f, more than 63 entries).
double choquet_integral(const std::vector<double>& f,
                        const std::function<double(std::uint64_t)>& g);

// Per-event conditional bounds via Choquet integration of the member
// conditionals against the ensemble measures.
IntervalTable conditional_intervals(const ConditionalEnsemble& ens,
                                    const std::vector<Event>& events);

// Plain min/max over the member conditionals (the wider, weight-blind rule).
IntervalTable upper_lower_conditioning(const ConditionalEnsemble& ens,
                                       const std::vector<Event>& events);

}  // namespace credalkit
