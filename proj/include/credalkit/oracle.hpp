#pragma once

#include <cstdint>
#include <functional>

#include "credalkit/credal.hpp"
#include "credalkit/evidential.hpp"
#include "credalkit/frame.hpp"

namespace credalkit {

// Result of a Monte Carlo check of the possibility bound
//   Pi(A) >= P(observation and A)
// for priors sampled from the credal set and likelihoods from the evidence
// set. `violated` applies the three-sigma binomial criterion.
struct SimulationReport {
  long long trials = 0;
  Event event = 0;
  double empirical_consistency = 0.0;
  double bound = 0.0;
  bool violated = false;
};

// Deterministic draw from a credal set: mixture weights uniform on the
// simplex over the extremes. Same seed, same result.
ProbVector sample_prior(const CredalSet& c, std::uint64_t seed);

// Same construction over an evidence set's stored extremes.
LikelihoodVector sample_likelihood(const EvidenceSet& e, std::uint64_t seed);

// Per trial: draw a prior p, a likelihood l, an outcome x ~ p, and the
// observation with probability l(x); counts trials where the observation
// fired and x landed in `event`. Errors: InvalidInput (trials < 1), EmptySet.
SimulationReport check_possibility_bound(const CredalSet& c, const EvidenceSet& e,
                                         Event event, long long trials,
                                         std::uint64_t seed);

// Riemann-sum Choquet integral: sum over a midpoint alpha-grid of
// g({k : f_k >= alpha}) * step, alpha in (0, max f]. Agrees with the layer
// formula within step * g(full). Errors: InvalidInput (step <= 0, negative f).
double riemann_choquet(const std::vector<double>& f,
                       const std::function<double(std::uint64_t)>& g, double step);

}  // namespace credalkit
