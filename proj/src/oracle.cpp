#include "credalkit/oracle.hpp"

#include <cmath>
#include <random>

namespace credalkit {

namespace {

// Uniform doubles in (0, 1) from raw engine output; hand-rolled so results
// are identical across standard libraries.
struct UnitRng {
  std::mt19937_64 gen;
  explicit UnitRng(std::uint64_t seed) : gen(seed) {}

  double next() {
    while (true) {
      const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
      if (u > 0.0) return u;
    }
  }
};

// Uniform draw from the simplex (flat Dirichlet) via normalized exponentials.
void simplex_weights(UnitRng& rng, std::vector<double>& w) {
  double sum = 0.0;
  for (double& x : w) {
    x = -std::log(rng.next());
    sum += x;
  }
  for (double& x : w) x /= sum;
}

void mix_extremes(const std::vector<geom::Vec>& extremes, const std::vector<double>& w,
                  geom::Vec& out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t k = 0; k < extremes.size(); ++k) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += w[k] * extremes[k][i];
  }
}

std::size_t sample_index(const geom::Vec& p, double u) {
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    if (u < acc) return i;
  }
  return p.size() - 1;
}

}  // namespace

ProbVector sample_prior(const CredalSet& c, std::uint64_t seed) {
  if (c.empty()) fail(errc::empty_set, "sample_prior: empty credal set");
  UnitRng rng(seed);
  std::vector<double> w(c.extremes.size());
  simplex_weights(rng, w);
  geom::Vec p(c.frame.size());
  mix_extremes(c.extremes, w, p);
  return make_prob_vector(c.frame, std::move(p));
}

LikelihoodVector sample_likelihood(const EvidenceSet& e, std::uint64_t seed) {
  UnitRng rng(seed);
  std::vector<double> w(e.extremes.size());
  simplex_weights(rng, w);
  geom::Vec l(e.frame.size());
  mix_extremes(e.extremes, w, l);
  return make_likelihood(e.frame, std::move(l));
}

SimulationReport check_possibility_bound(const CredalSet& c, const EvidenceSet& e,
                                         Event event, long long trials,
                                         std::uint64_t seed) {
  if (trials < 1) fail(errc::invalid_input, "check_possibility_bound: trials < 1");
  if (!(c.frame == e.frame)) {
    fail(errc::dimension_mismatch, "check_possibility_bound: frames differ");
  }
  if (c.empty()) fail(errc::empty_set, "check_possibility_bound: empty credal set");

  const PossibilityDist pi = possibility_of(e);
  const double bound = possibility_measure(pi, event);

  UnitRng rng(seed);
  std::vector<double> wp(c.extremes.size());
  std::vector<double> wl(e.extremes.size());
  geom::Vec p(c.frame.size()), l(c.frame.size());
  long long hits = 0;
  for (long long t = 0; t < trials; ++t) {
    simplex_weights(rng, wp);
    mix_extremes(c.extremes, wp, p);
    simplex_weights(rng, wl);
    mix_extremes(e.extremes, wl, l);
    const std::size_t x = sample_index(p, rng.next());
    const bool observed = rng.next() < l[x];
    if (observed && (event >> x & 1)) ++hits;
  }

  SimulationReport rep;
  rep.trials = trials;
  rep.event = event;
  rep.empirical_consistency = static_cast<double>(hits) / static_cast<double>(trials);
  rep.bound = bound;
  const double sigma = std::sqrt(rep.empirical_consistency *
                                 (1.0 - rep.empirical_consistency) /
                                 static_cast<double>(trials));
  rep.violated = rep.empirical_consistency > bound + 3.0 * sigma;
  return rep;
}

double riemann_choquet(const std::vector<double>& f,
                       const std::function<double(std::uint64_t)>& g, double step) {
  if (!(step > 0.0)) fail(errc::invalid_input, "riemann_choquet: step must be positive");
  if (f.size() > 63) fail(errc::invalid_input, "riemann_choquet: more than 63 entries");
  double fmax = 0.0;
  for (double v : f) {
    if (!(v >= -1e-12)) fail(errc::invalid_input, "riemann_choquet: negative integrand");
    fmax = std::max(fmax, v);
  }
  if (fmax <= 0.0) return 0.0;

  const auto levels = static_cast<long long>(std::ceil(fmax / step));
  double total = 0.0;
  for (long long j = 1; j <= levels; ++j) {
    const double alpha = (static_cast<double>(j) - 0.5) * step;
    std::uint64_t cut = 0;
    for (std::size_t k = 0; k < f.size(); ++k) {
      if (f[k] >= alpha) cut |= std::uint64_t{1} << k;
    }
    if (cut == 0) break;  // alpha rose above max f
    total += g(cut) * step;
  }
  return total;
}

}  // namespace credalkit
