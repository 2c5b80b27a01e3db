#include "doctest.h"

#include <cmath>
#include <functional>
#include <vector>

#include "credalkit/errors.hpp"
#include "credalkit/fusion.hpp"
#include "credalkit/oracle.hpp"
#include "test_support.hpp"

using namespace credalkit;
using geom::Vec;
using testsupport::Rng;

TEST_CASE("sampled priors are members of their credal set") {
  Frame f({"a", "b"});
  CredalSet single = make_credal_set(f, {{0.3, 0.7}});
  CHECK(testsupport::max_abs_diff(sample_prior(single, 9).values, {0.3, 0.7}) <= 1e-12);

  CredalSet seg = make_credal_set(f, {{1, 0}, {0, 1}});
  ProbVector p1 = sample_prior(seg, 1);
  ProbVector p2 = sample_prior(seg, 2);
  CHECK(geom::contains(seg.polytope(), p1.values));
  CHECK(geom::contains(seg.polytope(), p2.values));
  CHECK(testsupport::max_abs_diff(p1.values, p2.values) > 1e-6);

  // Deterministic per seed.
  CHECK(sample_prior(seg, 1).values == sample_prior(seg, 1).values);

  CredalSet fourway = testsupport::three_prior();
  CHECK(geom::contains(fourway.polytope(), sample_prior(fourway, 42).values));
}

TEST_CASE("sampled likelihoods are members of their evidence set") {
  Rng rng(999);
  for (int iter = 0; iter < 30; ++iter) {
    Frame f = testsupport::make_frame(2 + rng.index(3));
    EvidenceSet e = rng.evidence(f);
    LikelihoodVector l = sample_likelihood(e, iter);
    CHECK(geom::contains(e.polytope(), l.values, 1e-7));
    CredalSet c = rng.credal(f);
    CHECK(geom::contains(c.polytope(), sample_prior(c, iter).values, 1e-7));
  }
}

TEST_CASE("a null observation never occurs") {
  Frame f({"a", "b"});
  CredalSet c = make_credal_set(f, {{0.5, 0.5}});
  EvidenceSet e = make_evidence_set(f, {{0, 0}});
  SimulationReport rep = check_possibility_bound(c, e, f.event_of({"a"}), 2000, 3);
  CHECK(rep.empirical_consistency == 0.0);
  CHECK(rep.bound == 0.0);
  CHECK_FALSE(rep.violated);
}

TEST_CASE("a degenerate prior attains the possibility bound") {
  Frame f = testsupport::three_frame();
  CredalSet c = make_credal_set(f, {{1, 0, 0}});
  EvidenceSet e = make_evidence_set(f, {testsupport::obs1()});
  SimulationReport rep = check_possibility_bound(c, e, f.event_of({"1"}), 10000, 5);
  CHECK(rep.bound == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.empirical_consistency == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(rep.violated);
}

TEST_CASE("the worked prior respects the possibility bound over {2,3}") {
  Frame f = testsupport::three_frame();
  CredalSet c = testsupport::three_prior();
  EvidenceSet e = make_evidence_set(f, {testsupport::obs1()});
  SimulationReport rep = check_possibility_bound(c, e, f.event_of({"2", "3"}), 100000, 11);
  CHECK(rep.bound == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rep.empirical_consistency <= 0.5);
  CHECK(rep.empirical_consistency > 0.02);  // the event does happen
  CHECK_FALSE(rep.violated);

  SimulationReport again = check_possibility_bound(c, e, f.event_of({"2", "3"}), 100000, 11);
  CHECK(again.empirical_consistency == rep.empirical_consistency);
}

TEST_CASE("simulation inputs are validated") {
  Frame f({"a", "b"});
  CredalSet c = make_credal_set(f, {{0.5, 0.5}});
  EvidenceSet e = make_evidence_set(f, {{1, 0}});
  CHECK_THROWS_AS(check_possibility_bound(c, e, 1, 0, 1), Error);
  CredalSet empty = conjunction(make_credal_set(f, {{1, 0}}), make_credal_set(f, {{0, 1}}));
  try {
    check_possibility_bound(empty, e, 1, 10, 1);
    FAIL("expected EmptySet");
  } catch (const Error& err) {
    CHECK(err.code() == errc::empty_set);
  }
}

TEST_CASE("riemann integration approximates constants") {
  auto unit = [](std::uint64_t d) { return d ? 1.0 : 0.0; };
  CHECK(std::fabs(riemann_choquet({0.62, 0.62}, unit, 1e-4) - 0.62) <= 1e-4);
  CHECK(riemann_choquet({0, 0, 0}, unit, 1e-4) == 0.0);
}

TEST_CASE("riemann integration agrees with the layer formula on the worked value") {
  Frame f = testsupport::three_frame();
  CredalSet c = testsupport::three_prior();
  EvidenceSet e = make_evidence_set(f, {testsupport::obs2()});
  EnsembleMeasurePair g = measures_of(ensemble_of(combine(c, e)));
  const std::vector<double> f1 = {1.0, 1.0 / 7, 5.0 / 43, 2.0 / 7};
  auto upper = [&](std::uint64_t d) { return g.upper(d); };
  const double riemann = riemann_choquet(f1, upper, 1e-4);
  const double exact = choquet_integral(f1, upper);
  CHECK(std::fabs(riemann - exact) <= 1e-3);
  CHECK(std::fabs(riemann - 0.397) <= 1e-3);
}

TEST_CASE("riemann and layer formulas agree on random instances with ties") {
  Rng rng(1212);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t n = 1 + rng.index(8);
    std::vector<double> w(n), f(n);
    double wmax = 0;
    for (double& x : w) {
      x = 0.05 + 0.95 * rng.unit();
      wmax = std::max(wmax, x);
    }
    for (std::size_t i = 0; i < n; ++i) {
      f[i] = rng.unit();
      if (i && rng.unit() < 0.3) f[i] = f[i - 1];  // force ties
    }
    auto g = [&](std::uint64_t d) {
      double best = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (d >> i & 1) best = std::max(best, w[i]);
      }
      return best / wmax;
    };
    const double step = 1e-4;
    CHECK(std::fabs(choquet_integral(f, g) - riemann_choquet(f, g, step)) <= step * g((1ull << n) - 1) + 1e-12);
  }
}
