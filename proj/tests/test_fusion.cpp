#include "doctest.h"

#include <cmath>
#include <functional>
#include <vector>

#include "credalkit/errors.hpp"
#include "credalkit/fusion.hpp"
#include "test_support.hpp"

using namespace credalkit;
using geom::Vec;
using testsupport::Rng;
using testsupport::same_vertices;

namespace {

errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return errc::invalid_input;
}

ConditionalEnsemble worked_ensemble() {
  Frame f = testsupport::three_frame();
  CredalSet c = testsupport::three_prior();
  EvidenceSet e = make_evidence_set(f, {testsupport::obs2()});
  return ensemble_of(combine(c, e));
}

}  // namespace

TEST_CASE("combine multiplies extreme pairs and joins the null function") {
  Frame f = testsupport::three_frame();
  CombinedSet h = combine(testsupport::three_prior(), make_evidence_set(f, {testsupport::obs2()}));
  CHECK(same_vertices(h.extremes,
                      {{0, 0, 0},
                       {0.1, 0, 0},
                       {0.05, 0.3, 0},
                       {0.05, 0.18, 0.2},
                       {0.08, 0, 0.2}},
                      1e-9));
}

TEST_CASE("combine reproduces the two-urn table") {
  Frame f({"R1R2", "R1B2", "B1R2", "B1B2"});
  CredalSet c = make_credal_set(f, {{0.9801, 0.0099, 0.0099, 0.0001},
                                    {0.0001, 0.0099, 0.0099, 0.9801}});
  CombinedSet h = combine(c, make_evidence_set(f, {{1, 1, 0, 0}}));
  CHECK(same_vertices(h.extremes,
                      {{0, 0, 0, 0}, {0.9801, 0.0099, 0, 0}, {0.0001, 0.0099, 0, 0}},
                      1e-12));
}

TEST_CASE("combine with vacuous evidence keeps the prior points") {
  Frame f({"a", "b"});
  CredalSet c = make_credal_set(f, {{0.3, 0.7}});
  CombinedSet h = combine(c, make_evidence_set(f, {{1, 1}}));
  CHECK(same_vertices(h.extremes, {{0, 0}, {0.3, 0.7}}, 1e-12));
}

TEST_CASE("combine validates frames and emptiness") {
  Frame f({"a", "b"}), g({"a", "b", "c"});
  CredalSet c = make_credal_set(f, {{0.3, 0.7}});
  CHECK(code_of([&] { combine(c, make_evidence_set(g, {{1, 1, 1}})); }) ==
        errc::dimension_mismatch);
  CredalSet empty = conjunction(make_credal_set(f, {{1, 0}}), make_credal_set(f, {{0, 1}}));
  CHECK(code_of([&] { combine(empty, make_evidence_set(f, {{1, 1}})); }) == errc::empty_set);
}

TEST_CASE("the worked ensemble carries the expected weights and conditionals") {
  ConditionalEnsemble ens = worked_ensemble();
  REQUIRE(ens.members.size() == 4);
  CHECK(ens.normalizer == doctest::Approx(0.43).epsilon(1e-12));
  CHECK_FALSE(ens.tiny_normalizer());

  const std::vector<double> weights = {0.1, 0.35, 0.43, 0.28};
  const std::vector<Vec> conds = {{1, 0, 0},
                                  {1.0 / 7, 6.0 / 7, 0},
                                  {5.0 / 43, 18.0 / 43, 20.0 / 43},
                                  {2.0 / 7, 0, 5.0 / 7}};
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(ens.members[k].weight == doctest::Approx(weights[k]).epsilon(1e-9));
    CHECK(testsupport::max_abs_diff(ens.members[k].conditional, conds[k]) <= 1e-9);
  }
}

TEST_CASE("the urn ensemble normalizes to the per-urn margins") {
  Frame f({"R1R2", "R1B2", "B1R2", "B1B2"});
  CredalSet c = make_credal_set(f, {{0.9801, 0.0099, 0.0099, 0.0001}});
  ConditionalEnsemble ens = ensemble_of(combine(c, make_evidence_set(f, {{1, 1, 0, 0}})));
  REQUIRE(ens.members.size() == 1);
  CHECK(ens.members[0].weight == doctest::Approx(0.99).epsilon(1e-12));
  CHECK(testsupport::max_abs_diff(ens.members[0].conditional, {0.99, 0.01, 0, 0}) <= 1e-12);
}

TEST_CASE("an all-null combination is a hard conflict") {
  Frame f({"a", "b"});
  CredalSet c = make_credal_set(f, {{1, 0}});
  CombinedSet h = combine(c, make_evidence_set(f, {{0, 0}}));
  CHECK(code_of([&] { ensemble_of(h); }) == errc::total_conflict);
}

TEST_CASE("a barely-possible observation trips the tiny-normalizer flag") {
  Frame f({"a", "b"});
  CredalSet c = make_credal_set(f, {{1, 0}});
  ConditionalEnsemble ens = ensemble_of(combine(c, make_evidence_set(f, {{1e-8, 0}})));
  CHECK(ens.tiny_normalizer());
}

TEST_CASE("the ensemble measures are maxitive, dual and monotone") {
  EnsembleMeasurePair g = measures_of(worked_ensemble());
  CHECK(g.upper(g.all) == 1.0);
  CHECK(g.upper(0) == 0.0);
  CHECK(g.upper(0b0001) == doctest::Approx(0.1 / 0.43).epsilon(1e-12));
  CHECK(g.upper(0b1001) == doctest::Approx(0.28 / 0.43).epsilon(1e-12));
  for (std::uint64_t d = 0; d <= g.all; ++d) {
    CHECK(g.lower(d) == doctest::Approx(1.0 - g.upper(g.all & ~d)).epsilon(1e-15));
    for (int b = 0; b < 4; ++b) {
      CHECK(g.upper(d) <= g.upper(d | (1ull << b)) + 1e-15);
    }
  }
}

TEST_CASE("choquet integral: constants, expectations, and the worked value") {
  // Constant function under a normalized measure.
  auto unit = [](std::uint64_t d) { return d ? 1.0 : 0.0; };
  CHECK(choquet_integral({0.7, 0.7, 0.7}, unit) == doctest::Approx(0.7).epsilon(1e-15));

  // Additive g turns the integral into an ordinary expectation.
  const std::vector<double> w = {0.5, 0.3, 0.2};
  auto additive = [&](std::uint64_t d) {
    double s = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (d >> i & 1) s += w[i];
    }
    return s;
  };
  const std::vector<double> f = {0.9, 0.1, 0.4};
  CHECK(choquet_integral(f, additive) ==
        doctest::Approx(0.9 * 0.5 + 0.1 * 0.3 + 0.4 * 0.2).epsilon(1e-15));

  // The worked {1}-upper value, exactly.
  EnsembleMeasurePair g = measures_of(worked_ensemble());
  const std::vector<double> f1 = {1.0, 1.0 / 7, 5.0 / 43, 2.0 / 7};
  const double upper = choquet_integral(f1, [&](std::uint64_t d) { return g.upper(d); });
  CHECK(upper == doctest::Approx(5139.0 / 12943.0).epsilon(1e-12));

  CHECK(code_of([&] { choquet_integral({-0.1, 0.5}, unit); }) == errc::invalid_input);
}

TEST_CASE("choquet integral ignores tie order") {
  // Swap the two tied members (0 and 1) and relabel g accordingly.
  auto g = [](std::uint64_t d) {
    double best = 0;
    const double w[3] = {0.9, 0.4, 0.6};
    for (int i = 0; i < 3; ++i) {
      if (d >> i & 1) best = std::max(best, w[i]);
    }
    return best / 0.9;
  };
  auto g_swapped = [&](std::uint64_t d) {
    const std::uint64_t swapped = (d & ~0b11ull) | ((d & 1) << 1) | ((d >> 1) & 1);
    return g(swapped);
  };
  const std::vector<double> f = {0.5, 0.5, 0.2};
  CHECK(choquet_integral(f, g) == doctest::Approx(choquet_integral(f, g_swapped)).epsilon(1e-15));
}

TEST_CASE("conditional intervals reproduce the worked table") {
  ConditionalEnsemble ens = worked_ensemble();
  const Frame f = ens.frame;
  auto at = [&](std::initializer_list<const char*> names) {
    return f.event_of(std::vector<std::string>(names.begin(), names.end()));
  };
  const std::vector<Event> events = {at({"1"}),      at({"2"}),      at({"3"}),
                                     at({"1", "2"}), at({"1", "3"}), at({"2", "3"})};
  IntervalTable t = conditional_intervals(ens, events);
  struct Expect {
    double lo, hi;
  };
  const std::vector<Expect> expect = {{0.12, 0.40}, {0.15, 0.78}, {0.09, 0.63},
                                      {0.37, 0.91}, {0.22, 0.85}, {0.60, 0.88}};
  REQUIRE(t.rows.size() == events.size());
  for (std::size_t i = 0; i < events.size(); ++i) {
    CHECK(t.rows[i].event == events[i]);
    CHECK(std::fabs(t.rows[i].lower - expect[i].lo) <= 0.005);
    CHECK(std::fabs(t.rows[i].upper - expect[i].hi) <= 0.005);
  }
  // The {1} upper bound, exactly.
  CHECK(t.rows[0].upper == doctest::Approx(5139.0 / 12943.0).epsilon(1e-12));
}

TEST_CASE("conditional intervals reproduce the urn posterior") {
  Frame f({"R1R2", "R1B2", "B1R2", "B1B2"});
  CredalSet c = make_credal_set(f, {{0.9801, 0.0099, 0.0099, 0.0001},
                                    {0.0001, 0.0099, 0.0099, 0.9801}});
  ConditionalEnsemble ens = ensemble_of(combine(c, make_evidence_set(f, {{1, 1, 0, 0}})));
  const Event r2 = f.event_of({"R1R2", "B1R2"});
  const Event b2 = f.event_of({"R1B2", "B1B2"});
  IntervalTable t = conditional_intervals(ens, {r2, b2});
  CHECK(std::fabs(t.rows[0].lower - 0.9801) <= 5e-5);
  CHECK(std::fabs(t.rows[0].upper - 0.9900) <= 5e-5);
  CHECK(std::fabs(t.rows[1].lower - 0.0100) <= 5e-5);
  CHECK(std::fabs(t.rows[1].upper - 0.0199) <= 5e-5);

  IntervalTable wide = upper_lower_conditioning(ens, {r2});
  CHECK(wide.rows[0].lower == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(wide.rows[0].upper == doctest::Approx(0.99).epsilon(1e-12));
}

TEST_CASE("a single-member ensemble degenerates to Bayes") {
  Frame f = testsupport::three_frame();
  CredalSet c = make_credal_set(f, {{0.5, 0.3, 0.2}});
  EvidenceSet e = make_evidence_set(f, {testsupport::obs1()});
  ConditionalEnsemble ens = ensemble_of(combine(c, e));
  REQUIRE(ens.members.size() == 1);
  const double denom = 0.5 * 1 + 0.3 * 0.5 + 0.2 * 0.2;
  for (Event ev : all_events_by_size(3)) {
    IntervalTable t = conditional_intervals(ens, {ev});
    IntervalTable wide = upper_lower_conditioning(ens, {ev});
    const double bayes = event_sum({0.5 * 1 / denom, 0.3 * 0.5 / denom, 0.2 * 0.2 / denom}, ev);
    CHECK(std::fabs(t.rows[0].lower - bayes) <= 1e-9);
    CHECK(std::fabs(t.rows[0].upper - bayes) <= 1e-9);
    CHECK(std::fabs(wide.rows[0].lower - bayes) <= 1e-9);
    CHECK(std::fabs(wide.rows[0].upper - bayes) <= 1e-9);
  }
}

TEST_CASE("upper-lower conditioning brackets the worked {1} interval") {
  ConditionalEnsemble ens = worked_ensemble();
  IntervalTable t = upper_lower_conditioning(ens, {ens.frame.event_of({"1"})});
  CHECK(t.rows[0].lower == doctest::Approx(5.0 / 43).epsilon(1e-12));
  CHECK(t.rows[0].upper == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("vacuous evidence collapses fusion onto the prior envelope") {
  Frame f = testsupport::three_frame();
  CredalSet c = testsupport::three_prior();
  ConditionalEnsemble ens = ensemble_of(combine(c, make_evidence_set(f, {{1, 1, 1}})));
  Envelope env = envelope_of(c);
  for (Event e : all_events_by_size(3)) {
    IntervalTable t = conditional_intervals(ens, {e});
    CHECK(std::fabs(t.rows[0].lower - env.lo(e)) <= 1e-9);
    CHECK(std::fabs(t.rows[0].upper - env.up(e)) <= 1e-9);
  }
}

TEST_CASE("fusion interval properties hold on random instances") {
  Rng rng(808);
  for (int iter = 0; iter < 50; ++iter) {
    Frame f = testsupport::make_frame(2 + rng.index(4));
    CredalSet c = rng.credal(f);
    EvidenceSet e = rng.evidence(f);
    CombinedSet h = combine(c, e);

    // Null invariance end-to-end: literally identical tables.
    std::vector<Vec> with_null = e.extremes;
    with_null.push_back(Vec(f.size(), 0.0));
    CombinedSet h2 = combine(c, make_evidence_set(f, with_null));

    ConditionalEnsemble ens = ensemble_of(h);
    ConditionalEnsemble ens2 = ensemble_of(h2);
    const std::vector<Event> events = all_events_by_size(f.size());
    IntervalTable t = conditional_intervals(ens, events);
    IntervalTable t2 = conditional_intervals(ens2, events);
    IntervalTable wide = upper_lower_conditioning(ens, events);
    REQUIRE(t.rows.size() == t2.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      CHECK(std::fabs(t.rows[i].lower - t2.rows[i].lower) <= 1e-12);
      CHECK(std::fabs(t.rows[i].upper - t2.rows[i].upper) <= 1e-12);

      // Nesting: min/max conditioning brackets the Choquet interval.
      CHECK(wide.rows[i].lower <= t.rows[i].lower + 1e-12);
      CHECK(t.rows[i].lower <= t.rows[i].upper + 1e-12);
      CHECK(t.rows[i].upper <= wide.rows[i].upper + 1e-12);
    }
    // Duality across complements.
    const Event full = f.full_event();
    for (Event ev = 0; ev <= full; ++ev) {
      IntervalTable a = conditional_intervals(ens, {ev});
      IntervalTable b = conditional_intervals(ens, {static_cast<Event>(full & ~ev)});
      CHECK(std::fabs(a.rows[0].lower - (1.0 - b.rows[0].upper)) <= 1e-12);
    }
  }
}
