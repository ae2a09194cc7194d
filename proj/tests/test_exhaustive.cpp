#include <doctest.h>

#include <cmath>

#include "oriperc/exhaustive.hpp"

using namespace oriperc;

TEST_CASE("outward-law escape on the unit box matches frozen enumeration values") {
  const Region box1 = Region::box(1);
  struct Row {
    double p, want;
  };
  // independent fraction arithmetic: 7599/10000, 15/16, 9919/10000
  for (const Row& r : {Row{0.3, 0.7599}, Row{0.5, 0.9375}, Row{0.7, 0.9919}}) {
    const EventProbability e =
        exhaustive_probability(ModelSpec::h(r.p), box1, make_shell_reach_event());
    CHECK(e.edges == 12);
    CHECK(e.configurations == 4096);
    CHECK(e.probability == doctest::Approx(r.want).epsilon(1e-10));
  }
}

TEST_CASE("right/up-law escape on small quadrants matches frozen values") {
  const EventProbability q1 =
      exhaustive_probability(ModelSpec::ne(0.5), Region::quadrant(1), make_shell_reach_event());
  CHECK(q1.probability == doctest::Approx(0.75).epsilon(1e-12));
  const EventProbability q2 =
      exhaustive_probability(ModelSpec::ne(0.5), Region::quadrant(2), make_shell_reach_event());
  CHECK(q2.probability == doctest::Approx(0.57421875).epsilon(1e-12));
}

TEST_CASE("degenerate windows and parameters") {
  // a single vertex lies on its own shell: escape is certain
  const EventProbability v =
      exhaustive_probability(ModelSpec::h(0.37), Region::box(0), make_shell_reach_event());
  CHECK(v.edges == 0);
  CHECK(v.configurations == 1);
  CHECK(v.probability == 1.0);
  // fully outward law escapes, fully inward cannot leave the unit box
  CHECK(exhaustive_probability(ModelSpec::h(1.0), Region::box(1), make_shell_reach_event())
            .probability == 1.0);
  CHECK(exhaustive_probability(ModelSpec::h(0.0), Region::box(1), make_shell_reach_event())
            .probability == 0.0);
}

TEST_CASE("probabilities are exact under the p to 1-p edge-reversal symmetry") {
  // reversing every arc maps the translation-symmetric law at p to 1-p;
  // the escape event of the reversed configuration must inherit that
  for (double p : {0.3, 0.41}) {
    const double reversed_at_p =
        exhaustive_probability(ModelSpec::grimmett(p), Region::box(1),
                               make_reversed_shell_reach_event())
            .probability;
    const double plain_at_1mp =
        exhaustive_probability(ModelSpec::grimmett(1.0 - p), Region::box(1),
                               make_shell_reach_event())
            .probability;
    CHECK(std::fabs(reversed_at_p - plain_at_1mp) < 1e-12);
  }
}

TEST_CASE("enumeration is invariant in the worker count") {
  const Region quad2 = Region::quadrant(2);
  const EventProbability one =
      exhaustive_probability(ModelSpec::ne(0.43), quad2, make_shell_reach_event(), 1);
  const EventProbability three =
      exhaustive_probability(ModelSpec::ne(0.43), quad2, make_shell_reach_event(), 3);
  CHECK(one.probability == three.probability);  // bitwise, not approximate
}

TEST_CASE("weights sum to one over any full enumeration") {
  // the always-true event integrates the measure
  const EventProbability e = exhaustive_probability(
      ModelSpec::h(0.371), Region::box(1), [](const Config&) { return true; });
  CHECK(e.probability == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("the 24-edge cap rejects larger windows") {
  CHECK_THROWS_AS(
      exhaustive_probability(ModelSpec::h(0.5), Region::box(3), make_shell_reach_event()),
      std::invalid_argument);
  // 24 edges exactly is admitted
  const EventProbability e =
      exhaustive_probability(ModelSpec::ne(1.0), Region::quadrant(3), make_shell_reach_event());
  CHECK(e.edges == 24);
  CHECK(e.probability == 1.0);
}
