#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "persuasion/vbp.hpp"

using namespace persuasion;

namespace {

SetDistribution dist(std::vector<std::vector<Belief>> sets, std::vector<double> w) {
  return make_set_distribution(std::move(sets), std::move(w));
}

}  // namespace

TEST_CASE("set distribution construction and validation") {
  auto mu = dist({{{1.0, 0.0}, {0.5, 0.5}, {0.75, 0.25}}, {{0.0, 1.0}}}, {0.4, 0.6});
  REQUIRE(mu.support[0].vertices.size() == 2);   // interior vertex pruned
  REQUIRE(mu.n_states() == 2);

  REQUIRE_THROWS_AS(dist({}, {}), ValidationError);
  REQUIRE_THROWS_AS(dist({{{1.0, 0.0}}}, {0.4, 0.6}), ValidationError);
  REQUIRE_THROWS_AS(dist({{{1.0, 0.0}}, {{0.0, 1.0}}}, {0.4, 0.4}), ValidationError);
  REQUIRE_THROWS_AS(dist({{{1.0, 0.0}}, {{0.0, 1.0}}}, {-0.2, 1.2}), ValidationError);
}

TEST_CASE("verify_vbp finds a selection exactly when one exists") {
  SECTION("fully revealing") {
    auto mu = dist({{{1.0, 0.0}}, {{0.0, 1.0}}}, {0.3, 0.7});
    auto phi = verify_vbp(mu, {0.3, 0.7});
    REQUIRE(phi.has_value());
    REQUIRE(linf_dist(phi->picks[0], {1.0, 0.0}) <= 1e-9);
    REQUIRE(linf_dist(phi->picks[1], {0.0, 1.0}) <= 1e-9);
    REQUIRE(selection_verifies(mu, *phi, {0.3, 0.7}));
  }
  SECTION("wrong singleton cannot average back to the prior") {
    auto mu = dist({{{1.0, 0.0}}, {{0.9, 0.1}}}, {0.3, 0.7});
    REQUIRE_FALSE(verify_vbp(mu, {0.3, 0.7}).has_value());
  }
  SECTION("single set containing the prior pins the selection at the prior") {
    auto mu = dist({{{0.2, 0.8}, {0.8, 0.2}}}, {1.0});
    auto phi = verify_vbp(mu, {0.5, 0.5});
    REQUIRE(phi.has_value());
    REQUIRE(linf_dist(phi->picks[0], {0.5, 0.5}) <= 1e-9);
  }
  SECTION("single set missing the prior") {
    auto mu = dist({{{0.2, 0.8}, {0.4, 0.6}}}, {1.0});
    REQUIRE_FALSE(verify_vbp(mu, {0.5, 0.5}).has_value());
  }
}

TEST_CASE("verifying posterior sets for pinned two-state examples") {
  SECTION("single support set collapses to the prior") {
    auto mu = dist({{{0.2, 0.8}, {0.8, 0.2}}}, {1.0});
    auto pm = verifying_posterior_set(mu, {0.5, 0.5}, 0);
    REQUIRE(pm.vertices.size() == 1);
    REQUIRE(linf_dist(pm.vertices[0], {0.5, 0.5}) <= 1e-8);
  }
  SECTION("singleton partner pins the segment pick") {
    auto mu = dist({{{1.0, 0.0}}, {{0.0, 1.0}, {0.5, 0.5}}}, {0.3, 0.7});
    Belief prior = {0.3, 0.7};
    auto p0 = verifying_posterior_set(mu, prior, 0);
    auto p1 = verifying_posterior_set(mu, prior, 1);
    REQUIRE(p0.vertices.size() == 1);
    REQUIRE(linf_dist(p0.vertices[0], {1.0, 0.0}) <= 1e-8);
    REQUIRE(p1.vertices.size() == 1);
    REQUIRE(linf_dist(p1.vertices[0], {0.0, 1.0}) <= 1e-8);
  }
  SECTION("reflected segments verify in full") {
    auto mu = dist({{{1.0, 0.0}, {0.5, 0.5}}, {{0.0, 1.0}, {0.5, 0.5}}}, {0.5, 0.5});
    Belief prior = {0.5, 0.5};
    for (std::size_t i = 0; i < 2; ++i) {
      auto pm = verifying_posterior_set(mu, prior, i);
      REQUIRE(set_equal(pm, mu.support[i], 1e-8));
    }
    REQUIRE(is_fully_verified(mu, prior));
  }
  SECTION("full segment against an off-prior singleton leaves one point") {
    auto mu = dist({{{1.0, 0.0}, {0.0, 1.0}}, {{0.9, 0.1}}}, {0.5, 0.5});
    auto pm = verifying_posterior_set(mu, {0.5, 0.5}, 0);
    REQUIRE(pm.vertices.size() == 1);
    REQUIRE(linf_dist(pm.vertices[0], {0.1, 0.9}) <= 1e-8);
    REQUIRE_FALSE(is_fully_verified(mu, {0.5, 0.5}));
  }
}

TEST_CASE("three-state verifying posterior set traces the exact polygon") {
  // two copies of the full simplex around the barycenter: the verifying set is
  // the hexagon {x in the simplex : x_k <= 2/3}
  std::vector<Belief> tri = {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
  auto mu = dist({tri, tri}, {0.5, 0.5});
  Belief prior = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  auto pm = verifying_posterior_set(mu, prior, 0);
  std::vector<Belief> hex = {{2.0 / 3, 1.0 / 3, 0.0}, {2.0 / 3, 0.0, 1.0 / 3},
                             {1.0 / 3, 2.0 / 3, 0.0}, {0.0, 2.0 / 3, 1.0 / 3},
                             {1.0 / 3, 0.0, 2.0 / 3}, {0.0, 1.0 / 3, 2.0 / 3}};
  BeliefSet expected{canonicalize(std::move(hex))};
  REQUIRE(pm.vertices.size() == 6);
  REQUIRE(vertex_hausdorff(pm, expected) <= 1e-7);
  REQUIRE(is_fully_verified(mu, prior) == false);   // corners are cut off
}

TEST_CASE("fully verified distributions and pins") {
  SECTION("fully revealing is fully verified") {
    auto mu = dist({{{1.0, 0.0}}, {{0.0, 1.0}}}, {0.3, 0.7});
    REQUIRE(is_fully_verified(mu, {0.3, 0.7}));
  }
  SECTION("zero-weight sets never block verification") {
    auto mu = dist({{{0.5, 0.5}}, {{0.2, 0.8}, {0.8, 0.2}}}, {1.0, 0.0});
    REQUIRE(is_fully_verified(mu, {0.5, 0.5}));
  }
  SECTION("the high-value plan for the prosecutor game is not fully verified") {
    auto mu = dist({{{1.0, 0.0}, {0.5, 0.5}}, {{0.5, 0.5}}}, {0.4, 0.6});
    Belief prior = {0.7, 0.3};
    auto phi = verify_vbp(mu, prior);
    REQUIRE(phi.has_value());
    REQUIRE(linf_dist(phi->picks[0], {1.0, 0.0}) <= 1e-9);
    auto pm = verifying_posterior_set(mu, prior, 0);
    REQUIRE(pm.vertices.size() == 1);
    REQUIRE(linf_dist(pm.vertices[0], {1.0, 0.0}) <= 1e-8);
    REQUIRE_FALSE(is_fully_verified(mu, prior));
    REQUIRE_FALSE(pin_feasible(mu, prior, 0, {0.5, 0.5}));
    REQUIRE(pin_feasible(mu, prior, 0, {1.0, 0.0}));
  }
  SECTION("plausibility is a precondition") {
    auto mu = dist({{{1.0, 0.0}}, {{0.9, 0.1}}}, {0.3, 0.7});
    REQUIRE_THROWS_AS(verifying_posterior_set(mu, {0.3, 0.7}, 1), InfeasibleError);
    REQUIRE_THROWS_AS(is_fully_verified(mu, {0.3, 0.7}), InfeasibleError);
  }
}

TEST_CASE("blends of verifying selections verify") {
  std::mt19937_64 rng(424242u);
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n_sets = 2 + trial % 3;
    std::vector<std::vector<Belief>> sets;
    std::vector<double> weights(n_sets);
    double wsum = 0.0;
    std::vector<Belief> picks;
    for (std::size_t i = 0; i < n_sets; ++i) {
      Belief a = make_belief({unit(rng), unit(rng)});
      Belief b = make_belief({unit(rng), unit(rng)});
      sets.push_back({a, b});
      double t = unit(rng);
      picks.push_back({t * a[0] + (1 - t) * b[0], t * a[1] + (1 - t) * b[1]});
      weights[i] = unit(rng);
      wsum += weights[i];
    }
    Belief prior(2, 0.0);
    for (std::size_t i = 0; i < n_sets; ++i) {
      weights[i] /= wsum;
      prior[0] += weights[i] * picks[i][0];
      prior[1] += weights[i] * picks[i][1];
    }
    auto mu = dist(std::move(sets), std::move(weights));
    Selection hand{picks};
    REQUIRE(selection_verifies(mu, hand, prior));
    auto solved = verify_vbp(mu, prior);
    REQUIRE(solved.has_value());
    for (double alpha : {0.0, 0.25, 0.5, 0.9, 1.0}) {
      auto mix = blend_selections(hand, *solved, alpha);
      REQUIRE(selection_verifies(mu, mix, prior));
      REQUIRE(pin_feasible(mu, prior, trial % n_sets, mix.picks[trial % n_sets]));
      ++checked;
    }
  }
  REQUIRE(checked == 200);
}

TEST_CASE("two-state verifying posterior sets agree with pin scans") {
  std::mt19937_64 rng(777001u);
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<std::vector<Belief>> sets;
    std::vector<double> weights;
    std::vector<Belief> picks;
    const std::size_t n_sets = 2 + trial % 2;
    double wsum = 0.0;
    for (std::size_t i = 0; i < n_sets; ++i) {
      double lo = unit(rng), hi = unit(rng);
      if (lo > hi) std::swap(lo, hi);
      sets.push_back({{lo, 1 - lo}, {hi, 1 - hi}});
      double t = unit(rng);
      picks.push_back({t * lo + (1 - t) * hi, 1 - (t * lo + (1 - t) * hi)});
      weights.push_back(unit(rng));
      wsum += weights.back();
    }
    Belief prior(2, 0.0);
    for (std::size_t i = 0; i < n_sets; ++i) {
      weights[i] /= wsum;
      prior[0] += weights[i] * picks[i][0];
      prior[1] += weights[i] * picks[i][1];
    }
    auto mu = dist(std::move(sets), std::move(weights));
    for (std::size_t i = 0; i < n_sets; ++i) {
      auto pm = verifying_posterior_set(mu, prior, i);
      for (const Belief& v : pm.vertices) {
        REQUIRE(mu.support[i].contains(v, 1e-8));
        REQUIRE(pin_feasible(mu, prior, i, v));
      }
      // nothing verifies just beyond the traced interval
      double lo = pm.vertices.front()[0], hi = pm.vertices.back()[0];
      for (const Belief& v : pm.vertices) {
        lo = std::min(lo, v[0]);
        hi = std::max(hi, v[0]);
      }
      if (lo - 1e-6 >= 0.0 && mu.support[i].contains({lo - 1e-6, 1 - lo + 1e-6}, 1e-9))
        REQUIRE_FALSE(pin_feasible(mu, prior, i, {lo - 1e-6, 1 - lo + 1e-6}));
      if (hi + 1e-6 <= 1.0 && mu.support[i].contains({hi + 1e-6, 1 - hi - 1e-6}, 1e-9))
        REQUIRE_FALSE(pin_feasible(mu, prior, i, {hi + 1e-6, 1 - hi - 1e-6}));
    }
  }
}
