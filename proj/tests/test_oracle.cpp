#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "persuasion/meu.hpp"
#include "persuasion/oracle.hpp"

using namespace persuasion;

namespace {

Game prosecutor() {
  Game g;
  g.n_states = 2;
  g.prior = {0.7, 0.3};
  g.actions = {"acquit", "convict"};
  g.u_r = {{1.0, 0.0}, {0.0, 1.0}};
  g.u_s = {{0.0, 0.0}, {1.0, 1.0}};
  return g;
}

Game random_two_action_game(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pay(-1.0, 1.0);
  std::uniform_real_distribution<double> pr(0.05, 0.95);
  Game g;
  g.n_states = 2;
  double p = pr(rng);
  g.prior = {1.0 - p, p};
  g.actions = {"a0", "a1"};
  g.u_r = {{pay(rng), pay(rng)}, {pay(rng), pay(rng)}};
  g.u_s = {{pay(rng), pay(rng)}, {pay(rng), pay(rng)}};
  return g;
}

}  // namespace

TEST_CASE("breakpoint maximin on the hedging segment") {
  auto g = prosecutor();
  auto mm = oracle::maximin_two_actions(g.u_r, {{0.2, 0.8}, {0.8, 0.2}});
  CHECK(mm.value == Catch::Approx(0.5).margin(1e-12));
  CHECK(mm.x_lo == Catch::Approx(0.5).margin(1e-8));
  CHECK(mm.x_hi == Catch::Approx(0.5).margin(1e-8));
}

TEST_CASE("breakpoint maximin equals the simplex kernel on random games") {
  std::mt19937_64 rng(5150u);
  std::uniform_real_distribution<double> gpos(0.0, 1.0);
  for (int iter = 0; iter < 50; ++iter) {
    auto g = random_two_action_game(rng);
    double a = gpos(rng), b = gpos(rng);
    if (a > b) std::swap(a, b);
    std::vector<Belief> verts = {{1.0 - a, a}, {1.0 - b, b}};
    auto mm = oracle::maximin_two_actions(g.u_r, verts);
    auto lpv = meu_response(g.u_r, BeliefSet{verts});
    CHECK(mm.value == Catch::Approx(lpv.value).margin(1e-6));
  }
}

TEST_CASE("indifferent singleton leaves the whole plateau") {
  auto g = prosecutor();
  auto mm = oracle::maximin_two_actions(g.u_r, {{0.5, 0.5}});
  CHECK(mm.value == Catch::Approx(0.5).margin(1e-12));
  CHECK(mm.x_lo == Catch::Approx(0.0).margin(1e-12));
  CHECK(mm.x_hi == Catch::Approx(1.0).margin(1e-12));
  // and the sender-favorable selection cashes it in
  CHECK(oracle::set_payoff(g, {{0.5, 0.5}}, {0.5, 0.5}) == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("set payoff after the tie break") {
  auto g = prosecutor();
  // spans acquittal and conviction regions: hedge at one half
  double v = oracle::set_payoff(g, {{0.7, 0.3}, {0.0, 1.0}}, {0.7, 0.3});
  CHECK(v == Catch::Approx(0.5).margin(1e-8));
}

TEST_CASE("lattice maximin approaches the exact value") {
  Matrix u_r = {{1.0, 0.0}, {0.0, 1.0}, {0.6, 0.6}};
  std::vector<Belief> seg = {{0.3, 0.7}, {0.7, 0.3}};
  CHECK(oracle::maximin_grid(u_r, seg, 240) == Catch::Approx(0.6).margin(1e-2));

  Matrix two = {{1.0, 0.0}, {0.0, 1.0}};
  auto exact = oracle::maximin_two_actions(two, seg);
  CHECK(oracle::maximin_grid(two, seg, 240) == Catch::Approx(exact.value).margin(1.0 / 240));
}

TEST_CASE("exhaustive candidate sets at a fixed point") {
  auto g = prosecutor();
  auto grid = simplex_grid(GridSpec{10}, 2);
  double v = oracle::robust_point_value(g, {0.7, 0.3}, grid, 2);
  CHECK(v == Catch::Approx(0.5).margin(1e-8));

  // inside the conviction region nothing beats staying precise
  double vc = oracle::robust_point_value(g, {0.4, 0.6}, grid, 2);
  CHECK(vc == Catch::Approx(1.0).margin(1e-8));
}

TEST_CASE("posterior-split device search on the trial game") {
  auto g = prosecutor();
  auto r = oracle::device_search(g, 20);
  CHECK(r.value == Catch::Approx(7.0 / 9.0).margin(1e-8));
  REQUIRE(r.messages.size() == 2);
  CHECK(r.messages[0].posterior_g == Catch::Approx(0.05).margin(1e-12));
  CHECK(r.messages[1].posterior_g == Catch::Approx(0.5).margin(1e-12));
  CHECK(r.messages[0].weight + r.messages[1].weight == Catch::Approx(1.0).margin(1e-12));

  // plain splits without ambiguity reach less
  CHECK(oracle::bayesian_pairs(g, 20) == Catch::Approx(0.6).margin(1e-9));
}

TEST_CASE("device search never loses to the plain benchmark") {
  std::mt19937_64 rng(90125u);
  for (int iter = 0; iter < 10; ++iter) {
    auto g = random_two_action_game(rng);
    auto r = oracle::device_search(g, 10);
    CHECK(r.value >= oracle::bayesian_pairs(g, 10) - 1e-9);
  }
}

TEST_CASE("boundary posteriors cannot carry ambiguity") {
  auto g = prosecutor();
  std::vector<double> grid_g;
  for (int i = 0; i <= 20; ++i) grid_g.push_back(i / 20.0);
  // certainty of innocence: the receiver acquits, nothing to spread (up to
  // the tie slack, which admits a kTieTol-sized crumb of the other action)
  CHECK(oracle::reachable_point_worth(g, 0.0, grid_g) == Catch::Approx(0.0).margin(1e-8));
  CHECK(oracle::reachable_point_worth(g, 1.0, grid_g) == Catch::Approx(1.0).margin(1e-8));
  // interior acquittal posteriors get lifted to the hedge value
  CHECK(oracle::reachable_point_worth(g, 0.25, grid_g) == Catch::Approx(0.5).margin(1e-8));
}
