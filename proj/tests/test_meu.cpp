#include <catch2/catch_amalgamated.hpp>

#include "persuasion/meu.hpp"

using namespace persuasion;

namespace {

Game prosecutor() {
  Game g;
  g.n_states = 2;   // innocent, guilty
  g.prior = {0.7, 0.3};
  g.actions = {"acquit", "convict"};
  g.u_r = {{1.0, 0.0}, {0.0, 1.0}};
  g.u_s = {{0.0, 0.0}, {1.0, 1.0}};
  return g;
}

}  // namespace

TEST_CASE("expected payoff arithmetic") {
  Matrix u = {{1.0, 0.0}, {0.0, 2.0}};
  CHECK(expected_payoff(u, {0.5, 0.5}, {0.4, 0.6}) == Catch::Approx(0.5 * 0.4 + 0.5 * 1.2));
}

TEST_CASE("degenerate singleton sets reduce to best replies") {
  auto g = prosecutor();

  auto sure_innocent = meu_response(g.u_r, BeliefSet{{{1.0, 0.0}}});
  CHECK(sure_innocent.value == Catch::Approx(1.0).margin(1e-9));
  CHECK(sure_innocent.strategy[0] == Catch::Approx(1.0).margin(1e-9));

  auto sure_guilty = meu_response(g.u_r, BeliefSet{{{0.0, 1.0}}});
  CHECK(sure_guilty.value == Catch::Approx(1.0).margin(1e-9));
  CHECK(sure_guilty.strategy[1] == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("indifference resolves toward the sender") {
  auto g = prosecutor();
  BeliefSet threshold{{{0.5, 0.5}}};
  // every strategy guarantees 0.5 here, so the tie break picks conviction
  auto pick = sender_preferred_response(g, threshold, {0.5, 0.5});
  CHECK(pick.receiver_value == Catch::Approx(0.5).margin(1e-8));
  CHECK(pick.sender_value == Catch::Approx(1.0).margin(1e-8));
  CHECK(pick.strategy[1] == Catch::Approx(1.0).margin(1e-8));
}

TEST_CASE("hedging against a segment of beliefs") {
  auto g = prosecutor();
  BeliefSet seg{{{0.2, 0.8}, {0.8, 0.2}}};
  auto r = meu_response(g.u_r, seg);
  CHECK(r.value == Catch::Approx(0.5).margin(1e-9));
  CHECK(r.strategy[0] == Catch::Approx(0.5).margin(1e-8));
  CHECK(r.strategy[1] == Catch::Approx(0.5).margin(1e-8));
  CHECK(worst_case_payoff(g.u_r, r.strategy, seg) == Catch::Approx(0.5).margin(1e-9));

  // saddle point: the adversarial belief pins the same value
  auto adv = adversarial_belief(g.u_r, seg);
  CHECK(adv.value == Catch::Approx(r.value).margin(1e-9));
  CHECK(adv.belief[0] == Catch::Approx(0.5).margin(1e-8));
}

TEST_CASE("a safe third action dominates hedging") {
  Matrix u_r = {{1.0, 0.0}, {0.0, 1.0}, {0.6, 0.6}};
  BeliefSet seg{{{0.3, 0.7}, {0.7, 0.3}}};
  auto r = meu_response(u_r, seg);
  CHECK(r.value == Catch::Approx(0.6).margin(1e-9));
  CHECK(r.strategy[2] == Catch::Approx(1.0).margin(1e-8));

  auto adv = adversarial_belief(u_r, seg);
  CHECK(adv.value == Catch::Approx(0.6).margin(1e-9));
}

TEST_CASE("worst case over a set never exceeds any single vertex") {
  Matrix u_r = {{2.0, -1.0}, {0.0, 1.0}};
  BeliefSet P{{{0.9, 0.1}, {0.4, 0.6}, {0.1, 0.9}}};
  MixedAction f = {0.3, 0.7};
  double w = worst_case_payoff(u_r, f, P);
  for (const auto& v : P.vertices) CHECK(w <= expected_payoff(u_r, f, v) + 1e-12);
}

TEST_CASE("tie break keeps the maximin guarantee") {
  auto g = prosecutor();
  BeliefSet seg{{{0.2, 0.8}, {0.8, 0.2}}};
  auto base = meu_response(g.u_r, seg);
  auto pick = sender_preferred_response(g, seg, {0.5, 0.5});
  CHECK(pick.receiver_value >= base.value - 1e-8);
  // nothing to gain here: maximin already pins the fifty-fifty mix
  CHECK(pick.sender_value == Catch::Approx(0.5).margin(1e-8));
}

TEST_CASE("precise-belief responses") {
  auto g = prosecutor();
  auto acts = pure_best_responses(g.u_r, {0.8, 0.2});
  REQUIRE(acts.size() == 1);
  CHECK(acts[0] == 0);

  acts = pure_best_responses(g.u_r, {0.5, 0.5});
  CHECK(acts.size() == 2);

  CHECK(bayes_sender_payoff(g, {0.8, 0.2}) == Catch::Approx(0.0).margin(1e-12));
  CHECK(bayes_sender_payoff(g, {0.5, 0.5}) == Catch::Approx(1.0).margin(1e-12));
  CHECK(bayes_sender_payoff(g, {0.2, 0.8}) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("meu input validation") {
  Matrix u_r = {{1.0, 0.0}, {0.0, 1.0}};
  CHECK_THROWS_AS(meu_response(u_r, BeliefSet{}), ValidationError);
  CHECK_THROWS_AS(meu_response(Matrix{}, BeliefSet{{{0.5, 0.5}}}), ValidationError);
}
