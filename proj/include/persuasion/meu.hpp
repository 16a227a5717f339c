#pragma once

// Receiver behavior against set-valued beliefs.  The receiver evaluates a
// mixed action by its worst expected payoff over the belief set and plays a
// maximin strategy; among maximin strategies the sender-preferred one is
// selected.  Both optimizations are linear programs over the set's vertices,
// since the inner minimum of a linear function over a polytope is attained
// at a vertex.

#include <cstddef>
#include <vector>

#include "persuasion/core.hpp"
#include "persuasion/lp.hpp"

namespace persuasion {

// Slack used when deciding whether a strategy attains the maximin value.
inline constexpr double kTieTol = 1e-9;

inline double expected_payoff(const Matrix& u, const MixedAction& f, const Belief& q) {
  double total = 0.0;
  for (std::size_t a = 0; a < u.size(); ++a) {
    if (f[a] == 0.0) continue;
    total += f[a] * dot(u[a], q);
  }
  return total;
}

inline double worst_case_payoff(const Matrix& u_r, const MixedAction& f, const BeliefSet& P) {
  if (P.vertices.empty()) throw ValidationError("worst case: empty belief set");
  double worst = std::numeric_limits<double>::infinity();
  for (const Belief& v : P.vertices) worst = std::min(worst, expected_payoff(u_r, f, v));
  return worst;
}

struct MeuResult {
  MixedAction strategy;
  double value = 0.0;   // guaranteed expected payoff over the whole set
};

// max over mixed actions of the minimum expected payoff across P.
inline MeuResult meu_response(const Matrix& u_r, const BeliefSet& P) {
  if (P.vertices.empty()) throw ValidationError("meu: empty belief set");
  const std::size_t A = u_r.size();
  if (A == 0) throw ValidationError("meu: no actions");
  lp::LinearProgram prog;
  prog.n = A + 1;   // strategy weights plus the guarantee t
  prog.maximize = true;
  prog.c.assign(A + 1, 0.0);
  prog.c[A] = 1.0;
  prog.lower.assign(A + 1, 0.0);
  prog.lower[A] = -lp::kInf;
  for (const Belief& v : P.vertices) {
    std::vector<double> row(A + 1, 0.0);
    for (std::size_t a = 0; a < A; ++a) row[a] = dot(u_r[a], v);
    row[A] = -1.0;
    prog.add_row(std::move(row), lp::Rel::GE, 0.0);
  }
  {
    std::vector<double> row(A + 1, 0.0);
    for (std::size_t a = 0; a < A; ++a) row[a] = 1.0;
    prog.add_row(std::move(row), lp::Rel::EQ, 1.0);
  }
  auto r = lp::lp_solve(prog);
  if (r.status != lp::Status::Optimal) throw InfeasibleError("meu: maximin program failed");
  MeuResult out;
  out.strategy.assign(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(A));
  for (double& w : out.strategy) w = std::max(w, 0.0);
  out.value = r.value;
  return out;
}

// The other side of the saddle: the belief in P against which even the best
// reply earns the least.  Its value equals the maximin value.
struct AdversarialBelief {
  Belief belief;
  double value = 0.0;
};

inline AdversarialBelief adversarial_belief(const Matrix& u_r, const BeliefSet& P) {
  if (P.vertices.empty()) throw ValidationError("adversarial belief: empty belief set");
  const std::size_t A = u_r.size();
  const std::size_t K = P.vertices.size();
  lp::LinearProgram prog;
  prog.n = K + 1;   // mixture over vertices plus the envelope value t
  prog.maximize = false;
  prog.c.assign(K + 1, 0.0);
  prog.c[K] = 1.0;
  prog.lower.assign(K + 1, 0.0);
  prog.lower[K] = -lp::kInf;
  for (std::size_t a = 0; a < A; ++a) {
    std::vector<double> row(K + 1, 0.0);
    for (std::size_t j = 0; j < K; ++j) row[j] = -dot(u_r[a], P.vertices[j]);
    row[K] = 1.0;
    prog.add_row(std::move(row), lp::Rel::GE, 0.0);   // t >= payoff of action a
  }
  {
    std::vector<double> row(K + 1, 0.0);
    for (std::size_t j = 0; j < K; ++j) row[j] = 1.0;
    prog.add_row(std::move(row), lp::Rel::EQ, 1.0);
  }
  auto r = lp::lp_solve(prog);
  if (r.status != lp::Status::Optimal) throw InfeasibleError("adversarial belief: program failed");
  AdversarialBelief out;
  const std::size_t n = P.n_states();
  out.belief.assign(n, 0.0);
  for (std::size_t j = 0; j < K; ++j)
    for (std::size_t w = 0; w < n; ++w) out.belief[w] += std::max(r.x[j], 0.0) * P.vertices[j][w];
  out.belief = make_belief(out.belief);
  out.value = r.value;
  return out;
}

struct TieBreakResult {
  MixedAction strategy;
  double receiver_value = 0.0;   // guarantee the strategy keeps over P
  double sender_value = 0.0;     // sender payoff at the evaluation belief
};

// Sender-preferred selection from the receiver's maximin set, evaluated at
// posterior q: maximize the sender payoff subject to staying within kTieTol
// of the maximin guarantee on every vertex of P.
inline TieBreakResult sender_preferred_response(const Game& g, const BeliefSet& P,
                                                const Belief& q) {
  const auto base = meu_response(g.u_r, P);
  const std::size_t A = g.n_actions();
  lp::LinearProgram prog;
  prog.n = A;
  prog.maximize = true;
  prog.c.resize(A);
  for (std::size_t a = 0; a < A; ++a) prog.c[a] = dot(g.u_s[a], q);
  for (const Belief& v : P.vertices) {
    std::vector<double> row(A);
    for (std::size_t a = 0; a < A; ++a) row[a] = dot(g.u_r[a], v);
    prog.add_row(std::move(row), lp::Rel::GE, base.value - kTieTol);
  }
  prog.add_row(std::vector<double>(A, 1.0), lp::Rel::EQ, 1.0);
  auto r = lp::lp_solve(prog);
  if (r.status != lp::Status::Optimal)
    throw InfeasibleError("tie break: selection program failed");
  TieBreakResult out;
  out.strategy = r.x;
  for (double& w : out.strategy) w = std::max(w, 0.0);
  out.receiver_value = worst_case_payoff(g.u_r, out.strategy, P);
  out.sender_value = r.value;
  return out;
}

// Pure best replies at a single (precise) belief.
inline std::vector<std::size_t> pure_best_responses(const Matrix& u_r, const Belief& q,
                                                    double tol = kTieTol) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& row : u_r) best = std::max(best, dot(row, q));
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < u_r.size(); ++a)
    if (dot(u_r[a], q) >= best - tol) out.push_back(a);
  return out;
}

// Sender payoff at belief q when the receiver best-responds to q alone,
// breaking indifference in the sender's favor.
inline double bayes_sender_payoff(const Game& g, const Belief& q) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t a : pure_best_responses(g.u_r, q)) best = std::max(best, dot(g.u_s[a], q));
  return best;
}

}  // namespace persuasion
