#pragma once

// Point values of the sender.  Three quantities matter at a belief p:
//
//   bayes value    sender payoff when the receiver best-responds to p alone
//   robust value   best sender payoff over candidate belief sets containing
//                  p, with the receiver playing maximin against the set
//   constructible  same search restricted to sets the sender can actually
//                  induce around p, namely {p} itself or sets holding p in
//                  their relative interior (a spread of perturbations can
//                  only average back to an interior point)
//
// Candidate sets are spanned by grid points; max_vertices bounds how many.
// For two-state games two spanning points describe every interval, so the
// search is exact there.

#include <cstddef>
#include <vector>

#include "persuasion/meu.hpp"

namespace persuasion {

// Sender payoff at q when the receiver faces the whole set P.
inline double set_sender_payoff(const Game& g, const BeliefSet& P, const Belief& q) {
  return sender_preferred_response(g, P, q).sender_value;
}

struct InteriorWeights {
  bool inside = false;
  std::vector<double> weights;   // strictly positive, sum to one
  double margin = 0.0;           // smallest weight achievable
};

// Finds the most balanced convex representation of q by the given points:
// maximize the smallest weight.  A strictly positive optimum says q lies in
// the relative interior of their hull.
inline InteriorWeights relative_interior_weights(const std::vector<Belief>& vertices,
                                                 const Belief& q, double tol = kFeasTol) {
  if (vertices.empty()) throw ValidationError("interior weights: no vertices");
  const std::size_t k = vertices.size();
  const std::size_t n = q.size();
  lp::LinearProgram prog;
  prog.n = k + 1;   // weights plus the common floor t
  prog.maximize = true;
  prog.c.assign(k + 1, 0.0);
  prog.c[k] = 1.0;
  for (std::size_t w = 0; w < n; ++w) {
    std::vector<double> row(k + 1, 0.0);
    for (std::size_t j = 0; j < k; ++j) row[j] = vertices[j][w];
    prog.add_row(std::move(row), lp::Rel::EQ, q[w]);
  }
  {
    std::vector<double> row(k + 1, 0.0);
    for (std::size_t j = 0; j < k; ++j) row[j] = 1.0;
    prog.add_row(std::move(row), lp::Rel::EQ, 1.0);
  }
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<double> row(k + 1, 0.0);
    row[j] = 1.0;
    row[k] = -1.0;
    prog.add_row(std::move(row), lp::Rel::GE, 0.0);
  }
  auto r = lp::lp_solve(prog);
  InteriorWeights out;
  if (r.status != lp::Status::Optimal || r.value <= tol) return out;
  out.inside = true;
  out.margin = r.value;
  out.weights.assign(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(k));
  double total = 0.0;
  for (double& w : out.weights) {
    w = std::max(w, 0.0);
    total += w;
  }
  for (double& w : out.weights) w /= total;
  return out;
}

struct PointValue {
  double value = 0.0;
  BeliefSet set;                 // canonical argmax candidate set
  std::vector<double> weights;   // interior representation of the evaluation
                                 // belief by set.vertices; empty if unused
};

namespace detail {

// Ties within kTieTol resolve to the candidate with fewer vertices, then to
// the lexicographically smaller vertex list, so results are reproducible.
inline bool replaces(const PointValue& cand, const PointValue& best) {
  if (cand.value > best.value + kTieTol) return true;
  if (cand.value < best.value - kTieTol) return false;
  if (cand.set.vertices.size() != best.set.vertices.size())
    return cand.set.vertices.size() < best.set.vertices.size();
  return cand.set.vertices < best.set.vertices;
}

template <typename Fn>
inline void for_each_subset(std::size_t n, std::size_t max_size, Fn&& fn) {
  std::vector<std::size_t> pick;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (!pick.empty()) fn(pick);
    if (pick.size() == max_size) return;
    for (std::size_t i = start; i < n; ++i) {
      pick.push_back(i);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace detail

inline double bayesian_point_value(const Game& g, const Belief& q) {
  return bayes_sender_payoff(g, q);
}

// Best sender payoff over candidate sets conv(S ∪ {q}), S a grid subset.
inline PointValue robust_point_value(const Game& g, const Belief& q,
                                     const std::vector<Belief>& grid,
                                     std::size_t max_vertices = 2) {
  check_belief(q, g.n_states, "evaluation belief");
  PointValue best;
  best.value = set_sender_payoff(g, BeliefSet{{q}}, q);
  best.set = canonicalize({q});

  detail::for_each_subset(grid.size(), max_vertices, [&](const std::vector<std::size_t>& pick) {
    std::vector<Belief> verts;
    verts.reserve(pick.size() + 1);
    for (std::size_t i : pick) verts.push_back(grid[i]);
    verts.push_back(q);
    PointValue cand;
    cand.value = set_sender_payoff(g, BeliefSet{verts}, q);
    if (cand.value < best.value - kTieTol) return;
    cand.set = canonicalize(verts);
    if (detail::replaces(cand, best)) {
      cand.value = std::max(cand.value, best.value);
      best = std::move(cand);
    }
  });
  return best;
}

// Same search over sets the sender can induce at q: either {q} itself or a
// hull holding q strictly inside.  Returns the interior weights of the
// winning set; they are reused verbatim when spreading a message.
inline PointValue constructible_point_value(const Game& g, const Belief& q,
                                            const std::vector<Belief>& grid,
                                            std::size_t max_vertices = 2) {
  check_belief(q, g.n_states, "evaluation belief");
  PointValue best;
  best.value = set_sender_payoff(g, BeliefSet{{q}}, q);
  best.set = canonicalize({q});
  best.weights = {1.0};

  detail::for_each_subset(grid.size(), max_vertices, [&](const std::vector<std::size_t>& pick) {
    if (pick.size() < 2) return;   // a foreign singleton can never average to q
    std::vector<Belief> verts;
    verts.reserve(pick.size());
    for (std::size_t i : pick) verts.push_back(grid[i]);
    auto iw = relative_interior_weights(verts, q, kFeasTol);
    if (!iw.inside) return;
    PointValue cand;
    cand.value = set_sender_payoff(g, BeliefSet{verts}, q);
    if (cand.value < best.value - kTieTol) return;
    cand.set = canonicalize(verts);
    auto canon_iw = relative_interior_weights(cand.set.vertices, q, kFeasTol);
    if (!canon_iw.inside) return;
    cand.weights = std::move(canon_iw.weights);
    if (detail::replaces(cand, best)) {
      cand.value = std::max(cand.value, best.value);
      best = std::move(cand);
    }
  });
  return best;
}

struct ValueGridRow {
  Belief p;
  double bayes = 0.0;
  PointValue robust;
  PointValue constructible;
};

// One sweep over the grid computing all three point values.  The robust
// column feeds the value bound, the constructible column feeds devices.
inline std::vector<ValueGridRow> value_grid(const Game& g, const GridSpec& spec,
                                            std::size_t max_vertices = 2) {
  g.validate();
  const auto grid = simplex_grid(spec, g.n_states);
  std::vector<ValueGridRow> rows;
  rows.reserve(grid.size());
  for (const Belief& p : grid) {
    ValueGridRow row;
    row.p = p;
    row.bayes = bayesian_point_value(g, p);
    row.robust = robust_point_value(g, p, grid, max_vertices);
    row.constructible = constructible_point_value(g, p, grid, max_vertices);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace persuasion
