#pragma once

// Reference implementations used only by the test suite.  Everything here
// avoids the simplex kernel on purpose: two-action maximin problems are
// solved exactly by enumerating breakpoints of the lower envelope, point
// values by exhausting candidate vertex subsets, and device values by an
// explicit search over posterior splits.  Results from these routines are
// frozen into tests as expected values for the production code paths.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

#include "persuasion/core.hpp"
#include "persuasion/meu.hpp"

namespace persuasion::oracle {

namespace detail {

// payoff of action a at vertex j, as a line in the weight x on action 0
struct Line {
  double at0;   // value at x = 0 (all weight on action 1)
  double at1;   // value at x = 1 (all weight on action 0)
  double eval(double x) const { return at0 + (at1 - at0) * x; }
};

inline std::vector<Line> envelope_lines(const Matrix& u_r, const std::vector<Belief>& vertices) {
  std::vector<Line> lines;
  lines.reserve(vertices.size());
  for (const Belief& v : vertices)
    lines.push_back(Line{dot(u_r[1], v), dot(u_r[0], v)});
  return lines;
}

inline double envelope(const std::vector<Line>& lines, double x) {
  double m = std::numeric_limits<double>::infinity();
  for (const Line& l : lines) m = std::min(m, l.eval(x));
  return m;
}

}  // namespace detail

// Exact maximin for two actions.  The guarantee g(x) of the mix putting
// weight x on action 0 is the lower envelope of one line per vertex, concave
// and piecewise linear, so its maximum sits at 0, 1, or a pairwise crossing.
// Also reports the interval of mixes whose guarantee stays within tie_slack
// of the optimum, which is exactly the feasible region of the production
// tie-break step.
struct MaximinTwo {
  double value = 0.0;
  double x_lo = 0.0;   // plateau endpoints, weight on action 0
  double x_hi = 0.0;
};

inline MaximinTwo maximin_two_actions(const Matrix& u_r, const std::vector<Belief>& vertices,
                                      double tie_slack = kTieTol) {
  if (u_r.size() != 2) throw ValidationError("oracle maximin: needs exactly two actions");
  if (vertices.empty()) throw ValidationError("oracle maximin: empty vertex list");
  const auto lines = detail::envelope_lines(u_r, vertices);

  std::vector<double> xs = {0.0, 1.0};
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const double si = lines[i].at1 - lines[i].at0;
      const double sj = lines[j].at1 - lines[j].at0;
      if (si == sj) continue;
      const double x = (lines[j].at0 - lines[i].at0) / (si - sj);
      if (x > 0.0 && x < 1.0) xs.push_back(x);
    }
  }
  MaximinTwo out;
  out.value = -std::numeric_limits<double>::infinity();
  for (double x : xs) out.value = std::max(out.value, detail::envelope(lines, x));

  // region where the guarantee stays within tie_slack of the optimum
  const double level = out.value - tie_slack;
  std::vector<double> cand = xs;
  for (const auto& l : lines) {
    const double slope = l.at1 - l.at0;
    if (slope != 0.0) {
      const double x = (level - l.at0) / slope;
      if (x > 0.0 && x < 1.0) cand.push_back(x);
    }
  }
  out.x_lo = std::numeric_limits<double>::infinity();
  out.x_hi = -std::numeric_limits<double>::infinity();
  for (double x : cand) {
    if (detail::envelope(lines, x) >= level - 1e-15) {
      out.x_lo = std::min(out.x_lo, x);
      out.x_hi = std::max(out.x_hi, x);
    }
  }
  return out;
}

// Grid approximation for three or more actions: scan mixed strategies with
// weights on a uniform lattice.
inline double maximin_grid(const Matrix& u_r, const std::vector<Belief>& vertices, int steps) {
  if (u_r.empty() || vertices.empty()) throw ValidationError("oracle maximin: empty input");
  const std::size_t A = u_r.size();
  std::vector<std::vector<double>> payoff(A, std::vector<double>(vertices.size()));
  for (std::size_t a = 0; a < A; ++a)
    for (std::size_t j = 0; j < vertices.size(); ++j) payoff[a][j] = dot(u_r[a], vertices[j]);

  double best = -std::numeric_limits<double>::infinity();
  std::vector<int> mix(A, 0);
  auto rec = [&](auto&& self, std::size_t a, int left) -> void {
    if (a + 1 == A) {
      mix[a] = left;
      double worst = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < vertices.size(); ++j) {
        double s = 0.0;
        for (std::size_t b = 0; b < A; ++b) s += mix[b] * payoff[b][j];
        worst = std::min(worst, s / steps);
      }
      best = std::max(best, worst);
      return;
    }
    for (int c = left; c >= 0; --c) {
      mix[a] = c;
      self(self, a + 1, left - c);
    }
  };
  rec(rec, 0, steps);
  return best;
}

// Sender payoff at belief q when the receiver holds the belief set spanned
// by `vertices`: maximin first, then the sender-favorable selection.
// Exact for two actions, lattice-approximate otherwise.
inline double set_payoff(const Game& g, const std::vector<Belief>& vertices, const Belief& q,
                         int mix_steps = 240) {
  if (g.n_actions() == 2) {
    const auto mm = maximin_two_actions(g.u_r, vertices);
    const double s0 = dot(g.u_s[0], q);
    const double s1 = dot(g.u_s[1], q);
    auto sender_at = [&](double x) { return s1 + (s0 - s1) * x; };
    return std::max(sender_at(mm.x_lo), sender_at(mm.x_hi));
  }
  const double target = maximin_grid(g.u_r, vertices, mix_steps);
  const std::size_t A = g.n_actions();
  double best = -std::numeric_limits<double>::infinity();
  std::vector<int> mix(A, 0);
  auto rec = [&](auto&& self, std::size_t a, int left) -> void {
    if (a + 1 == A) {
      mix[a] = left;
      MixedAction f(A);
      for (std::size_t b = 0; b < A; ++b) f[b] = static_cast<double>(mix[b]) / mix_steps;
      double worst = std::numeric_limits<double>::infinity();
      for (const Belief& v : vertices) worst = std::min(worst, expected_payoff(g.u_r, f, v));
      if (worst >= target - 1e-9) best = std::max(best, expected_payoff(g.u_s, f, q));
      return;
    }
    for (int c = left; c >= 0; --c) {
      mix[a] = c;
      self(self, a + 1, left - c);
    }
  };
  rec(rec, 0, mix_steps);
  return best;
}

// Best sender payoff at q over every candidate belief set spanned by q and
// up to max_extra grid points.  Exhaustive subset enumeration.
inline double robust_point_value(const Game& g, const Belief& q, const std::vector<Belief>& grid,
                                 std::size_t max_extra = 2) {
  double best = set_payoff(g, {q}, q);   // the precise-belief baseline
  const std::size_t n = grid.size();
  std::vector<std::size_t> pick;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (!pick.empty()) {
      std::vector<Belief> verts = {q};
      for (std::size_t i : pick) verts.push_back(grid[i]);
      best = std::max(best, set_payoff(g, verts, q));
    }
    if (pick.size() == max_extra) return;
    for (std::size_t i = start; i < n; ++i) {
      pick.push_back(i);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  return best;
}

// ---- two-state device search ------------------------------------------
//
// A device splits the prior into posterior messages; each message may carry
// genuine ambiguity by spreading its posterior across an interval, provided
// the announced posterior sits strictly inside (otherwise no spread of
// one-sided perturbations can average back to it).  The per-message worth
// w(q) is therefore the best interval value reachable from q, and the device
// value is the best two-point split of the prior by worth.

inline double reachable_point_worth(const Game& g, double qg, const std::vector<double>& grid_g) {
  Belief q = {1.0 - qg, qg};
  double best = set_payoff(g, {q}, q);   // keep the posterior precise
  for (double lo : grid_g) {
    if (lo >= qg - 1e-9) continue;
    for (double hi : grid_g) {
      if (hi <= qg + 1e-9) continue;
      best = std::max(best, set_payoff(g, {{1.0 - lo, lo}, {1.0 - hi, hi}}, q));
    }
  }
  return best;
}

struct DeviceSearchMessage {
  double posterior_g = 0.0;
  double weight = 0.0;
};

struct DeviceSearchResult {
  double value = 0.0;
  std::vector<DeviceSearchMessage> messages;
};

inline DeviceSearchResult device_search(const Game& g, int grid_steps) {
  if (g.n_states != 2) throw ValidationError("oracle device search: two-state games only");
  g.validate();
  std::vector<double> grid_g;
  for (int i = 0; i <= grid_steps; ++i)
    grid_g.push_back(static_cast<double>(i) / grid_steps);
  const double p0 = g.prior[1];

  std::vector<double> worth(grid_g.size());
  for (std::size_t i = 0; i < grid_g.size(); ++i)
    worth[i] = reachable_point_worth(g, grid_g[i], grid_g);

  DeviceSearchResult out;
  out.value = reachable_point_worth(g, p0, grid_g);   // single uninformative message
  out.messages = {DeviceSearchMessage{p0, 1.0}};

  for (std::size_t i = 0; i < grid_g.size(); ++i) {
    if (grid_g[i] >= p0 - 1e-12) continue;
    for (std::size_t j = 0; j < grid_g.size(); ++j) {
      if (grid_g[j] <= p0 + 1e-12) continue;
      const double t_hi = (p0 - grid_g[i]) / (grid_g[j] - grid_g[i]);
      const double v = (1.0 - t_hi) * worth[i] + t_hi * worth[j];
      if (v > out.value + 1e-12) {
        out.value = v;
        out.messages = {DeviceSearchMessage{grid_g[i], 1.0 - t_hi},
                        DeviceSearchMessage{grid_g[j], t_hi}};
      }
    }
  }
  return out;
}

// Plain Bayesian benchmark by the same two-point splits, no ambiguity.
inline double bayesian_pairs(const Game& g, int grid_steps) {
  if (g.n_states != 2) throw ValidationError("oracle bayesian: two-state games only");
  const double p0 = g.prior[1];
  double best = bayes_sender_payoff(g, g.prior);
  for (int i = 0; i <= grid_steps; ++i) {
    const double lo = static_cast<double>(i) / grid_steps;
    if (lo >= p0 - 1e-12) continue;
    for (int j = 0; j <= grid_steps; ++j) {
      const double hi = static_cast<double>(j) / grid_steps;
      if (hi <= p0 + 1e-12) continue;
      const double t_hi = (p0 - lo) / (hi - lo);
      best = std::max(best, (1.0 - t_hi) * bayes_sender_payoff(g, {1.0 - lo, lo}) +
                                t_hi * bayes_sender_payoff(g, {1.0 - hi, hi}));
    }
  }
  return best;
}

}  // namespace persuasion::oracle
