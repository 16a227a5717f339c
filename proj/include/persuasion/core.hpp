#pragma once

// Value types shared by every module: beliefs over a finite state space,
// belief sets represented by their extreme points, payoff tables, and the
// uniform simplex grid that drives the search routines.  Everything here is
// immutable after construction; all functions are pure.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "persuasion/lp.hpp"

namespace persuasion {

inline constexpr double kNormTol = 1e-12;   // normalization identities
inline constexpr double kFeasTol = 1e-9;    // LP feasibility and memberships
inline constexpr double kValueTol = 2e-6;   // cross-route value agreement

// Raised on malformed input (bad shapes, negative weights, unknown keys).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a well-formed request has no solution (point outside a hull,
// distribution that is not Bayes-plausible, unreachable dilation vertex).
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Belief = std::vector<double>;        // probability vector over states
using MixedAction = std::vector<double>;   // probability vector over actions
using Matrix = std::vector<std::vector<double>>;

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double linf_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

// Normalizes nonnegative weights into a belief.
inline Belief make_belief(std::vector<double> weights) {
  if (weights.empty()) throw ValidationError("belief: empty weight vector");
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w)) throw ValidationError("belief: non-finite weight");
    if (w < 0.0) throw ValidationError("belief: negative weight");
    total += w;
  }
  if (total <= 0.0) throw ValidationError("belief: weights sum to zero");
  for (double& w : weights) w /= total;
  return weights;
}

inline void check_belief(const Belief& p, std::size_t n_states, const char* what = "belief") {
  if (p.size() != n_states) throw ValidationError(std::string(what) + ": wrong dimension");
  double total = 0.0;
  for (double v : p) {
    if (!std::isfinite(v) || v < -kNormTol) throw ValidationError(std::string(what) + ": bad entry");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9) throw ValidationError(std::string(what) + ": not normalized");
}

// Posterior from a prior and the per-state probability of one observation.
inline Belief bayes_update(const Belief& prior, const std::vector<double>& likelihood) {
  if (prior.size() != likelihood.size()) throw ValidationError("bayes: dimension mismatch");
  Belief post(prior.size());
  double marginal = 0.0;
  for (std::size_t w = 0; w < prior.size(); ++w) {
    if (likelihood[w] < -kNormTol) throw ValidationError("bayes: negative likelihood");
    post[w] = prior[w] * std::max(likelihood[w], 0.0);
    marginal += post[w];
  }
  if (marginal <= kNormTol) throw ValidationError("bayes: message has zero probability");
  for (double& v : post) v /= marginal;
  return post;
}

// L-infinity distance from a point to the hull of a vertex list.  Distance
// semantics (rather than raw feasibility of the combination system) keep the
// tolerance meaningful when vertices carry jitter near the simplex boundary,
// where signed residuals cannot be relaxed.
inline double hull_distance(const Belief& p, const std::vector<Belief>& vertices) {
  if (vertices.empty()) throw ValidationError("hull distance: no vertices");
  const std::size_t n = p.size();
  const std::size_t k = vertices.size();
  lp::LinearProgram prog;
  prog.n = k + 1;   // combination weights plus the distance bound
  prog.c.assign(k + 1, 0.0);
  prog.c[k] = 1.0;
  prog.maximize = false;
  for (std::size_t w = 0; w < n; ++w) {
    std::vector<double> lo(k + 1), hi(k + 1);
    for (std::size_t j = 0; j < k; ++j) lo[j] = hi[j] = vertices[j][w];
    lo[k] = 1.0;    // combination + t >= p
    hi[k] = -1.0;   // combination - t <= p
    prog.add_row(std::move(lo), lp::Rel::GE, p[w]);
    prog.add_row(std::move(hi), lp::Rel::LE, p[w]);
  }
  std::vector<double> ones(k + 1, 1.0);
  ones[k] = 0.0;
  prog.add_row(std::move(ones), lp::Rel::EQ, 1.0);
  auto r = lp::lp_solve(prog);
  if (r.status != lp::Status::Optimal)
    throw std::runtime_error("hull distance: projection program failed");
  return std::max(r.value, 0.0);
}

inline bool in_hull(const Belief& p, const std::vector<Belief>& vertices,
                    double tol = kFeasTol) {
  if (vertices.empty()) return false;
  return hull_distance(p, vertices) <= tol;
}

// Closed convex set of beliefs, stored through a minimal vertex list.
// Canonical form: no vertex lies in the hull of the others and vertices are
// sorted lexicographically, so canonical sets compare deterministically.
struct BeliefSet {
  std::vector<Belief> vertices;

  std::size_t n_states() const { return vertices.empty() ? 0 : vertices.front().size(); }
  bool contains(const Belief& p, double tol = kFeasTol) const { return in_hull(p, vertices, tol); }
};

inline BeliefSet canonicalize(std::vector<Belief> points, double tol = kFeasTol) {
  if (points.empty()) throw ValidationError("belief set: no vertices");
  const std::size_t n = points.front().size();
  for (Belief& p : points) {
    check_belief(p, n, "belief set vertex");
    double total = 0.0;
    for (double& v : p) {
      v = std::max(v, 0.0);
      total += v;
    }
    for (double& v : p) v /= total;
  }
  // Drop duplicates first, keeping the earliest occurrence.
  std::vector<Belief> kept;
  for (const Belief& p : points) {
    bool dup = false;
    for (const Belief& q : kept) {
      if (linf_dist(p, q) <= tol) { dup = true; break; }
    }
    if (!dup) kept.push_back(p);
  }
  // Remove every point expressible by the others.  Dropping a redundant
  // point never changes the hull, so testing against the surviving list is
  // sound.
  for (std::size_t i = 0; i < kept.size();) {
    std::vector<Belief> others;
    others.reserve(kept.size() - 1);
    for (std::size_t j = 0; j < kept.size(); ++j)
      if (j != i) others.push_back(kept[j]);
    if (!others.empty() && in_hull(kept[i], others, tol))
      kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
    else
      ++i;
  }
  std::sort(kept.begin(), kept.end());
  return BeliefSet{std::move(kept)};
}

inline bool set_equal(const BeliefSet& a, const BeliefSet& b, double tol = kFeasTol) {
  if (a.n_states() != b.n_states()) return false;
  for (const Belief& v : a.vertices)
    if (!in_hull(v, b.vertices, tol)) return false;
  for (const Belief& v : b.vertices)
    if (!in_hull(v, a.vertices, tol)) return false;
  return true;
}

// Hausdorff distance between canonical vertex lists (L-infinity metric).
inline double vertex_hausdorff(const BeliefSet& a, const BeliefSet& b) {
  auto one_sided = [](const std::vector<Belief>& xs, const std::vector<Belief>& ys) {
    double worst = 0.0;
    for (const Belief& x : xs) {
      double best = std::numeric_limits<double>::infinity();
      for (const Belief& y : ys) best = std::min(best, linf_dist(x, y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_sided(a.vertices, b.vertices), one_sided(b.vertices, a.vertices));
}

// Uniform grid over the belief simplex.
struct GridSpec {
  int resolution = 10;   // coordinates are multiples of 1/resolution
};

// All compositions of `resolution` into n_states parts, first coordinate
// descending, e.g. resolution 2 over two states: (1,0), (.5,.5), (0,1).
inline std::vector<Belief> simplex_grid(const GridSpec& spec, std::size_t n_states) {
  if (spec.resolution < 1) throw ValidationError("grid: resolution must be positive");
  if (n_states < 1) throw ValidationError("grid: empty state space");
  const int k = spec.resolution;
  std::vector<Belief> out;
  Belief cur(n_states, 0.0);
  auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
    if (pos + 1 == n_states) {
      cur[pos] = static_cast<double>(left) / k;
      out.push_back(cur);
      return;
    }
    for (int c = left; c >= 0; --c) {
      cur[pos] = static_cast<double>(c) / k;
      self(self, pos + 1, left - c);
    }
  };
  rec(rec, 0, k);
  return out;
}

// A finite persuasion game: payoff tables are action-by-state.
struct Game {
  std::size_t n_states = 0;
  Belief prior;
  std::vector<std::string> actions;
  Matrix u_s;   // sender payoffs
  Matrix u_r;   // receiver payoffs

  std::size_t n_actions() const { return actions.size(); }

  void validate() const {
    if (n_states < 2) throw ValidationError("game: need at least two states");
    if (actions.empty()) throw ValidationError("game: need at least one action");
    check_belief(prior, n_states, "prior");
    for (double v : prior)
      if (v <= kNormTol) throw ValidationError("game: prior must have full support");
    auto check_table = [&](const Matrix& u, const char* name) {
      if (u.size() != actions.size())
        throw ValidationError(std::string(name) + ": one row per action required");
      for (const auto& row : u) {
        if (row.size() != n_states)
          throw ValidationError(std::string(name) + ": one column per state required");
        for (double v : row)
          if (!std::isfinite(v)) throw ValidationError(std::string(name) + ": non-finite payoff");
      }
    };
    check_table(u_s, "u_S");
    check_table(u_r, "u_R");
  }
};

}  // namespace persuasion
