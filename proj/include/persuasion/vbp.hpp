#pragma once

// Distributions over belief sets and their verification.  A set distribution
// is plausible at a prior when one posterior can be selected from each set so
// that the weighted selections average to the prior.  The selections form a
// polytope (one feasibility system in the convex weights), so verification,
// pinned membership, and the per-set verifying posterior sets are all linear
// programs over the same skeleton.

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "persuasion/core.hpp"
#include "persuasion/lp.hpp"

namespace persuasion {

struct SetDistribution {
  std::vector<BeliefSet> support;
  std::vector<double> weights;

  std::size_t size() const { return support.size(); }
  std::size_t n_states() const { return support.empty() ? 0 : support.front().n_states(); }
};

struct Selection {
  std::vector<Belief> picks;   // one per support set
};

inline void validate_set_distribution(const SetDistribution& mu) {
  if (mu.support.empty()) throw ValidationError("set distribution: empty support");
  if (mu.support.size() != mu.weights.size())
    throw ValidationError("set distribution: support and weights differ in length");
  const std::size_t n = mu.support.front().n_states();
  double total = 0.0;
  for (double w : mu.weights) {
    if (!std::isfinite(w) || w < -1e-12)
      throw ValidationError("set distribution: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw ValidationError("set distribution: weights must sum to one");
  for (const BeliefSet& s : mu.support) {
    if (s.vertices.empty()) throw ValidationError("set distribution: empty support set");
    for (const Belief& v : s.vertices) check_belief(v, n, "support set vertex");
  }
}

// Canonicalizes every set and validates.
inline SetDistribution make_set_distribution(std::vector<std::vector<Belief>> sets,
                                             std::vector<double> weights) {
  SetDistribution mu;
  mu.support.reserve(sets.size());
  for (auto& s : sets) mu.support.push_back(canonicalize(std::move(s)));
  mu.weights = std::move(weights);
  validate_set_distribution(mu);
  return mu;
}

namespace detail {

// Shared feasibility skeleton in the convex weights λ_{i,j} over each set's
// vertices: rows fix Σ_j λ_{i,j} = 1 per set and the weighted barycenter at
// the prior.  Callers append objectives or pin rows.
struct VbpSystem {
  lp::LinearProgram prog;
  std::vector<std::size_t> offset;   // first λ-column of each set
  std::size_t n_vars = 0;
};

inline VbpSystem vbp_system(const SetDistribution& mu, const Belief& prior) {
  VbpSystem sys;
  sys.offset.reserve(mu.size());
  for (const BeliefSet& s : mu.support) {
    sys.offset.push_back(sys.n_vars);
    sys.n_vars += s.vertices.size();
  }
  sys.prog.n = sys.n_vars;
  sys.prog.c.assign(sys.n_vars, 0.0);
  sys.prog.maximize = true;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    std::vector<double> row(sys.n_vars, 0.0);
    for (std::size_t j = 0; j < mu.support[i].vertices.size(); ++j)
      row[sys.offset[i] + j] = 1.0;
    sys.prog.add_row(std::move(row), lp::Rel::EQ, 1.0);
  }
  const std::size_t n = prior.size();
  for (std::size_t w = 0; w < n; ++w) {
    std::vector<double> row(sys.n_vars, 0.0);
    for (std::size_t i = 0; i < mu.size(); ++i)
      for (std::size_t j = 0; j < mu.support[i].vertices.size(); ++j)
        row[sys.offset[i] + j] = mu.weights[i] * mu.support[i].vertices[j][w];
    sys.prog.add_row(std::move(row), lp::Rel::EQ, prior[w]);
  }
  return sys;
}

inline Belief pick_from(const VbpSystem& sys, const SetDistribution& mu,
                        const std::vector<double>& x, std::size_t i) {
  const std::size_t n = mu.n_states();
  Belief pick(n, 0.0);
  for (std::size_t j = 0; j < mu.support[i].vertices.size(); ++j) {
    const double l = std::max(x[sys.offset[i] + j], 0.0);
    for (std::size_t w = 0; w < n; ++w) pick[w] += l * mu.support[i].vertices[j][w];
  }
  return make_belief(pick);
}

}  // namespace detail

// Looks for a selection whose weighted average is the prior.
inline std::optional<Selection> verify_vbp(const SetDistribution& mu, const Belief& prior) {
  validate_set_distribution(mu);
  check_belief(prior, mu.n_states(), "prior");
  auto sys = detail::vbp_system(mu, prior);
  auto r = lp::lp_solve(sys.prog);
  if (r.status != lp::Status::Optimal) return std::nullopt;
  Selection phi;
  phi.picks.reserve(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i)
    phi.picks.push_back(detail::pick_from(sys, mu, r.x, i));
  return phi;
}

inline bool selection_verifies(const SetDistribution& mu, const Selection& phi,
                               const Belief& prior, double tol = kFeasTol) {
  if (phi.picks.size() != mu.size()) return false;
  const std::size_t n = mu.n_states();
  Belief mean(n, 0.0);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (phi.picks[i].size() != n) return false;
    if (!mu.support[i].contains(phi.picks[i], tol)) return false;
    for (std::size_t w = 0; w < n; ++w) mean[w] += mu.weights[i] * phi.picks[i][w];
  }
  return linf_dist(mean, prior) <= tol;
}

inline Selection blend_selections(const Selection& a, const Selection& b, double alpha) {
  if (a.picks.size() != b.picks.size()) throw ValidationError("blend: selection sizes differ");
  if (alpha < 0.0 || alpha > 1.0) throw ValidationError("blend: alpha outside [0,1]");
  Selection out;
  out.picks.reserve(a.picks.size());
  for (std::size_t i = 0; i < a.picks.size(); ++i) {
    Belief p(a.picks[i].size());
    for (std::size_t w = 0; w < p.size(); ++w)
      p[w] = alpha * a.picks[i][w] + (1.0 - alpha) * b.picks[i][w];
    out.picks.push_back(std::move(p));
  }
  return out;
}

// A verifying selection whose pick for set `index` is pinned to `pick`, if
// one exists.
inline std::optional<Selection> pin_selection(const SetDistribution& mu, const Belief& prior,
                                              std::size_t index, const Belief& pick) {
  auto sys = detail::vbp_system(mu, prior);
  const std::size_t n = mu.n_states();
  for (std::size_t w = 0; w < n; ++w) {
    std::vector<double> row(sys.n_vars, 0.0);
    for (std::size_t j = 0; j < mu.support[index].vertices.size(); ++j)
      row[sys.offset[index] + j] = mu.support[index].vertices[j][w];
    sys.prog.add_row(std::move(row), lp::Rel::EQ, pick[w]);
  }
  auto r = lp::lp_solve(sys.prog);
  if (r.status != lp::Status::Optimal) return std::nullopt;
  Selection phi;
  phi.picks.reserve(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i)
    phi.picks.push_back(detail::pick_from(sys, mu, r.x, i));
  phi.picks[index] = pick;   // exact by construction, avoid round-trip noise
  return phi;
}

inline bool pin_feasible(const SetDistribution& mu, const Belief& prior, std::size_t index,
                         const Belief& pick) {
  return pin_selection(mu, prior, index, pick).has_value();
}

namespace detail {

// Support point of the verifying posterior set of one index in direction d:
// maximize d·pick, then pin coordinates lexicographically so ties resolve to
// an actual vertex of the optimal face.
inline Belief vbp_support_point(const SetDistribution& mu, const Belief& prior,
                                std::size_t index, const std::vector<double>& d) {
  auto sys = vbp_system(mu, prior);
  const std::size_t n = mu.n_states();
  auto objective_for = [&](const std::vector<double>& dir) {
    std::vector<double> c(sys.n_vars, 0.0);
    for (std::size_t j = 0; j < mu.support[index].vertices.size(); ++j)
      c[sys.offset[index] + j] = dot(dir, mu.support[index].vertices[j]);
    return c;
  };
  sys.prog.c = objective_for(d);
  auto r = lp::lp_solve(sys.prog);
  if (r.status != lp::Status::Optimal)
    throw InfeasibleError("verifying posterior set: distribution is not plausible");
  for (std::size_t stage = 0; stage + 1 < n; ++stage) {
    std::vector<double> lock = sys.prog.c;
    sys.prog.add_row(std::move(lock), lp::Rel::GE, r.value - 1e-9);
    std::vector<double> e(n, 0.0);
    e[stage] = 1.0;
    sys.prog.c = objective_for(e);
    r = lp::lp_solve(sys.prog);
    if (r.status != lp::Status::Optimal)
      throw InfeasibleError("verifying posterior set: tie resolution failed");
  }
  return pick_from(sys, mu, r.x, index);
}

}  // namespace detail

// The set of posteriors of support[index] that extend to a verifying
// selection.  Exact for up to three states (two-state sets are intervals;
// three-state polygons are traced by adaptively refining support directions
// until no new extreme point appears).  For four or more states a fixed
// direction family is probed and the result is an inner approximation.
inline BeliefSet verifying_posterior_set(const SetDistribution& mu, const Belief& prior,
                                         std::size_t index) {
  validate_set_distribution(mu);
  check_belief(prior, mu.n_states(), "prior");
  if (index >= mu.size()) throw ValidationError("verifying posterior set: bad index");
  if (!verify_vbp(mu, prior))
    throw InfeasibleError("verifying posterior set: distribution is not plausible");
  const std::size_t n = mu.n_states();

  std::vector<Belief> points;
  auto probe = [&](const std::vector<double>& d) {
    points.push_back(detail::vbp_support_point(mu, prior, index, d));
  };

  if (n == 2) {
    probe({1.0, -1.0});
    probe({-1.0, 1.0});
  } else if (n == 3) {
    // orthonormal basis of the direction plane {d : Σd = 0}
    const double s2 = std::sqrt(2.0), s6 = std::sqrt(6.0);
    const std::vector<double> u = {1.0 / s2, -1.0 / s2, 0.0};
    const std::vector<double> w = {1.0 / s6, 1.0 / s6, -2.0 / s6};
    auto at_angle = [&](double th) {
      std::vector<double> d(3);
      for (std::size_t k = 0; k < 3; ++k)
        d[k] = std::cos(th) * u[k] + std::sin(th) * w[k];
      return d;
    };
    auto support_at = [&](double th) { return detail::vbp_support_point(mu, prior, index, at_angle(th)); };
    struct Node {
      double th;
      Belief pt;
    };
    std::vector<Node> fan;
    const int kInitial = 8;
    const double pi2 = 6.283185307179586;
    for (int k = 0; k < kInitial; ++k) {
      double th = pi2 * k / kInitial;
      fan.push_back({th, support_at(th)});
    }
    fan.push_back({pi2, fan.front().pt});
    // split every arc whose endpoints see different extreme points until the
    // midpoint stops revealing anything new
    int budget = 200;
    for (std::size_t k = 0; k + 1 < fan.size() && budget > 0;) {
      if (linf_dist(fan[k].pt, fan[k + 1].pt) <= 1e-8 || fan[k + 1].th - fan[k].th < 1e-6) {
        ++k;
        continue;
      }
      double mid = 0.5 * (fan[k].th + fan[k + 1].th);
      Belief pt = support_at(mid);
      --budget;
      if (linf_dist(pt, fan[k].pt) <= 1e-8 || linf_dist(pt, fan[k + 1].pt) <= 1e-8) {
        ++k;
        continue;
      }
      fan.insert(fan.begin() + static_cast<std::ptrdiff_t>(k) + 1, Node{mid, std::move(pt)});
    }
    for (auto& node : fan) points.push_back(std::move(node.pt));
  } else {
    std::vector<double> d(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      d.assign(n, 0.0);
      d[k] = 1.0;
      probe(d);
      d[k] = -1.0;
      probe(d);
    }
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t l = 0; l < n; ++l) {
        if (k == l) continue;
        d.assign(n, 0.0);
        d[k] = 1.0;
        d[l] = -1.0;
        probe(d);
      }
    }
  }
  // probe jitter sits a few 1e-9 off the exact face, so collapse at a
  // coarser tolerance than the canonical default
  return canonicalize(std::move(points), 1e-7);
}

// A distribution is fully verified when every vertex of every support set
// extends to a verifying selection, i.e. the verifying posterior sets fill
// the whole support sets.
inline bool is_fully_verified(const SetDistribution& mu, const Belief& prior) {
  validate_set_distribution(mu);
  check_belief(prior, mu.n_states(), "prior");
  if (!verify_vbp(mu, prior))
    throw InfeasibleError("fully-verified check: distribution is not plausible");
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (const Belief& v : mu.support[i].vertices)
      if (!pin_feasible(mu, prior, i, v)) return false;
  return true;
}

}  // namespace persuasion
