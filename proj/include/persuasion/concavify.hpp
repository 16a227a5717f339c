#pragma once

// Concave closure of sampled point values and the solvers assembled from it:
// the one-shot baseline, the robust value with its optimal splitting, and the
// device realizing that splitting (or the best constructible stand-in when
// the optimal plan leans on posteriors no dilation family can spread).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "persuasion/core.hpp"
#include "persuasion/devices.hpp"
#include "persuasion/lp.hpp"
#include "persuasion/meu.hpp"
#include "persuasion/value.hpp"
#include "persuasion/vbp.hpp"

namespace persuasion {

struct ValueSample {
  Belief p;
  double v = 0.0;
};

struct ClosureResult {
  double value = 0.0;
  std::vector<std::size_t> indices;   // support among the input samples
  std::vector<double> weights;
  std::vector<double> majorant;       // affine certificate from the duals:
  double offset = 0.0;                // majorant·p + offset ≥ v on all samples
};

// Best average sample value among distributions over the sample beliefs that
// average to p0.  Solved as the primal splitting program; the row duals hand
// back the affine majorant touching at p0.
inline ClosureResult concave_closure_at(const std::vector<ValueSample>& samples,
                                        const Belief& p0) {
  if (samples.empty()) throw ValidationError("concave closure: no samples");
  const std::size_t n = p0.size();
  const std::size_t k = samples.size();
  for (const ValueSample& s : samples) {
    check_belief(s.p, n, "closure sample");
    if (!std::isfinite(s.v)) throw ValidationError("concave closure: non-finite sample value");
  }
  lp::LinearProgram prog;
  prog.n = k;
  prog.maximize = true;
  prog.c.resize(k);
  for (std::size_t i = 0; i < k; ++i) prog.c[i] = samples[i].v;
  for (std::size_t w = 0; w < n; ++w) {
    std::vector<double> row(k);
    for (std::size_t i = 0; i < k; ++i) row[i] = samples[i].p[w];
    prog.add_row(std::move(row), lp::Rel::EQ, p0[w]);
  }
  prog.add_row(std::vector<double>(k, 1.0), lp::Rel::EQ, 1.0);
  auto r = lp::lp_solve(prog);
  if (r.status != lp::Status::Optimal)
    throw InfeasibleError("concave closure: prior is outside the hull of the samples");

  ClosureResult out;
  out.value = r.value;
  out.majorant.assign(r.duals.begin(), r.duals.begin() + static_cast<std::ptrdiff_t>(n));
  out.offset = r.duals[n];
  // A prior sitting on a maximizing sample needs no splitting; prefer that
  // degenerate basic solution so no-persuasion optima read off as point masses.
  for (std::size_t i = 0; i < k; ++i) {
    if (samples[i].v >= r.value - 1e-12 && linf_dist(samples[i].p, p0) <= 1e-12) {
      out.value = samples[i].v;
      out.indices.assign(1, i);
      out.weights.assign(1, 1.0);
      return out;
    }
  }
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (r.x[i] > 1e-12) {
      out.indices.push_back(i);
      out.weights.push_back(r.x[i]);
      total += r.x[i];
    }
  }
  for (double& w : out.weights) w /= total;
  return out;
}

struct BayesianSolution {
  double value = 0.0;
  std::vector<Belief> posteriors;
  std::vector<double> weights;
};

namespace detail {

inline bool on_grid(const Belief& p, const std::vector<Belief>& grid) {
  for (const Belief& q : grid)
    if (linf_dist(p, q) <= 1e-12) return true;
  return false;
}

}  // namespace detail

inline BayesianSolution solve_bayesian_persuasion(const Game& g, const GridSpec& spec) {
  g.validate();
  auto grid = simplex_grid(spec, g.n_states);
  // the prior joins the candidate posteriors so staying silent is always on the table
  if (!detail::on_grid(g.prior, grid)) grid.push_back(g.prior);
  std::vector<ValueSample> samples;
  samples.reserve(grid.size());
  for (const Belief& p : grid) samples.push_back({p, bayes_sender_payoff(g, p)});
  auto closure = concave_closure_at(samples, g.prior);
  BayesianSolution out;
  out.value = closure.value;
  for (std::size_t j = 0; j < closure.indices.size(); ++j) {
    out.posteriors.push_back(grid[closure.indices[j]]);
    out.weights.push_back(closure.weights[j]);
  }
  return out;
}

struct SolutionAtom {
  Belief posterior;
  double weight = 0.0;
  BeliefSet set;                  // candidate set backing the value at this posterior
  MixedAction receiver_strategy;  // tie-broken cautious response at the posterior
  double sender_payoff = 0.0;
};

struct PersuasionSolution {
  double value = 0.0;            // concave closure of the robust point value at the prior
  double bayesian_value = 0.0;   // one-shot splitting baseline
  std::vector<SolutionAtom> atoms;
  SetDistribution mu;            // the plan behind `value`, one atom per split posterior
  Selection phi;
  AmbiguousDevice device;        // constructed device (see note when it falls short)
  double device_value = 0.0;
  bool device_attains = false;
  std::string note;
};

namespace detail {

struct GridPlan {
  std::vector<SolutionAtom> atoms;
  SetDistribution mu;
  Selection phi;
};

inline GridPlan assemble_plan(const Game& g, const std::vector<ValueGridRow>& rows,
                              const ClosureResult& closure, bool constructible) {
  GridPlan plan;
  for (std::size_t j = 0; j < closure.indices.size(); ++j) {
    const ValueGridRow& row = rows[closure.indices[j]];
    const PointValue& pv = constructible ? row.constructible : row.robust;
    SolutionAtom atom;
    atom.posterior = row.p;
    atom.weight = closure.weights[j];
    atom.set = pv.set;
    auto tie = sender_preferred_response(g, pv.set, row.p);
    atom.receiver_strategy = tie.strategy;
    atom.sender_payoff = tie.sender_value;
    plan.mu.support.push_back(pv.set);
    plan.mu.weights.push_back(atom.weight);
    plan.phi.picks.push_back(row.p);
    plan.atoms.push_back(std::move(atom));
  }
  return plan;
}

}  // namespace detail

// Grid solver: concavifies the robust point value at the prior, reads the
// optimal splitting off the program, and constructs a device for it.  When
// the optimal plan selects a posterior that sits on the boundary of its
// candidate set (so no dilation family can spread that set around it), the
// returned device instead realizes the best plan among constructible ones
// and the gap is spelled out in `note`.
inline PersuasionSolution solve_ambiguous_persuasion(const Game& g, const GridSpec& spec,
                                                     std::size_t max_vertices = 2,
                                                     std::uint64_t seed = 0x5eed5u) {
  g.validate();
  auto rows = value_grid(g, spec, max_vertices);
  { // the prior joins the candidate posteriors so staying silent is always on the table
    const auto grid = simplex_grid(spec, g.n_states);
    if (!detail::on_grid(g.prior, grid)) {
      ValueGridRow row;
      row.p = g.prior;
      row.bayes = bayesian_point_value(g, g.prior);
      row.robust = robust_point_value(g, g.prior, grid, max_vertices);
      row.constructible = constructible_point_value(g, g.prior, grid, max_vertices);
      rows.push_back(std::move(row));
    }
  }

  std::vector<ValueSample> robust, bayes;
  robust.reserve(rows.size());
  bayes.reserve(rows.size());
  for (const ValueGridRow& row : rows) {
    robust.push_back({row.p, row.robust.value});
    bayes.push_back({row.p, row.bayes});
  }
  const auto main_closure = concave_closure_at(robust, g.prior);
  const auto base_closure = concave_closure_at(bayes, g.prior);

  PersuasionSolution out;
  out.value = main_closure.value;
  out.bayesian_value = base_closure.value;
  auto plan = detail::assemble_plan(g, rows, main_closure, /*constructible=*/false);
  out.atoms = std::move(plan.atoms);
  out.mu = std::move(plan.mu);
  out.phi = std::move(plan.phi);

  bool exact = true;
  try {
    out.device = build_device_from_vbp(out.mu, out.phi, g.prior);
  } catch (const InfeasibleError&) {
    exact = false;
  } catch (const ValidationError&) {
    exact = false;
  }
  if (!exact) {
    std::vector<ValueSample> constructible;
    constructible.reserve(rows.size());
    for (const ValueGridRow& row : rows)
      constructible.push_back({row.p, row.constructible.value});
    const auto fallback_closure = concave_closure_at(constructible, g.prior);
    auto fallback = detail::assemble_plan(g, rows, fallback_closure, /*constructible=*/true);
    out.device = build_device_from_vbp(fallback.mu, fallback.phi, g.prior);
    out.note = "optimal plan is not device-constructible; returned device realizes the best "
               "constructible splitting instead";
  }
  out.device_value = evaluate_device(g, out.device, g.prior, 50, seed).value;
  out.device_attains = std::abs(out.device_value - out.value) <= kValueTol;
  return out;
}

struct SenderValueMax {
  double value = 0.0;
  Selection phi;
  bool exact = false;   // exhaustive over the target combinations
};

namespace detail {

inline double plan_value(const Game& g, const SetDistribution& mu, const Selection& phi) {
  double total = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu.weights[i] <= kSupportTol) continue;
    total += mu.weights[i] * set_sender_payoff(g, mu.support[i], phi.picks[i]);
  }
  return total;
}

// verifying selection pulled as far as possible toward the per-set targets
inline Selection align_selection(const SetDistribution& mu, const Belief& prior,
                                 const std::vector<Belief>& targets) {
  auto sys = vbp_system(mu, prior);
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t j = 0; j < mu.support[i].vertices.size(); ++j)
      sys.prog.c[sys.offset[i] + j] =
          (mu.weights[i] + 1e-9) * dot(targets[i], mu.support[i].vertices[j]);
  auto r = lp::lp_solve(sys.prog);
  if (r.status != lp::Status::Optimal)
    throw InfeasibleError("selection search: distribution is not plausible");
  Selection phi;
  phi.picks.reserve(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) phi.picks.push_back(pick_from(sys, mu, r.x, i));
  return phi;
}

}  // namespace detail

// Best sender value among verifying selections.  The per-set payoff is a
// maximum of linear functions of the pick, so the optimum sits at an extreme
// selection; those are hunted by aiming the verify program at combinations
// of per-set targets (set vertices plus the vertices of the verifying
// posterior sets).  Exhaustive when the combination count fits the cap,
// otherwise the best of per-set coordinate sweeps is returned as a lower
// bound with `exact` cleared.
inline SenderValueMax sender_value_max(const Game& g, const SetDistribution& mu,
                                       const Belief& prior, std::size_t combo_cap = 10000) {
  g.validate();
  validate_set_distribution(mu);
  if (mu.n_states() != g.n_states)
    throw ValidationError("selection search: distribution and game disagree on the state count");
  check_belief(prior, g.n_states, "prior");
  auto base = verify_vbp(mu, prior);
  if (!base) throw InfeasibleError("selection search: distribution is not plausible");

  std::vector<std::vector<Belief>> targets(mu.size());
  double combos = 1.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    targets[i] = mu.support[i].vertices;
    for (const Belief& v : verifying_posterior_set(mu, prior, i).vertices) {
      bool dup = false;
      for (const Belief& t : targets[i])
        if (linf_dist(t, v) <= 1e-9) { dup = true; break; }
      if (!dup) targets[i].push_back(v);
    }
    combos *= static_cast<double>(targets[i].size());
  }

  SenderValueMax out;
  out.exact = combos <= static_cast<double>(combo_cap);
  out.phi = *base;
  out.value = detail::plan_value(g, mu, out.phi);

  auto consider = [&](const std::vector<Belief>& aim) {
    Selection cand;
    // a target tuple that already averages to the prior needs no repair
    Belief mean(g.n_states, 0.0);
    for (std::size_t i = 0; i < mu.size(); ++i)
      for (std::size_t w = 0; w < g.n_states; ++w) mean[w] += mu.weights[i] * aim[i][w];
    if (linf_dist(mean, prior) <= 1e-9) {
      cand.picks = aim;
    } else {
      cand = detail::align_selection(mu, prior, aim);
    }
    const double v = detail::plan_value(g, mu, cand);
    if (v > out.value + 1e-12) {
      out.value = v;
      out.phi = std::move(cand);
    }
  };

  if (out.exact) {
    std::vector<std::size_t> pick(mu.size(), 0);
    for (;;) {
      std::vector<Belief> aim;
      aim.reserve(mu.size());
      for (std::size_t i = 0; i < mu.size(); ++i) aim.push_back(targets[i][pick[i]]);
      consider(aim);
      std::size_t at = 0;
      while (at < mu.size() && ++pick[at] == targets[at].size()) pick[at++] = 0;
      if (at == mu.size()) break;
    }
  } else {
    // coordinate sweeps from the repaired base selection
    for (int pass = 0; pass < 4; ++pass) {
      const double before = out.value;
      for (std::size_t i = 0; i < mu.size(); ++i) {
        for (const Belief& v : targets[i]) {
          std::vector<Belief> aim = out.phi.picks;
          aim[i] = v;
          consider(aim);
        }
      }
      if (out.value <= before + 1e-12) break;
    }
  }
  return out;
}

}  // namespace persuasion
