#pragma once

// Signalling devices.  A single device maps states to message lotteries; an
// ambiguous device is the convex hull of finitely many generators over one
// message list with common support.  Dilations split a message into weighted
// sub-messages whose posteriors sit on prescribed vertices, and closing a
// dilation under sub-message permutations is what lets one committed device
// family spread a whole belief set behind every sub-message.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "persuasion/core.hpp"
#include "persuasion/lp.hpp"
#include "persuasion/meu.hpp"
#include "persuasion/value.hpp"
#include "persuasion/vbp.hpp"

namespace persuasion {

inline constexpr double kSupportTol = 1e-12;

struct Device {
  std::vector<std::string> messages;
  Matrix rows;   // rows[state][message]

  std::size_t n_states() const { return rows.size(); }
  std::size_t n_messages() const { return messages.size(); }
};

inline void validate_device(const Device& d) {
  if (d.messages.empty()) throw ValidationError("device: no messages");
  if (d.rows.empty()) throw ValidationError("device: no states");
  for (std::size_t i = 0; i < d.messages.size(); ++i) {
    if (d.messages[i].empty()) throw ValidationError("device: empty message label");
    for (std::size_t j = i + 1; j < d.messages.size(); ++j)
      if (d.messages[i] == d.messages[j])
        throw ValidationError("device: duplicate message label '" + d.messages[i] + "'");
  }
  for (const std::vector<double>& row : d.rows) {
    if (row.size() != d.messages.size())
      throw ValidationError("device: row length does not match the message list");
    double total = 0.0;
    for (double v : row) {
      if (!std::isfinite(v) || v < -kSupportTol)
        throw ValidationError("device: negative message probability");
      total += v;
    }
    if (std::abs(total - 1.0) > 1e-9)
      throw ValidationError("device: state row does not sum to one");
  }
}

inline std::vector<double> marginal(const Device& d, const Belief& prior) {
  validate_device(d);
  check_belief(prior, d.n_states(), "prior");
  std::vector<double> tau(d.n_messages(), 0.0);
  for (std::size_t w = 0; w < d.n_states(); ++w)
    for (std::size_t m = 0; m < d.n_messages(); ++m) tau[m] += prior[w] * d.rows[w][m];
  return tau;
}

inline Belief device_posterior(const Device& d, const Belief& prior, std::size_t m) {
  if (m >= d.n_messages()) throw ValidationError("device posterior: no such message");
  std::vector<double> likelihood(d.n_states());
  for (std::size_t w = 0; w < d.n_states(); ++w) likelihood[w] = d.rows[w][m];
  return bayes_update(prior, likelihood);
}

struct AmbiguousDevice {
  std::vector<std::string> messages;
  std::vector<Matrix> generators;   // each is rows[state][message]

  std::size_t n_states() const { return generators.empty() ? 0 : generators.front().size(); }
  std::size_t n_messages() const { return messages.size(); }
  Device generator(std::size_t g) const { return Device{messages, generators[g]}; }
};

namespace detail {

inline bool column_live(const Matrix& rows, std::size_t m) {
  for (const std::vector<double>& row : rows)
    if (row[m] > kSupportTol) return true;
  return false;
}

}  // namespace detail

inline void validate_ambiguous_device(const AmbiguousDevice& dev) {
  if (dev.generators.empty()) throw ValidationError("ambiguous device: no generators");
  for (const Matrix& g : dev.generators) {
    Device single{dev.messages, g};
    validate_device(single);
    if (g.size() != dev.generators.front().size())
      throw ValidationError("ambiguous device: generators disagree on the state count");
  }
  // common support: a message is live for every generator or for none
  for (std::size_t m = 0; m < dev.n_messages(); ++m) {
    const bool live = detail::column_live(dev.generators.front(), m);
    for (std::size_t g = 1; g < dev.generators.size(); ++g)
      if (detail::column_live(dev.generators[g], m) != live)
        throw ValidationError("ambiguous device: generators disagree on the support of '" +
                              dev.messages[m] + "'");
  }
}

// Hull of the generator posteriors.  The posterior map is a perspective map
// of the device, so the hull of generator images is exactly the image of the
// generator hull; no inner approximation is involved.
inline BeliefSet posterior_set(const AmbiguousDevice& dev, const Belief& prior, std::size_t m) {
  validate_ambiguous_device(dev);
  check_belief(prior, dev.n_states(), "prior");
  if (m >= dev.n_messages()) throw ValidationError("posterior set: no such message");
  if (!detail::column_live(dev.generators.front(), m))
    throw ValidationError("posterior set: message outside the common support");
  std::vector<Belief> posts;
  posts.reserve(dev.generators.size());
  for (std::size_t g = 0; g < dev.generators.size(); ++g)
    posts.push_back(device_posterior(dev.generator(g), prior, m));
  return canonicalize(std::move(posts));
}

inline bool is_simple(const AmbiguousDevice& dev, const Belief& prior) {
  validate_ambiguous_device(dev);
  check_belief(prior, dev.n_states(), "prior");
  const auto base = marginal(dev.generator(0), prior);
  for (std::size_t g = 1; g < dev.generators.size(); ++g) {
    const auto tau = marginal(dev.generator(g), prior);
    for (std::size_t m = 0; m < tau.size(); ++m)
      if (std::abs(tau[m] - base[m]) > 1e-12) return false;
  }
  return true;
}

struct InducedDistribution {
  SetDistribution mu;
  std::vector<Selection> selections;   // one verifying selection per generator
};

// Reads the set distribution off a simple device: one atom per live message,
// identical posterior sets merged by weight addition.  Each generator's
// posteriors, averaged within a merged atom, verify the result.
inline InducedDistribution induced_distribution(const AmbiguousDevice& dev, const Belief& prior) {
  if (!is_simple(dev, prior)) throw ValidationError("induced distribution: device is not simple");
  const auto tau = marginal(dev.generator(0), prior);
  const std::size_t n = dev.n_states();
  const std::size_t n_gen = dev.generators.size();

  InducedDistribution out;
  std::vector<std::vector<Belief>> acc;   // acc[atom][generator], tau-weighted sums
  for (std::size_t m = 0; m < dev.n_messages(); ++m) {
    if (tau[m] <= kSupportTol) continue;
    BeliefSet pm = posterior_set(dev, prior, m);
    std::size_t at = out.mu.support.size();
    for (std::size_t i = 0; i < out.mu.support.size(); ++i) {
      if (set_equal(pm, out.mu.support[i], 1e-9)) {
        at = i;
        break;
      }
    }
    if (at == out.mu.support.size()) {
      out.mu.support.push_back(std::move(pm));
      out.mu.weights.push_back(0.0);
      acc.emplace_back(n_gen, Belief(n, 0.0));
    }
    out.mu.weights[at] += tau[m];
    for (std::size_t g = 0; g < n_gen; ++g) {
      const Belief q = device_posterior(dev.generator(g), prior, m);
      for (std::size_t w = 0; w < n; ++w) acc[at][g][w] += tau[m] * q[w];
    }
  }
  double total = std::accumulate(out.mu.weights.begin(), out.mu.weights.end(), 0.0);
  for (double& w : out.mu.weights) w /= total;
  out.selections.resize(n_gen);
  for (std::size_t g = 0; g < n_gen; ++g) {
    out.selections[g].picks.reserve(out.mu.size());
    for (std::size_t i = 0; i < out.mu.size(); ++i)
      out.selections[g].picks.push_back(make_belief(acc[i][g]));
  }
  return out;
}

// One generator per (set, vertex) pair: the selection pinned at that vertex,
// pushed through inverse Bayes.  Simple by construction, and every vertex of
// every set shows up as some generator's posterior, so the posterior sets
// recover the support sets exactly.
inline AmbiguousDevice simple_device_from_distribution(const SetDistribution& mu,
                                                       const Belief& prior) {
  validate_set_distribution(mu);
  const std::size_t n = mu.n_states();
  check_belief(prior, n, "prior");
  for (double p : prior)
    if (p <= kNormTol) throw ValidationError("simple device: prior must have full support");
  for (double w : mu.weights)
    if (w <= kSupportTol) throw ValidationError("simple device: zero-weight support set");
  if (!is_fully_verified(mu, prior))
    throw InfeasibleError("simple device: distribution is not fully verified");

  AmbiguousDevice dev;
  dev.messages.reserve(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) dev.messages.push_back("m" + std::to_string(i + 1));
  auto generator_for = [&](const Selection& phi) {
    Matrix rows(n, std::vector<double>(mu.size(), 0.0));
    for (std::size_t w = 0; w < n; ++w)
      for (std::size_t i = 0; i < mu.size(); ++i)
        rows[w][i] = mu.weights[i] * phi.picks[i][w] / prior[w];
    return rows;
  };
  auto same = [](const Matrix& a, const Matrix& b) {
    for (std::size_t w = 0; w < a.size(); ++w)
      for (std::size_t m = 0; m < a[w].size(); ++m)
        if (std::abs(a[w][m] - b[w][m]) > 1e-12) return false;
    return true;
  };
  for (std::size_t i = 0; i < mu.size(); ++i) {
    for (const Belief& v : mu.support[i].vertices) {
      auto phi = pin_selection(mu, prior, i, v);
      if (!phi)
        throw InfeasibleError("simple device: vertex pin lost feasibility");
      Matrix rows = generator_for(*phi);
      bool dup = false;
      for (const Matrix& g : dev.generators)
        if (same(g, rows)) { dup = true; break; }
      if (!dup) dev.generators.push_back(std::move(rows));
    }
  }
  validate_ambiguous_device(dev);
  return dev;
}

struct DilationMap {
  std::size_t parent = 0;                  // message index in the parent device
  std::vector<std::string> sub_messages;   // parent label + ".1", ".2", ...
  Matrix rows;                             // rows[sub][state] = g(sub | parent, state)
};

inline DilationMap identity_dilation(const Device& d, std::size_t m) {
  if (m >= d.n_messages()) throw ValidationError("dilation: no such message");
  DilationMap g;
  g.parent = m;
  g.sub_messages = {d.messages[m] + ".1"};
  g.rows = {std::vector<double>(d.n_states(), 1.0)};
  return g;
}

namespace detail {

// convex weights of q over the vertices, or nothing when q is farther than
// kFeasTol from the hull
inline std::optional<std::vector<double>> hull_weights(const Belief& q,
                                                       const std::vector<Belief>& vertices) {
  const std::size_t n = q.size();
  const std::size_t k = vertices.size();
  lp::LinearProgram prog;
  prog.n = k + 1;
  prog.c.assign(k + 1, 0.0);
  prog.c[k] = 1.0;
  prog.maximize = false;
  for (std::size_t w = 0; w < n; ++w) {
    std::vector<double> lo(k + 1), hi(k + 1);
    for (std::size_t j = 0; j < k; ++j) lo[j] = hi[j] = vertices[j][w];
    lo[k] = 1.0;
    hi[k] = -1.0;
    prog.add_row(std::move(lo), lp::Rel::GE, q[w]);
    prog.add_row(std::move(hi), lp::Rel::LE, q[w]);
  }
  std::vector<double> ones(k + 1, 1.0);
  ones[k] = 0.0;
  prog.add_row(std::move(ones), lp::Rel::EQ, 1.0);
  auto r = lp::lp_solve(prog);
  if (r.status != lp::Status::Optimal || r.value > kFeasTol) return std::nullopt;
  std::vector<double> lambda(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(k));
  double total = 0.0;
  for (double& l : lambda) {
    l = std::max(l, 0.0);
    total += l;
  }
  for (double& l : lambda) l /= total;
  return lambda;
}

inline DilationMap dilation_from_weights(const Device& d, std::size_t m, const Belief& q,
                                         const BeliefSet& target,
                                         const std::vector<double>& lambda) {
  const std::size_t n = q.size();
  const std::size_t k = target.vertices.size();
  for (std::size_t j = 0; j < k; ++j) {
    if (lambda[j] <= kSupportTol) continue;
    for (std::size_t w = 0; w < n; ++w)
      if (target.vertices[j][w] > kSupportTol && q[w] <= kSupportTol)
        throw InfeasibleError("dilate: vertex needs mass on a state the posterior excludes");
  }
  DilationMap g;
  g.parent = m;
  g.rows.assign(k, std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < k; ++j) {
    g.sub_messages.push_back(d.messages[m] + "." + std::to_string(j + 1));
    for (std::size_t w = 0; w < n; ++w)
      g.rows[j][w] = q[w] > kSupportTol ? lambda[j] * target.vertices[j][w] / q[w] : lambda[j];
  }
  return g;
}

}  // namespace detail

// Splits message m into one sub-message per vertex of the target set so that
// the sub-message posteriors are exactly the vertices and the conditional
// sub-message weights are the convex weights of the current posterior.
inline DilationMap dilate(const Device& d, const Belief& prior, std::size_t m,
                          const BeliefSet& target) {
  validate_device(d);
  check_belief(prior, d.n_states(), "prior");
  if (m >= d.n_messages()) throw ValidationError("dilate: no such message");
  if (target.vertices.empty()) throw ValidationError("dilate: empty target set");
  const Belief q = device_posterior(d, prior, m);
  // interior weights keep every sub-message alive; fall back to boundary
  // weights when the posterior sits on a face
  std::vector<double> lambda;
  auto interior = relative_interior_weights(target.vertices, q);
  if (interior.inside) {
    lambda = interior.weights;
  } else {
    auto boundary = detail::hull_weights(q, target.vertices);
    if (!boundary) throw ValidationError("dilate: posterior is outside the target set");
    lambda = *boundary;
  }
  return detail::dilation_from_weights(d, m, q, target, lambda);
}

inline DilationMap permute_dilation(const DilationMap& g, const std::vector<std::size_t>& sigma) {
  const std::size_t k = g.rows.size();
  if (sigma.size() != k) throw ValidationError("permute: wrong permutation length");
  std::vector<bool> seen(k, false);
  for (std::size_t s : sigma) {
    if (s >= k || seen[s]) throw ValidationError("permute: not a permutation");
    seen[s] = true;
  }
  DilationMap out;
  out.parent = g.parent;
  out.sub_messages = g.sub_messages;
  out.rows.assign(k, {});
  for (std::size_t i = 0; i < k; ++i) out.rows[sigma[i]] = g.rows[i];
  return out;
}

// (g∘π)(sub|ω) = g(sub|m,ω)·π(m|ω), one dilation per original message.
inline Device compose(const Device& d, const std::vector<DilationMap>& dilations) {
  validate_device(d);
  if (dilations.size() != d.n_messages())
    throw ValidationError("compose: need exactly one dilation per message");
  const std::size_t n = d.n_states();
  Device out;
  for (std::size_t m = 0; m < dilations.size(); ++m) {
    if (dilations[m].parent != m) throw ValidationError("compose: dilation attached to the wrong message");
    if (dilations[m].sub_messages.size() != dilations[m].rows.size())
      throw ValidationError("compose: dilation labels out of step with its rows");
    for (const auto& row : dilations[m].rows)
      if (row.size() != n) throw ValidationError("compose: dilation state count mismatch");
    for (const std::string& s : dilations[m].sub_messages) out.messages.push_back(s);
  }
  out.rows.assign(n, {});
  for (std::size_t w = 0; w < n; ++w) {
    out.rows[w].reserve(out.messages.size());
    for (std::size_t m = 0; m < dilations.size(); ++m)
      for (const auto& sub : dilations[m].rows)
        out.rows[w].push_back(sub[w] * d.rows[w][m]);
    double total = std::accumulate(out.rows[w].begin(), out.rows[w].end(), 0.0);
    if (std::abs(total - 1.0) > 1e-12)
      throw ValidationError("compose: dilation rows are not conditionally stochastic");
  }
  return out;
}

// Realizes a verifying selection as an ambiguous device.  First a single
// device sends one message per support set with posterior at the selected
// pick, then every message is dilated onto its set's vertices and the
// dilations are closed under sub-message permutations.  Every sub-message
// then shows the receiver the full support set, while each generator stays
// Bayes plausible.
inline AmbiguousDevice build_device_from_vbp(const SetDistribution& mu, const Selection& phi,
                                             const Belief& prior) {
  validate_set_distribution(mu);
  const std::size_t n = mu.n_states();
  check_belief(prior, n, "prior");
  for (double p : prior)
    if (p <= kNormTol) throw ValidationError("device construction: prior must have full support");
  if (!selection_verifies(mu, phi, prior))
    throw ValidationError("device construction: selection does not verify the distribution");
  for (double w : mu.weights)
    if (w <= kSupportTol) throw ValidationError("device construction: zero-weight support set");

  // step one: the simple device of the singleton distribution at the picks
  std::vector<std::vector<Belief>> singletons;
  singletons.reserve(mu.size());
  for (const Belief& pick : phi.picks) singletons.push_back({pick});
  SetDistribution anchors = make_set_distribution(std::move(singletons), mu.weights);
  AmbiguousDevice base = simple_device_from_distribution(anchors, prior);
  const Device pi = base.generator(0);

  // step two: dilate each message onto its set's vertices; the pick must be
  // reachable from inside, or no dilation family can keep common support
  std::vector<DilationMap> dilations;
  std::vector<std::vector<std::vector<std::size_t>>> perms;   // per message
  double combos = 1.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const BeliefSet& target = mu.support[i];
    const std::size_t k = target.vertices.size();
    if (k == 1) {
      dilations.push_back(identity_dilation(pi, i));
    } else {
      auto interior = relative_interior_weights(target.vertices, phi.picks[i]);
      if (!interior.inside)
        throw InfeasibleError(
            "device construction: selected posterior is not interior to its set, so "
            "permutations cannot keep every sub-message alive");
      dilations.push_back(detail::dilation_from_weights(pi, i, phi.picks[i], target,
                                                        interior.weights));
    }
    std::vector<std::size_t> idx(dilations.back().rows.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<std::vector<std::size_t>> all;
    do {
      all.push_back(idx);
    } while (std::next_permutation(idx.begin(), idx.end()));
    combos *= static_cast<double>(all.size());
    perms.push_back(std::move(all));
  }
  if (combos > 20000.0)
    throw ValidationError("device construction: permutation closure is too large");

  AmbiguousDevice out;
  std::vector<std::size_t> pick(mu.size(), 0);
  bool first = true;
  for (;;) {
    std::vector<DilationMap> variant;
    variant.reserve(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i)
      variant.push_back(permute_dilation(dilations[i], perms[i][pick[i]]));
    Device composed = compose(pi, variant);
    if (first) {
      out.messages = composed.messages;
      first = false;
    }
    out.generators.push_back(std::move(composed.rows));
    std::size_t at = 0;
    while (at < mu.size() && ++pick[at] == perms[at].size()) pick[at++] = 0;
    if (at == mu.size()) break;
  }
  validate_ambiguous_device(out);

  // every sub-message of atom i must now carry exactly the support set
  std::size_t sub = 0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    for (std::size_t j = 0; j < dilations[i].rows.size(); ++j, ++sub) {
      if (!set_equal(posterior_set(out, prior, sub), mu.support[i], 1e-9))
        throw std::logic_error("device construction: a sub-message missed its target set");
    }
  }
  return out;
}

struct DeviceEvaluation {
  double value = 0.0;             // worst case over generators and probed mixtures
  double generator_min = 0.0;     // worst case over the listed generators alone
  double sampled_gap = 0.0;       // how much the mixture probe improved on the generators
  std::size_t worst_generator = 0;
  Matrix worst_rows;              // the device attaining `value`
};

// Worst-case sender payoff of the device: each generator is scored by
// summing, over live messages, the message weight times the sender payoff of
// the tie-broken cautious response to the message's posterior set, evaluated
// at that generator's own posterior.  The hull is probed beyond the listed
// generators by their uniform average plus seeded random mixtures, since the
// per-generator score is convex in the device and can dip between generators
// where the receiver's tie-breaking switches.
inline DeviceEvaluation evaluate_device(const Game& g, const AmbiguousDevice& dev,
                                        const Belief& prior, int extra_mixtures = 50,
                                        std::uint64_t seed = 0x5eed5u) {
  g.validate();
  validate_ambiguous_device(dev);
  if (dev.n_states() != g.n_states)
    throw ValidationError("evaluate: device and game disagree on the state count");
  check_belief(prior, g.n_states, "prior");

  std::vector<std::size_t> live;
  std::vector<BeliefSet> sets;
  for (std::size_t m = 0; m < dev.n_messages(); ++m) {
    if (!detail::column_live(dev.generators.front(), m)) continue;
    live.push_back(m);
    sets.push_back(posterior_set(dev, prior, m));
  }

  auto score = [&](const Matrix& rows) {
    double total = 0.0;
    for (std::size_t idx = 0; idx < live.size(); ++idx) {
      const std::size_t m = live[idx];
      double tau = 0.0;
      std::vector<double> likelihood(g.n_states);
      for (std::size_t w = 0; w < g.n_states; ++w) {
        likelihood[w] = rows[w][m];
        tau += prior[w] * rows[w][m];
      }
      if (tau <= kSupportTol) continue;
      const Belief q = bayes_update(prior, likelihood);
      total += tau * sender_preferred_response(g, sets[idx], q).sender_value;
    }
    return total;
  };

  DeviceEvaluation out;
  out.generator_min = std::numeric_limits<double>::infinity();
  for (std::size_t gi = 0; gi < dev.generators.size(); ++gi) {
    const double v = score(dev.generators[gi]);
    if (v < out.generator_min - 1e-12) {
      out.generator_min = v;
      out.worst_generator = gi;
    } else {
      out.generator_min = std::min(out.generator_min, v);
    }
  }
  out.value = out.generator_min;
  out.worst_rows = dev.generators[out.worst_generator];

  const std::size_t n_gen = dev.generators.size();
  if (n_gen > 1 && extra_mixtures >= 0) {
    auto mix_rows = [&](const std::vector<double>& wts) {
      Matrix rows(g.n_states, std::vector<double>(dev.n_messages(), 0.0));
      for (std::size_t gi = 0; gi < n_gen; ++gi)
        for (std::size_t w = 0; w < g.n_states; ++w)
          for (std::size_t m = 0; m < dev.n_messages(); ++m)
            rows[w][m] += wts[gi] * dev.generators[gi][w][m];
      return rows;
    };
    auto consider = [&](const std::vector<double>& wts) {
      Matrix rows = mix_rows(wts);
      const double v = score(rows);
      if (v < out.value) {
        out.value = v;
        out.worst_rows = std::move(rows);
      }
    };
    consider(std::vector<double>(n_gen, 1.0 / static_cast<double>(n_gen)));
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> exp1(1.0);
    for (int t = 0; t < extra_mixtures; ++t) {
      std::vector<double> wts(n_gen);
      double total = 0.0;
      for (double& w : wts) {
        w = exp1(rng);
        total += w;
      }
      for (double& w : wts) w /= total;
      consider(wts);
    }
  }
  out.sampled_gap = std::max(out.generator_min - out.value, 0.0);
  return out;
}

struct DevicePlan {
  SetDistribution mu;   // one atom per live message, deliberately unmerged
  Selection phi;
};

// Reads (distribution, selection) off one device in the hull: atom weights
// are that device's message probabilities, picks its posteriors, sets the
// ambiguous posterior sets.  Kept unmerged so the plan's sender value matches
// the device score term by term.
inline DevicePlan induced_plan(const AmbiguousDevice& dev, const Belief& prior,
                               const Matrix& rows) {
  validate_ambiguous_device(dev);
  check_belief(prior, dev.n_states(), "prior");
  DevicePlan plan;
  for (std::size_t m = 0; m < dev.n_messages(); ++m) {
    if (!detail::column_live(dev.generators.front(), m)) continue;
    double tau = 0.0;
    std::vector<double> likelihood(dev.n_states());
    for (std::size_t w = 0; w < dev.n_states(); ++w) {
      likelihood[w] = rows[w][m];
      tau += prior[w] * rows[w][m];
    }
    if (tau <= kSupportTol) continue;
    plan.mu.support.push_back(posterior_set(dev, prior, m));
    plan.mu.weights.push_back(tau);
    plan.phi.picks.push_back(bayes_update(prior, likelihood));
  }
  double total = std::accumulate(plan.mu.weights.begin(), plan.mu.weights.end(), 0.0);
  for (double& w : plan.mu.weights) w /= total;
  return plan;
}

// Ex-ante sender payoff of a verifying selection: the weighted sender payoff
// of the tie-broken cautious response at each selected posterior.
inline double sender_value(const Game& g, const SetDistribution& mu, const Selection& phi) {
  g.validate();
  validate_set_distribution(mu);
  if (mu.n_states() != g.n_states)
    throw ValidationError("sender value: distribution and game disagree on the state count");
  if (!selection_verifies(mu, phi, g.prior))
    throw ValidationError("sender value: selection does not verify the distribution");
  double total = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu.weights[i] <= kSupportTol) continue;
    total += mu.weights[i] * set_sender_payoff(g, mu.support[i], phi.picks[i]);
  }
  return total;
}

}  // namespace persuasion
