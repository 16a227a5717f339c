#pragma once

// Game-file parsing, report assembly, and the JSON/CSV serialization behind
// the command-line front end.  Reports are deterministic: identical inputs
// and seed produce byte-identical documents, so wall-clock timings stay out
// of them (the CLI prints those to stderr instead).

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "persuasion/concavify.hpp"
#include "persuasion/core.hpp"
#include "persuasion/devices.hpp"
#include "persuasion/lp.hpp"
#include "persuasion/oracle.hpp"
#include "persuasion/value.hpp"
#include "persuasion/vbp.hpp"

namespace persuasion {

using ordered_json = nlohmann::ordered_json;

struct SolverOptions {
  int grid = 10;                    // simplex resolution
  int max_vertices = 2;             // candidate-set vertex budget
  double tolerance = kValueTol;     // attainment margin for the device
  int oracle_grid = 20;             // posterior step count for the oracle
  std::uint64_t seed = 0x5eed5u;    // sampled generator mixtures
};

struct GameFile {
  Game game;
  std::vector<std::string> states;
  SolverOptions solver;
};

namespace detail {

inline void expect_keys(const ordered_json& j, std::initializer_list<const char*> allowed,
                        const char* what) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed)
      if (item.key() == key) { known = true; break; }
    if (!known)
      throw ValidationError(std::string(what) + ": unknown key \"" + item.key() + "\"");
  }
}

inline const ordered_json& field(const ordered_json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key))
    throw ValidationError(std::string(what) + ": missing key \"" + key + "\"");
  return j.at(key);
}

inline std::vector<double> vector_from(const ordered_json& j, const char* what) {
  if (!j.is_array()) throw ValidationError(std::string(what) + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_number()) throw ValidationError(std::string(what) + ": expected a number");
    out.push_back(e.get<double>());
  }
  return out;
}

inline Matrix matrix_from(const ordered_json& j, const char* what) {
  if (!j.is_array()) throw ValidationError(std::string(what) + ": expected an array of rows");
  Matrix out;
  out.reserve(j.size());
  for (const auto& row : j) out.push_back(vector_from(row, what));
  return out;
}

inline std::vector<std::string> labels_from(const ordered_json& j, const char* what) {
  if (!j.is_array()) throw ValidationError(std::string(what) + ": expected an array of labels");
  std::vector<std::string> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_string()) throw ValidationError(std::string(what) + ": expected a string label");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace detail

inline GameFile game_from_json(const ordered_json& j) {
  if (!j.is_object()) throw ValidationError("game file: expected a JSON object");
  detail::expect_keys(j, {"states", "prior", "actions", "u_S", "u_R", "solver"}, "game file");
  GameFile gf;
  gf.states = detail::labels_from(detail::field(j, "states", "game file"), "game states");
  gf.game.n_states = gf.states.size();
  gf.game.prior = detail::vector_from(detail::field(j, "prior", "game file"), "game prior");
  gf.game.actions = detail::labels_from(detail::field(j, "actions", "game file"), "game actions");
  gf.game.u_s = detail::matrix_from(detail::field(j, "u_S", "game file"), "game u_S");
  gf.game.u_r = detail::matrix_from(detail::field(j, "u_R", "game file"), "game u_R");
  if (j.contains("solver")) {
    const ordered_json& s = j.at("solver");
    detail::expect_keys(s, {"grid", "k_max", "tolerance", "oracle_grid", "seed"}, "solver block");
    if (s.contains("grid")) gf.solver.grid = s.at("grid").get<int>();
    if (s.contains("k_max")) gf.solver.max_vertices = s.at("k_max").get<int>();
    if (s.contains("tolerance")) gf.solver.tolerance = s.at("tolerance").get<double>();
    if (s.contains("oracle_grid")) gf.solver.oracle_grid = s.at("oracle_grid").get<int>();
    if (s.contains("seed")) gf.solver.seed = s.at("seed").get<std::uint64_t>();
  }
  if (gf.solver.grid < 1) throw ValidationError("solver block: grid must be positive");
  if (gf.solver.max_vertices < 1) throw ValidationError("solver block: k_max must be positive");
  if (gf.solver.tolerance <= 0.0) throw ValidationError("solver block: tolerance must be positive");
  if (gf.solver.oracle_grid < 1) throw ValidationError("solver block: oracle_grid must be positive");
  gf.game.validate();
  return gf;
}

struct PlanFile {
  SetDistribution mu;
  std::optional<Selection> phi;
};

inline PlanFile plan_from_json(const ordered_json& j) {
  if (!j.is_object()) throw ValidationError("plan file: expected a JSON object");
  detail::expect_keys(j, {"sets", "weights", "picks"}, "plan file");
  const ordered_json& sets = detail::field(j, "sets", "plan file");
  if (!sets.is_array()) throw ValidationError("plan file: sets must be an array");
  std::vector<std::vector<Belief>> vertex_lists;
  for (const auto& s : sets) {
    std::vector<Belief> verts;
    if (!s.is_array()) throw ValidationError("plan file: each set must be an array of beliefs");
    for (const auto& v : s) verts.push_back(detail::vector_from(v, "plan set vertex"));
    vertex_lists.push_back(std::move(verts));
  }
  PlanFile pf;
  pf.mu = make_set_distribution(std::move(vertex_lists),
                                detail::vector_from(detail::field(j, "weights", "plan file"),
                                                    "plan weights"));
  if (j.contains("picks")) {
    Selection phi;
    for (const auto& v : j.at("picks")) phi.picks.push_back(detail::vector_from(v, "plan pick"));
    pf.phi = std::move(phi);
  }
  return pf;
}

inline ordered_json game_json(const GameFile& gf) {
  ordered_json j;
  j["states"] = gf.states;
  j["prior"] = gf.game.prior;
  j["actions"] = gf.game.actions;
  j["u_S"] = gf.game.u_s;
  j["u_R"] = gf.game.u_r;
  return j;
}

inline ordered_json set_json(const BeliefSet& s) { return ordered_json(s.vertices); }

inline ordered_json mu_json(const SetDistribution& mu) {
  ordered_json atoms = ordered_json::array();
  for (std::size_t i = 0; i < mu.size(); ++i) {
    ordered_json a;
    a["set"] = set_json(mu.support[i]);
    a["weight"] = mu.weights[i];
    atoms.push_back(std::move(a));
  }
  return atoms;
}

inline ordered_json device_json(const AmbiguousDevice& dev, const Belief& prior) {
  ordered_json j;
  j["messages"] = dev.messages;
  j["generators"] = dev.generators;
  ordered_json sets = ordered_json::array();
  for (std::size_t m = 0; m < dev.n_messages(); ++m) {
    ordered_json entry;
    entry["message"] = dev.messages[m];
    entry["set"] = set_json(posterior_set(dev, prior, m));
    sets.push_back(std::move(entry));
  }
  j["posterior_sets"] = sets;
  return j;
}

// Reads back what device_json wrote; evaluation keys that solve adds next to
// it are tolerated so a report's device section round-trips as is.
inline AmbiguousDevice device_from_json(const ordered_json& j) {
  if (!j.is_object()) throw ValidationError("device section: expected a JSON object");
  detail::expect_keys(j, {"messages", "generators", "posterior_sets", "value", "attains", "note"},
                      "device section");
  AmbiguousDevice dev;
  dev.messages = detail::labels_from(detail::field(j, "messages", "device section"),
                                     "device messages");
  for (const auto& g : detail::field(j, "generators", "device section"))
    dev.generators.push_back(detail::matrix_from(g, "device generator"));
  validate_ambiguous_device(dev);
  return dev;
}

inline ordered_json selection_json(const Selection& phi) { return ordered_json(phi.picks); }

namespace detail {

inline ordered_json tau_json(const std::vector<Belief>& posteriors,
                             const std::vector<double>& weights) {
  ordered_json arr = ordered_json::array();
  for (std::size_t i = 0; i < posteriors.size(); ++i) {
    ordered_json e;
    e["posterior"] = posteriors[i];
    e["weight"] = weights[i];
    arr.push_back(std::move(e));
  }
  return arr;
}

}  // namespace detail

inline ordered_json solution_json(const GameFile& gf, const PersuasionSolution& sol) {
  ordered_json j;
  j["bayesian"] = ordered_json{{"value", sol.bayesian_value}};
  j["ambiguous"]["value"] = sol.value;
  ordered_json atoms = ordered_json::array();
  for (const SolutionAtom& a : sol.atoms) {
    ordered_json e;
    e["posterior"] = a.posterior;
    e["weight"] = a.weight;
    e["set"] = set_json(a.set);
    e["receiver_strategy"] = a.receiver_strategy;
    e["sender_payoff"] = a.sender_payoff;
    atoms.push_back(std::move(e));
  }
  j["ambiguous"]["tau"] = atoms;
  j["certificate"]["mu"] = mu_json(sol.mu);
  j["certificate"]["phi"] = selection_json(sol.phi);
  j["device"] = device_json(sol.device, gf.game.prior);
  j["device"]["value"] = sol.device_value;
  j["device"]["attains"] = sol.device_attains;
  if (!sol.note.empty()) j["device"]["note"] = sol.note;
  return j;
}

// Full solve report: echo of the inputs, both values with their splittings,
// the verifying certificate, the constructed device, and diagnostics.
inline ordered_json solve_report(const GameFile& gf) {
  const std::uint64_t lp_before = lp::solve_counter().load();
  const GridSpec spec{gf.solver.grid};
  auto baseline = solve_bayesian_persuasion(gf.game, spec);
  auto sol = solve_ambiguous_persuasion(gf.game, spec,
                                        static_cast<std::size_t>(gf.solver.max_vertices),
                                        gf.solver.seed);

  ordered_json j;
  j["game"] = game_json(gf);
  j["solver"] = ordered_json{{"grid", gf.solver.grid},
                             {"k_max", gf.solver.max_vertices},
                             {"tolerance", gf.solver.tolerance},
                             {"seed", gf.solver.seed}};
  ordered_json body = solution_json(gf, sol);
  body["bayesian"]["tau"] = detail::tau_json(baseline.posteriors, baseline.weights);
  for (auto& item : body.items()) j[item.key()] = std::move(item.value());
  j["diagnostics"] = ordered_json{
      {"grid_points", simplex_grid(GridSpec{gf.solver.grid}, gf.game.n_states).size()},
      {"lp_solves", lp::solve_counter().load() - lp_before}};
  return j;
}

// Plot-ready table: one row per grid point with both pointwise values and
// the concave closure.  The closure column is recomputed at every grid
// point from the same robust samples.
inline std::string value_grid_csv(const GameFile& gf) {
  const GridSpec spec{gf.solver.grid};
  const auto rows = value_grid(gf.game, spec,
                               static_cast<std::size_t>(gf.solver.max_vertices));
  std::vector<ValueSample> samples;
  samples.reserve(rows.size());
  for (const ValueGridRow& row : rows) samples.push_back({row.p, row.robust.value});

  std::string out;
  for (const std::string& s : gf.states) {
    out += s;
    out += ',';
  }
  out += "v_bp,v,v_hat\n";
  char buf[64];
  auto put = [&](double x, char sep) {
    std::snprintf(buf, sizeof buf, "%.12g%c", x, sep);
    out += buf;
  };
  for (const ValueGridRow& row : rows) {
    for (double c : row.p) put(c, ',');
    put(row.bayes, ',');
    put(row.robust.value, ',');
    put(concave_closure_at(samples, row.p).value, '\n');
  }
  return out;
}

inline ordered_json value_grid_json(const GameFile& gf) {
  const GridSpec spec{gf.solver.grid};
  const auto rows = value_grid(gf.game, spec,
                               static_cast<std::size_t>(gf.solver.max_vertices));
  std::vector<ValueSample> samples;
  samples.reserve(rows.size());
  for (const ValueGridRow& row : rows) samples.push_back({row.p, row.robust.value});
  ordered_json arr = ordered_json::array();
  for (const ValueGridRow& row : rows) {
    ordered_json e;
    e["p"] = row.p;
    e["v_bp"] = row.bayes;
    e["v"] = row.robust.value;
    e["v_hat"] = concave_closure_at(samples, row.p).value;
    e["set"] = set_json(row.robust.set);
    arr.push_back(std::move(e));
  }
  ordered_json j;
  j["game"] = game_json(gf);
  j["rows"] = arr;
  return j;
}

inline ordered_json oracle_report(const GameFile& gf) {
  ordered_json j;
  j["game"] = game_json(gf);
  auto search = oracle::device_search(gf.game, gf.solver.oracle_grid);
  j["device_search"]["value"] = search.value;
  ordered_json msgs = ordered_json::array();
  for (const auto& m : search.messages) {
    ordered_json e;
    e["posterior_g"] = m.posterior_g;
    e["weight"] = m.weight;
    msgs.push_back(std::move(e));
  }
  j["device_search"]["messages"] = msgs;
  j["bayesian_pairs"] = oracle::bayesian_pairs(gf.game, gf.solver.oracle_grid);
  std::vector<Belief> grid;
  for (int i = 0; i <= gf.solver.oracle_grid; ++i) {
    double t = static_cast<double>(i) / gf.solver.oracle_grid;
    grid.push_back({1.0 - t, t});
  }
  j["robust_value_at_prior"] = oracle::robust_point_value(gf.game, gf.game.prior, grid);
  return j;
}

}  // namespace persuasion
