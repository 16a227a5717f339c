#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "persuasion.hpp"

namespace {

using persuasion::ordered_json;

struct CommonFlags {
  std::string game_path;
  std::string mu_path;
  std::string out_path;
  std::string csv_path;
  int grid = 0;
  int kmax = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  bool grid_set = false, kmax_set = false, seed_set = false, tol_set = false;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool wants_mu) {
  cmd->add_option("--game", f.game_path, "game description file (JSON)")->required();
  if (wants_mu)
    cmd->add_option("--mu", f.mu_path, "support-set distribution file (JSON)")->required();
  cmd->add_option("--out", f.out_path, "write the JSON result here instead of stdout");
  cmd->add_option("--csv", f.csv_path, "also write the value table as CSV");
  cmd->add_option("--grid", f.grid, "simplex grid resolution")
      ->check(CLI::PositiveNumber)
      ->each([&f](const std::string&) { f.grid_set = true; });
  cmd->add_option("--kmax", f.kmax, "candidate-set vertex budget")
      ->check(CLI::PositiveNumber)
      ->each([&f](const std::string&) { f.kmax_set = true; });
  cmd->add_option("--seed", f.seed, "seed for sampled generator mixtures")
      ->each([&f](const std::string&) { f.seed_set = true; });
  cmd->add_option("--tolerance", f.tolerance, "device attainment tolerance")
      ->check(CLI::PositiveNumber)
      ->each([&f](const std::string&) { f.tol_set = true; });
}

ordered_json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw persuasion::ValidationError("cannot open file: " + path);
  return ordered_json::parse(in);   // parse errors carry line and column
}

persuasion::GameFile load_game(const CommonFlags& f) {
  auto gf = persuasion::game_from_json(load_json(f.game_path));
  if (f.grid_set) gf.solver.grid = f.grid;
  if (f.kmax_set) gf.solver.max_vertices = f.kmax;
  if (f.seed_set) gf.solver.seed = f.seed;
  if (f.tol_set) gf.solver.tolerance = f.tolerance;
  return gf;
}

void emit(const CommonFlags& f, const ordered_json& j) {
  if (f.out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(f.out_path);
  if (!out) throw persuasion::ValidationError("cannot write file: " + f.out_path);
  out << j.dump(2) << "\n";
}

void emit_csv(const CommonFlags& f, const persuasion::GameFile& gf) {
  if (f.csv_path.empty()) return;
  std::ofstream out(f.csv_path);
  if (!out) throw persuasion::ValidationError("cannot write file: " + f.csv_path);
  out << persuasion::value_grid_csv(gf);
}

int run(int argc, char** argv) {
  CLI::App app{"ambiguous persuasion solver"};
  app.require_subcommand(1);

  CommonFlags solve_f, bayes_f, grid_f, check_f, build_f, oracle_f;
  CLI::App* solve = app.add_subcommand("solve", "solve the game and write the full report");
  add_common(solve, solve_f, false);
  CLI::App* bayes = app.add_subcommand("bayesian", "one-shot splitting baseline only");
  add_common(bayes, bayes_f, false);
  CLI::App* vgrid = app.add_subcommand("value-grid", "pointwise values over the simplex grid");
  add_common(vgrid, grid_f, false);
  CLI::App* check = app.add_subcommand("check-vbp",
                                       "test plausibility of a support-set distribution");
  add_common(check, check_f, true);
  CLI::App* build = app.add_subcommand("construct-device",
                                       "build the ambiguous device for a verified plan");
  add_common(build, build_f, true);
  CLI::App* orac = app.add_subcommand("oracle", "brute-force baselines (two states)");
  add_common(orac, oracle_f, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  const auto started = std::chrono::steady_clock::now();
  const auto lp_before = persuasion::lp::solve_counter().load();
  auto finish = [&](const char* what) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - started)
                        .count();
    const auto solves = persuasion::lp::solve_counter().load() - lp_before;
    std::cerr << what << ": done in " << ms << " ms, " << solves << " LP solves\n";
  };

  if (*solve) {
    auto gf = load_game(solve_f);
    emit(solve_f, persuasion::solve_report(gf));
    emit_csv(solve_f, gf);
    finish("solve");
  } else if (*bayes) {
    auto gf = load_game(bayes_f);
    auto sol = persuasion::solve_bayesian_persuasion(gf.game, persuasion::GridSpec{gf.solver.grid});
    ordered_json j;
    j["game"] = persuasion::game_json(gf);
    j["value"] = sol.value;
    ordered_json tau = ordered_json::array();
    for (std::size_t i = 0; i < sol.posteriors.size(); ++i)
      tau.push_back(ordered_json{{"posterior", sol.posteriors[i]}, {"weight", sol.weights[i]}});
    j["tau"] = tau;
    emit(bayes_f, j);
    finish("bayesian");
  } else if (*vgrid) {
    auto gf = load_game(grid_f);
    emit(grid_f, persuasion::value_grid_json(gf));
    emit_csv(grid_f, gf);
    finish("value-grid");
  } else if (*check) {
    auto gf = load_game(check_f);
    auto plan = persuasion::plan_from_json(load_json(check_f.mu_path));
    auto phi = persuasion::verify_vbp(plan.mu, gf.game.prior);
    if (!phi) {
      if (check_f.out_path.empty()) {
        std::cout << "not VBP\n";
      } else {
        emit(check_f, ordered_json{{"vbp", false}});
      }
    } else {
      ordered_json j;
      j["vbp"] = true;
      j["phi"] = persuasion::selection_json(*phi);
      emit(check_f, j);
    }
    finish("check-vbp");
  } else if (*build) {
    auto gf = load_game(build_f);
    auto plan = persuasion::plan_from_json(load_json(build_f.mu_path));
    if (!plan.phi)
      throw persuasion::ValidationError("construct-device: plan file needs \"picks\"");
    auto dev = persuasion::build_device_from_vbp(plan.mu, *plan.phi, gf.game.prior);
    auto eval = persuasion::evaluate_device(gf.game, dev, gf.game.prior, 50, gf.solver.seed);
    ordered_json j = persuasion::device_json(dev, gf.game.prior);
    j["value"] = eval.value;
    emit(build_f, j);
    finish("construct-device");
  } else if (*orac) {
    auto gf = load_game(oracle_f);
    if (oracle_f.grid_set) gf.solver.oracle_grid = oracle_f.grid;
    emit(oracle_f, persuasion::oracle_report(gf));
    finish("oracle");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const persuasion::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 3;
  } catch (const persuasion::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  }
}
