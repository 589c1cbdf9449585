// Copyright 2026 The pubbelief Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pubbelief/experiment.hpp"
#include "pubbelief/game.hpp"
#include "pubbelief/games.hpp"

namespace {

int run_solve(const pubbelief::ExperimentConfig& cfg) {
  pubbelief::ExperimentResult result = pubbelief::run_experiment(cfg);
  if (!cfg.out.empty()) {
    std::cout << "wrote " << result.rows.size() << " rows to " << cfg.out << "\n";
  } else {
    std::cout << result.csv;
  }
  std::cout << result.summary;
  return 0;
}

int run_validate(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot read '" << path << "'\n";
    return 1;
  }
  std::ostringstream text;
  text << in.rdbuf();
  pubbelief::GameTree tree = pubbelief::load_game(text.str());
  std::cout << path << ": ok (" << tree.num_nodes() << " nodes, "
            << tree.num_infosets() << " infosets, horizon " << tree.horizon
            << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Tabular solver toolkit for two-player zero-sum imperfect-information "
      "games via regularized public belief games"};
  app.require_subcommand(1);

  pubbelief::ExperimentConfig cfg;
  std::string config_path;
  std::string metrics_csv;
  auto* solve = app.add_subcommand(
      "solve", "Run magnetic mirror descent and emit metric curves as CSV");
  solve->add_option("--config", config_path, "key=value config file");
  auto* o_game = solve->add_option("--game", cfg.game, "built-in name or game file");
  auto* o_obj = solve->add_option("--objective", cfg.objective, "none|ent|kl");
  auto* o_alpha = solve->add_option("--alpha", cfg.alpha, "regularization temperature");
  auto* o_sched = solve->add_option("--schedule", cfg.schedule, "const|inv:<c>|exp:<g>");
  auto* o_eta = solve->add_option("--eta", cfg.eta, "MMD step size");
  auto* o_iters = solve->add_option("--iters", cfg.iters, "outer iterations");
  auto* o_rec = solve->add_option("--record-every", cfg.record_every,
                                  "recording cadence");
  auto* o_metrics = solve->add_option(
      "--metrics", metrics_csv, "comma list of pubamg_expl,pubamg_reg_expl,expl,reg_expl");
  auto* o_grid = solve->add_option("--grid", cfg.grid,
                                   "simplex grid step for pubamg metrics");
  auto* o_out = solve->add_option("--out", cfg.out, "CSV output path");
  auto* o_warm = solve->add_flag("--warm-start", cfg.warm_start,
                                 "warm start the inner stage-2 solve");

  auto* demo = app.add_subcommand("demo-worst-case",
                                  "Exploitability of a public-belief Nash "
                                  "equilibrium mapped back down");
  auto* list = app.add_subcommand("list-games", "List built-in games");
  std::string validate_path;
  auto* validate =
      app.add_subcommand("validate", "Parse and validate a game file");
  validate->add_option("file", validate_path, "game file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
          std::cerr << "cannot read config '" << config_path << "'\n";
          return 1;
        }
        std::ostringstream text;
        text << in.rdbuf();
        pubbelief::ExperimentConfig file_cfg =
            pubbelief::parse_config_text(text.str());
        // Explicit flags override the file.
        if (o_game->count() == 0) cfg.game = file_cfg.game;
        if (o_obj->count() == 0) cfg.objective = file_cfg.objective;
        if (o_alpha->count() == 0) cfg.alpha = file_cfg.alpha;
        if (o_sched->count() == 0) cfg.schedule = file_cfg.schedule;
        if (o_eta->count() == 0) cfg.eta = file_cfg.eta;
        if (o_iters->count() == 0) cfg.iters = file_cfg.iters;
        if (o_rec->count() == 0) cfg.record_every = file_cfg.record_every;
        if (o_metrics->count() == 0) cfg.metrics = file_cfg.metrics;
        if (o_grid->count() == 0) cfg.grid = file_cfg.grid;
        if (o_out->count() == 0) cfg.out = file_cfg.out;
        if (o_warm->count() == 0) cfg.warm_start = file_cfg.warm_start;
      }
      if (o_metrics->count() > 0) {
        cfg.metrics = pubbelief::detail::split_list(metrics_csv);
      }
      return run_solve(cfg);
    }
    if (demo->parsed()) {
      std::cout << pubbelief::run_worst_case_demo().text;
      return 0;
    }
    if (list->parsed()) {
      for (const std::string& name : pubbelief::builtin_game_names()) {
        std::cout << name << "\n";
      }
      return 0;
    }
    if (validate->parsed()) {
      return run_validate(validate_path);
    }
  } catch (const pubbelief::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const pubbelief::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const pubbelief::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
