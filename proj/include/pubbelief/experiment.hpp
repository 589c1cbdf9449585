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

#ifndef PUBBELIEF_EXPERIMENT_HPP_
#define PUBBELIEF_EXPERIMENT_HPP_

#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pubbelief/evaluate.hpp"
#include "pubbelief/game.hpp"
#include "pubbelief/games.hpp"
#include "pubbelief/objective.hpp"
#include "pubbelief/pub_amg.hpp"
#include "pubbelief/response.hpp"
#include "pubbelief/solver.hpp"

namespace pubbelief {

// Thrown for malformed experiment configurations.
class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string game = "perturbed_rps";  // built-in name or path to a game file
  std::string objective = "none";      // none | ent | kl (kl uses a uniform reference)
  double alpha = 0.0;
  std::string schedule = "const";      // const | inv:<c> | exp:<gamma>
  double eta = 0.1;
  int iters = 10000;
  int record_every = 100;
  std::vector<std::string> metrics = {"expl"};
  double grid = 0.005;
  std::string out;                     // CSV path; empty writes no file
  bool warm_start = false;

  static const std::vector<std::string>& known_metrics() {
    static const std::vector<std::string> kKnown = {
        "pubamg_expl", "pubamg_reg_expl", "expl", "reg_expl"};
    return kKnown;
  }
};

struct MetricsRow {
  int iteration = 0;
  std::vector<double> values;  // one per requested metric
};

struct ExperimentResult {
  std::vector<std::string> metric_names;
  std::vector<MetricsRow> rows;
  JointPolicy final_policy;
  double final_alpha = 0.0;
  double bound = -1.0;  // alpha*T*|log eps| when the objective admits it
  double wall_seconds = 0.0;
  std::string csv;      // the exact text written to the output file
  std::string summary;
};

namespace detail {

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  for (const std::string& item : split(s, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline Schedule parse_schedule(const std::string& text) {
  if (text == "const") return Schedule::constant();
  auto parts = split(text, ':');
  if (parts.size() == 2) {
    try {
      double v = std::stod(parts[1]);
      if (parts[0] == "inv") return Schedule::anneal_inverse(v);
      if (parts[0] == "exp") return Schedule::anneal_exponential(v);
    } catch (const std::invalid_argument&) {
    }
  }
  throw ConfigError("bad schedule '" + text + "', expected const|inv:<c>|exp:<g>");
}

inline Objective parse_objective(const GameTree& tree,
                                 const ExperimentConfig& cfg) {
  Schedule sched = parse_schedule(cfg.schedule);
  if (cfg.objective == "none") return Objective::none();
  if (cfg.objective == "ent") return Objective::minimax_entropy(cfg.alpha, sched);
  if (cfg.objective == "kl") {
    return Objective::minimax_kl(cfg.alpha, BehavioralPolicy::uniform(tree, 0),
                                 BehavioralPolicy::uniform(tree, 1), sched);
  }
  throw ConfigError("bad objective '" + cfg.objective + "', expected none|ent|kl");
}

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

inline GameTree load_game_by_name(const std::string& name_or_path) {
  for (const std::string& n : builtin_game_names()) {
    if (n == name_or_path) return make_builtin_game(n);
  }
  std::ifstream in(name_or_path);
  if (!in) {
    throw ConfigError("game '" + name_or_path +
                      "' is neither a built-in name nor a readable file");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return load_game(text.str());
}

// Runs a solver experiment: dispatches on the game's stage count, computes
// the requested metric curves for every recorded iterate (regularized
// metrics freeze alpha at the iterate's own schedule value), and renders a
// deterministic CSV plus a summary block.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  auto t_start = std::chrono::steady_clock::now();
  GameTree tree = load_game_by_name(cfg.game);
  Objective obj = detail::parse_objective(tree, cfg);

  for (const std::string& m : cfg.metrics) {
    bool known = false;
    for (const std::string& k : ExperimentConfig::known_metrics()) {
      if (m == k) known = true;
    }
    if (!known) throw ConfigError("unknown metric '" + m + "'");
    if ((m == "pubamg_expl" || m == "pubamg_reg_expl") && tree.horizon != 2) {
      throw ConfigError("metric '" + m + "' is only defined for two-stage games");
    }
  }

  MmdConfig mmd;
  mmd.eta = cfg.eta;
  mmd.objective = obj;
  mmd.outer_iters = cfg.iters;
  mmd.record_every = cfg.record_every;
  mmd.warm_start_inner = cfg.warm_start;
  IterateTrace trace = solve(tree, mmd);

  int announcer_ix = -1;
  if (tree.horizon == 2) {
    announcer_ix = detail::stage_infosets(tree, 0).front();
  }
  auto responder_fn_at = [&](double alpha) {
    Objective frozen = obj.with_alpha(alpha);
    return TwoStageResponder(
        [&tree, frozen](const GameTree& t, const DecisionRule& announced) {
          const auto& entry = announced.entries().front();
          const Infoset& is = t.infosets[static_cast<size_t>(entry.first)];
          BehavioralPolicy ap(t, is.player);
          ap.set(entry.first, entry.second);
          return best_response(t, ap, 1 - is.player, frozen).policy;
        });
  };

  ExperimentResult result;
  result.metric_names = cfg.metrics;
  for (const IterateRecord& rec : trace.records) {
    MetricsRow row;
    row.iteration = rec.iteration;
    for (const std::string& m : cfg.metrics) {
      double v = 0.0;
      if (m == "expl") {
        v = exploitability(tree, rec.policy).exploitability;
      } else if (m == "reg_expl") {
        v = exploitability(tree, rec.policy, obj.with_alpha(rec.alpha))
                .exploitability;
      } else {
        DecisionRule first_rule;
        first_rule.set(announcer_ix,
                       rec.policy.at(tree, announcer_ix));
        Objective measure = m == "pubamg_expl" ? Objective::none()
                                               : obj.with_alpha(rec.alpha);
        v = pubamg_exploitability_two_stage(tree, first_rule,
                                            responder_fn_at(rec.alpha),
                                            measure, cfg.grid)
                .exploitability;
      }
      row.values.push_back(v);
    }
    result.rows.push_back(std::move(row));
  }
  result.final_policy = trace.records.back().policy;
  result.final_alpha = trace.records.back().alpha;
  if (obj.regularized()) {
    result.bound = exploitability_bound(result.final_alpha, tree.horizon,
                                        obj.magnet_floor(tree));
  }
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();

  std::ostringstream csv;
  csv << "iteration";
  for (const std::string& m : cfg.metrics) csv << "," << m;
  csv << "\n";
  for (const MetricsRow& row : result.rows) {
    csv << row.iteration;
    for (double v : row.values) csv << "," << detail::format_double(v);
    csv << "\n";
  }
  result.csv = csv.str();
  if (!cfg.out.empty()) {
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write output file '" + cfg.out + "'");
    out << result.csv;
  }

  std::ostringstream sum;
  sum << "game=" << cfg.game << " objective=" << cfg.objective
      << " alpha=" << cfg.alpha << " schedule=" << cfg.schedule
      << " eta=" << cfg.eta << " iters=" << cfg.iters << "\n";
  sum << "final iterate (t=" << result.rows.back().iteration
      << ", alpha_t=" << detail::format_double(result.final_alpha) << "):\n";
  for (size_t i = 0; i < cfg.metrics.size(); ++i) {
    sum << "  " << cfg.metrics[i] << " = "
        << detail::format_double(result.rows.back().values[i]) << "\n";
  }
  if (result.bound >= 0.0) {
    sum << "  exploitability bound alpha*T*|log eps| = "
        << detail::format_double(result.bound) << "\n";
  }
  sum << "  wall time = " << result.wall_seconds << " s\n";
  result.summary = sum.str();
  return result;
}

struct WorstCaseDemoReport {
  double expected_return = 0.0;       // of the public belief policy
  double exploitability = 0.0;        // of its corresponding joint policy
  double rig_always_value = 0.0;      // red's deviation certificate
  double heads_always_value = 0.0;    // blue's deviation certificate
  JointPolicy corresponding;
  std::string text;
};

// Builds rigged adversarial matching pennies, applies the worst-case
// public belief policy, and certifies that a zero-return equilibrium of
// the public belief game maps down to a maximally exploitable joint
// policy. The two deviations each gain the full payoff of 1.
inline WorstCaseDemoReport run_worst_case_demo() {
  GameTree tree = rigged_adversarial_matching_pennies();
  WorstCasePubPolicy pub = worst_case_pub_policy();
  WorstCaseDemoReport report;
  report.expected_return = pub_objective(tree, pub);
  report.corresponding = correspondence_down(tree, pub);
  report.exploitability =
      exploitability(tree, report.corresponding).exploitability;

  // Red deviates to rigging the game outright (keeping heads after).
  JointPolicy rig = report.corresponding;
  BehavioralPolicy red(tree, 1);
  red.set(tree, "r0", {0.0, 1.0});
  red.set(tree, "r2F", {0.0, 1.0});
  red.set(tree, "r2U", {0.0, 1.0});
  rig.policy1 = red;
  report.rig_always_value = -expected_objective(tree, rig);

  // Blue deviates to always picking heads.
  JointPolicy heads = report.corresponding;
  BehavioralPolicy blue(tree, 0);
  blue.set(tree, "b", {0.0, 1.0, 0.0});
  heads.policy0 = blue;
  report.heads_always_value = expected_objective(tree, heads);

  std::ostringstream out;
  out << "rigged adversarial matching pennies, worst-case public belief policy\n";
  out << "  expected return of the policy: "
      << detail::format_double(report.expected_return) << "\n";
  const auto& pi = report.corresponding;
  auto fmt_dist = [](const std::vector<double>& d) {
    std::string s = "(";
    for (size_t i = 0; i < d.size(); ++i) {
      if (i) s += ", ";
      s += detail::format_double(d[i]);
    }
    return s + ")";
  };
  out << "  corresponding joint policy:\n";
  out << "    red  t0 (Fair, Unfair):      " << fmt_dist(pi.at(tree, tree.infoset_index("r0"))) << "\n";
  out << "    blue t1 (Tails, Heads, Out): " << fmt_dist(pi.at(tree, tree.infoset_index("b"))) << "\n";
  out << "    red  t2 fair branch (Tails, Heads): "
      << fmt_dist(pi.at(tree, tree.infoset_index("r2F"))) << "\n";
  out << "  exploitability of the corresponding policy: "
      << detail::format_double(report.exploitability) << "\n";
  out << "  deviation certificates (each earns the deviator "
         "the full stake):\n";
  out << "    red rigs always:   red value "
      << detail::format_double(report.rig_always_value) << "\n";
  out << "    blue heads always: blue value "
      << detail::format_double(report.heads_always_value) << "\n";
  report.text = out.str();
  return report;
}

// Parses `key=value` lines into an ExperimentConfig; '#' begins a comment.
inline ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::string trimmed;
    for (char c : line) {
      if (!std::isspace(static_cast<unsigned char>(c))) trimmed.push_back(c);
    }
    if (trimmed.empty()) continue;
    auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key=value");
    }
    std::string key = trimmed.substr(0, eq);
    std::string val = trimmed.substr(eq + 1);
    try {
      if (key == "game") cfg.game = val;
      else if (key == "objective") cfg.objective = val;
      else if (key == "alpha") cfg.alpha = std::stod(val);
      else if (key == "schedule") cfg.schedule = val;
      else if (key == "eta") cfg.eta = std::stod(val);
      else if (key == "iters") cfg.iters = std::stoi(val);
      else if (key == "record_every") cfg.record_every = std::stoi(val);
      else if (key == "metrics") cfg.metrics = detail::split_list(val);
      else if (key == "grid") cfg.grid = std::stod(val);
      else if (key == "out") cfg.out = val;
      else if (key == "warm_start") cfg.warm_start = val == "true" || val == "1";
      else throw ConfigError("config line " + std::to_string(line_no) +
                             ": unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": bad value for '" + key + "'");
    }
  }
  return cfg;
}

}  // namespace pubbelief

#endif  // PUBBELIEF_EXPERIMENT_HPP_
