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

#ifndef PUBBELIEF_SOLVER_HPP_
#define PUBBELIEF_SOLVER_HPP_

#include <cmath>
#include <string>
#include <vector>

#include "pubbelief/game.hpp"
#include "pubbelief/mmd.hpp"
#include "pubbelief/objective.hpp"
#include "pubbelief/response.hpp"

namespace pubbelief {

struct MmdConfig {
  double eta = 0.1;                 // step size, > 0
  Objective objective;              // regularizer, alpha_t schedule, magnet
  int outer_iters = 10000;
  enum class InnerRule { kSqrtT, kFixed };
  InnerRule inner_rule = InnerRule::kSqrtT;
  int inner_fixed = 1;              // used with kFixed
  int record_every = 100;
  // The stage-2 inner solve restarts from uniform each outer iteration by
  // default; warm starting from the previous outer iterate is exposed for
  // sensitivity checks.
  bool warm_start_inner = false;

  void validate() const {
    if (eta <= 0.0) throw std::invalid_argument("MmdConfig: eta must be positive");
    if (outer_iters < 1) throw std::invalid_argument("MmdConfig: outer_iters >= 1");
    if (record_every < 1) throw std::invalid_argument("MmdConfig: record_every >= 1");
    if (inner_rule == InnerRule::kFixed && inner_fixed < 1) {
      throw std::invalid_argument("MmdConfig: inner_fixed >= 1");
    }
  }

  int inner_iterations(int t) const {
    return inner_rule == InnerRule::kSqrtT
               ? static_cast<int>(std::ceil(std::sqrt(static_cast<double>(t))))
               : inner_fixed;
  }
};

// One recorded solver iterate: the original-game joint policy obtained by
// the correspondence mapping, with the iteration's frozen temperature.
struct IterateRecord {
  int iteration = 0;
  double alpha = 0.0;
  JointPolicy policy;
};

struct IterateTrace {
  int stages = 0;
  std::vector<IterateRecord> records;
};

namespace detail {

inline std::vector<int> stage_infosets(const GameTree& tree, int stage) {
  std::vector<int> out;
  for (int i = 0; i < tree.num_infosets(); ++i) {
    if (tree.infosets[static_cast<size_t>(i)].stage == stage) out.push_back(i);
  }
  return out;
}

}  // namespace detail

// Solves a two-stage game with a single first-stage infoset by magnetic
// mirror descent against the second mover's closed-form (regularized) best
// response. Per outer iteration: the responder's rule is the greedy policy
// for the beliefs the announced rule induces, the announcer's exact action
// values against that responder feed one MMD step.
inline IterateTrace solve_two_stage(const GameTree& tree, const MmdConfig& cfg) {
  cfg.validate();
  cfg.objective.validate(tree);
  auto first = detail::stage_infosets(tree, 0);
  if (tree.horizon != 2 || first.size() != 1) {
    throw ValidationError(
        "solve_two_stage: need exactly two decision stages with a single "
        "first-stage infoset");
  }
  int announcer_ix = first.front();
  const Infoset& announcer_is = tree.infosets[static_cast<size_t>(announcer_ix)];
  int announcer = announcer_is.player;
  int responder = 1 - announcer;
  for (int i : detail::stage_infosets(tree, 1)) {
    if (tree.infosets[static_cast<size_t>(i)].player != responder) {
      throw ValidationError("solve_two_stage: both stages owned by one player");
    }
  }

  std::vector<double> delta0 = detail::uniform(announcer_is.num_actions());
  IterateTrace trace;
  trace.stages = 2;
  for (int t = 1; t <= cfg.outer_iters; ++t) {
    double alpha = cfg.objective.alpha_at(t);
    Objective frozen = cfg.objective.frozen_at(t);
    auto respond = [&](const std::vector<double>& announced) {
      BehavioralPolicy ap(tree, announcer);
      ap.set(announcer_ix, announced);
      return best_response(tree, ap, responder, frozen).policy;
    };
    JointPolicy joint;
    joint.of(announcer) = BehavioralPolicy(tree, announcer);
    joint.of(announcer).set(announcer_ix, delta0);
    joint.of(responder) = respond(delta0);
    std::vector<double> q =
        action_values(tree, joint, frozen, announcer_ix).q;
    delta0 = mmd_step(delta0, q, cfg.eta, alpha,
                      frozen.magnet(tree, announcer_ix));
    if (t % cfg.record_every == 0 || t == cfg.outer_iters) {
      IterateRecord rec;
      rec.iteration = t;
      rec.alpha = alpha;
      rec.policy.of(announcer) = BehavioralPolicy(tree, announcer);
      rec.policy.of(announcer).set(announcer_ix, delta0);
      rec.policy.of(responder) = respond(delta0);
      trace.records.push_back(std::move(rec));
    }
  }
  return trace;
}

// Solves a game with at most three decision stages in the P0, P1, P0 turn
// order (the Kuhn structure). The last stage always plays the closed-form
// greedy rule for the beliefs induced by the earlier stages; the middle
// stage is re-solved each outer iteration t by ceil(sqrt(t)) inner MMD
// steps against that responder; the first stage takes one MMD step on
// exact feedback from stages two and three.
inline IterateTrace solve_three_stage(const GameTree& tree, const MmdConfig& cfg) {
  cfg.validate();
  cfg.objective.validate(tree);
  auto stage0 = detail::stage_infosets(tree, 0);
  auto stage1 = detail::stage_infosets(tree, 1);
  auto stage2 = detail::stage_infosets(tree, 2);
  if (tree.horizon != 3 || stage0.empty() || stage1.empty() || stage2.empty()) {
    throw ValidationError("solve_three_stage: need three decision stages");
  }
  for (int i : stage0) {
    if (tree.infosets[static_cast<size_t>(i)].player != 0) {
      throw ValidationError("solve_three_stage: first stage must be player 0's");
    }
  }
  for (int i : stage1) {
    if (tree.infosets[static_cast<size_t>(i)].player != 1) {
      throw ValidationError("solve_three_stage: second stage must be player 1's");
    }
  }
  for (int i : stage2) {
    if (tree.infosets[static_cast<size_t>(i)].player != 0) {
      throw ValidationError("solve_three_stage: third stage must be player 0's");
    }
  }

  std::vector<std::vector<double>> rules(static_cast<size_t>(tree.num_infosets()));
  auto reset_uniform = [&](const std::vector<int>& ixs) {
    for (int i : ixs) {
      rules[static_cast<size_t>(i)] =
          detail::uniform(tree.infosets[static_cast<size_t>(i)].num_actions());
    }
  };
  reset_uniform(stage0);
  reset_uniform(stage1);
  reset_uniform(stage2);

  auto as_joint = [&]() {
    JointPolicy joint{BehavioralPolicy(tree, 0), BehavioralPolicy(tree, 1)};
    for (int i = 0; i < tree.num_infosets(); ++i) {
      const Infoset& is = tree.infosets[static_cast<size_t>(i)];
      joint.of(is.player).set(i, rules[static_cast<size_t>(i)]);
    }
    return joint;
  };
  // Greedy last-stage rules for the current beliefs. The acting player's
  // own earlier reach cancels inside each infoset, so counterfactual
  // action values give exactly the belief-weighted payoffs.
  auto refresh_stage2 = [&](const Objective& frozen) {
    JointPolicy joint = as_joint();
    ReachTable reach = reach_probabilities(tree, joint);
    for (int i : stage2) {
      ActionValues av = action_values(tree, joint, frozen, i, reach);
      rules[static_cast<size_t>(i)] = frozen.regularized()
          ? greedy_policy(av.q, frozen.alpha(), frozen.magnet(tree, i))
          : greedy_policy_uniform_magnet(av.q, 0.0);
    }
  };

  IterateTrace trace;
  trace.stages = 3;
  for (int t = 1; t <= cfg.outer_iters; ++t) {
    double alpha = cfg.objective.alpha_at(t);
    Objective frozen = cfg.objective.frozen_at(t);
    if (!cfg.warm_start_inner) reset_uniform(stage1);
    int inner = cfg.inner_iterations(t);
    for (int k = 0; k < inner; ++k) {
      refresh_stage2(frozen);
      JointPolicy joint = as_joint();
      ReachTable reach = reach_probabilities(tree, joint);
      std::vector<std::vector<double>> next(stage1.size());
      for (size_t j = 0; j < stage1.size(); ++j) {
        int i = stage1[j];
        ActionValues av = action_values(tree, joint, frozen, i, reach);
        next[j] = mmd_step(rules[static_cast<size_t>(i)], av.q, cfg.eta, alpha,
                           frozen.magnet(tree, i));
      }
      for (size_t j = 0; j < stage1.size(); ++j) {
        rules[static_cast<size_t>(stage1[j])] = std::move(next[j]);
      }
    }
    refresh_stage2(frozen);
    {
      JointPolicy joint = as_joint();
      ReachTable reach = reach_probabilities(tree, joint);
      std::vector<std::vector<double>> next(stage0.size());
      for (size_t j = 0; j < stage0.size(); ++j) {
        int i = stage0[j];
        ActionValues av = action_values(tree, joint, frozen, i, reach);
        next[j] = mmd_step(rules[static_cast<size_t>(i)], av.q, cfg.eta, alpha,
                           frozen.magnet(tree, i));
      }
      for (size_t j = 0; j < stage0.size(); ++j) {
        rules[static_cast<size_t>(stage0[j])] = std::move(next[j]);
      }
    }
    if (t % cfg.record_every == 0 || t == cfg.outer_iters) {
      refresh_stage2(frozen);
      IterateRecord rec;
      rec.iteration = t;
      rec.alpha = alpha;
      rec.policy = as_joint();
      trace.records.push_back(std::move(rec));
    }
  }
  return trace;
}

// Counts decision stages and dispatches to the matching solve procedure.
inline IterateTrace solve(const GameTree& tree, const MmdConfig& cfg) {
  if (tree.horizon <= 2) return solve_two_stage(tree, cfg);
  return solve_three_stage(tree, cfg);
}

}  // namespace pubbelief

#endif  // PUBBELIEF_SOLVER_HPP_
