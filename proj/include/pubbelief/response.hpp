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

#ifndef PUBBELIEF_RESPONSE_HPP_
#define PUBBELIEF_RESPONSE_HPP_

#include <cmath>
#include <functional>
#include <vector>

#include "pubbelief/evaluate.hpp"
#include "pubbelief/game.hpp"
#include "pubbelief/mmd.hpp"
#include "pubbelief/objective.hpp"
#include "pubbelief/pub_amg.hpp"

namespace pubbelief {

struct ActionValues {
  std::vector<double> q;   // acting player's value per action
  bool zero_reach = false; // infoset had zero opponent-and-chance reach
};

// Counterfactual action values at an infoset: the acting player's signed
// expected immediate payoff plus all future regularized-reward terms,
// conditioning each member history by its normalized opponent-and-chance
// reach. Zero-reach infosets report q = 0 with the marker set.
inline ActionValues action_values(const GameTree& tree, const JointPolicy& pi,
                                  const Objective& obj, int infoset_index,
                                  const ReachTable& reach) {
  const Infoset& is = tree.infosets[static_cast<size_t>(infoset_index)];
  double sign = is.player == 0 ? 1.0 : -1.0;
  double total = 0.0;
  std::vector<double> q(static_cast<size_t>(is.num_actions()), 0.0);
  for (int id : is.nodes) {
    double w = reach.opponent_and_chance(id, is.player);
    if (w <= 0.0) continue;
    total += w;
    const Node& h = tree.node(id);
    for (size_t a = 0; a < h.children.size(); ++a) {
      q[a] += w * sign * detail::value_below(tree, pi, obj, h.children[a]);
    }
  }
  if (total <= 0.0) {
    return {std::vector<double>(static_cast<size_t>(is.num_actions()), 0.0), true};
  }
  for (double& v : q) v /= total;
  return {std::move(q), false};
}

inline ActionValues action_values(const GameTree& tree, const JointPolicy& pi,
                                  const Objective& obj, int infoset_index) {
  return action_values(tree, pi, obj, infoset_index,
                       reach_probabilities(tree, pi));
}

inline ActionValues action_values(const GameTree& tree, const JointPolicy& pi,
                                  const Objective& obj,
                                  std::string_view infoset_label) {
  return action_values(tree, pi, obj, tree.infoset_index(infoset_label));
}

struct BestResponseResult {
  BehavioralPolicy policy;  // the responder's optimal policy
  double value = 0.0;       // resulting objective, as player 0's value
};

namespace detail {

// Greedification per the regularizer: argmax-uniform at alpha=0, softmax
// q/alpha for entropy, rho-weighted softmax for KL.
inline std::vector<double> greedify(const GameTree& tree, const Objective& obj,
                                    int infoset_index,
                                    const std::vector<double>& q) {
  double alpha = obj.regularized() ? obj.alpha() : 0.0;
  if (alpha == 0.0) return greedy_policy_uniform_magnet(q, 0.0);
  return greedy_policy(q, alpha, obj.magnet(tree, infoset_index));
}

}  // namespace detail

// Exact (regularized) best response by backward induction over the
// responder's infosets in decreasing depth. Per-action values aggregate
// child values weighted by normalized opponent-and-chance reach; the
// opponent's own regularization terms ride along as constants. Zero-reach
// infosets get a uniform policy.
inline BestResponseResult best_response(const GameTree& tree,
                                        const BehavioralPolicy& opponent,
                                        int responder,
                                        const Objective& obj = Objective::none()) {
  opponent.validate(tree);
  JointPolicy scratch;
  scratch.of(responder) = BehavioralPolicy::uniform(tree, responder);
  scratch.of(1 - responder) = opponent;
  ReachTable reach = reach_probabilities(tree, scratch);

  double sign = responder == 0 ? 1.0 : -1.0;
  BehavioralPolicy br(tree, responder);
  std::vector<double> value(static_cast<size_t>(tree.num_nodes()), 0.0);

  int max_depth = 0;
  for (const Node& n : tree.nodes) max_depth = std::max(max_depth, n.depth);
  std::vector<std::vector<int>> nodes_at(static_cast<size_t>(max_depth) + 1);
  for (const Node& n : tree.nodes) {
    nodes_at[static_cast<size_t>(n.depth)].push_back(n.id);
  }

  for (int d = max_depth; d >= 0; --d) {
    // Non-responder nodes first, then responder infosets at this depth.
    for (int id : nodes_at[static_cast<size_t>(d)]) {
      const Node& n = tree.node(id);
      size_t i = static_cast<size_t>(id);
      if (n.is_terminal()) {
        value[i] = sign * n.payoff;
      } else if (n.is_chance()) {
        value[i] = 0.0;
        for (size_t a = 0; a < n.children.size(); ++a) {
          value[i] += n.probs[a] * value[static_cast<size_t>(n.children[a])];
        }
      } else if (n.player != responder) {
        const std::vector<double>& delta = opponent.at(n.infoset);
        value[i] = sign * obj.regularizer_term(tree, n.infoset, delta);
        for (size_t a = 0; a < n.children.size(); ++a) {
          value[i] += delta[a] * value[static_cast<size_t>(n.children[a])];
        }
      }
    }
    for (int is_ix = 0; is_ix < tree.num_infosets(); ++is_ix) {
      const Infoset& is = tree.infosets[static_cast<size_t>(is_ix)];
      if (is.player != responder || is.depth != d) continue;
      double total = 0.0;
      std::vector<double> q(static_cast<size_t>(is.num_actions()), 0.0);
      for (int id : is.nodes) {
        double w = reach.opponent_and_chance(id, responder);
        total += w;
        const Node& h = tree.node(id);
        for (size_t a = 0; a < h.children.size(); ++a) {
          q[a] += w * value[static_cast<size_t>(h.children[a])];
        }
      }
      std::vector<double> delta;
      if (total > 0.0) {
        for (double& v : q) v /= total;
        delta = detail::greedify(tree, obj, is_ix, q);
      } else {
        delta = detail::uniform(is.num_actions());
      }
      for (int id : is.nodes) {
        size_t i = static_cast<size_t>(id);
        const Node& h = tree.node(id);
        value[i] = sign * obj.regularizer_term(tree, is_ix, delta);
        for (size_t a = 0; a < h.children.size(); ++a) {
          value[i] += delta[a] * value[static_cast<size_t>(h.children[a])];
        }
      }
      br.set(is_ix, std::move(delta));
    }
  }

  JointPolicy combined;
  combined.of(responder) = br;
  combined.of(1 - responder) = opponent;
  double v = expected_objective(tree, combined, obj);
  return {std::move(br), v};
}

struct ExploitabilityReport {
  double br_value_vs_p0 = 0.0;  // min over player 1 of the objective
  double br_value_vs_p1 = 0.0;  // max over player 0 of the objective
  double exploitability = 0.0;
};

// expl(pi) = (-min_{pi1'} J(pi0, pi1') + max_{pi0'} J(pi0', pi1)) / 2.
inline ExploitabilityReport exploitability(const GameTree& tree,
                                           const JointPolicy& pi,
                                           const Objective& obj =
                                               Objective::none()) {
  double vs_p0 = best_response(tree, pi.policy0, 1, obj).value;
  double vs_p1 = best_response(tree, pi.policy1, 0, obj).value;
  return {vs_p0, vs_p1, (-vs_p0 + vs_p1) / 2.0};
}

// The exact value of a one-decision-remaining belief state: per infoset the
// hard (or temperature-alpha soft) optimum of belief-weighted payoffs,
// reported as player 0's value.
inline double final_stage_value(const GameTree& tree,
                                const PublicBeliefState& pbs,
                                const Objective& obj = Objective::none()) {
  if (pbs.is_terminal(tree)) {
    throw ValidationError("final_stage_value: belief state is terminal");
  }
  int actor = pbs.acting_player(tree);
  double sign = actor == 0 ? 1.0 : -1.0;
  double alpha = obj.regularized() ? obj.alpha() : 0.0;
  double v0 = 0.0;
  for (int is_ix : pbs.infosets(tree)) {
    const Infoset& is = tree.infosets[static_cast<size_t>(is_ix)];
    double mass = 0.0;
    std::vector<double> q(static_cast<size_t>(is.num_actions()), 0.0);
    for (size_t k = 0; k < pbs.support.size(); ++k) {
      const Node& h = tree.node(pbs.support[k]);
      if (h.infoset != is_ix) continue;
      mass += pbs.probs[k];
      for (size_t a = 0; a < h.children.size(); ++a) {
        std::map<int, double> settled;
        detail::settle(tree, h.children[a], 1.0, &settled);
        for (const auto& [id, w] : settled) {
          const Node& s = tree.node(id);
          if (!s.is_terminal()) {
            throw ValidationError(
                "final_stage_value: belief state is not at a final decision");
          }
          q[a] += pbs.probs[k] * w * sign * s.payoff;
        }
      }
    }
    if (mass <= 0.0) continue;
    for (double& v : q) v /= mass;
    double opt;
    if (alpha == 0.0) {
      opt = q.front();
      for (double v : q) opt = std::max(opt, v);
    } else {
      // Soft optimum: alpha * log sum rho_a e^{q_a/alpha}, the value of the
      // greedy policy of the matching temperature.
      std::vector<double> rho = obj.magnet(tree, is_ix);
      double m = q.front() / alpha;
      for (double v : q) m = std::max(m, v / alpha);
      double z = 0.0;
      for (size_t a = 0; a < q.size(); ++a) {
        z += rho[a] * std::exp(q[a] / alpha - m);
      }
      opt = alpha * (m + std::log(z));
    }
    v0 += mass * sign * opt;
  }
  return v0;
}

// How a PuB-AMG responder reacts to an announced first-stage rule.
using TwoStageResponder =
    std::function<BehavioralPolicy(const GameTree&, const DecisionRule&)>;

namespace detail {

inline void enumerate_simplex(int dims, int total, double step,
                              std::vector<int>& counts,
                              const std::function<void(const std::vector<double>&)>& visit) {
  static thread_local std::vector<double> point;
  if (static_cast<int>(counts.size()) == dims - 1) {
    int used = 0;
    for (int c : counts) used += c;
    point.assign(counts.begin(), counts.end());
    point.push_back(static_cast<double>(total - used));
    for (double& v : point) v *= step;
    visit(point);
    return;
  }
  int used = 0;
  for (int c : counts) used += c;
  for (int k = 0; k <= total - used; ++k) {
    counts.push_back(k);
    enumerate_simplex(dims, total, step, counts, visit);
    counts.pop_back();
  }
}

}  // namespace detail

// PuB-AMG exploitability for two-stage games with a single first-stage
// infoset. The responder side is an exact closed-form best response to the
// announced rule; the announcer side is a grid search over candidate first
// rules (step `grid`, then one refinement pass at a tenth of the step
// around the best point) against the responder function, so it carries a
// grid tolerance. The announced rule itself is always a candidate.
inline ExploitabilityReport pubamg_exploitability_two_stage(
    const GameTree& tree, const DecisionRule& first_rule,
    const TwoStageResponder& responder_fn, const Objective& obj, double grid) {
  int first_stage_infosets = 0;
  int announcer_ix = -1;
  for (int i = 0; i < tree.num_infosets(); ++i) {
    const Infoset& is = tree.infosets[static_cast<size_t>(i)];
    if (is.stage == 0) {
      ++first_stage_infosets;
      announcer_ix = i;
    }
    if (is.stage > 1) {
      throw ValidationError("pubamg_exploitability_two_stage: game has more than two stages");
    }
  }
  if (tree.horizon != 2 || first_stage_infosets != 1) {
    throw ValidationError(
        "pubamg_exploitability_two_stage: need exactly two decision stages "
        "with a single first-stage infoset");
  }
  const Infoset& announcer_is = tree.infosets[static_cast<size_t>(announcer_ix)];
  int announcer = announcer_is.player;
  int responder = 1 - announcer;

  auto announcer_policy = [&](const std::vector<double>& delta) {
    BehavioralPolicy p(tree, announcer);
    p.set(announcer_ix, delta);
    return p;
  };

  // Exact responder-side best response to the announced rule.
  double responder_side =
      best_response(tree, announcer_policy(first_rule.at(announcer_ix)),
                    responder, obj)
          .value;

  // Announcer-side best response against the responder function.
  double best_sign = announcer == 0 ? 1.0 : -1.0;
  auto candidate_value = [&](const std::vector<double>& delta) {
    DecisionRule rule;
    rule.set(announcer_ix, delta);
    JointPolicy joint;
    joint.of(announcer) = announcer_policy(delta);
    joint.of(responder) = responder_fn(tree, rule);
    return expected_objective(tree, joint, obj);
  };

  std::vector<double> first_delta = first_rule.at(announcer_ix);
  double best_value = candidate_value(first_delta);
  std::vector<double> best_point = first_delta;
  int dims = announcer_is.num_actions();
  int n = static_cast<int>(std::round(1.0 / grid));
  if (n < 1 || std::abs(n * grid - 1.0) > 1e-9) {
    throw std::invalid_argument("grid step must evenly divide 1");
  }
  std::vector<int> counts;
  detail::enumerate_simplex(dims, n, grid, counts,
                            [&](const std::vector<double>& p) {
                              double v = candidate_value(p);
                              if (best_sign * v > best_sign * best_value) {
                                best_value = v;
                                best_point = p;
                              }
                            });
  // One refinement pass at a tenth of the step around the best grid point.
  double fine = grid / 10.0;
  std::vector<double> center = best_point;
  std::vector<double> offsets;
  for (int k = -10; k <= 10; ++k) offsets.push_back(k * fine);
  std::vector<double> probe(static_cast<size_t>(dims), 0.0);
  std::function<void(int, double)> refine = [&](int dim, double used) {
    if (dim == dims - 1) {
      double last = 1.0 - used;
      if (last < -1e-12 || std::abs(last - center[static_cast<size_t>(dim)]) > grid + 1e-12) {
        return;
      }
      probe[static_cast<size_t>(dim)] = std::max(0.0, last);
      double v = candidate_value(probe);
      if (best_sign * v > best_sign * best_value) {
        best_value = v;
        best_point = probe;
      }
      return;
    }
    for (double off : offsets) {
      double x = center[static_cast<size_t>(dim)] + off;
      if (x < -1e-12 || used + x > 1.0 + 1e-12) continue;
      probe[static_cast<size_t>(dim)] = std::max(0.0, x);
      refine(dim + 1, used + probe[static_cast<size_t>(dim)]);
    }
  };
  refine(0, 0.0);

  double announcer_side = best_value;
  ExploitabilityReport report;
  report.br_value_vs_p0 = announcer == 0 ? responder_side : announcer_side;
  report.br_value_vs_p1 = announcer == 0 ? announcer_side : responder_side;
  report.exploitability =
      (-report.br_value_vs_p0 + report.br_value_vs_p1) / 2.0;
  return report;
}

}  // namespace pubbelief

#endif  // PUBBELIEF_RESPONSE_HPP_
