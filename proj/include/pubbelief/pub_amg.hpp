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

#ifndef PUBBELIEF_PUB_AMG_HPP_
#define PUBBELIEF_PUB_AMG_HPP_

#include <deque>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pubbelief/game.hpp"
#include "pubbelief/objective.hpp"

namespace pubbelief {

// A public-state label together with a distribution over the histories
// consistent with it. Support is ordered by node id so posteriors are
// bit-reproducible.
struct PublicBeliefState {
  int public_state = -1;
  std::vector<int> support;
  std::vector<double> probs;

  // Acting player at the support nodes, or -1 if the support is terminal.
  int acting_player(const GameTree& tree) const {
    const Node& n = tree.node(support.front());
    return n.is_decision() ? n.player : -1;
  }
  bool is_terminal(const GameTree& tree) const {
    return tree.node(support.front()).is_terminal();
  }

  // Infoset indices intersecting the support, ascending.
  std::vector<int> infosets(const GameTree& tree) const {
    std::set<int> seen;
    for (int id : support) {
      const Node& n = tree.node(id);
      if (n.is_decision()) seen.insert(n.infoset);
    }
    return {seen.begin(), seen.end()};
  }
};

// The acting player's action distributions for each of its infosets within
// one public state: the "action" of the public belief game.
class DecisionRule {
 public:
  DecisionRule() = default;

  void set(int infoset_index, std::vector<double> dist) {
    if (!detail::is_distribution(dist)) {
      throw ValidationError("decision rule entry is not a distribution");
    }
    for (auto& e : entries_) {
      if (e.first == infoset_index) {
        e.second = std::move(dist);
        return;
      }
    }
    entries_.emplace_back(infoset_index, std::move(dist));
    std::sort(entries_.begin(), entries_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }

  bool covers(int infoset_index) const {
    for (const auto& e : entries_) {
      if (e.first == infoset_index) return true;
    }
    return false;
  }

  const std::vector<double>& at(int infoset_index) const {
    for (const auto& e : entries_) {
      if (e.first == infoset_index) return e.second;
    }
    throw std::out_of_range("decision rule missing infoset index " +
                            std::to_string(infoset_index));
  }

  const std::vector<double>& at(const GameTree& tree,
                                std::string_view label) const {
    return at(tree.infoset_index(label));
  }

  const std::vector<std::pair<int, std::vector<double>>>& entries() const {
    return entries_;
  }

  static DecisionRule uniform_for(const GameTree& tree,
                                  const PublicBeliefState& pbs) {
    DecisionRule rule;
    for (int is : pbs.infosets(tree)) {
      rule.set(is, detail::uniform(tree.infosets[static_cast<size_t>(is)].num_actions()));
    }
    return rule;
  }

 private:
  std::vector<std::pair<int, std::vector<double>>> entries_;
};

// One announcement: the public observation that led here plus the decision
// rule that was declared. A trajectory through the public belief game is
// identified by its announcement history.
struct AnnouncementStep {
  std::string observation;
  DecisionRule rule;
};
using AnnouncementHistory = std::vector<AnnouncementStep>;

// A policy over the public belief game, realized lazily: given the
// announcements so far and the current PBS, produce the next decision rule.
// Implementations must be evaluable concurrently on disjoint PBSs.
class PubTrajectoryPolicy {
 public:
  virtual ~PubTrajectoryPolicy() = default;
  virtual DecisionRule rule_at(const GameTree& tree,
                               const AnnouncementHistory& history,
                               const PublicBeliefState& pbs) const = 0;
};

namespace detail {

// Expands `node` through chance, appending (settled node, probability
// factor) pairs. Settled nodes are decisions or terminals.
inline void settle(const GameTree& tree, int node_id, double weight,
                   std::map<int, double>* mass) {
  const Node& n = tree.node(node_id);
  if (n.is_chance()) {
    for (size_t a = 0; a < n.children.size(); ++a) {
      if (n.probs[a] > 0.0) {
        settle(tree, n.children[a], weight * n.probs[a], mass);
      }
    }
  } else {
    (*mass)[node_id] += weight;
  }
}

inline PublicBeliefState make_pbs(const GameTree& tree,
                                  const std::map<int, double>& mass,
                                  double total) {
  PublicBeliefState pbs;
  pbs.public_state = tree.node(mass.begin()->first).public_state;
  const Node& first = tree.node(mass.begin()->first);
  for (const auto& [id, w] : mass) {
    const Node& n = tree.node(id);
    if (n.public_state != pbs.public_state) {
      throw ValidationError("belief support spans two public states");
    }
    if (n.kind != first.kind || (n.is_decision() && n.player != first.player)) {
      throw ValidationError("belief support mixes acting players");
    }
    pbs.support.push_back(id);
    pbs.probs.push_back(w / total);
  }
  return pbs;
}

}  // namespace detail

// The initial PBS: the chance distribution over histories reachable before
// the first decision.
inline PublicBeliefState initial_pbs(const GameTree& tree) {
  std::map<int, double> mass;
  detail::settle(tree, tree.root, 1.0, &mass);
  return detail::make_pbs(tree, mass, 1.0);
}

struct PbsSuccessor {
  std::string observation;  // public label of the successor state
  double prob = 0.0;
  PublicBeliefState pbs;
};

struct PbsStepResult {
  double step_reward = 0.0;  // expected regularized reward of this step
  std::vector<PbsSuccessor> successors;
};

// Applies a decision rule at a PBS: the expected one-step regularized
// reward, and the Bayes posterior per public observation. Zero-probability
// observations are omitted.
inline PbsStepResult pbs_step(const GameTree& tree, const PublicBeliefState& pbs,
                              const DecisionRule& rule,
                              const Objective& obj = Objective::none()) {
  if (pbs.is_terminal(tree)) {
    throw ValidationError("pbs_step on a terminal belief state");
  }
  PbsStepResult out;
  std::map<int, double> settled;  // node id -> unnormalized mass
  for (size_t k = 0; k < pbs.support.size(); ++k) {
    const Node& h = tree.node(pbs.support[k]);
    double b = pbs.probs[k];
    const std::vector<double>& delta = rule.at(h.infoset);
    out.step_reward += b * obj.regularizer_term(tree, h.infoset, delta);
    for (size_t a = 0; a < h.children.size(); ++a) {
      if (delta[a] > 0.0 && b > 0.0) {
        detail::settle(tree, h.children[a], b * delta[a], &settled);
      }
    }
  }
  // Terminal rewards accrue at the step that created them.
  std::map<int, std::map<int, double>> groups;  // public state -> masses
  for (const auto& [id, w] : settled) {
    const Node& n = tree.node(id);
    if (n.is_terminal()) out.step_reward += w * n.payoff;
    groups[n.public_state][id] = w;
  }
  for (const auto& [pub, mass] : groups) {
    double total = 0.0;
    for (const auto& [id, w] : mass) total += w;
    if (total <= 0.0) continue;
    PbsSuccessor succ;
    succ.observation = tree.public_labels[static_cast<size_t>(pub)];
    succ.prob = total;
    succ.pbs = detail::make_pbs(tree, mass, total);
    out.successors.push_back(std::move(succ));
  }
  return out;
}

// Correspondence mapping: replays the policy's own announcements from the
// initial PBS breadth-first and copies each announced rule onto the support
// infosets. Infosets never touched are unreachable and are set to uniform.
inline JointPolicy correspondence_down(const GameTree& tree,
                                       const PubTrajectoryPolicy& pub_policy) {
  JointPolicy pi{BehavioralPolicy(tree, 0), BehavioralPolicy(tree, 1)};
  std::vector<bool> touched(static_cast<size_t>(tree.num_infosets()), false);
  std::deque<std::pair<PublicBeliefState, AnnouncementHistory>> queue;
  queue.emplace_back(initial_pbs(tree), AnnouncementHistory{});
  while (!queue.empty()) {
    auto [pbs, history] = std::move(queue.front());
    queue.pop_front();
    if (pbs.is_terminal(tree)) continue;
    DecisionRule rule = pub_policy.rule_at(tree, history, pbs);
    int owner = pbs.acting_player(tree);
    for (int is : pbs.infosets(tree)) {
      pi.of(owner).set(is, rule.at(is));
      touched[static_cast<size_t>(is)] = true;
    }
    for (PbsSuccessor& succ : pbs_step(tree, pbs, rule).successors) {
      AnnouncementHistory next = history;
      next.push_back({succ.observation, rule});
      queue.emplace_back(std::move(succ.pbs), std::move(next));
    }
  }
  for (int i = 0; i < tree.num_infosets(); ++i) {
    if (!touched[static_cast<size_t>(i)]) {
      const Infoset& is = tree.infosets[static_cast<size_t>(i)];
      pi.of(is.player).set(i, detail::uniform(is.num_actions()));
    }
  }
  return pi;
}

// Canonical choice mapping: the belief-ignoring lift of a behavioral
// policy. At every PBS it announces exactly what the policy plays at each
// support infoset.
class CanonicalLiftPolicy final : public PubTrajectoryPolicy {
 public:
  explicit CanonicalLiftPolicy(JointPolicy pi) : pi_(std::move(pi)) {}

  DecisionRule rule_at(const GameTree& tree, const AnnouncementHistory&,
                       const PublicBeliefState& pbs) const override {
    DecisionRule rule;
    for (int is : pbs.infosets(tree)) {
      rule.set(is, pi_.at(tree, is));
    }
    return rule;
  }

 private:
  JointPolicy pi_;
};

inline CanonicalLiftPolicy canonical_up(const GameTree& tree, JointPolicy pi) {
  pi.validate(tree);
  return CanonicalLiftPolicy(std::move(pi));
}

// Single-player lift: usable wherever only that player's announcements are
// consulted (it throws if asked to act for the other player).
class CanonicalLiftSinglePolicy final : public PubTrajectoryPolicy {
 public:
  CanonicalLiftSinglePolicy(BehavioralPolicy pi, int player)
      : pi_(std::move(pi)), player_(player) {}

  DecisionRule rule_at(const GameTree& tree, const AnnouncementHistory&,
                       const PublicBeliefState& pbs) const override {
    if (pbs.acting_player(tree) != player_) {
      throw ValidationError("single-player lift asked to act out of turn");
    }
    DecisionRule rule;
    for (int is : pbs.infosets(tree)) {
      rule.set(is, pi_.at(is));
    }
    return rule;
  }

 private:
  BehavioralPolicy pi_;
  int player_;
};

inline CanonicalLiftSinglePolicy canonical_up(const GameTree& tree,
                                              BehavioralPolicy pi, int player) {
  pi.validate(tree);
  return CanonicalLiftSinglePolicy(std::move(pi), player);
}

namespace detail {

inline double pub_value(const GameTree& tree, const PubTrajectoryPolicy& policy,
                        const Objective& obj, const PublicBeliefState& pbs,
                        const AnnouncementHistory& history) {
  if (pbs.is_terminal(tree)) return 0.0;
  DecisionRule rule = policy.rule_at(tree, history, pbs);
  PbsStepResult step = pbs_step(tree, pbs, rule, obj);
  double v = step.step_reward;
  for (const PbsSuccessor& succ : step.successors) {
    if (succ.pbs.is_terminal(tree)) continue;
    AnnouncementHistory next = history;
    next.push_back({succ.observation, rule});
    v += succ.prob * pub_value(tree, policy, obj, succ.pbs, next);
  }
  return v;
}

}  // namespace detail

// The public belief game's objective value of a trajectory policy:
// accumulated pbs_step rewards from the initial PBS. Equals the original
// game's objective of the corresponding joint policy.
inline double pub_objective(const GameTree& tree,
                            const PubTrajectoryPolicy& policy,
                            const Objective& obj = Objective::none()) {
  return detail::pub_value(tree, policy, obj, initial_pbs(tree), {});
}

}  // namespace pubbelief

#endif  // PUBBELIEF_PUB_AMG_HPP_
