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

#ifndef PUBBELIEF_TESTS_SUPPORT_CFR_ORACLE_HPP_
#define PUBBELIEF_TESTS_SUPPORT_CFR_ORACLE_HPP_

#include <vector>

#include "pubbelief/game.hpp"

namespace testutil {

// Test-only equilibrium oracle: regret-matching+ self-play with alternating
// updates and linearly weighted averaging. Independent of the solver and
// best-response paths under test; only the plain leaf-sum evaluator is
// shared.
class CfrPlusOracle {
 public:
  explicit CfrPlusOracle(const pubbelief::GameTree& tree) : tree_(tree) {
    regrets_.resize(static_cast<size_t>(tree.num_infosets()));
    strategy_sum_.resize(static_cast<size_t>(tree.num_infosets()));
    for (int i = 0; i < tree.num_infosets(); ++i) {
      int n = tree.infosets[static_cast<size_t>(i)].num_actions();
      regrets_[static_cast<size_t>(i)].assign(static_cast<size_t>(n), 0.0);
      strategy_sum_[static_cast<size_t>(i)].assign(static_cast<size_t>(n), 0.0);
    }
  }

  void run(int iterations) {
    for (int t = 1; t <= iterations; ++t) {
      for (int player = 0; player < 2; ++player) {
        walk(tree_.root, player, 1.0, 1.0, 1.0, static_cast<double>(t));
      }
    }
  }

  pubbelief::JointPolicy average_policy() const {
    pubbelief::JointPolicy pi{pubbelief::BehavioralPolicy(tree_, 0),
                              pubbelief::BehavioralPolicy(tree_, 1)};
    for (int i = 0; i < tree_.num_infosets(); ++i) {
      const pubbelief::Infoset& is = tree_.infosets[static_cast<size_t>(i)];
      const auto& sum = strategy_sum_[static_cast<size_t>(i)];
      double total = 0.0;
      for (double v : sum) total += v;
      std::vector<double> avg(sum.size());
      if (total > 0.0) {
        for (size_t a = 0; a < sum.size(); ++a) avg[a] = sum[a] / total;
        // Clean tiny negative rounding and renormalize exactly.
        double s = 0.0;
        for (double v : avg) s += v;
        for (double& v : avg) v /= s;
      } else {
        avg.assign(sum.size(), 1.0 / sum.size());
      }
      pi.of(is.player).set(i, avg);
    }
    return pi;
  }

 private:
  std::vector<double> current_strategy(int infoset) const {
    const auto& r = regrets_[static_cast<size_t>(infoset)];
    std::vector<double> sigma(r.size());
    double pos = 0.0;
    for (double v : r) pos += v > 0.0 ? v : 0.0;
    if (pos > 0.0) {
      for (size_t a = 0; a < r.size(); ++a) {
        sigma[a] = r[a] > 0.0 ? r[a] / pos : 0.0;
      }
    } else {
      sigma.assign(r.size(), 1.0 / r.size());
    }
    return sigma;
  }

  // Returns the traverser's expected value below `node`; updates regrets at
  // the traverser's infosets and the strategy average at the opponent's.
  double walk(int node_id, int traverser, double reach0, double reach1,
              double reach_c, double weight) {
    const pubbelief::Node& node = tree_.node(node_id);
    if (node.is_terminal()) {
      return traverser == 0 ? node.payoff : -node.payoff;
    }
    if (node.is_chance()) {
      double v = 0.0;
      for (size_t a = 0; a < node.children.size(); ++a) {
        if (node.probs[a] > 0.0) {
          v += node.probs[a] * walk(node.children[a], traverser, reach0,
                                    reach1, reach_c * node.probs[a], weight);
        }
      }
      return v;
    }
    std::vector<double> sigma = current_strategy(node.infoset);
    double own_reach = node.player == 0 ? reach0 : reach1;
    if (node.player != traverser) {
      double v = 0.0;
      auto& sum = strategy_sum_[static_cast<size_t>(node.infoset)];
      for (size_t a = 0; a < node.children.size(); ++a) {
        sum[a] += weight * own_reach * sigma[a];
        if (sigma[a] > 0.0) {
          v += sigma[a] * walk(node.children[a], traverser,
                               node.player == 0 ? reach0 * sigma[a] : reach0,
                               node.player == 1 ? reach1 * sigma[a] : reach1,
                               reach_c, weight);
        }
      }
      return v;
    }
    std::vector<double> q(node.children.size());
    double v = 0.0;
    for (size_t a = 0; a < node.children.size(); ++a) {
      q[a] = walk(node.children[a], traverser,
                  node.player == 0 ? reach0 * sigma[a] : reach0,
                  node.player == 1 ? reach1 * sigma[a] : reach1, reach_c,
                  weight);
      v += sigma[a] * q[a];
    }
    double cf = reach_c * (traverser == 0 ? reach1 : reach0);
    auto& r = regrets_[static_cast<size_t>(node.infoset)];
    for (size_t a = 0; a < node.children.size(); ++a) {
      r[a] += cf * (q[a] - v);
      if (r[a] < 0.0) r[a] = 0.0;  // regret matching+
    }
    return v;
  }

  const pubbelief::GameTree& tree_;
  std::vector<std::vector<double>> regrets_;
  std::vector<std::vector<double>> strategy_sum_;
};

}  // namespace testutil

#endif  // PUBBELIEF_TESTS_SUPPORT_CFR_ORACLE_HPP_
