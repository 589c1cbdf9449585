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

#ifndef PUBBELIEF_EVALUATE_HPP_
#define PUBBELIEF_EVALUATE_HPP_

#include <vector>

#include "pubbelief/game.hpp"
#include "pubbelief/objective.hpp"

namespace pubbelief {

namespace detail {

// Expected accumulated regularized reward below `node`, given the node is
// reached, as player 0's value.
inline double value_below(const GameTree& tree, const JointPolicy& pi,
                          const Objective& obj, int node_id) {
  const Node& node = tree.node(node_id);
  if (node.is_terminal()) return node.payoff;
  double v = 0.0;
  if (node.is_chance()) {
    for (size_t a = 0; a < node.children.size(); ++a) {
      if (node.probs[a] > 0.0) {
        v += node.probs[a] * value_below(tree, pi, obj, node.children[a]);
      }
    }
    return v;
  }
  const std::vector<double>& delta = pi.at(tree, node.infoset);
  v = obj.regularizer_term(tree, node.infoset, delta);
  for (size_t a = 0; a < node.children.size(); ++a) {
    if (delta[a] > 0.0) {
      v += delta[a] * value_below(tree, pi, obj, node.children[a]);
    }
  }
  return v;
}

}  // namespace detail

// Expected value of the accumulated regularized reward under the joint
// policy, as player 0's objective. With Objective::none this is the plain
// expected return.
inline double expected_objective(const GameTree& tree, const JointPolicy& pi,
                                 const Objective& obj = Objective::none()) {
  return detail::value_below(tree, pi, obj, tree.root);
}

}  // namespace pubbelief

#endif  // PUBBELIEF_EVALUATE_HPP_
