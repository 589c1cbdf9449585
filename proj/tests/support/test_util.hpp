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

#ifndef PUBBELIEF_TESTS_SUPPORT_TEST_UTIL_HPP_
#define PUBBELIEF_TESTS_SUPPORT_TEST_UTIL_HPP_

#include <random>
#include <vector>

#include "pubbelief/game.hpp"

namespace testutil {

inline std::vector<double> random_distribution(int n, std::mt19937_64& rng,
                                               double floor = 0.01) {
  std::vector<double> p(static_cast<size_t>(n));
  double sum = 0.0;
  for (double& v : p) {
    v = std::uniform_real_distribution<double>(floor, 1.0)(rng);
    sum += v;
  }
  for (double& v : p) v /= sum;
  return p;
}

inline pubbelief::JointPolicy random_joint_policy(const pubbelief::GameTree& tree,
                                                  std::mt19937_64& rng) {
  pubbelief::JointPolicy pi{pubbelief::BehavioralPolicy(tree, 0),
                            pubbelief::BehavioralPolicy(tree, 1)};
  for (int i = 0; i < tree.num_infosets(); ++i) {
    const pubbelief::Infoset& is = tree.infosets[static_cast<size_t>(i)];
    pi.of(is.player).set(i, random_distribution(is.num_actions(), rng));
  }
  return pi;
}

// Enumerates every pure strategy of `player` (one action per infoset).
// Exponential, so for the small built-in games only.
inline std::vector<pubbelief::BehavioralPolicy> all_pure_strategies(
    const pubbelief::GameTree& tree, int player) {
  std::vector<int> own;
  for (int i = 0; i < tree.num_infosets(); ++i) {
    if (tree.infosets[static_cast<size_t>(i)].player == player) own.push_back(i);
  }
  std::vector<pubbelief::BehavioralPolicy> out;
  std::vector<int> choice(own.size(), 0);
  while (true) {
    pubbelief::BehavioralPolicy pi(tree, player);
    for (size_t k = 0; k < own.size(); ++k) {
      const pubbelief::Infoset& is = tree.infosets[static_cast<size_t>(own[k])];
      std::vector<double> det(static_cast<size_t>(is.num_actions()), 0.0);
      det[static_cast<size_t>(choice[k])] = 1.0;
      pi.set(own[k], det);
    }
    out.push_back(std::move(pi));
    size_t k = 0;
    for (; k < own.size(); ++k) {
      const pubbelief::Infoset& is = tree.infosets[static_cast<size_t>(own[k])];
      if (++choice[k] < is.num_actions()) break;
      choice[k] = 0;
    }
    if (k == own.size()) break;
  }
  return out;
}

}  // namespace testutil

#endif  // PUBBELIEF_TESTS_SUPPORT_TEST_UTIL_HPP_
