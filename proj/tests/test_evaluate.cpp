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

#include <cmath>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "pubbelief/evaluate.hpp"
#include "pubbelief/games.hpp"
#include "support/test_util.hpp"

using namespace pubbelief;
using Catch::Matchers::WithinAbs;

namespace {

JointPolicy rps_policy(const GameTree& tree, std::vector<double> blue,
                       std::vector<double> red) {
  JointPolicy pi{BehavioralPolicy(tree, 0), BehavioralPolicy(tree, 1)};
  pi.policy0.set(tree, "blue", std::move(blue));
  pi.policy1.set(tree, "red", std::move(red));
  return pi;
}

}  // namespace

TEST_CASE("perturbed RPS expectations", "[evaluate]") {
  GameTree tree = perturbed_rps();
  std::vector<double> u3 = {1.0 / 3, 1.0 / 3, 1.0 / 3};

  CHECK_THAT(expected_objective(tree, rps_policy(tree, u3, u3)),
             WithinAbs(0.0, 1e-15));
  // The equilibrium mix equalizes every red response at 0.
  for (int a = 0; a < 3; ++a) {
    std::vector<double> pure(3, 0.0);
    pure[static_cast<size_t>(a)] = 1.0;
    CHECK_THAT(
        expected_objective(tree, rps_policy(tree, {0.4, 0.4, 0.2}, pure)),
        WithinAbs(0.0, 1e-15));
  }
  // Both uniform under MiniMaxEnt: the two entropy bonuses cancel.
  CHECK_THAT(expected_objective(tree, rps_policy(tree, u3, u3),
                                Objective::minimax_entropy(0.1)),
             WithinAbs(0.0, 1e-15));
}

TEST_CASE("zero-sum consistency: player 1's expected payoff is the negation",
          "[evaluate]") {
  // Player 1's expected payoff equals -J by the zero-sum encoding; check
  // J against a manual leaf sum with flipped signs.
  GameTree tree = kuhn_poker();
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    JointPolicy pi = testutil::random_joint_policy(tree, rng);
    ReachTable reach = reach_probabilities(tree, pi);
    double p1_value = 0.0;
    for (const Node& n : tree.nodes) {
      if (n.is_terminal()) p1_value += reach.total(n.id) * (-n.payoff);
    }
    REQUIRE_THAT(expected_objective(tree, pi), WithinAbs(-p1_value, 1e-12));
  }
}

TEST_CASE("expected return is linear in leaf reach", "[evaluate]") {
  std::mt19937_64 rng(5);
  for (const std::string& name : builtin_game_names()) {
    GameTree tree = make_builtin_game(name);
    for (int trial = 0; trial < 10; ++trial) {
      JointPolicy pi = testutil::random_joint_policy(tree, rng);
      ReachTable reach = reach_probabilities(tree, pi);
      double by_reach = 0.0;
      for (const Node& n : tree.nodes) {
        if (n.is_terminal()) by_reach += reach.total(n.id) * n.payoff;
      }
      REQUIRE_THAT(expected_objective(tree, pi), WithinAbs(by_reach, 1e-12));
    }
  }
}

TEST_CASE("regularizer decomposition: entropy terms add reach-weighted",
          "[evaluate]") {
  GameTree tree = kuhn_poker();
  double alpha = 0.17;
  Objective ent = Objective::minimax_entropy(alpha);
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    JointPolicy pi = testutil::random_joint_policy(tree, rng);
    ReachTable reach = reach_probabilities(tree, pi);
    double reg_sum = 0.0;
    for (const Node& n : tree.nodes) {
      if (!n.is_decision()) continue;
      double sign = n.player == 0 ? 1.0 : -1.0;
      reg_sum += reach.total(n.id) * sign * alpha * entropy(pi.at(tree, n.infoset));
    }
    REQUIRE_THAT(expected_objective(tree, pi, ent),
                 WithinAbs(expected_objective(tree, pi) + reg_sum, 1e-12));
  }
}
