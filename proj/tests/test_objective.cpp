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
#include "pubbelief/objective.hpp"
#include "support/test_util.hpp"

using namespace pubbelief;
using Catch::Matchers::WithinAbs;

TEST_CASE("entropy and KL basics", "[objective]") {
  CHECK_THAT(entropy({1.0 / 3, 1.0 / 3, 1.0 / 3}), WithinAbs(std::log(3.0), 1e-12));
  CHECK_THAT(entropy({1.0, 0.0}), WithinAbs(0.0, 1e-15));
  CHECK_THAT(kl_divergence({0.3, 0.7}, {0.3, 0.7}), WithinAbs(0.0, 1e-15));
  CHECK_THAT(kl_divergence({1.0, 0.0}, {0.5, 0.5}),
             WithinAbs(std::log(2.0), 1e-12));
  CHECK_THROWS_AS(kl_divergence({0.5, 0.5}, {1.0, 0.0}), std::domain_error);
}

TEST_CASE("step_reward applies the signed regularizer", "[objective]") {
  Objective none = Objective::none();
  CHECK(step_reward(3.25, {0.2, 0.8}, 0, none) == 3.25);

  Objective ent = Objective::minimax_entropy(1.0);
  std::vector<double> u3 = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  CHECK_THAT(step_reward(0.0, u3, 0, ent), WithinAbs(std::log(3.0), 1e-12));
  CHECK_THAT(step_reward(0.0, u3, 1, ent), WithinAbs(-std::log(3.0), 1e-12));

  GameTree tree = perturbed_rps();
  Objective kl = Objective::minimax_kl(1.0, BehavioralPolicy::uniform(tree, 0),
                                       BehavioralPolicy::uniform(tree, 1));
  // delta == rho: the KL term vanishes.
  CHECK_THAT(step_reward(5.0, u3, 1, kl, u3), WithinAbs(5.0, 1e-15));
  // Sign antisymmetry: swapping the acting player flips only the regularizer.
  std::vector<double> skew = {0.7, 0.2, 0.1};
  double r0 = step_reward(0.0, skew, 0, kl, u3);
  double r1 = step_reward(0.0, skew, 1, kl, u3);
  CHECK_THAT(r0 + r1, WithinAbs(0.0, 1e-15));
}

TEST_CASE("exploitability bound arithmetic", "[objective]") {
  CHECK(exploitability_bound(0.0, 5, 0.5) == 0.0);
  CHECK_THAT(exploitability_bound(0.1, 2, 1.0 / 3), WithinAbs(0.21972, 1e-5));
  CHECK_THAT(exploitability_bound(0.05, 3, 1.0 / 3), WithinAbs(0.16479, 1e-5));
  CHECK_THROWS_AS(exploitability_bound(0.1, 2, 0.0), std::domain_error);
  CHECK_THROWS_AS(exploitability_bound(0.1, 2, -0.5), std::domain_error);
}

TEST_CASE("annealing schedules are nonincreasing and vanish", "[objective]") {
  Objective inv = Objective::minimax_entropy(0.2, Schedule::anneal_inverse(0.05));
  Objective exp = Objective::minimax_entropy(0.2, Schedule::anneal_exponential(0.999));
  double prev_i = inv.alpha_at(1), prev_e = exp.alpha_at(1);
  for (int t = 2; t <= 2000; ++t) {
    double ai = inv.alpha_at(t), ae = exp.alpha_at(t);
    REQUIRE(ai <= prev_i);
    REQUIRE(ae <= prev_e);
    prev_i = ai;
    prev_e = ae;
  }
  CHECK(inv.alpha_at(1000000) < 1e-5);
  CHECK(exp.alpha_at(1000000) < 1e-12);
  Objective c = Objective::minimax_entropy(0.2);
  CHECK(c.alpha_at(1) == c.alpha_at(100000));
}

TEST_CASE("MiniMaxEnt equals MiniMaxKL-to-uniform up to a policy-independent "
          "constant",
          "[objective]") {
  GameTree tree = perturbed_rps();
  Objective ent = Objective::minimax_entropy(0.3);
  Objective kl = Objective::minimax_kl(0.3, BehavioralPolicy::uniform(tree, 0),
                                       BehavioralPolicy::uniform(tree, 1));
  std::mt19937_64 rng(7);
  double ref = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    JointPolicy pi = testutil::random_joint_policy(tree, rng);
    double gap = expected_objective(tree, pi, ent) -
                 expected_objective(tree, pi, kl);
    if (trial == 0) {
      ref = gap;
    } else {
      REQUIRE_THAT(gap, WithinAbs(ref, 1e-12));
    }
  }
}

TEST_CASE("payoff bound dominates sampled objective values", "[objective]") {
  GameTree tree = kuhn_poker();
  std::mt19937_64 rng(11);
  for (const Objective& obj :
       {Objective::none(), Objective::minimax_entropy(0.3),
        Objective::minimax_kl(0.3, BehavioralPolicy::uniform(tree, 0),
                              BehavioralPolicy::uniform(tree, 1))}) {
    double m = payoff_bound(tree, obj).value;
    for (int trial = 0; trial < 25; ++trial) {
      JointPolicy pi = testutil::random_joint_policy(tree, rng);
      REQUIRE(std::abs(expected_objective(tree, pi, obj)) <= m);
    }
  }
  CHECK(payoff_bound(tree, Objective::none()).value == 2.0);
}

TEST_CASE("kl objective requires an interior reference", "[objective]") {
  GameTree tree = adversarial_matching_pennies();
  BehavioralPolicy p0(tree, 0), p1(tree, 1);
  p0.set(tree, "blue", {1.0, 0.0});
  p1.set(tree, "red", {0.5, 0.5});
  Objective kl = Objective::minimax_kl(0.1, p0, p1);
  CHECK_THROWS_AS(kl.validate(tree), ValidationError);
}
