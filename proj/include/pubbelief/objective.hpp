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

#ifndef PUBBELIEF_OBJECTIVE_HPP_
#define PUBBELIEF_OBJECTIVE_HPP_

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pubbelief/game.hpp"

namespace pubbelief {

// Shannon entropy in nats; 0*log(0) = 0.
inline double entropy(const std::vector<double>& delta) {
  double h = 0.0;
  for (double p : delta) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

// KL(delta || rho) in nats. Domain error where delta places mass outside
// rho's support.
inline double kl_divergence(const std::vector<double>& delta,
                            const std::vector<double>& rho) {
  if (delta.size() != rho.size()) {
    throw std::invalid_argument("kl_divergence: dimension mismatch");
  }
  double d = 0.0;
  for (size_t i = 0; i < delta.size(); ++i) {
    if (delta[i] > 0.0) {
      if (rho[i] <= 0.0) {
        throw std::domain_error("kl_divergence: rho has zero mass where delta is positive");
      }
      d += delta[i] * std::log(delta[i] / rho[i]);
    }
  }
  return d;
}

enum class RegKind { kNone, kEntropy, kKl };

// Per-iteration regularization temperature. anneal_inverse gives
// alpha0/(1+c*t), anneal_exponential alpha0*gamma^t, with t the 1-based
// outer iteration.
struct Schedule {
  enum class Kind { kConstant, kInverse, kExponential };
  Kind kind = Kind::kConstant;
  double param = 0.0;  // c for inverse, gamma for exponential

  static Schedule constant() { return {}; }
  static Schedule anneal_inverse(double c) {
    if (c < 0.0) throw std::invalid_argument("inverse schedule needs c >= 0");
    return {Kind::kInverse, c};
  }
  static Schedule anneal_exponential(double gamma) {
    if (gamma <= 0.0 || gamma > 1.0) {
      throw std::invalid_argument("exponential schedule needs gamma in (0,1]");
    }
    return {Kind::kExponential, gamma};
  }

  double factor(int t) const {
    switch (kind) {
      case Kind::kConstant: return 1.0;
      case Kind::kInverse: return 1.0 / (1.0 + param * t);
      case Kind::kExponential: return std::pow(param, t);
    }
    return 1.0;
  }
};

// Regularization configuration: none, entropy(alpha), or kl(alpha, rho),
// plus an annealing schedule for alpha. The signs follow the minimax
// convention: player 0 is rewarded for its own entropy (penalized for its
// own KL), player 1 mirrored.
class Objective {
 public:
  static Objective none() { return Objective(); }

  static Objective minimax_entropy(double alpha,
                                   Schedule schedule = Schedule::constant()) {
    Objective o;
    o.kind_ = RegKind::kEntropy;
    o.alpha0_ = check_alpha(alpha);
    o.schedule_ = schedule;
    return o;
  }

  static Objective minimax_kl(double alpha, BehavioralPolicy reference_p0,
                              BehavioralPolicy reference_p1,
                              Schedule schedule = Schedule::constant()) {
    Objective o;
    o.kind_ = RegKind::kKl;
    o.alpha0_ = check_alpha(alpha);
    o.schedule_ = schedule;
    o.reference_ = {std::move(reference_p0), std::move(reference_p1)};
    return o;
  }

  RegKind kind() const { return kind_; }
  bool regularized() const { return kind_ != RegKind::kNone && alpha0_ > 0.0; }
  double alpha() const { return alpha0_; }
  double alpha_at(int t) const { return alpha0_ * schedule_.factor(t); }
  const Schedule& schedule() const { return schedule_; }

  // Same objective with alpha frozen at iteration t's value.
  Objective frozen_at(int t) const {
    Objective o = *this;
    o.alpha0_ = alpha_at(t);
    o.schedule_ = Schedule::constant();
    return o;
  }

  Objective with_alpha(double alpha) const {
    Objective o = *this;
    o.alpha0_ = check_alpha(alpha);
    return o;
  }

  // Magnet distribution at an infoset: the KL reference, or uniform for
  // entropy (MiniMaxEnt is MiniMaxKL with a uniform reference).
  std::vector<double> magnet(const GameTree& tree, int infoset_index) const {
    const Infoset& is = tree.infosets[static_cast<size_t>(infoset_index)];
    if (kind_ == RegKind::kKl) {
      const auto& ref = is.player == 0 ? reference_->first : reference_->second;
      return ref.at(infoset_index);
    }
    return detail::uniform(is.num_actions());
  }

  // The signed per-decision term that the acting player's choice delta
  // contributes to the objective (player 0's perspective), per unit of
  // reach. For KL this is -alpha*KL for player 0 and +alpha*KL for
  // player 1; entropy mirrors with opposite signs.
  double signed_regularizer(int acting_player, const std::vector<double>& delta,
                            const std::vector<double>& rho, double alpha) const {
    if (kind_ == RegKind::kNone || alpha == 0.0) return 0.0;
    double sign = acting_player == 0 ? 1.0 : -1.0;
    if (kind_ == RegKind::kEntropy) return sign * alpha * entropy(delta);
    return -sign * alpha * kl_divergence(delta, rho);
  }

  double regularizer_term(const GameTree& tree, int infoset_index,
                          const std::vector<double>& delta, double alpha) const {
    if (kind_ == RegKind::kNone || alpha == 0.0) return 0.0;
    int owner = tree.infosets[static_cast<size_t>(infoset_index)].player;
    return signed_regularizer(owner, delta,
                              kind_ == RegKind::kKl ? magnet(tree, infoset_index)
                                                    : std::vector<double>{},
                              alpha);
  }

  double regularizer_term(const GameTree& tree, int infoset_index,
                          const std::vector<double>& delta) const {
    return regularizer_term(tree, infoset_index, delta, alpha0_);
  }

  // Smallest magnet probability across infosets: the epsilon of the
  // exploitability bound. Uniform magnets give 1/max|A|.
  double magnet_floor(const GameTree& tree) const {
    double eps = 1.0;
    for (int i = 0; i < tree.num_infosets(); ++i) {
      for (double p : magnet(tree, i)) eps = std::min(eps, p);
    }
    return eps;
  }

  void validate(const GameTree& tree) const {
    if (kind_ != RegKind::kKl) return;
    reference_->first.validate(tree);
    reference_->second.validate(tree);
    for (int i = 0; i < tree.num_infosets(); ++i) {
      for (double p : magnet(tree, i)) {
        if (p <= 0.0) {
          throw ValidationError("kl reference policy must be interior");
        }
      }
    }
  }

 private:
  static double check_alpha(double alpha) {
    if (alpha < 0.0 || !std::isfinite(alpha)) {
      throw std::invalid_argument("alpha must be a nonnegative real");
    }
    return alpha;
  }

  RegKind kind_ = RegKind::kNone;
  double alpha0_ = 0.0;
  Schedule schedule_;
  std::optional<std::pair<BehavioralPolicy, BehavioralPolicy>> reference_;
};

// One step of the regularized reward: the payoff term plus the acting
// player's signed regularization term (player 0's perspective). KL
// objectives need the acting infoset's magnet; entropy/none ignore it.
inline double step_reward(double payoff_term, const std::vector<double>& delta,
                          int acting_player, const Objective& obj,
                          const std::vector<double>& rho = {}) {
  return payoff_term +
         obj.signed_regularizer(acting_player, delta, rho, obj.alpha());
}

// Exploitability bound alpha * T * |log eps| for a MiniMaxKL equilibrium
// whose reference places at least eps on every action.
inline double exploitability_bound(double alpha, int horizon, double eps) {
  if (alpha < 0.0) throw std::domain_error("exploitability_bound: alpha < 0");
  if (horizon < 1) throw std::domain_error("exploitability_bound: horizon < 1");
  if (eps <= 0.0 || eps > 1.0) {
    throw std::domain_error("exploitability_bound: eps must be in (0, 1]");
  }
  return alpha * horizon * std::abs(std::log(eps));
}

// Upper bound on |expected objective| over all joint policies: the payoff
// range plus the largest possible accumulated regularization.
struct PayoffBound {
  double value = 0.0;
};

inline PayoffBound payoff_bound(const GameTree& tree, const Objective& obj) {
  double reg = 0.0;
  if (obj.regularized()) {
    double per_step = 0.0;
    for (int i = 0; i < tree.num_infosets(); ++i) {
      if (obj.kind() == RegKind::kEntropy) {
        int n = tree.infosets[static_cast<size_t>(i)].num_actions();
        per_step = std::max(per_step, std::log(static_cast<double>(n)));
      } else {
        for (double p : obj.magnet(tree, i)) {
          per_step = std::max(per_step, std::abs(std::log(p)));
        }
      }
    }
    reg = obj.alpha() * tree.horizon * per_step;
  }
  return {tree.max_abs_payoff() + reg};
}

}  // namespace pubbelief

#endif  // PUBBELIEF_OBJECTIVE_HPP_
