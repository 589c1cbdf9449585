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

#ifndef PUBBELIEF_GAMES_HPP_
#define PUBBELIEF_GAMES_HPP_

#include <array>
#include <sstream>
#include <string>
#include <vector>

#include "pubbelief/game.hpp"
#include "pubbelief/pub_amg.hpp"

namespace pubbelief {

// All constructors emit the textual game format and round-trip through
// load_game, so every built-in tree is parser-validated and exposes its
// source via GameTree::source_text.

// 3x3 simultaneous rock-paper-scissors encoded sequentially with the first
// move hidden. Payouts are doubled whenever either side plays scissors; the
// unique equilibrium mix is (0.4, 0.4, 0.2).
inline GameTree perturbed_rps() {
  static const char* kText = R"(# perturbed rock-paper-scissors
node 0 player=0 parent=- infoset=blue public=t0 actions=R:1,P:2,S:3
node 1 player=1 parent=0 infoset=red public=t1 actions=R:4,P:5,S:6
node 2 player=1 parent=0 infoset=red public=t1 actions=R:7,P:8,S:9
node 3 player=1 parent=0 infoset=red public=t1 actions=R:10,P:11,S:12
node 4 player=T parent=1 public=end payoff=0
node 5 player=T parent=1 public=end payoff=-1
node 6 player=T parent=1 public=end payoff=2
node 7 player=T parent=2 public=end payoff=1
node 8 player=T parent=2 public=end payoff=0
node 9 player=T parent=2 public=end payoff=-2
node 10 player=T parent=3 public=end payoff=-2
node 11 player=T parent=3 public=end payoff=2
node 12 player=T parent=3 public=end payoff=0
)";
  return load_game(kText);
}

// Both players try to pick the same side of a coin; the second mover does
// not observe the first move. Common payoff, encoded as player 0's payoff:
// 1 on a match, 0 otherwise. Illustration only, excluded from zero-sum
// solver paths.
inline GameTree cooperative_matching_pennies() {
  static const char* kText = R"(# cooperative matching pennies
node 0 player=0 parent=- infoset=blue public=t0 actions=Tails:1,Heads:2
node 1 player=1 parent=0 infoset=red public=t1 actions=Tails:3,Heads:4
node 2 player=1 parent=0 infoset=red public=t1 actions=Tails:5,Heads:6
node 3 player=T parent=1 public=end payoff=1
node 4 player=T parent=1 public=end payoff=0
node 5 player=T parent=2 public=end payoff=0
node 6 player=T parent=2 public=end payoff=1
)";
  return load_game(kText);
}

// Zero-sum matching pennies: +1 to the first mover on a match, -1 on a
// mismatch.
inline GameTree adversarial_matching_pennies() {
  static const char* kText = R"(# adversarial matching pennies
node 0 player=0 parent=- infoset=blue public=t0 actions=Tails:1,Heads:2
node 1 player=1 parent=0 infoset=red public=t1 actions=Tails:3,Heads:4
node 2 player=1 parent=0 infoset=red public=t1 actions=Tails:5,Heads:6
node 3 player=T parent=1 public=end payoff=1
node 4 player=T parent=1 public=end payoff=-1
node 5 player=T parent=2 public=end payoff=-1
node 6 player=T parent=2 public=end payoff=1
)";
  return load_game(kText);
}

// The rigged and adversarial matching-pennies variant. Red (player 1) first
// decides, unobserved, whether the game is fair; blue (player 0) then opts
// out for 0 or picks a side; red finally picks its side knowing only that
// blue opted in. Rigged games pay red 1 whenever blue opts in; fair games
// pay blue 1 on a match and red 1 on a mismatch.
inline GameTree rigged_adversarial_matching_pennies() {
  static const char* kText = R"(# rigged adversarial matching pennies
node 0 player=1 parent=- infoset=r0 public=t0 actions=Fair:1,Unfair:2
node 1 player=0 parent=0 infoset=b public=t1 actions=Tails:3,Heads:4,Out:5
node 2 player=0 parent=0 infoset=b public=t1 actions=Tails:6,Heads:7,Out:8
node 3 player=1 parent=1 infoset=r2F public=in actions=Tails:9,Heads:10
node 4 player=1 parent=1 infoset=r2F public=in actions=Tails:11,Heads:12
node 5 player=T parent=1 public=out payoff=0
node 6 player=1 parent=2 infoset=r2U public=in actions=Tails:13,Heads:14
node 7 player=1 parent=2 infoset=r2U public=in actions=Tails:15,Heads:16
node 8 player=T parent=2 public=out payoff=0
node 9 player=T parent=3 public=end payoff=1
node 10 player=T parent=3 public=end payoff=-1
node 11 player=T parent=4 public=end payoff=-1
node 12 player=T parent=4 public=end payoff=1
node 13 player=T parent=6 public=end payoff=-1
node 14 player=T parent=6 public=end payoff=-1
node 15 player=T parent=7 public=end payoff=-1
node 16 player=T parent=7 public=end payoff=-1
)";
  return load_game(kText);
}

// Standard three-card Kuhn poker: uniform deal of distinct cards from
// {J,Q,K}, ante 1, bet size 1. P0 checks or bets; P1 responds; after a
// check-bet P0 responds again. The paper names the game without restating
// the rules, so the canonical convention is used.
inline GameTree kuhn_poker() {
  static const std::array<char, 3> kCards = {'J', 'Q', 'K'};  // ascending rank
  std::ostringstream out;
  out << "# Kuhn poker (3 cards, ante 1, bet 1)\n";
  out << "node 0 player=C parent=- public=deal probs=";
  int base = 1;
  bool first = true;
  for (int r0 = 0; r0 < 3; ++r0) {
    for (int r1 = 0; r1 < 3; ++r1) {
      if (r0 == r1) continue;
      if (!first) out << ",";
      first = false;
      out << kCards[r0] << kCards[r1] << ":" << "0.16666666666666666" << ":" << base;
      base += 9;
    }
  }
  out << "\n";
  base = 1;
  for (int r0 = 0; r0 < 3; ++r0) {
    for (int r1 = 0; r1 < 3; ++r1) {
      if (r0 == r1) continue;
      char c0 = kCards[r0], c1 = kCards[r1];
      int showdown = r0 > r1 ? 1 : -1;
      int b = base;
      out << "node " << b << " player=0 parent=0 infoset=p0:" << c0
          << " public=p0 actions=check:" << b + 1 << ",bet:" << b + 2 << "\n";
      out << "node " << b + 1 << " player=1 parent=" << b << " infoset=p1:" << c1
          << ":check public=chk actions=check:" << b + 3 << ",bet:" << b + 4
          << "\n";
      out << "node " << b + 2 << " player=1 parent=" << b << " infoset=p1:" << c1
          << ":bet public=bet actions=fold:" << b + 5 << ",call:" << b + 6
          << "\n";
      out << "node " << b + 3 << " player=T parent=" << b + 1
          << " public=chk.chk payoff=" << showdown << "\n";
      out << "node " << b + 4 << " player=0 parent=" << b + 1
          << " infoset=p0:" << c0 << ":chk.bet public=chk.bet actions=fold:"
          << b + 7 << ",call:" << b + 8 << "\n";
      out << "node " << b + 5 << " player=T parent=" << b + 2
          << " public=bet.fold payoff=1\n";
      out << "node " << b + 6 << " player=T parent=" << b + 2
          << " public=bet.call payoff=" << 2 * showdown << "\n";
      out << "node " << b + 7 << " player=T parent=" << b + 4
          << " public=chk.bet.fold payoff=-1\n";
      out << "node " << b + 8 << " player=T parent=" << b + 4
          << " public=chk.bet.call payoff=" << 2 * showdown << "\n";
      base += 9;
    }
  }
  return load_game(out.str());
}

// The worst-case public belief policy on rigged adversarial matching
// pennies: red commits to a fair game, blue mixes evenly between the coin
// sides iff the announced first rule was surely fair (opting out
// otherwise), and red picks heads iff the announced blue rule puts at
// least half its in-mass on tails.
class WorstCasePubPolicy final : public PubTrajectoryPolicy {
 public:
  DecisionRule rule_at(const GameTree& tree, const AnnouncementHistory& history,
                       const PublicBeliefState& pbs) const override {
    DecisionRule rule;
    auto action_index = [&](int is_ix, const std::string& name) {
      const Infoset& is = tree.infosets[static_cast<size_t>(is_ix)];
      for (size_t a = 0; a < is.actions.size(); ++a) {
        if (is.actions[a] == name) return static_cast<int>(a);
      }
      throw ValidationError("worst-case policy: expected action '" + name +
                            "' at infoset '" + is.label + "'");
    };
    const Node& n = tree.node(pbs.support.front());
    switch (n.stage) {
      case 0: {
        int is0 = n.infoset;
        std::vector<double> dist(2, 0.0);
        dist[static_cast<size_t>(action_index(is0, "Fair"))] = 1.0;
        rule.set(is0, dist);
        break;
      }
      case 1: {
        int is1 = n.infoset;
        const DecisionRule& announced = history.back().rule;
        int is0 = announced.entries().front().first;
        double p_fair =
            announced.at(is0)[static_cast<size_t>(action_index(is0, "Fair"))];
        std::vector<double> dist(3, 0.0);
        if (p_fair >= 1.0 - kDistTol) {
          dist[static_cast<size_t>(action_index(is1, "Tails"))] = 0.5;
          dist[static_cast<size_t>(action_index(is1, "Heads"))] = 0.5;
        } else {
          dist[static_cast<size_t>(action_index(is1, "Out"))] = 1.0;
        }
        rule.set(is1, dist);
        break;
      }
      case 2: {
        const DecisionRule& announced = history.back().rule;
        int is1 = announced.entries().front().first;
        double p_tails =
            announced.at(is1)[static_cast<size_t>(action_index(is1, "Tails"))];
        for (int is_ix : pbs.infosets(tree)) {
          std::vector<double> dist(2, 0.0);
          const char* pick = p_tails >= 0.5 ? "Heads" : "Tails";
          dist[static_cast<size_t>(action_index(is_ix, pick))] = 1.0;
          rule.set(is_ix, dist);
        }
        break;
      }
      default:
        throw ValidationError("worst-case policy: unexpected stage");
    }
    return rule;
  }
};

inline WorstCasePubPolicy worst_case_pub_policy() { return {}; }

// Built-in game registry for the CLI and the experiment runner.
inline const std::vector<std::string>& builtin_game_names() {
  static const std::vector<std::string> kNames = {
      "perturbed_rps", "kuhn", "rigged_mp", "adversarial_mp", "cooperative_mp"};
  return kNames;
}

inline GameTree make_builtin_game(const std::string& name) {
  if (name == "perturbed_rps") return perturbed_rps();
  if (name == "kuhn") return kuhn_poker();
  if (name == "rigged_mp") return rigged_adversarial_matching_pennies();
  if (name == "adversarial_mp") return adversarial_matching_pennies();
  if (name == "cooperative_mp") return cooperative_matching_pennies();
  throw std::invalid_argument("unknown built-in game '" + name + "'");
}

}  // namespace pubbelief

#endif  // PUBBELIEF_GAMES_HPP_
