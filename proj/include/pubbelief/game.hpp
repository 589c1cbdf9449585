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

#ifndef PUBBELIEF_GAME_HPP_
#define PUBBELIEF_GAME_HPP_

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pubbelief {

inline constexpr double kDistTol = 1e-12;       // structural tolerance
inline constexpr double kAggregateTol = 1e-9;   // aggregate tolerance

// Thrown when a game description cannot be parsed. Carries the line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Thrown when a structurally well-formed tree violates a game invariant.
class ValidationError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class NodeKind { kDecision, kChance, kTerminal };

struct Node {
  NodeKind kind = NodeKind::kTerminal;
  int id = -1;
  int parent = -1;                    // -1 at the root
  int depth = 0;                      // edges from the root
  int stage = 0;                      // decision nodes strictly above this one
  int player = -1;                    // 0 or 1 for decision nodes
  int infoset = -1;                   // index into GameTree::infosets
  int public_state = -1;              // index into GameTree::public_labels
  std::vector<std::string> actions;   // decision/chance: ordered edge names
  std::vector<int> children;          // parallel to actions
  std::vector<double> probs;          // chance only, sums to 1
  double payoff = 0.0;                // terminal only, player 0's payoff

  bool is_decision() const { return kind == NodeKind::kDecision; }
  bool is_chance() const { return kind == NodeKind::kChance; }
  bool is_terminal() const { return kind == NodeKind::kTerminal; }
};

struct Infoset {
  std::string label;
  int player = -1;
  int depth = 0;
  int stage = 0;
  std::vector<std::string> actions;   // shared by all member nodes
  std::vector<int> nodes;             // member node ids, ascending
  int num_actions() const { return static_cast<int>(actions.size()); }
};

// Explicit finite-horizon two-player zero-sum game tree. Only player 0's
// payoff is stored; player 1's values are its negation. Immutable once
// built, so concurrent read-only use is safe.
class GameTree {
 public:
  std::vector<Node> nodes;
  std::vector<Infoset> infosets;              // order of first appearance
  std::vector<std::string> public_labels;     // order of first appearance
  int root = 0;
  int horizon = 0;            // max number of decisions along any path
  std::string source_text;    // textual form this tree was built from

  const Node& node(int id) const { return nodes[static_cast<size_t>(id)]; }
  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int num_infosets() const { return static_cast<int>(infosets.size()); }

  int infoset_index(std::string_view label) const {
    auto it = infoset_by_label_.find(std::string(label));
    if (it == infoset_by_label_.end()) {
      throw std::out_of_range("unknown infoset '" + std::string(label) + "'");
    }
    return it->second;
  }

  // Node ids carrying the given public label.
  const std::vector<int>& public_members(int public_state) const {
    return public_members_[static_cast<size_t>(public_state)];
  }

  double max_abs_payoff() const { return max_abs_payoff_; }

  // Filled by load_game after structural validation.
  void build_indices();

 private:
  std::map<std::string, int> infoset_by_label_;
  std::vector<std::vector<int>> public_members_;
  double max_abs_payoff_ = 0.0;
};

inline void GameTree::build_indices() {
  infoset_by_label_.clear();
  for (int i = 0; i < num_infosets(); ++i) {
    infoset_by_label_[infosets[static_cast<size_t>(i)].label] = i;
  }
  public_members_.assign(public_labels.size(), {});
  max_abs_payoff_ = 0.0;
  for (const Node& n : nodes) {
    public_members_[static_cast<size_t>(n.public_state)].push_back(n.id);
    if (n.is_terminal()) {
      max_abs_payoff_ = std::max(max_abs_payoff_, std::abs(n.payoff));
    }
  }
}

namespace detail {

inline bool is_distribution(const std::vector<double>& p, double tol = kDistTol) {
  double sum = 0.0;
  for (double v : p) {
    if (v < -tol || !std::isfinite(v)) return false;
    sum += v;
  }
  return std::abs(sum - 1.0) <= tol;
}

inline std::vector<double> uniform(int n) {
  return std::vector<double>(static_cast<size_t>(n), 1.0 / n);
}

// Owner's action-observation history: the (infoset, action) pairs at the
// owner's decision ancestors. Equal across an infoset under perfect recall.
inline std::vector<std::pair<int, int>> owner_history(const GameTree& tree,
                                                      int node_id) {
  std::vector<std::pair<int, int>> rev;
  int owner = tree.node(node_id).player;
  int cur = node_id;
  while (tree.node(cur).parent >= 0) {
    int par = tree.node(cur).parent;
    const Node& p = tree.node(par);
    if (p.is_decision() && p.player == owner) {
      int slot = -1;
      for (size_t a = 0; a < p.children.size(); ++a) {
        if (p.children[a] == cur) slot = static_cast<int>(a);
      }
      rev.emplace_back(p.infoset, slot);
    }
    cur = par;
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

}  // namespace detail

// A single player's behavioral policy: one probability vector per infoset of
// the owning player, indexed against a particular GameTree.
class BehavioralPolicy {
 public:
  BehavioralPolicy() = default;
  BehavioralPolicy(const GameTree& tree, int player)
      : player_(player), probs_(static_cast<size_t>(tree.num_infosets())) {}

  // Uniform policy over every infoset of `player`.
  static BehavioralPolicy uniform(const GameTree& tree, int player) {
    BehavioralPolicy pi(tree, player);
    for (int i = 0; i < tree.num_infosets(); ++i) {
      const Infoset& is = tree.infosets[static_cast<size_t>(i)];
      if (is.player == player) {
        pi.probs_[static_cast<size_t>(i)] = detail::uniform(is.num_actions());
      }
    }
    return pi;
  }

  int player() const { return player_; }

  bool covers(int infoset_index) const {
    return infoset_index >= 0 &&
           infoset_index < static_cast<int>(probs_.size()) &&
           !probs_[static_cast<size_t>(infoset_index)].empty();
  }

  const std::vector<double>& at(int infoset_index) const {
    const auto& p = probs_[static_cast<size_t>(infoset_index)];
    if (p.empty()) {
      throw std::out_of_range("policy missing infoset index " +
                              std::to_string(infoset_index));
    }
    return p;
  }

  const std::vector<double>& at(const GameTree& tree,
                                std::string_view label) const {
    return at(tree.infoset_index(label));
  }

  void set(int infoset_index, std::vector<double> dist) {
    if (!detail::is_distribution(dist)) {
      throw ValidationError("policy entry for infoset index " +
                            std::to_string(infoset_index) +
                            " is not a probability distribution");
    }
    probs_[static_cast<size_t>(infoset_index)] = std::move(dist);
  }

  void set(const GameTree& tree, std::string_view label,
           std::vector<double> dist) {
    set(tree.infoset_index(label), std::move(dist));
  }

  // Every infoset of the owning player must carry a valid distribution of
  // the right arity.
  void validate(const GameTree& tree) const {
    for (int i = 0; i < tree.num_infosets(); ++i) {
      const Infoset& is = tree.infosets[static_cast<size_t>(i)];
      if (is.player != player_) continue;
      if (!covers(i)) {
        throw ValidationError("policy for player " + std::to_string(player_) +
                              " missing infoset '" + is.label + "'");
      }
      const auto& p = at(i);
      if (static_cast<int>(p.size()) != is.num_actions() ||
          !detail::is_distribution(p)) {
        throw ValidationError("policy entry for infoset '" + is.label +
                              "' is not a distribution over its actions");
      }
    }
  }

 private:
  int player_ = -1;
  std::vector<std::vector<double>> probs_;
};

struct JointPolicy {
  BehavioralPolicy policy0;
  BehavioralPolicy policy1;

  JointPolicy() = default;
  JointPolicy(BehavioralPolicy p0, BehavioralPolicy p1)
      : policy0(std::move(p0)), policy1(std::move(p1)) {}

  static JointPolicy uniform(const GameTree& tree) {
    return {BehavioralPolicy::uniform(tree, 0),
            BehavioralPolicy::uniform(tree, 1)};
  }

  const BehavioralPolicy& of(int player) const {
    return player == 0 ? policy0 : policy1;
  }
  BehavioralPolicy& of(int player) { return player == 0 ? policy0 : policy1; }

  const std::vector<double>& at(const GameTree& tree, int infoset_index) const {
    int owner = tree.infosets[static_cast<size_t>(infoset_index)].player;
    return of(owner).at(infoset_index);
  }

  void validate(const GameTree& tree) const {
    policy0.validate(tree);
    policy1.validate(tree);
  }
};

// Per-node reach probabilities split by source: chance, player 0, player 1.
// Root entries are 1; a child's entry multiplies the parent's by the edge
// probability owned by the corresponding source.
struct ReachTable {
  std::vector<double> chance;
  std::vector<double> player0;
  std::vector<double> player1;

  double opponent_and_chance(int node, int player) const {
    size_t i = static_cast<size_t>(node);
    return chance[i] * (player == 0 ? player1[i] : player0[i]);
  }
  double total(int node) const {
    size_t i = static_cast<size_t>(node);
    return chance[i] * player0[i] * player1[i];
  }
};

inline ReachTable reach_probabilities(const GameTree& tree,
                                      const JointPolicy& pi) {
  size_t n = static_cast<size_t>(tree.num_nodes());
  ReachTable r{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
               std::vector<double>(n, 0.0)};
  size_t root = static_cast<size_t>(tree.root);
  r.chance[root] = r.player0[root] = r.player1[root] = 1.0;
  // Parents precede children in node order (enforced by load_game).
  for (const Node& node : tree.nodes) {
    size_t i = static_cast<size_t>(node.id);
    if (node.is_terminal()) continue;
    const std::vector<double>* dist = nullptr;
    if (node.is_chance()) {
      dist = &node.probs;
    } else {
      dist = &pi.at(tree, node.infoset);
    }
    for (size_t a = 0; a < node.children.size(); ++a) {
      size_t c = static_cast<size_t>(node.children[a]);
      double p = (*dist)[a];
      r.chance[c] = r.chance[i] * (node.is_chance() ? p : 1.0);
      r.player0[c] = r.player0[i] * (node.is_decision() && node.player == 0 ? p : 1.0);
      r.player1[c] = r.player1[i] * (node.is_decision() && node.player == 1 ? p : 1.0);
    }
  }
  return r;
}

namespace detail {

struct RawNode {
  int line = 0;
  int id = -1;
  char player = '?';          // '0', '1', 'C', 'T'
  int parent = -2;            // -1 encodes '-'
  std::string infoset;        // "-" if absent
  std::string public_label;
  std::vector<std::string> actions;
  std::vector<int> children;
  std::vector<double> probs;
  double payoff = 0.0;
  bool has_payoff = false;
};

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

inline RawNode parse_node_line(const std::string& line, int line_no) {
  RawNode raw;
  raw.line = line_no;
  std::istringstream in(line);
  std::string tok;
  in >> tok;
  if (tok != "node") throw ParseError(line_no, "expected 'node', got '" + tok + "'");
  if (!(in >> raw.id) || raw.id < 0) throw ParseError(line_no, "bad node id");
  bool saw_edges = false;
  while (in >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) {
      throw ParseError(line_no, "expected key=value, got '" + tok + "'");
    }
    std::string key = tok.substr(0, eq);
    std::string val = tok.substr(eq + 1);
    if (key == "player") {
      if (val != "0" && val != "1" && val != "C" && val != "T") {
        throw ParseError(line_no, "player must be one of 0|1|C|T");
      }
      raw.player = val[0];
    } else if (key == "parent") {
      if (val == "-") {
        raw.parent = -1;
      } else {
        try {
          raw.parent = std::stoi(val);
        } catch (const std::exception&) {
          throw ParseError(line_no, "bad parent id '" + val + "'");
        }
      }
    } else if (key == "infoset") {
      raw.infoset = val;
    } else if (key == "public") {
      if (val.empty()) throw ParseError(line_no, "empty public label");
      raw.public_label = val;
    } else if (key == "actions") {
      saw_edges = true;
      for (const std::string& item : split(val, ',')) {
        auto parts = split(item, ':');
        if (parts.size() != 2 || parts[0].empty()) {
          throw ParseError(line_no, "bad action spec '" + item + "'");
        }
        raw.actions.push_back(parts[0]);
        try {
          raw.children.push_back(std::stoi(parts[1]));
        } catch (const std::exception&) {
          throw ParseError(line_no, "bad child id in '" + item + "'");
        }
      }
    } else if (key == "probs") {
      saw_edges = true;
      for (const std::string& item : split(val, ',')) {
        auto parts = split(item, ':');
        if (parts.size() != 3 || parts[0].empty()) {
          throw ParseError(line_no, "bad chance spec '" + item + "'");
        }
        raw.actions.push_back(parts[0]);
        try {
          raw.probs.push_back(std::stod(parts[1]));
          raw.children.push_back(std::stoi(parts[2]));
        } catch (const std::exception&) {
          throw ParseError(line_no, "bad probability or child id in '" + item + "'");
        }
      }
    } else if (key == "payoff") {
      try {
        raw.payoff = std::stod(val);
        raw.has_payoff = true;
      } catch (const std::exception&) {
        throw ParseError(line_no, "bad payoff '" + val + "'");
      }
    } else {
      throw ParseError(line_no, "unknown key '" + key + "'");
    }
  }
  if (raw.player == '?') throw ParseError(line_no, "missing player=");
  if (raw.parent == -2) throw ParseError(line_no, "missing parent=");
  if (raw.public_label.empty()) throw ParseError(line_no, "missing public=");
  if (raw.player == 'T') {
    if (!raw.has_payoff) throw ParseError(line_no, "terminal node missing payoff=");
    if (saw_edges) throw ParseError(line_no, "terminal node cannot have edges");
  } else {
    if (raw.actions.empty()) {
      throw ParseError(line_no, "non-terminal node needs actions= or probs=");
    }
    if (raw.has_payoff) throw ParseError(line_no, "only terminal nodes carry payoff=");
    if (raw.player == 'C' && raw.probs.empty()) {
      throw ParseError(line_no, "chance node needs probs=");
    }
    if (raw.player != 'C' && !raw.probs.empty()) {
      throw ParseError(line_no, "decision node must use actions=, not probs=");
    }
    if ((raw.player == '0' || raw.player == '1') &&
        (raw.infoset.empty() || raw.infoset == "-")) {
      throw ParseError(line_no, "decision node missing infoset=");
    }
  }
  return raw;
}

inline void validate_tree(GameTree& tree) {
  // Infoset consistency: owner, ordered actions, public label, depth, and
  // perfect recall (identical owner action-observation histories).
  for (const Infoset& is : tree.infosets) {
    const Node& first = tree.node(is.nodes.front());
    auto ref_history = owner_history(tree, first.id);
    for (int id : is.nodes) {
      const Node& n = tree.node(id);
      if (n.player != is.player) {
        throw ValidationError("infoset '" + is.label + "' spans two owners");
      }
      if (n.actions != is.actions) {
        throw ValidationError("infoset '" + is.label +
                              "' has inconsistent action sets");
      }
      if (n.public_state != first.public_state) {
        throw ValidationError("infoset '" + is.label + "' spans two public states");
      }
      if (n.depth != first.depth) {
        throw ValidationError("infoset '" + is.label + "' spans two depths");
      }
      if (owner_history(tree, id) != ref_history) {
        throw ValidationError("infoset '" + is.label +
                              "' violates perfect recall");
      }
    }
  }
  // Public labels must form a tree over public states: same depth, one
  // common parent label, and one node kind (single acting player) per label.
  for (size_t p = 0; p < tree.public_labels.size(); ++p) {
    const auto& members = tree.public_members(static_cast<int>(p));
    const Node& first = tree.node(members.front());
    for (int id : members) {
      const Node& n = tree.node(id);
      if (n.depth != first.depth) {
        throw ValidationError("public state '" + tree.public_labels[p] +
                              "' spans two depths");
      }
      if (n.kind != first.kind ||
          (n.is_decision() && n.player != first.player)) {
        throw ValidationError("public state '" + tree.public_labels[p] +
                              "' mixes acting players or node kinds");
      }
      bool root_a = n.parent < 0, root_b = first.parent < 0;
      if (root_a != root_b ||
          (!root_a && tree.node(n.parent).public_state !=
                          tree.node(first.parent).public_state)) {
        throw ValidationError("public state '" + tree.public_labels[p] +
                              "' has inconsistent public history");
      }
    }
  }
}

}  // namespace detail

// Parses the one-node-per-line textual game format:
//   node <id> player=<0|1|C|T> parent=<id|-> infoset=<label|-> public=<label>
//        actions=<a:child,...> | probs=<a:p:child,...> | payoff=<float>
// '#' begins a comment, the horizon is inferred. Node ids must be listed
// parent-before-child. Throws ParseError / ValidationError.
inline GameTree load_game(const std::string& spec_text) {
  std::vector<detail::RawNode> raws;
  std::map<int, size_t> by_id;
  std::istringstream in(spec_text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    bool blank = true;
    for (char ch : line) {
      if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
    }
    if (blank) continue;
    detail::RawNode raw = detail::parse_node_line(line, line_no);
    if (by_id.count(raw.id)) {
      throw ParseError(line_no, "duplicate node id " + std::to_string(raw.id));
    }
    if (raw.parent >= 0 && !by_id.count(raw.parent)) {
      throw ParseError(line_no, "parent " + std::to_string(raw.parent) +
                                    " not defined before node " +
                                    std::to_string(raw.id));
    }
    by_id[raw.id] = raws.size();
    raws.push_back(std::move(raw));
  }
  if (raws.empty()) throw ParseError(line_no, "no nodes in game description");

  GameTree tree;
  tree.source_text = spec_text;
  std::map<std::string, int> infoset_ix;
  std::map<std::string, int> public_ix;
  std::map<int, int> id_map;  // external id -> dense id
  int n_roots = 0;
  for (const detail::RawNode& raw : raws) {
    Node node;
    node.id = static_cast<int>(tree.nodes.size());
    id_map[raw.id] = node.id;
    node.parent = raw.parent < 0 ? -1 : id_map.at(raw.parent);
    if (node.parent < 0) {
      ++n_roots;
      if (n_roots > 1) throw ParseError(raw.line, "multiple root nodes");
      tree.root = node.id;
    } else {
      const Node& par = tree.nodes[static_cast<size_t>(node.parent)];
      node.depth = par.depth + 1;
      node.stage = par.stage + (par.is_decision() ? 1 : 0);
    }
    switch (raw.player) {
      case '0':
      case '1': {
        node.kind = NodeKind::kDecision;
        node.player = raw.player - '0';
        auto [it, fresh] = infoset_ix.try_emplace(
            raw.infoset, static_cast<int>(tree.infosets.size()));
        node.infoset = it->second;
        if (fresh) {
          Infoset is;
          is.label = raw.infoset;
          is.player = node.player;
          is.actions = raw.actions;
          tree.infosets.push_back(std::move(is));
        }
        tree.infosets[static_cast<size_t>(node.infoset)].nodes.push_back(node.id);
        break;
      }
      case 'C': {
        node.kind = NodeKind::kChance;
        node.probs = raw.probs;
        double sum = 0.0;
        for (double v : node.probs) {
          if (v < 0.0 || !std::isfinite(v)) {
            throw ParseError(raw.line, "negative chance probability");
          }
          sum += v;
        }
        if (std::abs(sum - 1.0) > kDistTol) {
          std::ostringstream msg;
          msg << "chance outcome probabilities sum to " << sum;
          throw ParseError(raw.line, msg.str());
        }
        break;
      }
      case 'T':
        node.kind = NodeKind::kTerminal;
        node.payoff = raw.payoff;
        break;
    }
    node.actions = raw.actions;
    auto [pit, _] = public_ix.try_emplace(
        raw.public_label, static_cast<int>(tree.public_labels.size()));
    node.public_state = pit->second;
    if (node.public_state == static_cast<int>(tree.public_labels.size())) {
      tree.public_labels.push_back(raw.public_label);
    }
    tree.nodes.push_back(std::move(node));
  }

  // Link children and cross-check the declared parents.
  std::vector<int> child_refs(tree.nodes.size(), 0);
  for (size_t i = 0; i < raws.size(); ++i) {
    Node& node = tree.nodes[i];
    node.children.clear();
    for (size_t a = 0; a < raws[i].children.size(); ++a) {
      auto it = id_map.find(raws[i].children[a]);
      if (it == id_map.end()) {
        throw ParseError(raws[i].line,
                         "child id " + std::to_string(raws[i].children[a]) +
                             " is not a node");
      }
      int child = it->second;
      node.children.push_back(child);
      ++child_refs[static_cast<size_t>(child)];
      if (tree.nodes[static_cast<size_t>(child)].parent != node.id) {
        throw ParseError(raws[i].line,
                         "child " + std::to_string(raws[i].children[a]) +
                             " does not declare this node as parent");
      }
    }
  }
  for (const Node& node : tree.nodes) {
    int expect = node.parent < 0 ? 0 : 1;
    if (child_refs[static_cast<size_t>(node.id)] != expect) {
      throw ValidationError("node " + std::to_string(raws[node.id].id) +
                            " is referenced by " +
                            std::to_string(child_refs[node.id]) +
                            " parents, expected " + std::to_string(expect));
    }
  }
  for (Infoset& is : tree.infosets) {
    const Node& first = tree.node(is.nodes.front());
    is.depth = first.depth;
    is.stage = first.stage;
  }
  for (const Node& node : tree.nodes) {
    if (node.is_terminal()) {
      tree.horizon = std::max(tree.horizon, node.stage);
    }
  }

  tree.build_indices();
  detail::validate_tree(tree);
  return tree;
}

}  // namespace pubbelief

#endif  // PUBBELIEF_GAME_HPP_
