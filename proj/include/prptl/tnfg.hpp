#pragma once

#include <prptl/formula.hpp>
#include <prptl/normal_form.hpp>
#include <prptl/rational.hpp>
#include <prptl/semantics.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace prptl {

/// (Q, T): formula Q still to hold after a delay drawn from T. A zero delay
/// is the plain node Q. The ε node is flagged separately so that it never
/// collides with a node whose formula happens to be `empty`.
struct tnfg_node {
  formula state_formula;
  time_bound delay = time_bound::zero();
  bool terminal = false;

  friend bool operator==(const tnfg_node&, const tnfg_node&) = default;
};

struct tnfg_edge {
  std::size_t source;
  guard condition;
  std::size_t target;
  std::optional<rational> probability;
};

class tnfg {
public:
  const std::vector<tnfg_node>& nodes() const { return nodes_; }
  const std::vector<tnfg_edge>& edges() const { return edges_; }
  std::size_t root() const { return root_; }
  std::optional<std::size_t> terminal() const { return terminal_; }

  std::optional<std::size_t> find(const tnfg_node& n) const;
  std::vector<std::size_t> outgoing(std::size_t node) const;

  /// Line-oriented listing with stable ids.
  std::string listing() const;

private:
  friend class tnfg_builder;
  friend tnfg attach_probabilities(const tnfg&, const std::map<std::size_t, rational>&);

  std::vector<tnfg_node> nodes_;
  std::vector<tnfg_edge> edges_;
  std::size_t root_ = 0;
  std::optional<std::size_t> terminal_;
};

/// Worklist closure from (f, 0). A zero-delay node expands through the CTNF of
/// its formula: empty disjuncts lead to ε and a future disjunct (g, [t1,t2], Q')
/// leads to (Q', [t1−1, t2−1]); disjuncts whose continuation is false add
/// nothing. A node (Q, [a,b]) with a ≥ 1 ticks to (Q, [a−1, b−1]); a node
/// (Q, [0,b]) with b ≥ 1 has the edges of (Q, 0) plus a wait edge to
/// (Q, [0, b−1]). Throws budget_exceeded past `node_limit` nodes.
tnfg build_tnfg(const formula& f, const std::set<std::string>& alphabet,
                std::size_t node_limit = 10000);

/// Copies `g` with the given edge probabilities set. Throws invalid_argument
/// for an unknown edge id or a value outside [0,1].
tnfg attach_probabilities(const tnfg& g, const std::map<std::size_t, rational>& assignment);

/// Graphviz rendering; deterministic for a given graph.
std::string to_dot(const tnfg& g);

/// True iff some path from the root reads the states of `sigma` in order,
/// the last one on an edge into ε.
bool accepts(const tnfg& g, const interval& sigma);

} // namespace prptl
