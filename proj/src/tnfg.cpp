#include <prptl/tnfg.hpp>

#include <prptl/canonical.hpp>
#include <prptl/error.hpp>
#include <prptl/parser.hpp>

#include <deque>
#include <tuple>
#include <unordered_map>

namespace prptl {

std::optional<std::size_t> tnfg::find(const tnfg_node& n) const {
  for (std::size_t k = 0; k < nodes_.size(); ++k)
    if (nodes_[k] == n) return k;
  return std::nullopt;
}

std::vector<std::size_t> tnfg::outgoing(std::size_t node) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < edges_.size(); ++k)
    if (edges_[k].source == node) out.push_back(k);
  return out;
}

namespace {

std::string node_label(const tnfg_node& n) {
  if (n.terminal) return "eps";
  return render(n.state_formula) + " @ " + n.delay.to_string();
}

std::string edge_label(const tnfg_edge& e) {
  std::string s = e.condition.to_string();
  if (e.probability) s += " / " + to_string(*e.probability);
  return s;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

} // namespace

std::string tnfg::listing() const {
  std::string out;
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    out += "node " + std::to_string(k) + ": " + node_label(nodes_[k]);
    if (k == root_) out += " (root)";
    out += '\n';
  }
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const auto& e = edges_[k];
    out += "edge " + std::to_string(k) + ": " + std::to_string(e.source) + " -[" +
           e.condition.to_string() + "]-> " + std::to_string(e.target);
    if (e.probability) out += " prob " + to_string(*e.probability);
    out += '\n';
  }
  return out;
}

class tnfg_builder {
public:
  tnfg_builder(std::size_t node_limit) : limit_(node_limit) {}

  tnfg run(const formula& f) {
    graph_.root_ = intern({canonicalize(f), time_bound::zero(), false});
    while (!work_.empty()) {
      std::size_t id = work_.front();
      work_.pop_front();
      expand(id);
    }
    return std::move(graph_);
  }

private:
  struct key_hash {
    std::size_t operator()(const tnfg_node& n) const {
      return n.state_formula.hash() ^ (std::hash<std::uint64_t>{}(n.delay.lower()) << 1) ^
             (n.delay.upper().is_omega() ? 0x5bd1e995u : n.delay.upper().value() << 7) ^
             (n.terminal ? 0x9e3779b9u : 0u);
    }
  };

  std::size_t intern(const tnfg_node& n) {
    if (auto it = index_.find(n); it != index_.end()) return it->second;
    if (graph_.nodes_.size() >= limit_)
      throw budget_exceeded("TNFG node limit of " + std::to_string(limit_) +
                            " exceeded at frontier formula " + node_label(n));
    std::size_t id = graph_.nodes_.size();
    graph_.nodes_.push_back(n);
    index_.emplace(n, id);
    if (n.terminal)
      graph_.terminal_ = id;
    else
      work_.push_back(id);
    return id;
  }

  void connect(std::size_t from, const guard& g, std::size_t to) {
    if (edge_keys_.emplace(from, g, to).second) graph_.edges_.push_back({from, g, to, std::nullopt});
  }

  std::size_t terminal() {
    return intern({formula::top(), time_bound::zero(), true});
  }

  void expand_formula(std::size_t id, const formula& q) {
    time_normal_form n = engine_.ctnf(engine_.tnf(q));
    for (const auto& e : n.empty) connect(id, e, terminal());
    for (const auto& d : n.future) {
      if (d.next.is_bottom()) continue;
      connect(id, d.condition, intern({d.next, d.bound.decremented(), false}));
    }
  }

  void expand(std::size_t id) {
    const tnfg_node node = graph_.nodes_[id];
    const time_bound& delay = node.delay;
    if (delay.is_zero()) {
      expand_formula(id, node.state_formula);
    } else if (delay.lower() >= 1) {
      connect(id, guard{}, intern({node.state_formula, delay.decremented(), false}));
    } else {
      expand_formula(id, node.state_formula);
      connect(id, guard{}, intern({node.state_formula, delay.shifted(), false}));
    }
  }

  std::size_t limit_;
  tnfg graph_;
  normal_form_engine engine_;
  std::unordered_map<tnfg_node, std::size_t, key_hash> index_;
  std::set<std::tuple<std::size_t, guard, std::size_t>> edge_keys_;
  std::deque<std::size_t> work_;
};

tnfg build_tnfg(const formula& f, const std::set<std::string>& alphabet, std::size_t node_limit) {
  if (node_limit == 0) throw invalid_argument("node limit must be at least 1");
  for (const auto& a : atoms(f))
    if (!alphabet.contains(a)) throw invalid_argument("atom '" + a + "' is not in the alphabet");
  return tnfg_builder(node_limit).run(f);
}

tnfg attach_probabilities(const tnfg& g, const std::map<std::size_t, rational>& assignment) {
  tnfg out = g;
  for (const auto& [id, p] : assignment) {
    if (id >= out.edges_.size()) throw invalid_argument("unknown edge id " + std::to_string(id));
    if (p < 0 || p > 1)
      throw invalid_argument("probability " + to_string(p) + " for edge " + std::to_string(id) +
                             " is outside [0,1]");
    out.edges_[id].probability = p;
  }
  return out;
}

std::string to_dot(const tnfg& g) {
  std::string out = "digraph tnfg {\n  rankdir=LR;\n";
  for (std::size_t k = 0; k < g.nodes().size(); ++k) {
    const auto& n = g.nodes()[k];
    out += "  n" + std::to_string(k) + " [label=\"" + dot_escape(node_label(n)) + "\"";
    if (n.terminal) out += ", shape=doublecircle";
    if (k == g.root()) out += ", style=bold";
    out += "];\n";
  }
  for (const auto& e : g.edges())
    out += "  n" + std::to_string(e.source) + " -> n" + std::to_string(e.target) + " [label=\"" +
           dot_escape(edge_label(e)) + "\"];\n";
  out += "}\n";
  return out;
}

bool accepts(const tnfg& g, const interval& sigma) {
  std::vector<char> current(g.nodes().size(), 0);
  current[g.root()] = 1;
  for (std::size_t k = 0; k < sigma.length(); ++k) {
    std::vector<char> next(g.nodes().size(), 0);
    for (const auto& e : g.edges())
      if (current[e.source] && !g.nodes()[e.target].terminal && e.condition.satisfied_by(sigma[k]))
        next[e.target] = 1;
    current = std::move(next);
  }
  const state& last = sigma[sigma.length()];
  for (const auto& e : g.edges())
    if (current[e.source] && g.nodes()[e.target].terminal && e.condition.satisfied_by(last)) return true;
  return false;
}

} // namespace prptl
