#include <prptl/semantics.hpp>

#include <prptl/error.hpp>

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace prptl {

interval::interval(std::vector<state> states) : states_(std::move(states)) {
  if (states_.empty()) throw invalid_argument("an interval needs at least one state");
}

interval parse_trace(std::string_view text) {
  std::vector<state> states;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::istringstream line{std::string(text.substr(pos, eol - pos))};
    state s;
    for (std::string word; line >> word;) s.insert(word);
    states.push_back(std::move(s));
    pos = eol + 1;
  }
  if (states.empty()) throw syntax_error("trace contains no states");
  return interval(std::move(states));
}

evaluator::evaluator(const formula& f) {
  std::unordered_map<const void*, std::size_t> seen;
  // Post-order compilation; identical shared nodes are compiled once.
  struct frame {
    formula f;
    bool expanded;
  };
  std::vector<frame> stack{{f, false}};
  while (!stack.empty()) {
    auto [g, expanded] = stack.back();
    stack.pop_back();
    if (seen.contains(g.identity())) continue;
    const bool binary = g.is(op::conj) || g.is(op::disj) || g.is(op::chop);
    const bool unary = g.is(op::neg) || g.is(op::next);
    if (!expanded && (binary || unary)) {
      stack.push_back({g, true});
      stack.push_back({g.left(), false});
      if (binary) stack.push_back({g.right(), false});
      continue;
    }
    node n{};
    n.kind = g.kind();
    if (g.is(op::atom)) {
      auto it = std::find(atom_names_.begin(), atom_names_.end(), g.name());
      n.atom = static_cast<std::size_t>(it - atom_names_.begin());
      if (it == atom_names_.end()) atom_names_.push_back(g.name());
    }
    if (g.is(op::next) || g.is(op::chop)) {
      n.lower = g.bound().lower();
      if (g.bound().upper().is_finite()) n.upper = g.bound().upper().value();
    }
    if (binary || unary) n.a = seen.at(g.left().identity());
    if (binary) n.b = seen.at(g.right().identity());
    seen.emplace(g.identity(), nodes_.size());
    nodes_.push_back(n);
  }
  root_ = seen.at(f.identity());
}

class evaluator::session {
public:
  session(const evaluator& ev, const interval& sigma)
      : ev_(ev), n_(sigma.length() + 1), memo_(ev.nodes_.size() * n_ * n_, -1),
        holds_(ev.atom_names_.size() * n_, false) {
    for (std::size_t a = 0; a < ev.atom_names_.size(); ++a)
      for (std::size_t k = 0; k < n_; ++k) holds_[a * n_ + k] = sigma[k].contains(ev.atom_names_[a]);
  }

  bool eval(std::size_t k, std::size_t i, std::size_t j) {
    signed char& slot = memo_[(k * n_ + i) * n_ + j];
    if (slot >= 0) return slot;
    const node& nd = ev_.nodes_[k];
    bool v = false;
    switch (nd.kind) {
    case op::top:
      v = true;
      break;
    case op::atom:
      v = holds_[nd.atom * n_ + i];
      break;
    case op::neg:
      v = !eval(nd.a, i, j);
      break;
    case op::conj:
      v = eval(nd.a, i, j) && eval(nd.b, i, j);
      break;
    case op::disj:
      v = eval(nd.a, i, j) || eval(nd.b, i, j);
      break;
    case op::next:
      v = window(nd, i, j, [&](std::size_t at) { return eval(nd.a, at, j); });
      break;
    case op::chop:
      for (std::size_t r = i; r <= j && !v; ++r)
        v = eval(nd.a, i, r) && window(nd, r, j, [&](std::size_t at) { return eval(nd.b, at, j); });
      break;
    }
    slot = v;
    return v;
  }

private:
  // ∃ l with lower ≤ l ≤ min(upper, j − from) such that pred(from + l).
  template <class Pred>
  static bool window(const node& nd, std::size_t from, std::size_t j, Pred&& pred) {
    std::uint64_t reach = j - from;
    std::uint64_t hi = nd.upper ? std::min(*nd.upper, reach) : reach;
    for (std::uint64_t l = nd.lower; l <= hi; ++l)
      if (pred(from + l)) return true;
    return false;
  }

  const evaluator& ev_;
  std::size_t n_;
  std::vector<signed char> memo_;
  std::vector<bool> holds_;
};

bool evaluator::operator()(const interval& sigma, std::size_t i, std::size_t j) const {
  if (i > j || j > sigma.length())
    throw invalid_argument("evaluation point (" + std::to_string(i) + ", " + std::to_string(j) +
                           ") out of range for interval of length " +
                           std::to_string(sigma.length()));
  return session(*this, sigma).eval(root_, i, j);
}

std::vector<bool> evaluator::at_suffixes(const interval& sigma) const {
  session s(*this, sigma);
  std::vector<bool> out(sigma.length() + 1);
  for (std::size_t i = 0; i <= sigma.length(); ++i) out[i] = s.eval(root_, i, sigma.length());
  return out;
}

bool evaluate(const interval& sigma, std::size_t i, std::size_t j, const formula& f) {
  return evaluator(f)(sigma, i, j);
}

equivalence_result equivalent_on(const formula& f, const formula& g,
                                 const std::set<std::string>& alphabet, std::size_t max_len,
                                 const equivalence_scope& scope) {
  if (alphabet.size() > scope.max_atoms)
    throw budget_exceeded("equivalence check over " + std::to_string(alphabet.size()) +
                          " atoms exceeds the limit of " + std::to_string(scope.max_atoms));
  if (max_len > scope.max_length)
    throw budget_exceeded("equivalence check up to length " + std::to_string(max_len) +
                          " exceeds the limit of " + std::to_string(scope.max_length));
  for (const auto& a : atoms(f))
    if (!alphabet.contains(a)) throw invalid_argument("atom '" + a + "' is not in the alphabet");
  for (const auto& a : atoms(g))
    if (!alphabet.contains(a)) throw invalid_argument("atom '" + a + "' is not in the alphabet");

  evaluator ef(f), eg(g);
  equivalence_result result;
  std::vector<std::string> letters(alphabet.begin(), alphabet.end());
  for_each_interval(letters, max_len, [&](interval sigma) {
    const std::size_t j = sigma.length();
    if (ef(sigma, 0, j) == eg(sigma, 0, j)) return true;
    result.equivalent = false;
    result.witness = std::move(sigma);
    return false;
  });
  return result;
}

} // namespace prptl
