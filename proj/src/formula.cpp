#include <prptl/formula.hpp>

#include <prptl/error.hpp>

#include <vector>

namespace prptl {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_bound(const time_bound& b) {
  std::size_t h = std::hash<std::uint64_t>{}(b.lower());
  return mix(h, b.upper().is_omega() ? ~std::size_t{0} : std::hash<std::uint64_t>{}(b.upper().value()));
}

bool has_bound(op k) { return k == op::next || k == op::chop; }
int arity(op k) {
  switch (k) {
  case op::top:
  case op::atom:
    return 0;
  case op::neg:
  case op::next:
    return 1;
  default:
    return 2;
  }
}

} // namespace

formula formula::make(op kind, std::string name, time_bound bound, const formula* a,
                      const formula* b) {
  auto n = std::make_shared<node>();
  n->kind = kind;
  n->name = std::move(name);
  n->bound = bound;
  std::size_t h = std::hash<int>{}(static_cast<int>(kind));
  if (kind == op::atom) h = mix(h, std::hash<std::string>{}(n->name));
  if (has_bound(kind)) h = mix(h, hash_bound(bound));
  if (a) {
    n->children[0] = a->node_;
    h = mix(h, a->hash());
    n->size += a->size();
  }
  if (b) {
    n->children[1] = b->node_;
    h = mix(h, b->hash());
    n->size += b->size();
  }
  n->hash = h;
  return formula(std::move(n));
}

formula formula::atom(std::string name) {
  if (name.empty()) throw invalid_argument("atomic proposition name must be non-empty");
  return make(op::atom, std::move(name), time_bound::zero(), nullptr, nullptr);
}

formula formula::top() {
  static const formula t = make(op::top, {}, time_bound::zero(), nullptr, nullptr);
  return t;
}

formula formula::bottom() {
  static const formula f = neg(top());
  return f;
}

formula formula::neg(formula sub) { return make(op::neg, {}, time_bound::zero(), &sub, nullptr); }

formula formula::conj(formula left, formula right) {
  return make(op::conj, {}, time_bound::zero(), &left, &right);
}

formula formula::disj(formula left, formula right) {
  return make(op::disj, {}, time_bound::zero(), &left, &right);
}

formula formula::next(time_bound bound, formula sub) {
  if (bound.is_zero()) return sub;
  return make(op::next, {}, bound, &sub, nullptr);
}

formula formula::chop(formula left, time_bound bound, formula right) {
  return make(op::chop, {}, bound, &left, &right);
}

bool operator==(const formula& a, const formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size()) return false;
  return (a <=> b) == 0;
}

std::strong_ordering operator<=>(const formula& a, const formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
  case op::top:
    return std::strong_ordering::equal;
  case op::atom:
    return a.name() <=> b.name();
  default:
    break;
  }
  if (has_bound(a.kind())) {
    if (auto c = a.bound() <=> b.bound(); c != 0) return c;
  }
  if (auto c = a.left() <=> b.left(); c != 0) return c;
  if (arity(a.kind()) == 2) return a.right() <=> b.right();
  return std::strong_ordering::equal;
}

std::set<std::string> atoms(const formula& f) {
  std::set<std::string> out;
  std::vector<formula> stack{f};
  while (!stack.empty()) {
    formula g = stack.back();
    stack.pop_back();
    switch (arity(g.kind())) {
    case 0:
      if (g.is(op::atom)) out.insert(g.name());
      break;
    case 1:
      stack.push_back(g.left());
      break;
    default:
      stack.push_back(g.left());
      stack.push_back(g.right());
    }
  }
  return out;
}

bool is_state_formula(const formula& f) {
  switch (f.kind()) {
  case op::top:
  case op::atom:
    return true;
  case op::neg:
    return is_state_formula(f.sub());
  case op::conj:
  case op::disj:
    return is_state_formula(f.left()) && is_state_formula(f.right());
  default:
    return false;
  }
}

} // namespace prptl
