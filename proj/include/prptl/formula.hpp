#pragma once

#include <prptl/time_bound.hpp>

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <string_view>

namespace prptl {

/// Node tags, listed in the rank order used by the formula total order.
enum class op : unsigned char { top, atom, neg, conj, disj, next, chop };

/// Immutable PrPTL formula. Copies share structure; equality is structural.
///
/// The core syntax is atoms, true, ¬, ∧, timed next and timed chop. ∨ is a
/// first-class node so that normal forms stay readable; false is ¬true.
class formula {
public:
  static formula atom(std::string name);
  static formula top();
  static formula bottom();
  static formula neg(formula sub);
  static formula conj(formula left, formula right);
  static formula disj(formula left, formula right);
  /// X[0,0] P is P itself, so a zero bound returns `sub` unchanged.
  static formula next(time_bound bound, formula sub);
  static formula chop(formula left, time_bound bound, formula right);

  op kind() const { return node_->kind; }
  bool is(op k) const { return node_->kind == k; }
  bool is_top() const { return is(op::top); }
  bool is_bottom() const { return is(op::neg) && node_->children[0]->kind == op::top; }

  /// Atom name; empty for other nodes.
  const std::string& name() const { return node_->name; }
  /// Bound of next/chop nodes.
  const time_bound& bound() const { return node_->bound; }
  /// Operand of ¬ and next, left operand of ∧, ∨ and chop.
  formula left() const { return formula(node_->children[0]); }
  /// Right operand of ∧, ∨ and chop.
  formula right() const { return formula(node_->children[1]); }
  formula sub() const { return left(); }

  std::size_t hash() const { return node_->hash; }
  /// Number of nodes in the tree.
  std::size_t size() const { return node_->size; }
  /// Stable address of the shared node; used as a memo key.
  const void* identity() const { return node_.get(); }

  friend bool operator==(const formula& a, const formula& b);
  friend std::strong_ordering operator<=>(const formula& a, const formula& b);

private:
  struct node {
    op kind;
    std::string name;
    time_bound bound = time_bound::zero();
    std::shared_ptr<const node> children[2];
    std::size_t hash = 0;
    std::size_t size = 1;
  };

  explicit formula(std::shared_ptr<const node> n) : node_(std::move(n)) {}
  static formula make(op kind, std::string name, time_bound bound, const formula* a,
                      const formula* b);

  std::shared_ptr<const node> node_;
};

/// The set of atomic proposition names occurring in `f`.
std::set<std::string> atoms(const formula& f);

/// True iff `f` contains no next or chop node.
bool is_state_formula(const formula& f);

} // namespace prptl

template <>
struct std::hash<prptl::formula> {
  std::size_t operator()(const prptl::formula& f) const noexcept { return f.hash(); }
};
