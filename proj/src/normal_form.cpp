#include <prptl/normal_form.hpp>

#include <prptl/canonical.hpp>
#include <prptl/derived.hpp>
#include <prptl/error.hpp>
#include <prptl/parser.hpp>

#include <algorithm>

namespace prptl {

// ---------------------------------------------------------------- guard

guard guard::literal(const std::string& atom, bool positive) {
  guard g;
  g.literals_.emplace(atom, positive);
  return g;
}

std::optional<guard> guard::conj(const guard& a, const guard& b) {
  guard out = a;
  for (const auto& [atom, sign] : b.literals_) {
    auto [it, inserted] = out.literals_.emplace(atom, sign);
    if (!inserted && it->second != sign) return std::nullopt;
  }
  return out;
}

bool guard::satisfied_by(const state& s) const {
  for (const auto& [atom, sign] : literals_)
    if (s.contains(atom) != sign) return false;
  return true;
}

bool guard::implies(const guard& other) const {
  for (const auto& [atom, sign] : other.literals_) {
    auto it = literals_.find(atom);
    if (it == literals_.end() || it->second != sign) return false;
  }
  return true;
}

std::set<std::string> guard::atoms() const {
  std::set<std::string> out;
  for (const auto& [atom, sign] : literals_) out.insert(atom);
  return out;
}

formula guard::to_formula() const {
  std::optional<formula> acc;
  for (const auto& [atom, sign] : literals_) {
    formula lit = sign ? formula::atom(atom) : formula::neg(formula::atom(atom));
    acc = acc ? formula::conj(*acc, lit) : lit;
  }
  return acc ? *acc : formula::top();
}

std::string guard::to_string() const { return render(to_formula()); }

std::vector<guard> minterms(const std::set<std::string>& atoms) {
  std::vector<std::string> names(atoms.begin(), atoms.end());
  const std::size_t n = names.size();
  std::vector<guard> out;
  out.reserve(std::size_t{1} << n);
  for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
    guard g;
    for (std::size_t k = 0; k < n; ++k) {
      bool positive = ((bits >> (n - 1 - k)) & 1) == 0;
      g = *guard::conj(g, guard::literal(names[k], positive));
    }
    out.push_back(std::move(g));
  }
  return out;
}

// ---------------------------------------------------------------- time_normal_form

formula time_normal_form::to_formula() const {
  std::optional<formula> acc;
  auto add = [&](formula d) { acc = acc ? formula::disj(*acc, d) : d; };
  for (const auto& g : empty) add(formula::conj(g.to_formula(), prptl::empty()));
  for (const auto& d : future) add(formula::conj(d.condition.to_formula(), formula::next(d.bound, d.next)));
  return acc ? *acc : formula::bottom();
}

std::set<std::string> time_normal_form::guard_atoms() const {
  std::set<std::string> out;
  for (const auto& g : empty) out.merge(g.atoms());
  for (const auto& d : future) out.merge(d.condition.atoms());
  return out;
}

bool time_normal_form::unit_step() const {
  return std::all_of(future.begin(), future.end(), [](const auto& d) { return d.bound.is_unit(); });
}

bool time_normal_form::complete_and_exclusive() const {
  for (const auto& m : minterms(guard_atoms())) {
    std::size_t covering = 0;
    for (const auto& d : future)
      if (guard::conj(m, d.condition)) ++covering;
    if (covering != 1) return false;
  }
  return true;
}

std::string render(const time_normal_form& n) {
  std::string out;
  auto add = [&](const formula& d) {
    if (!out.empty()) out += " | ";
    out += "(" + render(d) + ")";
  };
  for (const auto& g : n.empty) add(formula::conj(g.to_formula(), empty()));
  for (const auto& d : n.future)
    add(formula::conj(d.condition.to_formula(), formula::next(d.bound, d.next)));
  return out;
}

// ---------------------------------------------------------------- engine

normal_form_engine::normal_form_engine(normal_form_options options) : options_(std::move(options)) {}

formula normal_form_engine::remember(formula f) {
  if (continuations_.emplace(f, 0).second && continuations_.size() > options_.max_continuations)
    throw budget_exceeded("normal form expansion exceeded the budget of " +
                          std::to_string(options_.max_continuations) +
                          " continuations at: " + render(f));
  return f;
}

void normal_form_engine::add_empty(time_normal_form& n, const guard& g) {
  if (std::find(n.empty.begin(), n.empty.end(), g) == n.empty.end()) n.empty.push_back(g);
}

void normal_form_engine::add_future(time_normal_form& n, const guard& g, const time_bound& b,
                                    const formula& next) {
  if (next.is_bottom()) return;
  for (auto& d : n.future) {
    if (d.condition == g && d.bound == b) {
      d.next = remember(canonicalize(formula::disj(d.next, next)));
      return;
    }
  }
  n.future.push_back({g, b, remember(next)});
}

time_normal_form normal_form_engine::restrict(const time_normal_form& n, const guard& g) {
  time_normal_form out;
  for (const auto& e : n.empty)
    if (auto c = guard::conj(g, e)) add_empty(out, *c);
  for (const auto& d : n.future)
    if (auto c = guard::conj(g, d.condition)) add_future(out, *c, d.bound, d.next);
  return out;
}

time_normal_form normal_form_engine::conjoin(const time_normal_form& a, const time_normal_form& b) {
  time_normal_form out;
  for (const auto& e1 : a.empty)
    for (const auto& e2 : b.empty)
      if (auto g = guard::conj(e1, e2)) add_empty(out, *g);
  // empty ∧ X[t1,t2] with t1 ≥ 1 is unsatisfiable, so mixed pairs vanish.
  for (const auto& d1 : a.future) {
    for (const auto& d2 : b.future) {
      auto g = guard::conj(d1.condition, d2.condition);
      if (!g) continue;
      if (d1.bound == d2.bound && (d1.bound.is_unit() || d1.next == d2.next)) {
        add_future(out, *g, d1.bound, canonicalize(formula::conj(d1.next, d2.next)));
      } else {
        formula n1 = formula::next(d1.bound.decremented(), d1.next);
        formula n2 = formula::next(d2.bound.decremented(), d2.next);
        add_future(out, *g, time_bound::unit(), canonicalize(formula::conj(n1, n2)));
      }
    }
  }
  return out;
}

time_normal_form normal_form_engine::expand(const formula& f) {
  if (auto it = tnf_cache_.find(f); it != tnf_cache_.end()) return it->second;
  time_normal_form out;
  switch (f.kind()) {
  case op::top:
  case op::atom: {
    guard g = f.is_top() ? guard{} : guard::literal(f.name(), true);
    add_empty(out, g);
    add_future(out, g, time_bound::unit(), formula::top());
    break;
  }
  case op::neg:
    out = negate_ctnf(unit_ctnf(f.sub()));
    break;
  case op::disj: {
    out = expand(f.left());
    time_normal_form rhs = expand(f.right());
    for (const auto& e : rhs.empty) add_empty(out, e);
    for (const auto& d : rhs.future) add_future(out, d.condition, d.bound, d.next);
    break;
  }
  case op::conj:
    out = conjoin(expand(f.left()), expand(f.right()));
    break;
  case op::next: {
    const time_bound& b = f.bound();
    formula body = canonicalize(f.sub());
    if (b.lower() >= 1) {
      add_future(out, guard{}, b, body);
    } else {
      // X[0,t] P ≡ P ∨ X[1,t] P
      out = expand(f.sub());
      add_future(out, guard{}, time_bound(1, b.upper()), body);
    }
    break;
  }
  case op::chop: {
    const time_bound& b = f.bound();
    time_normal_form left = expand(f.left());
    if (!left.empty.empty()) {
      // (g ∧ empty) ;[b] R ≡ g ∧ X[b] R
      time_normal_form seam = expand(formula::next(b, f.right()));
      for (const auto& e : left.empty) {
        time_normal_form part = restrict(seam, e);
        for (const auto& pe : part.empty) add_empty(out, pe);
        for (const auto& pd : part.future) add_future(out, pd.condition, pd.bound, pd.next);
      }
    }
    // (g ∧ X[c] C) ;[b] R ≡ g ∧ X[c] (C ;[b] R)
    for (const auto& d : left.future)
      add_future(out, d.condition, d.bound, canonicalize(formula::chop(d.next, b, f.right())));
    break;
  }
  }
  tnf_cache_.emplace(f, out);
  return out;
}

time_normal_form normal_form_engine::tnf(const formula& f) {
  if (options_.alphabet) {
    for (const auto& a : atoms(f))
      if (!options_.alphabet->contains(a))
        throw invalid_argument("atom '" + a + "' is not in the declared alphabet");
  }
  time_normal_form out = expand(f);
  if (out.empty.empty() && out.future.empty())
    out.future.push_back({guard{}, time_bound::unit(), formula::bottom()});
  return out;
}

time_normal_form normal_form_engine::unit_step(const time_normal_form& n) {
  time_normal_form out;
  out.empty = n.empty;
  for (const auto& d : n.future) {
    if (d.bound.is_unit())
      add_future(out, d.condition, d.bound, d.next);
    else
      add_future(out, d.condition, time_bound::unit(),
                 canonicalize(formula::next(d.bound.decremented(), d.next)));
  }
  return out;
}

time_normal_form normal_form_engine::ctnf(const time_normal_form& n) {
  time_normal_form out;
  for (const auto& m : minterms(n.guard_atoms())) {
    if (std::any_of(n.empty.begin(), n.empty.end(), [&](const guard& e) { return m.implies(e); }))
      out.empty.push_back(m);

    std::vector<const future_disjunct*> covering;
    for (const auto& d : n.future)
      if (m.implies(d.condition)) covering.push_back(&d);
    if (covering.empty()) {
      out.future.push_back({m, time_bound::unit(), formula::bottom()});
      continue;
    }
    const bool same_bound = std::all_of(covering.begin(), covering.end(), [&](const auto* d) {
      return d->bound == covering.front()->bound;
    });
    time_bound bound = same_bound ? covering.front()->bound : time_bound::unit();
    std::optional<formula> merged;
    for (const auto* d : covering) {
      formula c = same_bound ? d->next : formula::next(d->bound.decremented(), d->next);
      merged = merged ? formula::disj(*merged, c) : c;
    }
    out.future.push_back({m, bound, remember(canonicalize(*merged))});
  }
  return out;
}

time_normal_form normal_form_engine::negate_ctnf(const time_normal_form& n) {
  const auto ms = minterms(n.guard_atoms());
  bool valid = n.unit_step() && n.future.size() == ms.size();
  for (const auto& m : ms) {
    valid = valid && std::count_if(n.future.begin(), n.future.end(),
                                   [&](const auto& d) { return d.condition == m; }) == 1;
  }
  for (const auto& e : n.empty)
    valid = valid && std::find(ms.begin(), ms.end(), e) != ms.end();
  if (!valid) throw invalid_argument("negate_ctnf requires a unit-step complete time normal form");

  time_normal_form out;
  for (const auto& m : ms)
    if (std::find(n.empty.begin(), n.empty.end(), m) == n.empty.end()) out.empty.push_back(m);
  for (const auto& m : ms) {
    auto d = std::find_if(n.future.begin(), n.future.end(), [&](const auto& x) { return x.condition == m; });
    add_future(out, m, time_bound::unit(), canonicalize(formula::neg(d->next)));
  }
  return out;
}

const time_normal_form& normal_form_engine::unit_ctnf(const formula& f) {
  if (auto it = unit_cache_.find(f); it != unit_cache_.end()) return it->second;
  time_normal_form n = ctnf(unit_step(expand(f)));
  return unit_cache_.emplace(f, std::move(n)).first->second;
}

time_normal_form tnf(const formula& f, const normal_form_options& options) {
  return normal_form_engine(options).tnf(f);
}

time_normal_form ctnf(const time_normal_form& n, const std::set<std::string>& alphabet) {
  for (const auto& a : n.guard_atoms())
    if (!alphabet.contains(a)) throw invalid_argument("guard atom '" + a + "' is not in the alphabet");
  return normal_form_engine().ctnf(n);
}

time_normal_form negate_ctnf(const time_normal_form& n) { return normal_form_engine().negate_ctnf(n); }

// ---------------------------------------------------------------- laws

namespace {

void flatten_conj(const formula& f, std::vector<formula>& out) {
  if (f.is(op::conj)) {
    flatten_conj(f.left(), out);
    flatten_conj(f.right(), out);
  } else {
    out.push_back(f);
  }
}

formula fold_conj(const std::vector<formula>& parts) {
  formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = formula::conj(acc, parts[i]);
  return acc;
}

formula local_laws(const formula& f) {
  if (f.is(op::chop)) {
    const formula l = f.left(), r = f.right();
    const time_bound& b = f.bound();
    if (r.is(op::disj)) // chop over ∨
      return formula::disj(local_laws(formula::chop(l, b, r.left())),
                           local_laws(formula::chop(l, b, r.right())));
    if (is_empty_formula(l)) // empty prefix
      return formula::next(b, r);
    if (l.is(op::next) && l.bound().is_unit()) // next prefix
      return formula::next(l.bound(), local_laws(formula::chop(l.sub(), b, r)));
    if (l.is(op::conj)) { // state conjuncts
      std::vector<formula> parts, state_parts, rest;
      flatten_conj(l, parts);
      for (auto& p : parts) (is_state_formula(p) ? state_parts : rest).push_back(p);
      if (!state_parts.empty() && !rest.empty())
        return formula::conj(fold_conj(state_parts), local_laws(formula::chop(fold_conj(rest), b, r)));
    }
    return f;
  }
  if (f.is(op::conj)) { // next over ∨
    const formula l = f.left(), r = f.right();
    if (l.is(op::next) && r.is(op::disj))
      return formula::disj(local_laws(formula::conj(l, r.left())), local_laws(formula::conj(l, r.right())));
    if (r.is(op::next) && l.is(op::disj))
      return formula::disj(local_laws(formula::conj(l.left(), r)), local_laws(formula::conj(l.right(), r)));
  }
  return f;
}

} // namespace

formula apply_laws(const formula& f) {
  switch (f.kind()) {
  case op::top:
  case op::atom:
    return f;
  case op::neg:
    return formula::neg(apply_laws(f.sub()));
  case op::next:
    return formula::next(f.bound(), apply_laws(f.sub()));
  case op::conj:
    return local_laws(formula::conj(apply_laws(f.left()), apply_laws(f.right())));
  case op::disj:
    return formula::disj(apply_laws(f.left()), apply_laws(f.right()));
  case op::chop:
    return local_laws(formula::chop(apply_laws(f.left()), f.bound(), apply_laws(f.right())));
  }
  return f;
}

} // namespace prptl
