#include <prptl/derived.hpp>

#include <prptl/error.hpp>

#include <string>

namespace prptl {

formula implies(formula a, formula b) { return formula::disj(formula::neg(std::move(a)), std::move(b)); }

formula iff(formula a, formula b) {
  return formula::disj(formula::conj(a, b), formula::conj(formula::neg(a), formula::neg(b)));
}

formula diamond(formula p) { return formula::chop(formula::top(), time_bound::zero(), std::move(p)); }

formula box(formula p) { return formula::neg(diamond(formula::neg(std::move(p)))); }

formula until(formula p, formula q) { return formula::chop(std::move(p), time_bound::unit(), std::move(q)); }

formula empty() { return formula::neg(more()); }

bool is_empty_formula(const formula& f) {
  if (!f.is(op::neg)) return false;
  formula n = f.sub();
  return n.is(op::next) && n.bound().is_unit() && n.sub().is_top();
}

formula more() { return formula::next(time_bound::unit(), formula::top()); }

formula skip() { return formula::next(time_bound::unit(), empty()); }

formula len(std::uint64_t n) {
  formula f = empty();
  for (std::uint64_t k = 0; k < n; ++k) f = formula::next(time_bound::unit(), f);
  return f;
}

formula keep(formula p) { return box(implies(formula::neg(empty()), std::move(p))); }

formula halt(formula p) { return box(iff(empty(), std::move(p))); }

formula fin(formula p) { return box(implies(empty(), std::move(p))); }

formula diamond_within(time_bound b, formula p) { return formula::next(b, std::move(p)); }

formula box_within(time_bound b, formula p) {
  return formula::neg(formula::next(b, formula::neg(std::move(p))));
}

formula until_within(std::uint64_t t, formula p, formula q) {
  if (t == 0) return q;
  formula prefix = box_within(time_bound(0, t - 1), std::move(p));
  return formula::disj(q, formula::chop(prefix, time_bound::unit(), q));
}

const std::vector<std::string_view>& derived_tags() {
  static const std::vector<std::string_view> tags{
      "diamond", "box", "until", "until_leq", "empty", "more", "skip",
      "len", "keep", "halt", "fin", "diamond_within", "box_within"};
  return tags;
}

namespace {

void expect_arity(std::string_view tag, const std::vector<formula>& operands,
                  const std::vector<std::int64_t>& naturals, std::size_t nf, std::size_t nn) {
  if (operands.size() != nf || naturals.size() != nn)
    throw invalid_argument("operator '" + std::string(tag) + "' expects " + std::to_string(nf) +
                           " formula(s) and " + std::to_string(nn) + " natural(s), got " +
                           std::to_string(operands.size()) + " and " +
                           std::to_string(naturals.size()));
  for (auto n : naturals)
    if (n < 0)
      throw invalid_argument("operator '" + std::string(tag) + "' given negative argument " +
                             std::to_string(n));
}

} // namespace

formula mk_derived(std::string_view tag, const std::vector<formula>& operands,
                   const std::vector<std::int64_t>& naturals) {
  auto nat = [&](std::size_t i) { return static_cast<std::uint64_t>(naturals[i]); };
  auto unary = [&](formula (*fn)(formula)) {
    expect_arity(tag, operands, naturals, 1, 0);
    return fn(operands[0]);
  };
  auto nullary = [&](formula (*fn)()) {
    expect_arity(tag, operands, naturals, 0, 0);
    return fn();
  };

  if (tag == "diamond") return unary(diamond);
  if (tag == "box") return unary(box);
  if (tag == "keep") return unary(keep);
  if (tag == "halt") return unary(halt);
  if (tag == "fin") return unary(fin);
  if (tag == "empty") return nullary(empty);
  if (tag == "more") return nullary(more);
  if (tag == "skip") return nullary(skip);
  if (tag == "until") {
    expect_arity(tag, operands, naturals, 2, 0);
    return until(operands[0], operands[1]);
  }
  if (tag == "len") {
    expect_arity(tag, operands, naturals, 0, 1);
    return len(nat(0));
  }
  if (tag == "until_leq") {
    expect_arity(tag, operands, naturals, 2, 1);
    return until_within(nat(0), operands[0], operands[1]);
  }
  if (tag == "diamond_within" || tag == "box_within") {
    expect_arity(tag, operands, naturals, 1, 2);
    time_bound b(nat(0), time_value(nat(1)));
    return tag == "diamond_within" ? diamond_within(b, operands[0]) : box_within(b, operands[0]);
  }
  throw invalid_argument("unknown derived operator '" + std::string(tag) + "'");
}

} // namespace prptl
