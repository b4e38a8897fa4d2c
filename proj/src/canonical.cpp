#include <prptl/canonical.hpp>

#include <algorithm>
#include <unordered_map>
#include <vector>

namespace prptl {

namespace {

class canonicalizer {
public:
  formula run(const formula& f) {
    if (auto it = memo_.find(f.identity()); it != memo_.end()) return it->second;
    formula out = rewrite(f);
    memo_.emplace(f.identity(), out);
    return out;
  }

private:
  formula rewrite(const formula& f) {
    switch (f.kind()) {
    case op::top:
    case op::atom:
      return f;
    case op::neg: {
      formula s = run(f.sub());
      if (s.is(op::neg)) return s.sub();
      return formula::neg(s);
    }
    case op::conj:
    case op::disj:
      return junction(f);
    case op::next: {
      formula s = run(f.sub());
      if (s.is_bottom()) return s;
      return formula::next(f.bound(), s);
    }
    case op::chop: {
      formula l = run(f.left());
      formula r = run(f.right());
      if (l.is_bottom()) return l;
      if (r.is_bottom()) return r;
      return formula::chop(l, f.bound(), r);
    }
    }
    return f;
  }

  void flatten(op kind, const formula& f, std::vector<formula>& out) {
    if (f.is(kind)) {
      flatten(kind, f.left(), out);
      flatten(kind, f.right(), out);
    } else {
      out.push_back(f);
    }
  }

  formula junction(const formula& f) {
    const bool is_conj = f.is(op::conj);
    const formula unit = is_conj ? formula::top() : formula::bottom();
    const formula absorbing = is_conj ? formula::bottom() : formula::top();

    std::vector<formula> operands;
    flatten(f.kind(), run(f.left()), operands);
    flatten(f.kind(), run(f.right()), operands);

    std::vector<formula> kept;
    for (auto& g : operands) {
      if (g == absorbing) return absorbing;
      if (g != unit) kept.push_back(g);
    }
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    for (auto& g : kept) {
      if (g.is(op::neg) && std::binary_search(kept.begin(), kept.end(), g.sub())) return absorbing;
    }
    if (kept.empty()) return unit;
    formula acc = kept.front();
    for (std::size_t i = 1; i < kept.size(); ++i)
      acc = is_conj ? formula::conj(acc, kept[i]) : formula::disj(acc, kept[i]);
    return acc;
  }

  std::unordered_map<const void*, formula> memo_;
};

} // namespace

formula canonicalize(const formula& f) { return canonicalizer{}.run(f); }

} // namespace prptl
