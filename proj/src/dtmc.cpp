#include <prptl/dtmc.hpp>

#include <prptl/error.hpp>

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <sstream>

namespace prptl {

namespace {

void check_probability(const rational& p, const std::string& where) {
  if (p < 0 || p > 1) throw invalid_argument(where + ": probability " + to_string(p) + " is outside [0,1]");
}

void check_index(std::size_t s, std::size_t n, const std::string& where) {
  if (s >= n)
    throw invalid_argument(where + ": state " + std::to_string(s) + " out of range (states: " +
                           std::to_string(n) + ")");
}

} // namespace

dtmc::dtmc(std::size_t state_count, const std::vector<std::pair<std::size_t, rational>>& initial,
           const std::vector<entry>& transitions, std::vector<state> labels)
    : initial_(state_count), rows_(state_count), labels_(std::move(labels)) {
  if (state_count == 0) throw invalid_argument("a chain needs at least one state");
  if (labels_.size() > state_count) throw invalid_argument("more labels than states");
  labels_.resize(state_count);

  std::vector<bool> seen_init(state_count, false);
  rational init_sum = 0;
  for (const auto& [s, p] : initial) {
    check_index(s, state_count, "init");
    check_probability(p, "init " + std::to_string(s));
    if (seen_init[s]) throw invalid_argument("duplicate init entry for state " + std::to_string(s));
    seen_init[s] = true;
    initial_[s] = p;
    init_sum += p;
  }
  if (initial.empty()) throw invalid_argument("missing init");
  if (init_sum != 1)
    throw invalid_argument("initial distribution sums to " + to_string(init_sum) + ", expected 1");

  for (const auto& t : transitions) {
    std::string where = "trans " + std::to_string(t.source) + " " + std::to_string(t.target);
    check_index(t.source, state_count, where);
    check_index(t.target, state_count, where);
    check_probability(t.probability, where);
    auto& row = rows_[t.source];
    auto it = std::lower_bound(row.begin(), row.end(), t.target,
                               [](const transition& x, std::size_t v) { return x.target < v; });
    if (it != row.end() && it->target == t.target)
      throw invalid_argument("duplicate transition entry " + std::to_string(t.source) + " -> " +
                             std::to_string(t.target));
    row.insert(it, {t.target, t.probability});
  }
  for (std::size_t s = 0; s < state_count; ++s) {
    rational sum = 0;
    for (const auto& t : rows_[s]) sum += t.probability;
    if (sum != 1)
      throw invalid_argument("transition row of state " + std::to_string(s) + " sums to " +
                             to_string(sum) + ", expected 1");
    std::erase_if(rows_[s], [](const transition& t) { return t.probability == 0; });
  }
}

std::set<std::string> dtmc::propositions() const {
  std::set<std::string> out;
  for (const auto& l : labels_) out.insert(l.begin(), l.end());
  return out;
}

namespace {

std::size_t parse_index(const std::string& word, std::size_t line) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), v);
  if (ec != std::errc() || ptr != word.data() + word.size())
    throw syntax_error("line " + std::to_string(line) + ": expected a state index, got '" + word + "'");
  return v;
}

rational parse_probability(const std::string& word, std::size_t line) {
  try {
    return parse_rational(word);
  } catch (const syntax_error& e) {
    throw syntax_error("line " + std::to_string(line) + ": " + e.what());
  }
}

} // namespace

dtmc load_dtmc(std::string_view text) {
  std::optional<std::size_t> states;
  std::vector<std::pair<std::size_t, rational>> initial;
  std::vector<dtmc::entry> transitions;
  std::map<std::size_t, state> labels;

  std::istringstream in{std::string(text)};
  std::size_t lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream line(raw);
    std::string key;
    if (!(line >> key)) continue;
    std::vector<std::string> words;
    for (std::string w; line >> w;) words.push_back(w);
    auto need = [&](std::size_t n, bool at_least = false) {
      if (at_least ? words.size() < n : words.size() != n)
        throw syntax_error("line " + std::to_string(lineno) + ": '" + key + "' expects " +
                           (at_least ? "at least " : "") + std::to_string(n) + " argument(s)");
    };
    if (key == "states:") {
      need(1);
      if (states) throw syntax_error("line " + std::to_string(lineno) + ": duplicate 'states:'");
      states = parse_index(words[0], lineno);
    } else if (key == "init:") {
      need(2);
      initial.emplace_back(parse_index(words[0], lineno), parse_probability(words[1], lineno));
    } else if (key == "label:") {
      need(1, true);
      auto& l = labels[parse_index(words[0], lineno)];
      l.insert(words.begin() + 1, words.end());
    } else if (key == "trans:") {
      need(3);
      transitions.push_back({parse_index(words[0], lineno), parse_index(words[1], lineno),
                             parse_probability(words[2], lineno)});
    } else {
      throw syntax_error("line " + std::to_string(lineno) + ": unknown directive '" + key + "'");
    }
  }
  if (!states) throw syntax_error("missing 'states:' declaration");
  std::vector<state> label_vec(*states);
  for (auto& [s, l] : labels) {
    if (s >= *states)
      throw invalid_argument("label: state " + std::to_string(s) + " out of range (states: " +
                             std::to_string(*states) + ")");
    label_vec[s] = std::move(l);
  }
  return dtmc(*states, initial, transitions, std::move(label_vec));
}

std::string save_dtmc(const dtmc& m) {
  std::string out = "states: " + std::to_string(m.state_count()) + "\n";
  for (std::size_t s = 0; s < m.state_count(); ++s)
    if (m.initial()[s] != 0) out += "init: " + std::to_string(s) + " " + to_string(m.initial()[s]) + "\n";
  for (std::size_t s = 0; s < m.state_count(); ++s) {
    if (m.label(s).empty()) continue;
    out += "label: " + std::to_string(s);
    for (const auto& a : m.label(s)) out += " " + a;
    out += "\n";
  }
  for (std::size_t s = 0; s < m.state_count(); ++s)
    for (const auto& t : m.successors(s))
      out += "trans: " + std::to_string(s) + " " + std::to_string(t.target) + " " +
             to_string(t.probability) + "\n";
  return out;
}

namespace {

template <class Pairs>
std::vector<std::pair<std::size_t, double>> cumulate(const Pairs& pairs) {
  std::vector<std::pair<std::size_t, double>> out;
  rational acc = 0;
  for (const auto& [s, p] : pairs) {
    if (p == 0) continue;
    acc += p;
    out.emplace_back(s, to_double(acc));
  }
  return out;
}

} // namespace

path_sampler::path_sampler(const dtmc& m) : model_(m) {
  std::vector<std::pair<std::size_t, rational>> init;
  for (std::size_t s = 0; s < m.state_count(); ++s) init.emplace_back(s, m.initial()[s]);
  initial_ = cumulate(init);
  for (std::size_t s = 0; s < m.state_count(); ++s) {
    std::vector<std::pair<std::size_t, rational>> r;
    for (const auto& t : m.successors(s)) r.emplace_back(t.target, t.probability);
    rows_.push_back(cumulate(r));
  }
}

std::size_t path_sampler::draw(const row& r, std::mt19937_64& rng) {
  double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  for (const auto& [s, c] : r)
    if (u < c) return s;
  return r.back().first;
}

std::vector<std::size_t> path_sampler::states(std::size_t horizon, std::mt19937_64& rng) const {
  std::vector<std::size_t> path;
  path.reserve(horizon + 1);
  path.push_back(draw(initial_, rng));
  for (std::size_t k = 0; k < horizon; ++k) path.push_back(draw(rows_[path.back()], rng));
  return path;
}

labeled_path path_sampler::path(std::size_t horizon, std::mt19937_64& rng) const {
  auto path = states(horizon, rng);
  std::vector<state> labels;
  labels.reserve(path.size());
  for (auto s : path) labels.push_back(model_.label(s));
  return {std::move(path), interval(std::move(labels))};
}

labeled_path sample_path(const dtmc& m, std::size_t horizon, std::mt19937_64& rng) {
  return path_sampler(m).path(horizon, rng);
}

labeled_path sample_path(const dtmc& m, std::size_t horizon, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_path(m, horizon, rng);
}

} // namespace prptl
