#include <prptl/parser.hpp>

#include <prptl/derived.hpp>

#include <cctype>
#include <charconv>
#include <optional>
#include <vector>

namespace prptl {

namespace {

enum class tok {
  ident,
  number,
  lparen,
  rparen,
  lbracket,
  rbracket,
  comma,
  semicolon,
  amp,
  bar,
  bang,
  diamond,
  box,
  less,
  less_equal,
  greater,
  greater_equal,
  equal,
  end
};

std::string describe(tok t) {
  switch (t) {
  case tok::ident:
    return "identifier";
  case tok::number:
    return "number";
  case tok::lparen:
    return "'('";
  case tok::rparen:
    return "')'";
  case tok::lbracket:
    return "'['";
  case tok::rbracket:
    return "']'";
  case tok::comma:
    return "','";
  case tok::semicolon:
    return "';'";
  case tok::amp:
    return "'&'";
  case tok::bar:
    return "'|'";
  case tok::bang:
    return "'!'";
  case tok::diamond:
    return "'<>'";
  case tok::box:
    return "'[]'";
  case tok::less:
    return "'<'";
  case tok::less_equal:
    return "'<='";
  case tok::greater:
    return "'>'";
  case tok::greater_equal:
    return "'>='";
  case tok::equal:
    return "'='";
  case tok::end:
    return "end of input";
  }
  return "?";
}

struct token {
  tok kind;
  std::string_view text;
  source_span span;
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

std::vector<token> tokenize(std::string_view text) {
  std::vector<token> out;
  std::size_t i = 0;
  auto push = [&](tok k, std::size_t len) {
    out.push_back({k, text.substr(i, len), {i, i + len}});
    i += len;
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && is_ident_char(text[j])) ++j;
      push(tok::ident, j - i);
      continue;
    }
    if (is_digit(c) || (c == '.' && i + 1 < text.size() && is_digit(text[i + 1]))) {
      std::size_t j = i;
      while (j < text.size() && (is_digit(text[j]) || text[j] == '.' || text[j] == '/')) ++j;
      push(tok::number, j - i);
      continue;
    }
    auto next_is = [&](char d) { return i + 1 < text.size() && text[i + 1] == d; };
    switch (c) {
    case '(':
      push(tok::lparen, 1);
      break;
    case ')':
      push(tok::rparen, 1);
      break;
    case '[':
      if (next_is(']'))
        push(tok::box, 2);
      else
        push(tok::lbracket, 1);
      break;
    case ']':
      push(tok::rbracket, 1);
      break;
    case ',':
      push(tok::comma, 1);
      break;
    case ';':
      push(tok::semicolon, 1);
      break;
    case '&':
      push(tok::amp, 1);
      break;
    case '|':
      push(tok::bar, 1);
      break;
    case '!':
      push(tok::bang, 1);
      break;
    case '=':
      push(tok::equal, 1);
      break;
    case '<':
      if (next_is('>'))
        push(tok::diamond, 2);
      else if (next_is('='))
        push(tok::less_equal, 2);
      else
        push(tok::less, 1);
      break;
    case '>':
      if (next_is('='))
        push(tok::greater_equal, 2);
      else
        push(tok::greater, 1);
      break;
    default: {
      // Consume a whole UTF-8 sequence so the span stays on a character boundary.
      std::size_t len = 1;
      while (i + len < text.size() && (static_cast<unsigned char>(text[i + len]) & 0xC0) == 0x80)
        ++len;
      throw parse_error("unexpected character '" + std::string(text.substr(i, len)) +
                            "' at offset " + std::to_string(i),
                        {i, i + len});
    }
    }
  }
  out.push_back({tok::end, {}, {text.size(), text.size()}});
  return out;
}

const std::set<std::string_view>& keywords() {
  static const std::set<std::string_view> k{"true", "false", "empty", "more", "skip", "len",
                                            "keep", "halt", "fin", "X", "U", "Pr"};
  return k;
}

class parser {
public:
  explicit parser(std::string_view text) : tokens_(tokenize(text)) {}

  formula whole_formula() {
    formula f = disjunction();
    expect(tok::end);
    return f;
  }

  prob_query whole_query() {
    const token& pr = peek();
    if (pr.kind != tok::ident || pr.text != "Pr") fail({"'Pr'"});
    advance();
    comparator cmp;
    switch (peek().kind) {
    case tok::less:
      cmp = comparator::less;
      break;
    case tok::less_equal:
      cmp = comparator::less_equal;
      break;
    case tok::greater_equal:
      cmp = comparator::greater_equal;
      break;
    case tok::greater:
      cmp = comparator::greater;
      break;
    case tok::equal:
      cmp = comparator::equal;
      break;
    default:
      fail({"'<'", "'<='", "'>='", "'>'", "'='"});
    }
    advance();
    const token& num = expect(tok::number);
    rational threshold;
    try {
      threshold = parse_rational(num.text);
    } catch (const syntax_error& e) {
      throw parse_error(e.what(), num.span, {"number"});
    }
    if (threshold < 0 || threshold > 1)
      throw parse_error("threshold " + std::string(num.text) + " out of range [0,1]", num.span);
    expect(tok::lbracket);
    formula body = disjunction();
    expect(tok::rbracket);
    expect(tok::end);
    return {cmp, threshold, body};
  }

private:
  const token& peek() const { return tokens_[pos_]; }
  const token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  bool accept(tok k) {
    if (peek().kind != k) return false;
    advance();
    return true;
  }
  bool peek_keyword(std::string_view kw) const {
    return peek().kind == tok::ident && peek().text == kw;
  }

  [[noreturn]] void fail(std::set<std::string> expected) const {
    const token& t = peek();
    std::string got = t.kind == tok::end ? "end of input" : "'" + std::string(t.text) + "'";
    std::string msg = "syntax error at offset " + std::to_string(t.span.start) + ": got " + got +
                      ", expected ";
    bool first = true;
    for (auto& e : expected) {
      msg += (first ? "" : " or ") + e;
      first = false;
    }
    throw parse_error(msg, t.span, std::move(expected));
  }

  const token& expect(tok k) {
    if (peek().kind != k) fail({describe(k)});
    return advance();
  }

  std::uint64_t natural() {
    const token& t = expect(tok::number);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec == std::errc::result_out_of_range)
      throw parse_error("integer overflow in '" + std::string(t.text) + "'", t.span);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size())
      throw parse_error("expected a natural number, got '" + std::string(t.text) + "'", t.span,
                        {"natural number"});
    return v;
  }

  time_value upper_value() {
    if (peek().kind == tok::ident && (peek().text == "w" || peek().text == "inf")) {
      advance();
      return time_value::omega();
    }
    if (peek().kind != tok::number) fail({"natural number", "'w'", "'inf'"});
    return time_value(natural());
  }

  /// `[a]`, `[a,b]` or nothing (then `fallback`).
  time_bound optional_bound(time_bound fallback) {
    if (peek().kind != tok::lbracket) return fallback;
    std::size_t start = advance().span.start;
    std::uint64_t lower = natural();
    time_value upper(lower);
    if (accept(tok::comma)) upper = upper_value();
    std::size_t end = expect(tok::rbracket).span.end;
    if (time_value(lower) > upper)
      throw parse_error("time bound lower " + std::to_string(lower) + " exceeds upper " +
                            upper.to_string(),
                        {start, end});
    return time_bound(lower, upper);
  }

  formula disjunction() {
    formula f = conjunction();
    while (accept(tok::bar)) f = formula::disj(f, conjunction());
    return f;
  }

  formula conjunction() {
    formula f = sequence();
    while (accept(tok::amp)) f = formula::conj(f, sequence());
    return f;
  }

  formula sequence() {
    formula f = unary();
    for (;;) {
      if (accept(tok::semicolon)) {
        time_bound b = optional_bound(time_bound::zero());
        f = formula::chop(f, b, unary());
      } else if (peek_keyword("U")) {
        advance();
        if (accept(tok::less_equal)) {
          std::uint64_t t = natural();
          f = until_within(t, f, unary());
        } else {
          f = until(f, unary());
        }
      } else {
        return f;
      }
    }
  }

  formula unary() {
    if (accept(tok::bang)) return formula::neg(unary());
    if (peek_keyword("X")) {
      advance();
      time_bound b = optional_bound(time_bound::unit());
      return formula::next(b, unary());
    }
    if (accept(tok::diamond)) {
      if (peek().kind == tok::lbracket) {
        time_bound b = optional_bound(time_bound::zero());
        return diamond_within(b, unary());
      }
      return diamond(unary());
    }
    if (accept(tok::box)) {
      if (peek().kind == tok::lbracket) {
        time_bound b = optional_bound(time_bound::zero());
        return box_within(b, unary());
      }
      return box(unary());
    }
    return primary();
  }

  formula parenthesized() {
    expect(tok::lparen);
    formula f = disjunction();
    expect(tok::rparen);
    return f;
  }

  formula primary() {
    const token& t = peek();
    if (t.kind == tok::lparen) return parenthesized();
    if (t.kind != tok::ident)
      fail({"'('", "'!'", "'X'", "'<>'", "'[]'", "identifier", "'true'", "'false'"});
    std::string_view word = t.text;
    if (word == "true") return advance(), formula::top();
    if (word == "false") return advance(), formula::bottom();
    if (word == "empty") return advance(), empty();
    if (word == "more") return advance(), more();
    if (word == "skip") return advance(), skip();
    if (word == "len") {
      advance();
      expect(tok::lparen);
      std::uint64_t n = natural();
      expect(tok::rparen);
      return len(n);
    }
    if (word == "keep" || word == "halt" || word == "fin") {
      advance();
      formula p = parenthesized();
      return word == "keep" ? keep(p) : word == "halt" ? halt(p) : fin(p);
    }
    if (keywords().contains(word))
      throw parse_error("keyword '" + std::string(word) + "' cannot be used as a proposition",
                        t.span, {"identifier"});
    advance();
    return formula::atom(std::string(word));
  }

  std::vector<token> tokens_;
  std::size_t pos_ = 0;
};

// Binding strength, loosest first.
enum prec : int { p_disj = 0, p_conj = 1, p_chop = 2, p_unary = 3, p_atom = 4 };

int precedence(const formula& f) {
  if (f.is_bottom() || is_empty_formula(f)) return p_atom;
  switch (f.kind()) {
  case op::disj:
    return p_disj;
  case op::conj:
    return p_conj;
  case op::chop:
    return p_chop;
  case op::neg:
  case op::next:
    return p_unary;
  default:
    return p_atom;
  }
}

void render_into(const formula& f, int min_prec, std::string& out) {
  const bool paren = precedence(f) < min_prec;
  if (paren) out += '(';
  if (f.is_bottom()) {
    out += "false";
  } else if (is_empty_formula(f)) {
    out += "empty";
  } else {
    switch (f.kind()) {
    case op::top:
      out += "true";
      break;
    case op::atom:
      out += f.name();
      break;
    case op::neg:
      out += '!';
      render_into(f.sub(), p_unary, out);
      break;
    case op::next:
      out += "X" + f.bound().to_string() + " ";
      render_into(f.sub(), p_unary, out);
      break;
    case op::conj:
      render_into(f.left(), p_conj, out);
      out += " & ";
      render_into(f.right(), p_conj + 1, out);
      break;
    case op::disj:
      render_into(f.left(), p_disj, out);
      out += " | ";
      render_into(f.right(), p_disj + 1, out);
      break;
    case op::chop:
      render_into(f.left(), p_chop, out);
      out += f.bound().is_zero() ? " ; " : " ;" + f.bound().to_string() + " ";
      render_into(f.right(), p_chop + 1, out);
      break;
    }
  }
  if (paren) out += ')';
}

} // namespace

formula parse_formula(std::string_view text) { return parser(text).whole_formula(); }

prob_query parse_query(std::string_view text) { return parser(text).whole_query(); }

std::string render(const formula& f) {
  std::string out;
  render_into(f, p_disj, out);
  return out;
}

} // namespace prptl
