#include "topoconn/syntax.hpp"

#include <cctype>
#include <functional>

#include "topoconn/error.hpp"

namespace topoconn {

TermPtr var(const std::string& name) {
  return std::make_shared<const Term>(Term{TermKind::Var, name, nullptr, nullptr});
}
TermPtr zero() {
  static const TermPtr z = std::make_shared<const Term>(Term{TermKind::Zero, {}, nullptr, nullptr});
  return z;
}
TermPtr one() {
  static const TermPtr o = std::make_shared<const Term>(Term{TermKind::One, {}, nullptr, nullptr});
  return o;
}
TermPtr sum(TermPtr l, TermPtr r) {
  return std::make_shared<const Term>(Term{TermKind::Sum, {}, std::move(l), std::move(r)});
}
TermPtr product(TermPtr l, TermPtr r) {
  return std::make_shared<const Term>(Term{TermKind::Product, {}, std::move(l), std::move(r)});
}
TermPtr complement(TermPtr t) {
  return std::make_shared<const Term>(Term{TermKind::Complement, {}, std::move(t), nullptr});
}
TermPtr sum_of(const std::vector<TermPtr>& ts) {
  if (ts.empty()) return zero();
  TermPtr acc = ts[0];
  for (size_t i = 1; i < ts.size(); ++i) acc = sum(acc, ts[i]);
  return acc;
}

FormulaPtr eq(TermPtr l, TermPtr r) {
  return std::make_shared<const Formula>(Formula{FormulaKind::Eq, std::move(l), std::move(r), nullptr, nullptr});
}
FormulaPtr contact(TermPtr l, TermPtr r) {
  return std::make_shared<const Formula>(Formula{FormulaKind::Contact, std::move(l), std::move(r), nullptr, nullptr});
}
FormulaPtr conn(TermPtr t) {
  return std::make_shared<const Formula>(Formula{FormulaKind::Conn, std::move(t), nullptr, nullptr, nullptr});
}
FormulaPtr iconn(TermPtr t) {
  return std::make_shared<const Formula>(Formula{FormulaKind::IntConn, std::move(t), nullptr, nullptr, nullptr});
}
FormulaPtr land(FormulaPtr l, FormulaPtr r) {
  return std::make_shared<const Formula>(Formula{FormulaKind::And, nullptr, nullptr, std::move(l), std::move(r)});
}
FormulaPtr lnot(FormulaPtr f) {
  return std::make_shared<const Formula>(Formula{FormulaKind::Not, nullptr, nullptr, std::move(f), nullptr});
}

FormulaPtr neq(TermPtr l, TermPtr r) { return lnot(eq(std::move(l), std::move(r))); }
FormulaPtr leq(TermPtr l, TermPtr r) { return eq(product(std::move(l), complement(std::move(r))), zero()); }
FormulaPtr within(TermPtr l, TermPtr r) { return lnot(contact(std::move(l), complement(std::move(r)))); }
FormulaPtr disjoint(TermPtr l, TermPtr r) { return lnot(contact(std::move(l), std::move(r))); }
FormulaPtr lor(FormulaPtr l, FormulaPtr r) { return lnot(land(lnot(std::move(l)), lnot(std::move(r)))); }

FormulaPtr conj(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return eq(one(), one());
  FormulaPtr acc = fs[0];
  for (size_t i = 1; i < fs.size(); ++i) acc = land(acc, fs[i]);
  return acc;
}

bool equal(const Term& x, const Term& y) {
  if (&x == &y) return true;
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case TermKind::Var: return x.name == y.name;
    case TermKind::Zero:
    case TermKind::One: return true;
    case TermKind::Complement: return equal(*x.left, *y.left);
    default: return equal(*x.left, *y.left) && equal(*x.right, *y.right);
  }
}

bool equal(const Formula& x, const Formula& y) {
  if (&x == &y) return true;
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case FormulaKind::Eq:
    case FormulaKind::Contact: return equal(*x.a, *y.a) && equal(*x.b, *y.b);
    case FormulaKind::Conn:
    case FormulaKind::IntConn: return equal(*x.a, *y.a);
    case FormulaKind::And: return equal(*x.f, *y.f) && equal(*x.g, *y.g);
    case FormulaKind::Not: return equal(*x.f, *y.f);
  }
  return false;
}

std::vector<FormulaPtr> conjuncts(const FormulaPtr& f) {
  std::vector<FormulaPtr> out;
  std::function<void(const FormulaPtr&)> go = [&](const FormulaPtr& g) {
    if (g->kind == FormulaKind::And) {
      go(g->f);
      go(g->g);
    } else {
      out.push_back(g);
    }
  };
  go(f);
  return out;
}

static void collect(const Term& t, std::set<std::string>& out) {
  switch (t.kind) {
    case TermKind::Var: out.insert(t.name); break;
    case TermKind::Zero:
    case TermKind::One: break;
    case TermKind::Complement: collect(*t.left, out); break;
    default:
      collect(*t.left, out);
      collect(*t.right, out);
  }
}

static void collect(const Formula& f, std::set<std::string>& out) {
  switch (f.kind) {
    case FormulaKind::Eq:
    case FormulaKind::Contact:
      collect(*f.a, out);
      collect(*f.b, out);
      break;
    case FormulaKind::Conn:
    case FormulaKind::IntConn: collect(*f.a, out); break;
    case FormulaKind::And:
      collect(*f.f, out);
      collect(*f.g, out);
      break;
    case FormulaKind::Not: collect(*f.f, out); break;
  }
}

std::set<std::string> variables(const Formula& f) {
  std::set<std::string> s;
  collect(f, s);
  return s;
}
std::set<std::string> variables(const Term& t) {
  std::set<std::string> s;
  collect(t, s);
  return s;
}

bool is_atom(const Formula& f) { return f.kind != FormulaKind::And && f.kind != FormulaKind::Not; }

size_t atom_count(const Formula& f) {
  if (f.kind == FormulaKind::And) return atom_count(*f.f) + atom_count(*f.g);
  if (f.kind == FormulaKind::Not) return atom_count(*f.f);
  return 1;
}

// ---------------------------------------------------------------- lexer

namespace {

enum class Tok { Ident, Zero, One, LParen, RParen, Comma, Plus, Star, Minus, Bang, Amp, Bar, Eq, Neq, Leq, Ll, End };

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    char ch = s[i];
    if (ch == '#') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      advance(1);
      continue;
    }
    int l = line, c = col;
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      size_t j = i + 1;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\''))
        ++j;
      out.push_back({Tok::Ident, s.substr(i, j - i), l, c});
      advance(j - i);
      continue;
    }
    auto two = s.substr(i, 2);
    Tok k;
    size_t n = 1;
    if (two == "!=") k = Tok::Neq, n = 2;
    else if (two == "<=") k = Tok::Leq, n = 2;
    else if (two == "<<") k = Tok::Ll, n = 2;
    else {
      switch (ch) {
        case '0': k = Tok::Zero; break;
        case '1': k = Tok::One; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case ',': k = Tok::Comma; break;
        case '+': k = Tok::Plus; break;
        case '*': k = Tok::Star; break;
        case '-': k = Tok::Minus; break;
        case '!': k = Tok::Bang; break;
        case '&': k = Tok::Amp; break;
        case '|': k = Tok::Bar; break;
        case '=': k = Tok::Eq; break;
        default:
          fail("SyntaxError", std::string("unexpected character '") + ch + "'",
               std::to_string(l) + ":" + std::to_string(c));
      }
    }
    if ((k == Tok::Zero || k == Tok::One) && i + 1 < s.size() &&
        (std::isalnum(static_cast<unsigned char>(s[i + 1])) || s[i + 1] == '_'))
      fail("SyntaxError", "malformed constant", std::to_string(l) + ":" + std::to_string(c));
    out.push_back({k, s.substr(i, n), l, c});
    advance(n);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

struct Failure {
  size_t pos;
  std::string message;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  FormulaPtr whole_formula() {
    FormulaPtr f = formula();
    expect_end();
    return f;
  }
  TermPtr whole_term() {
    TermPtr t = term();
    expect_end();
    return t;
  }

  [[noreturn]] void rethrow(const Failure& e) const {
    const Token& t = toks_[e.pos];
    fail("SyntaxError", e.message, std::to_string(t.line) + ":" + std::to_string(t.col));
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;

  const Token& peek(size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at(Tok k) const { return peek().kind == k; }

  [[noreturn]] void error(const std::string& what) const {
    throw Failure{pos_, what + ", found " + describe(peek())};
  }
  void expect(Tok k, const char* what) {
    if (!at(k)) error(std::string("expected ") + what);
    ++pos_;
  }
  void expect_end() {
    if (!at(Tok::End)) error("expected end of input");
  }

  FormulaPtr formula() {
    FormulaPtr acc = lit();
    while (at(Tok::Amp) || at(Tok::Bar)) {
      bool is_and = at(Tok::Amp);
      ++pos_;
      FormulaPtr rhs = lit();
      acc = is_and ? land(acc, rhs) : lor(acc, rhs);
    }
    return acc;
  }

  static bool is_comparison(Tok k) { return k == Tok::Eq || k == Tok::Neq || k == Tok::Leq || k == Tok::Ll; }

  FormulaPtr lit() {
    if (at(Tok::Bang)) {
      ++pos_;
      return lnot(lit());
    }
    if (at(Tok::LParen)) {
      // "(" may open a formula or a term; try the formula reading first.
      size_t save = pos_;
      Failure first{0, {}};
      try {
        ++pos_;
        FormulaPtr f = formula();
        expect(Tok::RParen, "')'");
        Tok nk = peek().kind;
        if (!is_comparison(nk) && nk != Tok::Plus && nk != Tok::Star) return f;
        first = Failure{pos_, "comparison after parenthesized formula"};
      } catch (const Failure& e) {
        first = e;
      }
      pos_ = save;
      try {
        return atom();
      } catch (const Failure& e) {
        throw e.pos >= first.pos ? e : first;
      }
    }
    return atom();
  }

  FormulaPtr atom() {
    if (at(Tok::Ident) && peek(1).kind == Tok::LParen) {
      const std::string& name = peek().text;
      if (name == "C") {
        pos_ += 2;
        TermPtr l = term();
        expect(Tok::Comma, "','");
        TermPtr r = term();
        expect(Tok::RParen, "')'");
        return contact(l, r);
      }
      if (name == "c" || name == "co") {
        pos_ += 2;
        TermPtr t = term();
        expect(Tok::RParen, "')'");
        return name == "c" ? conn(t) : iconn(t);
      }
      error("unknown predicate '" + name + "'");
    }
    TermPtr l = term();
    Tok k = peek().kind;
    if (!is_comparison(k)) error("expected '=', '!=', '<=' or '<<'");
    ++pos_;
    TermPtr r = term();
    switch (k) {
      case Tok::Eq: return eq(l, r);
      case Tok::Neq: return neq(l, r);
      case Tok::Leq: return leq(l, r);
      default: return within(l, r);
    }
  }

  TermPtr term() {
    TermPtr acc = factor();
    while (at(Tok::Plus)) {
      ++pos_;
      acc = sum(acc, factor());
    }
    return acc;
  }

  TermPtr factor() {
    TermPtr acc = unary();
    while (at(Tok::Star)) {
      ++pos_;
      acc = product(acc, unary());
    }
    return acc;
  }

  TermPtr unary() {
    switch (peek().kind) {
      case Tok::Minus: ++pos_; return complement(unary());
      case Tok::Zero: ++pos_; return zero();
      case Tok::One: ++pos_; return one();
      case Tok::Ident: {
        std::string name = peek().text;
        ++pos_;
        return var(name);
      }
      case Tok::LParen: {
        ++pos_;
        TermPtr t = term();
        expect(Tok::RParen, "')'");
        return t;
      }
      default: error("expected a term");
    }
  }
};

bool blank(const std::string& s) {
  auto toks = lex(s);
  return toks.size() == 1;
}

}  // namespace

FormulaPtr parse(const std::string& text) {
  if (blank(text)) fail("EmptyInput", "no formula in input");
  Parser p(lex(text));
  try {
    return p.whole_formula();
  } catch (const Failure& e) {
    p.rethrow(e);
  }
}

TermPtr parse_term(const std::string& text) {
  if (blank(text)) fail("EmptyInput", "no term in input");
  Parser p(lex(text));
  try {
    return p.whole_term();
  } catch (const Failure& e) {
    p.rethrow(e);
  }
}

// ---------------------------------------------------------------- printer

namespace {

// Precedence: 0 sum, 1 product, 2 unary/atomic.
int prec(const Term& t) {
  switch (t.kind) {
    case TermKind::Sum: return 0;
    case TermKind::Product: return 1;
    default: return 2;
  }
}

void emit(const Term& t, std::string& out);

void emit_at(const Term& t, int min_prec, std::string& out) {
  if (prec(t) < min_prec) {
    out += '(';
    emit(t, out);
    out += ')';
  } else {
    emit(t, out);
  }
}

void emit(const Term& t, std::string& out) {
  switch (t.kind) {
    case TermKind::Var: out += t.name; break;
    case TermKind::Zero: out += '0'; break;
    case TermKind::One: out += '1'; break;
    case TermKind::Sum:
      emit_at(*t.left, 0, out);
      out += " + ";
      emit_at(*t.right, 1, out);
      break;
    case TermKind::Product:
      emit_at(*t.left, 1, out);
      out += " * ";
      emit_at(*t.right, 2, out);
      break;
    case TermKind::Complement:
      out += '-';
      emit_at(*t.left, 2, out);
      break;
  }
}

void emit(const Formula& f, std::string& out) {
  switch (f.kind) {
    case FormulaKind::Eq:
      emit(*f.a, out);
      out += " = ";
      emit(*f.b, out);
      break;
    case FormulaKind::Contact:
      out += "C(";
      emit(*f.a, out);
      out += ", ";
      emit(*f.b, out);
      out += ')';
      break;
    case FormulaKind::Conn:
    case FormulaKind::IntConn:
      out += f.kind == FormulaKind::Conn ? "c(" : "co(";
      emit(*f.a, out);
      out += ')';
      break;
    case FormulaKind::And:
      emit(*f.f, out);
      out += " & ";
      if (f.g->kind == FormulaKind::And) {
        out += '(';
        emit(*f.g, out);
        out += ')';
      } else {
        emit(*f.g, out);
      }
      break;
    case FormulaKind::Not:
      out += '!';
      if (f.f->kind == FormulaKind::Eq || f.f->kind == FormulaKind::And) {
        out += '(';
        emit(*f.f, out);
        out += ')';
      } else {
        emit(*f.f, out);
      }
      break;
  }
}

}  // namespace

std::string print(const Formula& f) {
  std::string s;
  emit(f, s);
  return s;
}

std::string print(const Term& t) {
  std::string s;
  emit(t, s);
  return s;
}

// ---------------------------------------------------------------- analyses

std::string tag_name(LanguageTag t) {
  switch (t) {
    case LanguageTag::B: return "B";
    case LanguageTag::BC: return "BC";
    case LanguageTag::Bc: return "Bc";
    case LanguageTag::Bci: return "Bci";
    case LanguageTag::BCc: return "BCc";
    case LanguageTag::BCci: return "BCci";
  }
  return "?";
}

namespace {
struct Usage {
  bool contact = false, conn = false, iconn = false;
};
void scan(const Formula& f, Usage& u) {
  switch (f.kind) {
    case FormulaKind::Contact: u.contact = true; break;
    case FormulaKind::Conn: u.conn = true; break;
    case FormulaKind::IntConn: u.iconn = true; break;
    case FormulaKind::And: scan(*f.f, u); scan(*f.g, u); break;
    case FormulaKind::Not: scan(*f.f, u); break;
    default: break;
  }
}
// (contact axis, connectedness axis 0 none / 1 c / 2 c°)
std::pair<int, int> axes(LanguageTag t) {
  switch (t) {
    case LanguageTag::B: return {0, 0};
    case LanguageTag::BC: return {1, 0};
    case LanguageTag::Bc: return {0, 1};
    case LanguageTag::Bci: return {0, 2};
    case LanguageTag::BCc: return {1, 1};
    case LanguageTag::BCci: return {1, 2};
  }
  return {0, 0};
}
}  // namespace

LanguageTag classify(const Formula& f) {
  Usage u;
  scan(f, u);
  if (u.conn && u.iconn) fail("MixedConnectedness", "formula uses both c and co");
  if (u.conn) return u.contact ? LanguageTag::BCc : LanguageTag::Bc;
  if (u.iconn) return u.contact ? LanguageTag::BCci : LanguageTag::Bci;
  return u.contact ? LanguageTag::BC : LanguageTag::B;
}

bool tag_leq(LanguageTag a, LanguageTag b) {
  auto [ca, ka] = axes(a);
  auto [cb, kb] = axes(b);
  return ca <= cb && (ka == 0 || ka == kb);
}

std::vector<Occurrence> polarity(const Formula& f, Pred p) {
  FormulaKind want = p == Pred::Contact ? FormulaKind::Contact
                     : p == Pred::Conn  ? FormulaKind::Conn
                                        : FormulaKind::IntConn;
  std::vector<Occurrence> out;
  std::vector<int> path;
  std::function<void(const Formula&, int)> go = [&](const Formula& g, int sign) {
    switch (g.kind) {
      case FormulaKind::And:
        path.push_back(0);
        go(*g.f, sign);
        path.back() = 1;
        go(*g.g, sign);
        path.pop_back();
        break;
      case FormulaKind::Not:
        path.push_back(0);
        go(*g.f, -sign);
        path.pop_back();
        break;
      default:
        if (g.kind == want) out.push_back({path, sign});
    }
  };
  go(f, 1);
  return out;
}

std::string path_string(const std::vector<int>& path) {
  std::string s = "/";
  for (size_t i = 0; i < path.size(); ++i) {
    if (i) s += '/';
    s += std::to_string(path[i]);
  }
  return s;
}

}  // namespace topoconn
