#include "lcah/cli/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace lcah::cli {

namespace {

std::string join_expected(const std::vector<std::string> &e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i)
    s += (i ? ", " : "") + e[i];
  return s;
}

const std::set<std::string> &commands() {
  static const std::set<std::string> c = {
      "symbol",   "let",         "mor",        "hmor",       "pmor",      "heart",
      "pga",      "roof",        "kernel",     "coker",      "closure",   "classify",
      "dual",     "pullback",    "bicartesian?", "ghost?",   "decompose", "normalize",
      "theta",    "thetainv",    "completion", "precompact?", "isogeny?", "weakdual",
      "roofzero?", "roofeq?",    "check",      "show"};
  return c;
}

// Commands whose result can be bound with `let`.
const std::set<std::string> &value_commands() {
  static const std::set<std::string> c = {
      "heart",     "pga",       "roof",       "kernel",   "coker",    "closure",
      "dual",      "pullback",  "decompose",  "normalize", "theta",   "thetainv",
      "completion", "weakdual", "show"};
  return c;
}

bool is_group_letter(const Token &t) {
  return t.kind == TokenKind::Ident && (t.text == "R" || t.text == "Z" || t.text == "T");
}

class Parser {
public:
  Parser(std::vector<Token> tokens, const SymbolTable *table)
      : toks_(std::move(tokens)), table_(table) {}

  const Token &peek(std::size_t ahead = 0) const {
    return toks_[std::min(i_ + ahead, toks_.size() - 1)];
  }
  bool at_end() const { return peek().kind == TokenKind::End; }

  void advance() {
    ++i_;
    expected_.clear();
  }

  bool accept(const std::string &punct) {
    if (peek().kind == TokenKind::Punct && peek().text == punct) {
      advance();
      return true;
    }
    note("'" + punct + "'");
    return false;
  }

  void expect(const std::string &punct) {
    if (!accept(punct))
      error();
  }

  void note(const std::string &what) {
    if (std::find(expected_.begin(), expected_.end(), what) == expected_.end())
      expected_.push_back(what);
  }

  [[noreturn]] void error() {
    const Token &t = peek();
    throw ParseError(t.column, expected_,
                     t.kind == TokenKind::End ? "end of input" : "'" + t.text + "'");
  }

  [[noreturn]] void error_with(const std::string &what) {
    note(what);
    error();
  }

  Int positive_int() {
    if (peek().kind != TokenKind::Int)
      error_with("integer");
    Int v(peek().text);
    if (v <= 0)
      error_with("positive integer");
    advance();
    return v;
  }

  std::string binding_name() {
    if (peek().kind != TokenKind::Ident || is_reserved(peek().text))
      error_with("name");
    std::string s = peek().text;
    advance();
    return s;
  }

  ElcaGroup group() {
    std::size_t a = 0, b = 0, c = 0;
    std::vector<Int> torsion;
    do {
      const Token &t = peek();
      if (t.kind == TokenKind::Int && t.text == "0") {
        advance();
        continue;
      }
      if (!is_group_letter(t)) {
        note("'R'");
        note("'Z'");
        note("'T'");
        note("'0'");
        error();
      }
      std::string letter = t.text;
      advance();
      if (letter == "Z" && accept("/")) {
        Int n = positive_int();
        if (n > 1)
          torsion.push_back(n);
        continue;
      }
      std::size_t n = 1;
      if (accept("^")) {
        Int e = positive_int();
        if (e > 64)
          error_with("exponent at most 64");
        n = e.get_ui();
      }
      (letter == "R" ? a : letter == "Z" ? b : c) += n;
    } while (accept("+"));
    return ElcaGroup(a, b, c, canonicalize_orders(torsion).group.torsion());
  }

  Scalar factor() {
    const Token &t = peek();
    if (t.kind == TokenKind::Int) {
      Int num(t.text);
      advance();
      if (accept("/")) {
        if (peek().kind != TokenKind::Int)
          error_with("integer");
        Int den(peek().text);
        if (den == 0)
          error_with("nonzero denominator");
        advance();
        Rat q(num, den);
        q.canonicalize();
        return Scalar(q);
      }
      return Scalar(num);
    }
    if (t.kind == TokenKind::Ident && !is_reserved(t.text)) {
      std::optional<std::uint32_t> idx = table_ ? table_->find(t.text) : std::nullopt;
      if (!idx)
        fail(ErrorKind::Parse, "unknown symbol '" + t.text + "' at column " +
                                   std::to_string(t.column));
      advance();
      long e = 1;
      if (accept("^")) {
        bool neg = accept("-");
        if (peek().kind != TokenKind::Int)
          error_with("integer");
        Int v(peek().text);
        if (v == 0 || v > 1000)
          error_with("exponent between 1 and 1000");
        advance();
        e = neg ? -v.get_si() : v.get_si();
      }
      return Scalar::symbol(*table_, *idx, static_cast<std::int32_t>(e));
    }
    note("number");
    note("symbol");
    error();
  }

  Scalar term() {
    Scalar s = factor();
    while (accept("*"))
      s *= factor();
    return s;
  }

  Scalar scalar() {
    bool neg = accept("-");
    Scalar s = term();
    if (neg)
      s = -s;
    for (;;) {
      if (accept("+"))
        s += term();
      else if (accept("-"))
        s -= term();
      else
        return s;
    }
  }

  RawMatrix matrix() {
    RawMatrix m;
    expect("[");
    if (accept("]"))
      return m;
    do {
      expect("[");
      std::vector<Scalar> row;
      if (!accept("]")) {
        do
          row.push_back(scalar());
        while (accept(","));
        expect("]");
      }
      m.rows.push_back(std::move(row));
    } while (accept(","));
    expect("]");
    return m;
  }

  ElcaMorphism morphism_tail(const RawMatrix &m) {
    expect(":");
    ElcaGroup s = group();
    expect("->");
    ElcaGroup t = group();
    return morphism_from_rows(m, s, t);
  }

  Operand operand() {
    Operand op;
    op.column = peek().column;
    const Token &t = peek();
    if (is_group_letter(t)) {
      op.value = group();
    } else if (t.kind == TokenKind::Ident) {
      op.value = Operand::Name{t.text};
      advance();
    } else if (t.kind == TokenKind::Int || t.kind == TokenKind::Number) {
      op.value = Operand::Number{t.text};
      advance();
    } else if (t.kind == TokenKind::Punct && t.text == "-" &&
               (peek(1).kind == TokenKind::Int || peek(1).kind == TokenKind::Number)) {
      advance();
      op.value = Operand::Number{"-" + peek().text};
      advance();
    } else if (t.kind == TokenKind::Punct && t.text == "[") {
      RawMatrix m = matrix();
      if (peek().kind == TokenKind::Punct && peek().text == ":")
        op.value = morphism_tail(m);
      else
        op.value = std::move(m);
    } else {
      note("name");
      note("group");
      note("matrix");
      note("number");
      error();
    }
    return op;
  }

  void finish() {
    if (!at_end()) {
      note("end of input");
      error();
    }
  }

  Statement statement() {
    Statement st;
    if (peek().kind != TokenKind::Ident || !commands().count(peek().text)) {
      for (const auto &c : commands())
        note(c);
      error();
    }
    st.command = peek().text;
    advance();
    if (st.command == "let") {
      st.bind = binding_name();
      expect("=");
      if (peek().kind == TokenKind::Ident && value_commands().count(peek().text)) {
        st.command = peek().text;
        advance();
        rest(st);
      } else {
        st.command = "value";
        st.operands.push_back(operand());
        finish();
      }
    } else if (st.command == "mor") {
      st.bind = binding_name();
      expect(":");
      ElcaGroup s = group();
      expect("->");
      ElcaGroup t = group();
      expect("=");
      Operand op;
      op.column = peek().column;
      op.value = morphism_from_rows(matrix(), s, t);
      st.command = "value";
      st.operands.push_back(std::move(op));
      finish();
    } else if (st.command == "hmor" || st.command == "pmor") {
      st.bind = binding_name();
      expect(":");
      st.operands.push_back(operand());
      expect("->");
      st.operands.push_back(operand());
      expect("=");
      if (st.command == "hmor") {
        expect("(");
        st.operands.push_back(operand());
        expect(",");
        st.operands.push_back(operand());
        expect(")");
      } else {
        Operand op;
        op.column = peek().column;
        op.value = matrix();
        st.operands.push_back(std::move(op));
      }
      finish();
    } else if (st.command == "symbol") {
      Operand name;
      name.column = peek().column;
      name.value = Operand::Name{binding_name()};
      st.operands.push_back(std::move(name));
      if (!at_end())
        st.operands.push_back(operand());
      finish();
    } else {
      rest(st);
    }
    return st;
  }

  void rest(Statement &st) {
    while (!at_end())
      st.operands.push_back(operand());
  }

private:
  std::vector<Token> toks_;
  std::size_t i_ = 0;
  const SymbolTable *table_;
  std::vector<std::string> expected_;
};

Parser make_parser(const std::string &text, const SymbolTable *t) {
  return Parser(tokenize(text), t);
}

} // namespace

ParseError::ParseError(std::size_t column, std::vector<std::string> expected,
                       std::string found)
    : Error(ErrorKind::Parse, "column " + std::to_string(column) + ": expected " +
                                  (expected.size() > 1 ? "one of " : "") +
                                  join_expected(expected) + ", found " + found),
      column_(column), expected_(std::move(expected)), found_(std::move(found)) {}

bool is_reserved(const std::string &name) {
  return name == "R" || name == "Z" || name == "T" || commands().count(name) ||
         value_commands().count(name);
}

std::vector<Token> tokenize(const std::string &line) {
  std::vector<Token> out;
  std::size_t i = 0, n = line.size();
  auto ident_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  };
  while (i < n) {
    char c = line[i];
    std::size_t col = i + 1;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '#') {
      break;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < n && ident_char(line[j]))
        ++j;
      if (j < n && line[j] == '?')
        ++j;
      out.push_back({TokenKind::Ident, line.substr(i, j - i), col});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < n && std::isdigit(static_cast<unsigned char>(line[j])))
        ++j;
      bool real = false;
      if (j + 1 < n && line[j] == '.' && std::isdigit(static_cast<unsigned char>(line[j + 1]))) {
        real = true;
        ++j;
        while (j < n && std::isdigit(static_cast<unsigned char>(line[j])))
          ++j;
      }
      if (j < n && (line[j] == 'e' || line[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < n && (line[k] == '-' || line[k] == '+'))
          ++k;
        if (k < n && std::isdigit(static_cast<unsigned char>(line[k]))) {
          real = true;
          j = k;
          while (j < n && std::isdigit(static_cast<unsigned char>(line[j])))
            ++j;
        }
      }
      out.push_back({real ? TokenKind::Number : TokenKind::Int, line.substr(i, j - i), col});
      i = j;
    } else if (c == '-' && i + 1 < n && line[i + 1] == '>') {
      out.push_back({TokenKind::Punct, "->", col});
      i += 2;
    } else if (std::string("+-*/^[],:=()").find(c) != std::string::npos) {
      out.push_back({TokenKind::Punct, std::string(1, c), col});
      ++i;
    } else {
      throw ParseError(col, {"token"}, "'" + std::string(1, c) + "'");
    }
  }
  out.push_back({TokenKind::End, "", n + 1});
  return out;
}

std::optional<Statement> parse_statement(const std::string &line, const SymbolTable &t) {
  Parser p = make_parser(line, &t);
  if (p.at_end())
    return std::nullopt;
  return p.statement();
}

ElcaGroup parse_group(const std::string &text) {
  Parser p = make_parser(text, nullptr);
  ElcaGroup g = p.group();
  p.finish();
  return g;
}

Scalar parse_scalar(const std::string &text, const SymbolTable &t) {
  Parser p = make_parser(text, &t);
  Scalar s = p.scalar();
  p.finish();
  return s;
}

ElcaMorphism parse_morphism(const std::string &text, const SymbolTable &t) {
  Parser p = make_parser(text, &t);
  ElcaMorphism f = p.morphism_tail(p.matrix());
  p.finish();
  return f;
}

ElcaMorphism morphism_from_rows(const RawMatrix &m, const ElcaGroup &s, const ElcaGroup &t) {
  if (m.rows.size() != t.coordinates())
    fail(ErrorKind::ShapeMismatch, "matrix has " + std::to_string(m.rows.size()) +
                                       " rows but " + t.to_string() + " has " +
                                       std::to_string(t.coordinates()) + " coordinates");
  for (const auto &row : m.rows)
    if (row.size() != s.coordinates())
      fail(ErrorKind::ShapeMismatch, "matrix row has " + std::to_string(row.size()) +
                                         " entries but " + s.to_string() + " has " +
                                         std::to_string(s.coordinates()) + " coordinates");
  return ElcaMorphism::from_full(s, t, ScalarMatrix::from_rows(m.rows, s.coordinates()));
}

std::string render(const ElcaGroup &g) { return g.to_string(); }

std::string render(const Scalar &s, const SymbolTable &t) { return s.to_string(t); }

std::string render_matrix(const ScalarMatrix &m, const SymbolTable &t) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j)
      out += (j ? ", " : "") + render(m(i, j), t);
    out += "]";
  }
  return out + "]";
}

std::string render(const ElcaMorphism &f, const SymbolTable &t) {
  return render_matrix(f.full(), t) + " : " + render(f.source()) + " -> " +
         render(f.target());
}

} // namespace lcah::cli
