#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lcah/elca.hpp"

namespace lcah::cli {

class ParseError : public Error {
public:
  ParseError(std::size_t column, std::vector<std::string> expected, std::string found);
  std::size_t column() const { return column_; }
  const std::vector<std::string> &expected() const { return expected_; }
  const std::string &found() const { return found_; }

private:
  std::size_t column_;
  std::vector<std::string> expected_;
  std::string found_;
};

enum class TokenKind { Ident, Int, Number, Punct, End };

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t column; // 1-based
};

std::vector<Token> tokenize(const std::string &line);

// A raw matrix keeps its shape so it can be checked against either
// annotated groups or discrete generators later.
struct RawMatrix {
  std::vector<std::vector<Scalar>> rows;
};

struct Operand {
  struct Name {
    std::string name;
  };
  struct Number {
    std::string text;
  };
  std::variant<Name, Number, ElcaGroup, ElcaMorphism, RawMatrix> value;
  std::size_t column = 0;
};

// `[let NAME =] command operand*`. Plain `let NAME = operand` uses the
// command "value"; `mor`, `hmor` and `pmor` definitions desugar to binds.
struct Statement {
  std::optional<std::string> bind;
  std::string command;
  std::vector<Operand> operands;
};

// Returns nullopt for blank and comment-only lines.
std::optional<Statement> parse_statement(const std::string &line, const SymbolTable &t);

ElcaGroup parse_group(const std::string &text);
Scalar parse_scalar(const std::string &text, const SymbolTable &t);
ElcaMorphism parse_morphism(const std::string &text, const SymbolTable &t);

ElcaMorphism morphism_from_rows(const RawMatrix &m, const ElcaGroup &s, const ElcaGroup &t);

std::string render(const ElcaGroup &g);
std::string render(const Scalar &s, const SymbolTable &t);
std::string render_matrix(const ScalarMatrix &m, const SymbolTable &t);
std::string render(const ElcaMorphism &f, const SymbolTable &t);

bool is_reserved(const std::string &name);

} // namespace lcah::cli
