#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lcah/cli/parser.hpp"
#include "lcah/cli/session.hpp"

namespace lcah::cli {

struct Options {
  bool json = false;
  bool check_certificates = false;
  std::uint64_t seed = 1;
};

struct Outcome {
  std::optional<std::string> bind;
  std::optional<Value> value;
  std::optional<bool> answer;  // for the `?` queries
  std::vector<std::string> details;
  io::json data = io::json::object();
};

std::string render(const Value &v, const SymbolTable &t);

class Interpreter {
public:
  Interpreter(Session &session, Options options) : s_(session), opt_(options) {}

  // nullopt for blank lines. Throws Error on failure; the session is only
  // modified by statements that succeed.
  std::optional<Outcome> execute(const std::string &line);
  // Text or JSON rendering, depending on the options.
  std::string format(const std::string &line, const Outcome &o) const;
  std::string format_error(const std::string &line, const Error &e) const;

private:
  Outcome run(const Statement &st);

  Session &s_;
  Options opt_;
};

// 0 success, 1 user error, 2 internal failure.
int exit_code(const Error &e);

} // namespace lcah::cli
