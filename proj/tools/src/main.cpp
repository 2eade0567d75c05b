#include <fstream>
#include <iostream>
#include <unistd.h>

#include <CLI11.hpp>

#include "lcah/cli/interpreter.hpp"

using namespace lcah;
using namespace lcah::cli;

namespace {

int run_stream(std::istream &in, Interpreter &interp, bool stop_on_error, bool prompt) {
  int status = 0;
  std::string line;
  for (;;) {
    if (prompt)
      std::cout << "lcah> " << std::flush;
    if (!std::getline(in, line))
      break;
    try {
      if (auto out = interp.execute(line))
        std::cout << interp.format(line, *out) << std::flush;
    } catch (const Error &e) {
      std::cerr << interp.format_error(line, e);
      status = std::max(status, exit_code(e));
      if (stop_on_error || e.is_internal())
        return status;
    } catch (const std::exception &e) {
      std::cerr << interp.format_error(line, Error(ErrorKind::Internal, e.what()));
      return 2;
    }
  }
  return status;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Calculus of locally compact abelian groups and their two-term complexes"};
  Options opt;
  std::string session_path, batch_path;
  app.add_flag("--json", opt.json, "Print one JSON object per statement");
  app.add_option("--session", session_path, "Session file, loaded if present and saved on exit");
  app.add_option("--batch", batch_path, "Run statements from a file, stopping at the first error");
  app.add_option("--seed", opt.seed, "Seed for randomized checks");
  app.add_flag("--check-certificates", opt.check_certificates,
               "Recheck every certificate as it is produced");
  CLI11_PARSE(app, argc, argv);

  Session session;
  try {
    if (!session_path.empty() && std::ifstream(session_path))
      session = Session::load(session_path);
  } catch (const Error &e) {
    std::cerr << "error: " << error_kind_name(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e);
  }

  Interpreter interp(session, opt);
  int status;
  if (!batch_path.empty()) {
    std::ifstream in(batch_path);
    if (!in) {
      std::cerr << "error: cannot read batch file '" << batch_path << "'\n";
      return 1;
    }
    status = run_stream(in, interp, true, false);
  } else {
    status = run_stream(std::cin, interp, false, isatty(STDIN_FILENO));
  }

  if (!session_path.empty() && status != 2) {
    try {
      session.save(session_path);
    } catch (const Error &e) {
      std::cerr << "error: " << error_kind_name(e.kind()) << ": " << e.what() << "\n";
      return 1;
    }
  }
  return status;
}
