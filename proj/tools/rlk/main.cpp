#include <cstdio>
#include <iostream>

#include <fmt/format.h>

#include "commands.hpp"
#include "rlk/error.hpp"

namespace rlk::cli {

void
emit_text(const GlobalOptions& global, const std::string& suffix, const std::string& text) {
  if (global.out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  write_text_file(global.out + suffix, text);
}

} // namespace rlk::cli

int
main(int argc, char** argv) {
  using namespace rlk;
  cli::GlobalOptions global;

  CLI::App app{"R-linear Krylov solvers, con-eigen decompositions and bound computations"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();
  app.add_option("--precision", global.precision, "Working precision of the solvers")
      ->check(CLI::IsMember({"double", "dd"}));
  app.add_option("--seed", global.seed, "Seed for every random choice");
  app.add_option("--out", global.out, "Output file or file prefix (default: standard output)");

  cli::register_problem_commands(app, global);
  cli::register_study_commands(app, global);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const cli::UsageError& e) {
    fmt::print(stderr, "rlk: {}\n", e.what());
    return 2;
  } catch (const NumericalError& e) {
    fmt::print(stderr, "rlk: numerical failure: {}\n", e.what());
    return 3;
  } catch (const Error& e) {
    fmt::print(stderr, "rlk: {}\n", e.what());
    return 2;
  }
  return 0;
}
