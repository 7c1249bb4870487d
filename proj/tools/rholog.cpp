#include <iostream>

#include "CLI11.hpp"
#include "rholog/cli.hpp"

int main(int argc, char** argv) {
  rholog::SessionConfig config;
  CLI::App app{"Interpreter for strategic hedge transformations"};
  app.add_option("--consult", config.files, "Program file to load (repeatable)")->check(CLI::ExistingFile);
  std::string query;
  auto* q = app.add_option("--query", query, "Query to run; omit for the interactive prompt");
  app.add_flag("--all", config.all, "Print every answer");
  std::size_t max_answers = 0;
  auto* m = app.add_option("--max-answers", max_answers, "Print at most N answers")->check(CLI::PositiveNumber);
  app.add_flag("--check", config.check, "Check well-modedness only");
  app.add_flag("--lenient", config.lenient, "Report mode violations as warnings");
  app.add_flag("--trace", config.trace, "Print a derivation trace to standard error");
  std::size_t depth = 0;
  auto* d = app.add_option("--depth-limit", depth, "Abort derivations deeper than N");
  bool prelude_rewrite = false;
  app.add_flag("--clause-rewrite", prelude_rewrite, "Resolve rewrite through program clauses");
  app.allow_extras(false);
  CLI11_PARSE(app, argc, argv);

  if (*q) config.query = query;
  if (*m) config.max_answers = max_answers;
  if (*d) config.depth_limit = depth;
  config.native_rewrite = !prelude_rewrite;

  if (config.query || config.check) return rholog::run_batch(config, std::cin, std::cout, std::cerr);
  return rholog::repl(config, std::cin, std::cout, std::cerr);
}
