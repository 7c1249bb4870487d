#include "rholog/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace rholog {

std::string format_answer(const Answer& a, const OpTable& ops) {
  if (a.bindings.empty()) return "true.\n";
  std::string out;
  for (const auto& [v, b] : a.bindings) out += print_var(v) + " = " + print(b, ops) + "\n";
  return out;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string where(const std::string& source, const SyntaxError& e) {
  return source + ":" + std::to_string(e.pos.line) + ":" + std::to_string(e.pos.column) + ": " + e.message;
}

// Reads, parses and consults one file. Reports problems to `err`.
bool load(Program& program, const std::string& path, std::ostream& err) {
  std::ifstream f(path);
  if (!f) {
    err << "error: cannot open " << path << '\n';
    return false;
  }
  std::stringstream buf;
  buf << f.rdbuf();
  try {
    SourceProgram src = parse_program(buf.str(), program.ops());
    for (const auto& v : program.consult(src)) err << "warning: " << path << ": " << describe(v) << '\n';
    return true;
  } catch (const SyntaxError& e) {
    err << "error: " << where(path, e) << '\n';
  } catch (const ConsultError& e) {
    for (const auto& p : e.problems) err << "error: " << path << ": " << p << '\n';
  } catch (const std::invalid_argument& e) {
    err << "error: " << path << ": " << e.what() << '\n';
  }
  return false;
}

std::optional<Query> read_query(const Program& program, const std::string& text, bool lenient, std::ostream& err) {
  Query q;
  try {
    q = parse_query(text, program.ops());
  } catch (const SyntaxError& e) {
    err << "error: " << where("query", e) << '\n';
    return std::nullopt;
  }
  const auto violations = check_query(q, program.modes());
  for (const auto& v : violations) err << (lenient ? "warning: " : "error: ") << describe(v) << '\n';
  if (!violations.empty() && !lenient) return std::nullopt;
  return q;
}

SolveOptions solve_options(const SessionConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
  SolveOptions o;
  o.out = &out;
  o.diagnostics = &err;
  if (config.trace) o.trace = &err;
  o.depth_limit = config.depth_limit;
  o.interaction = {&in, &out};
  return o;
}

}  // namespace

int run_batch(const SessionConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
  Program program({.strict = !config.lenient && !config.check, .native_rewrite = config.native_rewrite});
  for (const auto& f : config.files)
    if (!load(program, f, err)) return kExitError;

  if (config.check) {
    bool ok = true;
    std::vector<SourceProgram> sources;
    for (const auto& f : config.files) {
      std::ifstream file(f);
      std::stringstream buf;
      buf << file.rdbuf();
      sources.push_back(parse_program(buf.str(), sources.empty() ? OpTable::standard() : sources.back().ops));
    }
    std::vector<const SourceProgram*> ptrs;
    for (const auto& s : sources) ptrs.push_back(&s);
    for (const auto& v : program_check(ptrs)) {
      out << describe(v) << '\n';
      ok = false;
    }
    if (config.query) {
      try {
        for (const auto& v : check_query(parse_query(*config.query, program.ops()), program.modes())) {
          out << describe(v) << '\n';
          ok = false;
        }
      } catch (const SyntaxError& e) {
        err << "error: " << where("query", e) << '\n';
        return kExitError;
      }
    }
    if (!ok) return kExitError;
    out << "ok\n";
    return kExitAnswers;
  }

  if (!config.query) {
    err << "error: no query given\n";
    return kExitError;
  }
  auto q = read_query(program, *config.query, config.lenient, err);
  if (!q) return kExitError;

  std::size_t limit = 1;
  if (config.all) limit = SIZE_MAX;
  if (config.max_answers) limit = *config.max_answers;

  Solver solver(program, *q, solve_options(config, in, out, err));
  std::size_t count = 0;
  try {
    while (count < limit) {
      auto a = solver.next();
      if (!a) break;
      if (count) out << '\n';
      out << format_answer(*a, program.ops()) << std::flush;
      ++count;
    }
  } catch (const DepthLimitExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  if (count == 0) {
    out << "false.\n";
    return kExitNoAnswers;
  }
  return kExitAnswers;
}

int repl(const SessionConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
  Program program({.strict = !config.lenient, .native_rewrite = config.native_rewrite});
  for (const auto& f : config.files) load(program, f, err);

  std::string text;
  std::string line;
  while (true) {
    out << (text.empty() ? "?- " : "|  ") << std::flush;
    if (!std::getline(in, line)) break;
    text += line + "\n";
    const std::string t = trim(text);
    if (t.empty()) {
      text.clear();
      continue;
    }
    if (t.back() != '.') continue;
    text.clear();

    if (t == "halt.") break;
    if (t.starts_with("consult(") && t.ends_with(").")) {
      std::string file = trim(t.substr(8, t.size() - 10));
      if (file.size() >= 2 && file.front() == '\'' && file.back() == '\'') file = file.substr(1, file.size() - 2);
      if (load(program, file, err)) out << "consulted " << file << '\n';
      continue;
    }

    auto q = read_query(program, t, config.lenient, err);
    if (!q) continue;
    Solver solver(program, *q, solve_options(config, in, out, err));
    try {
      while (true) {
        auto a = solver.next();
        if (!a) {
          out << "false.\n";
          break;
        }
        out << format_answer(*a, program.ops());
        out << "more? " << std::flush;
        std::string reply;
        if (!std::getline(in, reply) || trim(reply) != ";") break;
      }
    } catch (const DepthLimitExceeded& e) {
      err << "error: " << e.what() << '\n';
    }
  }
  out << '\n';
  return kExitAnswers;
}

}  // namespace rholog
