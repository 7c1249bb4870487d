#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rholog/engine.hpp"
#include "rholog/syntax.hpp"

namespace support {

using namespace rholog;

inline std::string corpus(const std::string& rel) { return std::string(RHOLOG_CORPUS_DIR) + "/" + rel; }

inline std::string read_file(const std::string& path) {
  std::ifstream f(path);
  std::stringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

inline Program load(const std::vector<std::string>& files, ProgramOptions options = {}) {
  Program p(options);
  for (const auto& f : files) p.consult(parse_program(read_file(corpus(f)), p.ops()));
  return p;
}

inline Program program_from(const std::string& text, ProgramOptions options = {}) {
  Program p(options);
  p.consult(parse_program(text, p.ops()));
  return p;
}

// Printed value of `var` in each answer, in order.
inline std::vector<std::string> values(const Program& p, const std::string& query, const std::string& var,
                                       std::size_t limit = 1000) {
  std::vector<std::string> out;
  for (const auto& a : solve_all(p, parse_query(query, p.ops()), {}, limit)) {
    std::string v = "<unbound>";
    for (const auto& [name, b] : a.bindings)
      if (print_var(name) == var) v = print(b, p.ops());
    out.push_back(v);
  }
  return out;
}

// Each answer as "V1 = x; V2 = y" (or "true").
inline std::vector<std::string> answers(const Program& p, const std::string& query, std::size_t limit = 1000) {
  std::vector<std::string> out;
  for (const auto& a : solve_all(p, parse_query(query, p.ops()), {}, limit)) {
    std::string s;
    for (const auto& [v, b] : a.bindings) s += (s.empty() ? "" : "; ") + print_var(v) + " = " + print(b, p.ops());
    out.push_back(s.empty() ? "true" : s);
  }
  return out;
}

}  // namespace support
