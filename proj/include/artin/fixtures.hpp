#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "artin/defining_graph.hpp"

namespace artin::fixtures {

/// One edge s - t labelled m.
inline DefiningGraph edge(int m = 3) { return parse_graph("gens s t; edge s t " + std::to_string(m)); }

/// r, s, t, u with m_rs = 3, m_rt = 2, m_st = 3, m_tu = 3 and r-u, s-u
/// unjoined. {r,s,t} is of type A3 and {t,u} of type A2.
inline DefiningGraph figure_one() {
  return parse_graph(
      "gens r s t u\n"
      "edge r s 3\n"
      "edge r t 2\n"
      "edge s t 3\n"
      "edge t u 3\n");
}

/// Triangle with all labels 3: every pair is finite type, the triple is not.
inline DefiningGraph triangle() { return parse_graph("gens s t u; edge s t 3; edge s u 3; edge t u 3"); }

/// s - t labelled m, u commuting with both (A2 x A1 for m = 3).
inline DefiningGraph example_six_four(int m = 3) {
  return parse_graph("gens s t u; edge s t " + std::to_string(m) + "; edge s u 2; edge t u 2");
}

/// Two generators, no edge.
inline DefiningGraph discrete(std::size_t n = 2) {
  std::string text = "gens";
  for (std::size_t i = 0; i < n; ++i) text += " x" + std::to_string(i + 1);
  if (n == 2) text = "gens s t";
  return parse_graph(text);
}

inline std::vector<std::pair<std::string, DefiningGraph>> all() {
  return {{"edge", edge()},
          {"figure1", figure_one()},
          {"triangle", triangle()},
          {"example64", example_six_four()},
          {"discrete", discrete()}};
}

inline DefiningGraph by_name(std::string_view name) {
  for (auto& [n, g] : all())
    if (n == name) return g;
  throw DomainError("unknown fixture '" + std::string(name) + "'");
}

}  // namespace artin::fixtures
