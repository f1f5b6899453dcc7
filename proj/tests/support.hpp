#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "subuniv/automaton.hpp"
#include "subuniv/oracle.hpp"

namespace test {

inline subuniv::Automaton load(const std::string& name) {
  std::ifstream in(std::string(SUBUNIV_TEST_DATA) + "/" + name);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return subuniv::parse_automaton(buffer.str());
}

inline std::string data_path(const std::string& name) { return std::string(SUBUNIV_TEST_DATA) + "/" + name; }

inline subuniv::Word word(const subuniv::Alphabet& sigma, const std::string& text) { return sigma.parse_word(text); }

/// Every word of length at most max_len over sigma symbols, in length-then-lex order.
inline std::vector<subuniv::Word> all_words(std::size_t sigma, std::size_t max_len) {
  std::vector<subuniv::Word> out{{}};
  for (std::size_t begin = 0; begin < out.size(); ++begin) {
    if (out[begin].size() == max_len) continue;
    for (subuniv::Symbol x = 0; x < sigma; ++x) {
      subuniv::Word w = out[begin];
      w.push_back(x);
      out.push_back(std::move(w));
    }
  }
  return out;
}

}  // namespace test
