#pragma once

// Brute-force reference implementations, used to cross-check the table
// algorithms on small instances.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "subuniv/automaton.hpp"
#include "subuniv/natural.hpp"

namespace subuniv::oracle {

/// Every word of length k over the alphabet is a subsequence of w. Throws
/// LimitError when sigma^k exceeds the budget.
bool naive_universality(std::span<const Symbol> w, const Alphabet& alphabet, std::size_t k,
                        std::size_t budget = 1'000'000);

/// Largest k for which naive_universality holds.
std::size_t naive_iota(std::span<const Symbol> w, const Alphabet& alphabet);

struct AcceptedWord {
  Word word;
  std::size_t iota;
  /// Number of accepting paths labelled `word`.
  Natural paths;
};

/// All accepted words of length at most max_len, sorted lexicographically.
/// Throws LimitError when more than `budget` prefixes would be explored.
std::vector<AcceptedWord> enumerate_accepted(const Automaton& a, std::size_t max_len,
                                             std::size_t budget = 1'000'000);

struct OracleCounts {
  /// Indexed by length 0..m.
  std::vector<Natural> words;
  std::vector<Natural> paths;
  std::vector<Natural> perfect_words;
  std::vector<Natural> perfect_paths;
  /// Accepted words with at least k arches and length at most m, sorted.
  std::vector<Word> members;
};

OracleCounts oracle_count_rank(const Automaton& a, std::size_t k, std::size_t m);

/// Accepted word of length in [min_len, max_len] with at least k arches,
/// found by a layered reachability search over (state, arches, rest).
bool exists_universal_word(const Automaton& a, std::size_t k, std::size_t min_len, std::size_t max_len);

/// Least arch count over accepted words of length at most max_len, or -1
/// when there are none.
long min_iota_upto(const Automaton& a, std::size_t max_len);

/// Number of paths of each length 0..max_len from the initial state to each state.
std::vector<std::vector<Natural>> path_counts(const Automaton& a, std::size_t max_len);

struct RandomAutomaton {
  Automaton automaton;
  /// The retry cap was hit and `automaton` is the empty language.
  bool exhausted = false;
};

/// Each possible transition is present with probability `density`; state 0
/// is initial and a random nonempty set of states is final. The result is
/// trimmed, and drawing repeats until the language is nonempty.
RandomAutomaton random_automaton(std::size_t n, std::size_t sigma, double density, std::uint64_t seed);

/// Like random_automaton, but each (state, symbol) pair gets at most one
/// target.
RandomAutomaton random_dfa(std::size_t n, std::size_t sigma, double density, std::uint64_t seed);

/// Alphabet a, b, c, ... of the given size.
Alphabet letters(std::size_t sigma);

}  // namespace subuniv::oracle
