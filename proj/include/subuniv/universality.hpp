#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "subuniv/alphabet.hpp"
#include "subuniv/natural.hpp"

namespace subuniv {

/// Greedy split of a word into arches (factors containing every symbol whose
/// last symbol occurs nowhere else in the factor) followed by a rest that
/// misses at least one symbol.
struct ArchFactorization {
  std::vector<Word> arches;
  Word rest;
  /// Distinct symbols of `rest`, ascending.
  std::vector<Symbol> rest_alphabet;

  /// Number of arches; equals the universality index of the word.
  std::size_t index() const noexcept { return arches.size(); }
};

/// Linear scan with an O(sigma) seen-set. Throws AlphabetError for symbols
/// outside the alphabet.
ArchFactorization arch_factorize(std::span<const Symbol> word, const Alphabet& alphabet);

/// Universality index: the largest k such that every word of length k over
/// the alphabet is a subsequence of `word`.
std::size_t iota(std::span<const Symbol> word, const Alphabet& alphabet);

/// Exactly k arches and an empty rest.
bool is_perfect_k_universal(std::span<const Symbol> word, const Alphabet& alphabet,
                            const Natural& k);

}  // namespace subuniv
