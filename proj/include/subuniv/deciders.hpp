#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "subuniv/automaton.hpp"
#include "subuniv/limits.hpp"
#include "subuniv/natural.hpp"

namespace subuniv {

/// For each symbol a, the pairs (p, q) joined by a path whose only
/// a-labelled transition is the last one.
class ArchStepRelation {
 public:
  explicit ArchStepRelation(const Automaton& a);

  bool contains(Symbol a, State from, State to) const {
    return relation_[(static_cast<std::size_t>(a) * n_ + from) * n_ + to];
  }
  /// Membership in the union over all symbols.
  bool contains(State from, State to) const { return any_[static_cast<std::size_t>(from) * n_ + to]; }
  std::size_t num_states() const noexcept { return n_; }

 private:
  std::size_t n_;
  std::vector<bool> relation_;
  std::vector<bool> any_;
};

/// Graph on the states with an edge p -> q for every (p, q) in the arch-step
/// relation, together with the states that reach a final state by a path
/// missing at least one symbol.
struct ArchGraph {
  std::vector<std::vector<State>> successors;
  std::vector<bool> targets;
};

ArchGraph arch_graph(const Automaton& a);

/// Smallest universality index over the accepted words, or nullopt for the
/// empty language. Works for any alphabet size.
std::optional<std::size_t> min_universality_index(const Automaton& a);

/// Every accepted word is k-universal. Vacuously true for the empty language.
bool decide_asu(const Automaton& a, const Natural& k);

/// Union of the labels of all closed walks at a state. `full` is set when
/// some closed walk reads every symbol; `symbols` is then the whole alphabet.
struct LoopAlphabet {
  bool full = false;
  SymbolSet symbols;
};

/// One breadth-first search over (state, label set) pairs per state.
std::vector<LoopAlphabet> loop_alphabets(const Automaton& a, const Limits& limits = {});

class MaxUniversality {
 public:
  enum class Kind { EmptyLanguage, Finite, Unbounded };

  static MaxUniversality empty_language() { return MaxUniversality(Kind::EmptyLanguage, 0); }
  static MaxUniversality finite(std::size_t value) { return MaxUniversality(Kind::Finite, value); }
  static MaxUniversality unbounded() { return MaxUniversality(Kind::Unbounded, 0); }

  Kind kind() const noexcept { return kind_; }
  /// Only meaningful for Kind::Finite.
  std::size_t value() const noexcept { return value_; }

  friend bool operator==(const MaxUniversality&, const MaxUniversality&) = default;

 private:
  MaxUniversality(Kind kind, std::size_t value) : kind_(kind), value_(value) {}
  Kind kind_;
  std::size_t value_;
};

/// Largest universality index over the accepted words. Unbounded exactly
/// when a useful state carries a closed walk reading every symbol.
MaxUniversality max_universality_index(const Automaton& a, const Limits& limits = {});

/// Some accepted word is k-universal. False for the empty language, for every k.
bool decide_esu(const Automaton& a, const Natural& k, const Limits& limits = {});

/// An accepted word with universality index at least k, or nullopt when none
/// exists. When the maximum index is finite the word has length at most
/// k*n*sigma - (n - 1)(k - 1), with n the number of useful states. For
/// k = 0 a shortest accepted word is returned.
std::optional<Word> witness_k_universal(const Automaton& a, const Natural& k,
                                        const Limits& limits = {});

}  // namespace subuniv
