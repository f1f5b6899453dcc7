#pragma once

// Pieces of the maximum-universality computation shared by the decider and
// the witness construction.

#include <optional>
#include <vector>

#include "subuniv/deciders.hpp"

namespace subuniv::detail {

/// Breadth-first search over (state, label set) pairs from (source, {}).
/// Returns the loop alphabet of `source`; when `loop_word` is given it
/// receives a closed walk at `source` whose label set is exactly that
/// alphabet (the whole alphabet when a universal loop exists).
LoopAlphabet search_loop(const Automaton& a, State source, Word* loop_word);

/// Max-arch matrix over (state, rest alphabet) after `iterations` rounds of
/// extension by one symbol followed by two passes of the target's loop.
/// Entries are -1 when unreachable. With `history`, back pointers for every
/// round are retained so an optimal walk can be replayed.
class ExtensionTable {
 public:
  struct Step {
    Symbol symbol;
    State state;
  };

  ExtensionTable(const Automaton& a, const std::vector<LoopAlphabet>& loops, bool history);

  /// Best arch count over final states, or nullopt if no final is reached.
  std::optional<int> best_final() const;

  /// Symbols and states read after the initial loop along an optimal walk to
  /// a final state. Requires history.
  std::vector<Step> best_walk() const;

 private:
  std::size_t index(State q, SymbolSet v) const { return static_cast<std::size_t>(q) * subsets_ + v.bits(); }

  const Automaton& automaton_;
  std::size_t subsets_;
  std::vector<int> current_;
  // back_[t][cell] encodes the predecessor cell and symbol of the value set
  // in round t, or all ones when the entry was carried over.
  std::vector<std::vector<std::uint64_t>> back_;
};

/// A shortest walk from `from` to any state in `to`, or nullopt if unreachable.
std::optional<std::vector<ExtensionTable::Step>> shortest_walk(const Automaton& a, State from,
                                                               const std::vector<bool>& to);

/// Shortens an accepted word with at least k arches (k >= 1): each gap
/// between first occurrences inside the first k arches, and the tail after
/// the k-th arch, is replaced by a shortest walk between the same states.
Word shorten_witness(const Automaton& a, const Word& word, std::size_t k);

}  // namespace subuniv::detail
