#pragma once

// Length-layer engine behind the counting, ranking and unranking code.

#include <cstddef>
#include <vector>

#include "subuniv/automaton.hpp"
#include "subuniv/limits.hpp"
#include "subuniv/natural.hpp"

namespace subuniv::detail {

/// Arch count (capped at k) and rest alphabet of a label.
struct ArchState {
  std::size_t arches = 0;
  SymbolSet rest;
};

ArchState arch_state(std::span<const Symbol> w, std::size_t sigma, std::size_t k);

/// One length layer. `partial` holds T cells at (q * k + c) * 2^sigma + R;
/// `universal` holds U; `perfect[q]` counts the paths whose k-th arch was
/// completed by the last symbol.
struct Layer {
  std::vector<Natural> partial;
  std::vector<Natural> universal;
  std::vector<Natural> perfect;
};

class LayerEngine {
 public:
  /// k = 0 is allowed: there are no partial cells and U counts every path.
  LayerEngine(const Automaton& a, std::size_t k);

  Layer empty_layer() const;
  void clear(Layer& layer) const;

  /// next = one step of the recurrence applied to prev. Partial cells with
  /// more than `arch_bound` arches are skipped and must already be zero in
  /// both layers.
  void step(const Layer& prev, Layer& next, std::size_t arch_bound) const;

  /// Adds `paths` labels ending in q with the given arch state.
  void add(Layer& layer, State q, ArchState st, const Natural& paths) const;

  std::size_t cell(State q, std::size_t c, SymbolSet rest) const {
    return (static_cast<std::size_t>(q) * k_ + c) * subsets_ + rest.bits();
  }
  std::size_t partial_cells() const noexcept { return n_ * k_ * subsets_; }
  std::size_t k() const noexcept { return k_; }

  /// Sum over final states of U (or of the perfect completions).
  Natural accepted(const Layer& layer, bool perfect) const;

 private:
  const Automaton& automaton_;
  ReverseTransitions reverse_;
  std::size_t n_;
  std::size_t sigma_;
  std::size_t k_;
  std::size_t subsets_;
  SymbolSet full_;
};

/// Rough heap footprint of one layer whose entries have up to `bits` bits.
std::size_t layer_bytes(std::size_t cells, std::size_t bits);

/// Upper bound on the bit size of counts of paths of length `length`.
std::size_t count_bits(const Automaton& a, std::size_t length);

/// Throws LimitError when `bytes` exceeds the budget.
void check_budget(std::size_t bytes, const Limits& limits, const char* what);

/// Number of paths from the initial state to each state labelled w.
std::vector<Natural> paths_labelled(const Automaton& a, std::span<const Symbol> w);

}  // namespace subuniv::detail
