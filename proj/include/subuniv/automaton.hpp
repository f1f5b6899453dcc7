#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "subuniv/alphabet.hpp"

namespace subuniv {

using State = std::uint32_t;

struct Transition {
  State source;
  Symbol symbol;
  State target;

  friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// Finite automaton with one initial state and no epsilon transitions.
/// Missing transitions mean rejection, so partial DFAs are allowed. Values
/// are immutable once constructed.
class Automaton {
 public:
  /// Validates every state id and symbol; duplicate transitions collapse.
  /// Throws AutomatonError on invalid input.
  Automaton(Alphabet alphabet, std::vector<std::string> state_names, State initial,
            std::vector<State> finals, std::vector<Transition> transitions);

  /// Single non-final initial state without transitions: the empty language.
  static Automaton empty_language(Alphabet alphabet, std::string state_name = "q0");

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t sigma() const noexcept { return alphabet_.size(); }
  std::size_t num_states() const noexcept { return state_names_.size(); }
  const std::string& state_name(State q) const { return state_names_.at(q); }
  const std::vector<std::string>& state_names() const noexcept { return state_names_; }

  State initial() const noexcept { return initial_; }
  bool is_final(State q) const { return finals_.at(q); }
  std::vector<State> finals() const;

  /// Sorted, duplicate-free successor list of (q, x).
  std::span<const State> successors(State q, Symbol x) const {
    return delta_[static_cast<std::size_t>(q) * sigma() + x];
  }

  /// All transitions sorted by (source, symbol, target).
  std::vector<Transition> transitions() const;
  std::size_t num_transitions() const noexcept { return num_transitions_; }

  /// Every (state, symbol) pair has at most one successor.
  bool deterministic() const noexcept { return deterministic_; }

  friend bool operator==(const Automaton& lhs, const Automaton& rhs);

 private:
  Alphabet alphabet_;
  std::vector<std::string> state_names_;
  State initial_;
  std::vector<bool> finals_;
  std::vector<std::vector<State>> delta_;
  std::size_t num_transitions_ = 0;
  bool deterministic_ = true;
};

/// A walk through an automaton: states[i + 1] is a successor of states[i] on labels[i].
struct Path {
  std::vector<State> states;
  Word labels;
};

/// Whether `path` is a well-formed path of `a` (not necessarily starting at the initial state).
bool is_path(const Automaton& a, const Path& path);

/// Predecessor relation: q' is in predecessors(q, x) iff q is a successor of (q', x).
class ReverseTransitions {
 public:
  explicit ReverseTransitions(const Automaton& a);

  std::span<const State> predecessors(State q, Symbol x) const {
    return delta_[static_cast<std::size_t>(q) * sigma_ + x];
  }
  std::size_t num_states() const noexcept { return num_states_; }
  std::size_t sigma() const noexcept { return sigma_; }

 private:
  std::size_t num_states_;
  std::size_t sigma_;
  std::vector<std::vector<State>> delta_;
};

ReverseTransitions reverse_transitions(const Automaton& a);

/// Parses the line-oriented automaton format. Throws ParseError.
Automaton parse_automaton(std::string_view text);

/// Canonical text form: keys in fixed order, transitions sorted.
std::string serialize(const Automaton& a);

/// Restricts to states that are reachable and co-reachable. When the initial
/// state does not survive, the result is Automaton::empty_language().
Automaton trim(const Automaton& a);

/// Subset simulation. Throws AlphabetError for out-of-range symbols.
bool accepts(const Automaton& a, std::span<const Symbol> word);

struct DeterminizeOptions {
  /// Hard cap on the number of subset states.
  std::size_t state_budget = std::size_t{1} << 20;
  /// Reported through `warn` once the construction grows past this size.
  std::size_t warn_threshold = std::size_t{1} << 16;
  std::function<void(const std::string&)> warn;
};

/// Subset construction restricted to reachable, nonempty subsets. Throws
/// LimitError once the state budget is exceeded.
Automaton determinize(const Automaton& a, const DeterminizeOptions& options = {});

}  // namespace subuniv
