#include "subuniv/automaton.hpp"

#include <algorithm>
#include <unordered_set>

#include "subuniv/error.hpp"

namespace subuniv {

Automaton::Automaton(Alphabet alphabet, std::vector<std::string> state_names, State initial,
                     std::vector<State> finals, std::vector<Transition> transitions)
    : alphabet_(std::move(alphabet)), state_names_(std::move(state_names)), initial_(initial) {
  const std::size_t n = state_names_.size();
  if (n == 0) throw AutomatonError("automaton has no states");
  if (initial_ >= n) throw AutomatonError("initial state id out of range");

  std::unordered_set<std::string> seen;
  for (const std::string& name : state_names_) {
    if (name.empty()) throw AutomatonError("empty state name");
    if (!seen.insert(name).second) throw AutomatonError("duplicate state '" + name + "'");
  }

  finals_.assign(n, false);
  for (State q : finals) {
    if (q >= n) throw AutomatonError("final state id out of range");
    finals_[q] = true;
  }

  delta_.resize(n * sigma());
  for (const Transition& t : transitions) {
    if (t.source >= n || t.target >= n) throw AutomatonError("transition endpoint out of range");
    if (t.symbol >= sigma()) throw AutomatonError("transition label outside the alphabet");
    delta_[static_cast<std::size_t>(t.source) * sigma() + t.symbol].push_back(t.target);
  }
  for (auto& targets : delta_) {
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    num_transitions_ += targets.size();
    if (targets.size() > 1) deterministic_ = false;
  }
}

Automaton Automaton::empty_language(Alphabet alphabet, std::string state_name) {
  return Automaton(std::move(alphabet), {std::move(state_name)}, 0, {}, {});
}

std::vector<State> Automaton::finals() const {
  std::vector<State> out;
  for (State q = 0; q < num_states(); ++q) {
    if (finals_[q]) out.push_back(q);
  }
  return out;
}

std::vector<Transition> Automaton::transitions() const {
  std::vector<Transition> out;
  out.reserve(num_transitions_);
  for (State q = 0; q < num_states(); ++q) {
    for (Symbol x = 0; x < sigma(); ++x) {
      for (State r : successors(q, x)) out.push_back({q, x, r});
    }
  }
  return out;
}

bool operator==(const Automaton& lhs, const Automaton& rhs) {
  return lhs.alphabet_ == rhs.alphabet_ && lhs.state_names_ == rhs.state_names_ &&
         lhs.initial_ == rhs.initial_ && lhs.finals_ == rhs.finals_ && lhs.delta_ == rhs.delta_;
}

bool is_path(const Automaton& a, const Path& path) {
  if (path.states.size() != path.labels.size() + 1) return false;
  for (State q : path.states) {
    if (q >= a.num_states()) return false;
  }
  for (std::size_t i = 0; i < path.labels.size(); ++i) {
    if (path.labels[i] >= a.sigma()) return false;
    auto next = a.successors(path.states[i], path.labels[i]);
    if (!std::binary_search(next.begin(), next.end(), path.states[i + 1])) return false;
  }
  return true;
}

ReverseTransitions::ReverseTransitions(const Automaton& a)
    : num_states_(a.num_states()), sigma_(a.sigma()), delta_(a.num_states() * a.sigma()) {
  // transitions() is sorted by source, so every predecessor list comes out sorted.
  for (const Transition& t : a.transitions()) {
    delta_[static_cast<std::size_t>(t.target) * sigma_ + t.symbol].push_back(t.source);
  }
}

ReverseTransitions reverse_transitions(const Automaton& a) { return ReverseTransitions(a); }

Automaton trim(const Automaton& a) {
  const std::size_t n = a.num_states();
  std::vector<bool> reachable(n, false);
  std::vector<State> stack{a.initial()};
  reachable[a.initial()] = true;
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (Symbol x = 0; x < a.sigma(); ++x) {
      for (State r : a.successors(q, x)) {
        if (!reachable[r]) {
          reachable[r] = true;
          stack.push_back(r);
        }
      }
    }
  }

  const ReverseTransitions reverse(a);
  std::vector<bool> coreachable(n, false);
  for (State q : a.finals()) {
    coreachable[q] = true;
    stack.push_back(q);
  }
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (Symbol x = 0; x < a.sigma(); ++x) {
      for (State p : reverse.predecessors(q, x)) {
        if (!coreachable[p]) {
          coreachable[p] = true;
          stack.push_back(p);
        }
      }
    }
  }

  if (!reachable[a.initial()] || !coreachable[a.initial()]) {
    return Automaton::empty_language(a.alphabet(), a.state_name(a.initial()));
  }

  constexpr State removed = ~State{0};
  std::vector<State> renumber(n, removed);
  std::vector<std::string> names;
  for (State q = 0; q < n; ++q) {
    if (reachable[q] && coreachable[q]) {
      renumber[q] = static_cast<State>(names.size());
      names.push_back(a.state_name(q));
    }
  }
  std::vector<State> finals;
  for (State q : a.finals()) {
    if (renumber[q] != removed) finals.push_back(renumber[q]);
  }
  std::vector<Transition> transitions;
  for (const Transition& t : a.transitions()) {
    if (renumber[t.source] != removed && renumber[t.target] != removed) {
      transitions.push_back({renumber[t.source], t.symbol, renumber[t.target]});
    }
  }
  return Automaton(a.alphabet(), std::move(names), renumber[a.initial()], std::move(finals),
                   std::move(transitions));
}

bool accepts(const Automaton& a, std::span<const Symbol> word) {
  a.alphabet().check(word);
  std::vector<bool> current(a.num_states(), false);
  current[a.initial()] = true;
  for (Symbol x : word) {
    std::vector<bool> next(a.num_states(), false);
    bool any = false;
    for (State q = 0; q < a.num_states(); ++q) {
      if (!current[q]) continue;
      for (State r : a.successors(q, x)) {
        next[r] = true;
        any = true;
      }
    }
    if (!any) return false;
    current = std::move(next);
  }
  for (State q = 0; q < a.num_states(); ++q) {
    if (current[q] && a.is_final(q)) return true;
  }
  return false;
}

}  // namespace subuniv
