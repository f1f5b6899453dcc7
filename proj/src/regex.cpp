#include "subuniv/regex.hpp"

#include <cctype>
#include <optional>

#include "subuniv/error.hpp"

namespace subuniv {

namespace {

// Thompson-style automaton with epsilon moves; only lives inside compile_regex.
struct EpsilonNfa {
  std::vector<std::vector<std::pair<Symbol, State>>> moves;
  std::vector<std::vector<State>> epsilon;

  State add_state() {
    moves.emplace_back();
    epsilon.emplace_back();
    return static_cast<State>(moves.size() - 1);
  }
};

struct Fragment {
  State start;
  State accept;
};

class RegexParser {
 public:
  RegexParser(std::string_view pattern, const Alphabet& alphabet)
      : pattern_(pattern), alphabet_(alphabet) {}

  Fragment parse(EpsilonNfa& nfa) {
    nfa_ = &nfa;
    Fragment whole = parse_union();
    skip_space();
    if (pos_ < pattern_.size()) error("unexpected '" + std::string(1, pattern_[pos_]) + "'");
    return whole;
  }

 private:
  [[noreturn]] void error(const std::string& message) const {
    throw ParseError(1, pos_ + 1, message);
  }

  void skip_space() {
    while (pos_ < pattern_.size() && std::isspace(static_cast<unsigned char>(pattern_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < pattern_.size() && pattern_[pos_] == c;
  }

  Fragment epsilon_fragment() {
    State s = nfa_->add_state();
    State t = nfa_->add_state();
    nfa_->epsilon[s].push_back(t);
    return {s, t};
  }

  Fragment parse_union() {
    Fragment left = parse_concat();
    while (peek('|')) {
      ++pos_;
      Fragment right = parse_concat();
      State s = nfa_->add_state();
      State t = nfa_->add_state();
      nfa_->epsilon[s] = {left.start, right.start};
      nfa_->epsilon[left.accept].push_back(t);
      nfa_->epsilon[right.accept].push_back(t);
      left = {s, t};
    }
    return left;
  }

  Fragment parse_concat() {
    std::optional<Fragment> result;
    while (true) {
      skip_space();
      if (pos_ == pattern_.size() || pattern_[pos_] == '|' || pattern_[pos_] == ')') break;
      Fragment next = parse_star();
      if (result) {
        nfa_->epsilon[result->accept].push_back(next.start);
        result->accept = next.accept;
      } else {
        result = next;
      }
    }
    return result ? *result : epsilon_fragment();
  }

  Fragment parse_star() {
    Fragment inner = parse_atom();
    while (peek('*')) {
      ++pos_;
      State s = nfa_->add_state();
      State t = nfa_->add_state();
      nfa_->epsilon[s] = {inner.start, t};
      nfa_->epsilon[inner.accept].push_back(inner.start);
      nfa_->epsilon[inner.accept].push_back(t);
      inner = {s, t};
    }
    return inner;
  }

  Fragment parse_atom() {
    skip_space();
    const char c = pattern_[pos_];
    if (c == '(') {
      ++pos_;
      Fragment inner = parse_union();
      if (!peek(')')) error("missing ')'");
      ++pos_;
      return inner;
    }
    if (c == '*') error("'*' has no operand");
    auto symbol = alphabet_.find(std::string_view(&pattern_[pos_], 1));
    if (!symbol) error("literal '" + std::string(1, c) + "' is not in the alphabet");
    ++pos_;
    State s = nfa_->add_state();
    State t = nfa_->add_state();
    nfa_->moves[s].push_back({*symbol, t});
    return {s, t};
  }

  std::string_view pattern_;
  const Alphabet& alphabet_;
  EpsilonNfa* nfa_ = nullptr;
  std::size_t pos_ = 0;
};

}  // namespace

Automaton compile_regex(std::string_view pattern, const Alphabet& alphabet) {
  EpsilonNfa nfa;
  const Fragment whole = RegexParser(pattern, alphabet).parse(nfa);
  const std::size_t n = nfa.moves.size();

  std::vector<std::vector<State>> closure(n);
  for (State q = 0; q < n; ++q) {
    std::vector<bool> seen(n, false);
    std::vector<State> stack{q};
    seen[q] = true;
    while (!stack.empty()) {
      State p = stack.back();
      stack.pop_back();
      closure[q].push_back(p);
      for (State r : nfa.epsilon[p]) {
        if (!seen[r]) {
          seen[r] = true;
          stack.push_back(r);
        }
      }
    }
  }

  std::vector<Transition> transitions;
  std::vector<State> finals;
  for (State q = 0; q < n; ++q) {
    for (State p : closure[q]) {
      if (p == whole.accept) finals.push_back(q);
      for (auto [x, r] : nfa.moves[p]) transitions.push_back({q, x, r});
    }
  }

  std::vector<std::string> names;
  for (State q = 0; q < n; ++q) names.push_back("t" + std::to_string(q));
  const Automaton trimmed = trim(Automaton(alphabet, std::move(names), whole.start,
                                           std::move(finals), std::move(transitions)));

  std::vector<std::string> renamed;
  for (State q = 0; q < trimmed.num_states(); ++q) renamed.push_back("s" + std::to_string(q));
  return Automaton(alphabet, std::move(renamed), trimmed.initial(), trimmed.finals(),
                   trimmed.transitions());
}

}  // namespace subuniv
