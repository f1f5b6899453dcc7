#include <algorithm>
#include <deque>
#include <map>

#include "esu_internal.hpp"
#include "subuniv/error.hpp"

namespace subuniv {

namespace detail {

std::optional<std::vector<ExtensionTable::Step>> shortest_walk(const Automaton& a, State from,
                                                               const std::vector<bool>& to) {
  constexpr State kUnseen = ~State{0};
  std::vector<State> parent(a.num_states(), kUnseen);
  std::vector<Symbol> via(a.num_states(), 0);
  std::deque<State> queue{from};
  parent[from] = from;
  while (!queue.empty()) {
    const State q = queue.front();
    queue.pop_front();
    if (to[q]) {
      std::vector<ExtensionTable::Step> steps;
      for (State at = q; at != from; at = parent[at]) steps.push_back({via[at], at});
      std::reverse(steps.begin(), steps.end());
      return steps;
    }
    for (Symbol x = 0; x < a.sigma(); ++x) {
      for (State r : a.successors(q, x)) {
        if (parent[r] != kUnseen) continue;
        parent[r] = q;
        via[r] = x;
        queue.push_back(r);
      }
    }
  }
  return std::nullopt;
}

namespace {

// States of one accepting run labelled `word`; states[i] is reached after i symbols.
std::vector<State> accepting_run(const Automaton& a, const Word& word) {
  const std::size_t n = a.num_states();
  std::vector<std::vector<bool>> reach(word.size() + 1, std::vector<bool>(n, false));
  reach[0][a.initial()] = true;
  for (std::size_t i = 0; i < word.size(); ++i) {
    for (State q = 0; q < n; ++q) {
      if (!reach[i][q]) continue;
      for (State r : a.successors(q, word[i])) reach[i + 1][r] = true;
    }
  }
  std::vector<State> run(word.size() + 1);
  bool found = false;
  for (State q = 0; q < n && !found; ++q) {
    if (reach[word.size()][q] && a.is_final(q)) {
      run[word.size()] = q;
      found = true;
    }
  }
  if (!found) throw Error("internal error: witness candidate is not accepted");
  for (std::size_t i = word.size(); i > 0; --i) {
    for (State p = 0; p < n; ++p) {
      auto next = a.successors(p, word[i - 1]);
      if (reach[i - 1][p] && std::binary_search(next.begin(), next.end(), run[i])) {
        run[i - 1] = p;
        break;
      }
    }
  }
  return run;
}

}  // namespace

Word shorten_witness(const Automaton& a, const Word& word, std::size_t k) {
  const std::vector<State> run = accepting_run(a, word);

  // First occurrences of each symbol inside each of the first k arches.
  std::vector<std::size_t> critical;
  std::vector<char> seen(a.sigma(), 0);
  std::size_t distinct = 0;
  std::size_t arches = 0;
  for (std::size_t i = 0; i < word.size() && arches < k; ++i) {
    if (seen[word[i]]) continue;
    seen[word[i]] = 1;
    critical.push_back(i);
    if (++distinct == a.sigma()) {
      ++arches;
      distinct = 0;
      std::fill(seen.begin(), seen.end(), 0);
    }
  }
  if (arches < k) throw Error("internal error: witness candidate has fewer than k arches");

  Word out;
  auto append_walk = [&](State from, std::vector<bool> to, std::size_t original) {
    auto walk = shortest_walk(a, from, to);
    if (!walk || walk->size() > original) throw Error("internal error: gap cannot be shortened");
    for (const auto& step : *walk) out.push_back(step.symbol);
  };
  std::vector<bool> target(a.num_states(), false);
  for (std::size_t j = 0; j + 1 < critical.size(); ++j) {
    out.push_back(word[critical[j]]);
    const std::size_t gap_begin = critical[j] + 1;
    const std::size_t gap_end = critical[j + 1];
    if (gap_end > gap_begin) {
      std::fill(target.begin(), target.end(), false);
      target[run[gap_end]] = true;
      append_walk(run[gap_begin], target, gap_end - gap_begin);
    }
  }
  const std::size_t last = critical.back();
  out.push_back(word[last]);
  std::fill(target.begin(), target.end(), false);
  for (State f : a.finals()) target[f] = true;
  append_walk(run[last + 1], target, word.size() - last - 1);
  return out;
}

}  // namespace detail

namespace {

Word walk_labels(const Automaton& a, State from, const std::vector<bool>& to) {
  const auto walk = detail::shortest_walk(a, from, to);
  Word word;
  for (const auto& step : walk.value()) word.push_back(step.symbol);
  return word;
}

}  // namespace

std::optional<Word> witness_k_universal(const Automaton& input, const Natural& k,
                                        const Limits& limits) {
  const Automaton a = trim(input);
  if (a.finals().empty()) return std::nullopt;

  std::vector<bool> finals(a.num_states(), false);
  for (State f : a.finals()) finals[f] = true;
  if (k == 0) return walk_labels(a, a.initial(), finals);

  const std::vector<LoopAlphabet> loops = loop_alphabets(a, limits);
  const auto universal = std::find_if(loops.begin(), loops.end(), [](const LoopAlphabet& l) { return l.full; });

  if (universal != loops.end()) {
    const State q = static_cast<State>(universal - loops.begin());
    Word loop;
    detail::search_loop(a, q, &loop);
    const auto repetitions = to_size(k);
    const std::size_t max_symbols = limits.memory_budget / (4 * sizeof(Symbol));
    if (!repetitions || *repetitions > max_symbols / (loop.size() + 2 * a.num_states())) {
      throw LimitError("witness for k = " + k.get_str() + " is too long to materialize");
    }
    std::vector<bool> at_q(a.num_states(), false);
    at_q[q] = true;
    Word word = walk_labels(a, a.initial(), at_q);
    for (std::size_t i = 0; i < *repetitions; ++i) word.insert(word.end(), loop.begin(), loop.end());
    const Word tail = walk_labels(a, q, finals);
    word.insert(word.end(), tail.begin(), tail.end());
    return detail::shorten_witness(a, word, *repetitions);
  }

  const std::size_t cells = a.num_states() * (std::size_t{1} << a.sigma());
  if ((a.num_states() + 2) * cells * (sizeof(std::uint64_t) + sizeof(int)) > limits.memory_budget) {
    throw LimitError("witness reconstruction exceeds the memory budget");
  }
  const detail::ExtensionTable table(a, loops, true);
  const int best = table.best_final().value();
  if (Natural(best) < k) return std::nullopt;

  std::map<State, Word> loop_words;
  auto loop_of = [&](State q) -> const Word& {
    auto it = loop_words.find(q);
    if (it == loop_words.end()) {
      Word w;
      detail::search_loop(a, q, &w);
      it = loop_words.emplace(q, std::move(w)).first;
    }
    return it->second;
  };
  Word word;
  auto twice = [&](State q) {
    const Word& w = loop_of(q);
    word.insert(word.end(), w.begin(), w.end());
    word.insert(word.end(), w.begin(), w.end());
  };
  twice(a.initial());
  for (const auto& step : table.best_walk()) {
    word.push_back(step.symbol);
    twice(step.state);
  }
  return detail::shorten_witness(a, word, static_cast<std::size_t>(k.get_ui()));
}

}  // namespace subuniv
