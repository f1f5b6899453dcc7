#include <algorithm>
#include <deque>

#include "esu_internal.hpp"
#include "subuniv/error.hpp"

namespace subuniv {

void check_sigma(std::size_t sigma, const Limits& limits) {
  if (sigma > limits.sigma_cap || sigma > 30) {
    throw LimitError("alphabet of size " + std::to_string(sigma) + " exceeds the sigma cap of " +
                     std::to_string(std::min<std::size_t>(limits.sigma_cap, 30)));
  }
}

ArchStepRelation::ArchStepRelation(const Automaton& a)
    : n_(a.num_states()), relation_(a.sigma() * n_ * n_, false), any_(n_ * n_, false) {
  std::vector<bool> seen(n_);
  std::vector<State> stack;
  for (Symbol letter = 0; letter < a.sigma(); ++letter) {
    for (State from = 0; from < n_; ++from) {
      // Walk without `letter`, then close with exactly one `letter` transition.
      std::fill(seen.begin(), seen.end(), false);
      seen[from] = true;
      stack.assign(1, from);
      while (!stack.empty()) {
        State q = stack.back();
        stack.pop_back();
        for (State to : a.successors(q, letter)) {
          relation_[(static_cast<std::size_t>(letter) * n_ + from) * n_ + to] = true;
          any_[static_cast<std::size_t>(from) * n_ + to] = true;
        }
        for (Symbol x = 0; x < a.sigma(); ++x) {
          if (x == letter) continue;
          for (State r : a.successors(q, x)) {
            if (!seen[r]) {
              seen[r] = true;
              stack.push_back(r);
            }
          }
        }
      }
    }
  }
}

ArchGraph arch_graph(const Automaton& a) {
  const std::size_t n = a.num_states();
  const ArchStepRelation relation(a);
  ArchGraph graph;
  graph.successors.resize(n);
  for (State p = 0; p < n; ++p) {
    for (State q = 0; q < n; ++q) {
      if (relation.contains(p, q)) graph.successors[p].push_back(q);
    }
  }

  // q is a target iff for some symbol a it reaches a final state without reading a.
  const ReverseTransitions reverse(a);
  graph.targets.assign(n, false);
  std::vector<bool> seen(n);
  std::vector<State> stack;
  for (Symbol letter = 0; letter < a.sigma(); ++letter) {
    std::fill(seen.begin(), seen.end(), false);
    stack.clear();
    for (State f : a.finals()) {
      seen[f] = true;
      stack.push_back(f);
    }
    while (!stack.empty()) {
      State q = stack.back();
      stack.pop_back();
      graph.targets[q] = true;
      for (Symbol x = 0; x < a.sigma(); ++x) {
        if (x == letter) continue;
        for (State p : reverse.predecessors(q, x)) {
          if (!seen[p]) {
            seen[p] = true;
            stack.push_back(p);
          }
        }
      }
    }
  }
  return graph;
}

std::optional<std::size_t> min_universality_index(const Automaton& input) {
  const Automaton a = trim(input);
  if (a.finals().empty()) return std::nullopt;

  const ArchGraph graph = arch_graph(a);
  std::vector<std::size_t> distance(a.num_states(), SIZE_MAX);
  std::deque<State> queue{a.initial()};
  distance[a.initial()] = 0;
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    if (graph.targets[q]) return distance[q];
    for (State r : graph.successors[q]) {
      if (distance[r] == SIZE_MAX) {
        distance[r] = distance[q] + 1;
        queue.push_back(r);
      }
    }
  }
  // Unreachable for a trimmed nonempty automaton: every accepted word yields a path to a target.
  throw Error("internal error: no target state reachable in the arch graph");
}

bool decide_asu(const Automaton& a, const Natural& k) {
  if (k == 0) return true;
  const auto min_index = min_universality_index(a);
  if (!min_index) return true;
  return k <= Natural(static_cast<unsigned long>(*min_index));
}

namespace detail {

LoopAlphabet search_loop(const Automaton& a, State source, Word* loop_word) {
  const std::size_t subsets = std::size_t{1} << a.sigma();
  const SymbolSet full = SymbolSet::full(a.sigma());
  constexpr std::uint64_t kUnvisited = ~std::uint64_t{0};
  auto cell = [&](State q, SymbolSet v) { return static_cast<std::size_t>(q) * subsets + v.bits(); };

  // parent[cell] = (previous cell << 6) | symbol; the source cell points to itself.
  std::vector<std::uint64_t> parent(a.num_states() * subsets, kUnvisited);
  std::deque<std::pair<State, SymbolSet>> queue{{source, SymbolSet()}};
  parent[cell(source, SymbolSet())] = cell(source, SymbolSet()) << 6;

  LoopAlphabet result;
  while (!queue.empty()) {
    auto [q, v] = queue.front();
    queue.pop_front();
    if (q == source) {
      result.symbols = result.symbols | v;
      if (v == full) {
        result.full = true;
        break;
      }
    }
    for (Symbol x = 0; x < a.sigma(); ++x) {
      const SymbolSet next_v = v.with(x);
      for (State r : a.successors(q, x)) {
        std::uint64_t& slot = parent[cell(r, next_v)];
        if (slot != kUnvisited) continue;
        slot = (static_cast<std::uint64_t>(cell(q, v)) << 6) | x;
        queue.emplace_back(r, next_v);
      }
    }
  }

  if (loop_word) {
    loop_word->clear();
    std::size_t at = cell(source, result.symbols);
    const std::size_t start = cell(source, SymbolSet());
    while (at != start) {
      loop_word->push_back(static_cast<Symbol>(parent[at] & 63U));
      at = static_cast<std::size_t>(parent[at] >> 6);
    }
    std::reverse(loop_word->begin(), loop_word->end());
  }
  return result;
}

namespace {
constexpr std::uint64_t kNoBack = ~std::uint64_t{0};
}

ExtensionTable::ExtensionTable(const Automaton& a, const std::vector<LoopAlphabet>& loops,
                               bool history)
    : automaton_(a), subsets_(std::size_t{1} << a.sigma()) {
  const std::size_t n = a.num_states();
  const SymbolSet full = SymbolSet::full(a.sigma());
  current_.assign(n * subsets_, -1);
  current_[index(a.initial(), loops[a.initial()].symbols)] = 0;

  std::vector<int> next;
  std::vector<std::uint64_t> back;
  for (std::size_t round = 0; round < n; ++round) {
    next = current_;
    if (history) back.assign(n * subsets_, kNoBack);
    for (State q = 0; q < n; ++q) {
      for (SymbolSet::Bits bits = 0; bits < subsets_; ++bits) {
        const SymbolSet v(bits);
        const int arches = current_[index(q, v)];
        if (arches < 0) continue;
        for (Symbol x = 0; x < a.sigma(); ++x) {
          for (State r : a.successors(q, x)) {
            int gained = 0;
            SymbolSet after_symbol = v.with(x);
            if (after_symbol == full) {
              after_symbol = SymbolSet();
              gained = 1;
            }
            SymbolSet after_loop = after_symbol | loops[r].symbols;
            if (after_loop == full) {
              after_loop = SymbolSet();
              gained = 1;
            }
            const SymbolSet after_second_loop = after_loop | loops[r].symbols;
            const std::size_t target = index(r, after_second_loop);
            if (arches + gained > next[target]) {
              next[target] = arches + gained;
              if (history) back[target] = (static_cast<std::uint64_t>(index(q, v)) << 6) | x;
            }
          }
        }
      }
    }
    current_.swap(next);
    if (history) back_.push_back(back);
  }
}

std::optional<int> ExtensionTable::best_final() const {
  std::optional<int> best;
  for (State q : automaton_.finals()) {
    for (std::size_t bits = 0; bits < subsets_; ++bits) {
      const int value = current_[index(q, SymbolSet(bits))];
      if (value >= 0 && (!best || value > *best)) best = value;
    }
  }
  return best;
}

std::vector<ExtensionTable::Step> ExtensionTable::best_walk() const {
  std::optional<std::size_t> best_cell;
  for (State q : automaton_.finals()) {
    for (std::size_t bits = 0; bits < subsets_; ++bits) {
      const std::size_t c = index(q, SymbolSet(bits));
      if (current_[c] >= 0 && (!best_cell || current_[c] > current_[*best_cell])) best_cell = c;
    }
  }
  std::vector<Step> steps;
  if (!best_cell) return steps;
  std::size_t at = *best_cell;
  for (std::size_t round = back_.size(); round > 0; --round) {
    const std::uint64_t b = back_[round - 1][at];
    if (b == kNoBack) continue;
    steps.push_back({static_cast<Symbol>(b & 63U), static_cast<State>(at / subsets_)});
    at = static_cast<std::size_t>(b >> 6);
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

}  // namespace detail

std::vector<LoopAlphabet> loop_alphabets(const Automaton& a, const Limits& limits) {
  check_sigma(a.sigma(), limits);
  const std::size_t bytes = a.num_states() * (std::size_t{1} << a.sigma()) * sizeof(std::uint64_t);
  if (bytes > limits.memory_budget) throw LimitError("loop search exceeds the memory budget");
  std::vector<LoopAlphabet> loops;
  loops.reserve(a.num_states());
  for (State q = 0; q < a.num_states(); ++q) loops.push_back(detail::search_loop(a, q, nullptr));
  return loops;
}

MaxUniversality max_universality_index(const Automaton& input, const Limits& limits) {
  check_sigma(input.sigma(), limits);
  const Automaton a = trim(input);
  if (a.finals().empty()) return MaxUniversality::empty_language();

  const std::vector<LoopAlphabet> loops = loop_alphabets(a, limits);
  if (std::any_of(loops.begin(), loops.end(), [](const LoopAlphabet& l) { return l.full; })) {
    return MaxUniversality::unbounded();
  }
  const std::size_t bytes = 2 * a.num_states() * (std::size_t{1} << a.sigma()) * sizeof(int);
  if (bytes > limits.memory_budget) throw LimitError("extension table exceeds the memory budget");
  const detail::ExtensionTable table(a, loops, false);
  return MaxUniversality::finite(static_cast<std::size_t>(table.best_final().value()));
}

bool decide_esu(const Automaton& a, const Natural& k, const Limits& limits) {
  const MaxUniversality max = max_universality_index(a, limits);
  switch (max.kind()) {
    case MaxUniversality::Kind::EmptyLanguage:
      return false;
    case MaxUniversality::Kind::Unbounded:
      return true;
    case MaxUniversality::Kind::Finite:
      return k <= Natural(static_cast<unsigned long>(max.value()));
  }
  return false;
}

}  // namespace subuniv
