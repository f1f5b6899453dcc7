#include "subuniv/oracle.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

#include "subuniv/error.hpp"

namespace subuniv::oracle {

namespace {

bool is_subsequence(std::span<const Symbol> u, std::span<const Symbol> w) {
  std::size_t i = 0;
  for (Symbol x : w) {
    if (i < u.size() && u[i] == x) ++i;
  }
  return i == u.size();
}

}  // namespace

bool naive_universality(std::span<const Symbol> w, const Alphabet& alphabet, std::size_t k, std::size_t budget) {
  const std::size_t sigma = alphabet.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (total > budget / sigma) throw LimitError("too many candidate subsequences");
    total *= sigma;
  }
  Word u(k, 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (std::size_t i = k; i-- > 0;) {
      u[i] = static_cast<Symbol>(rest % sigma);
      rest /= sigma;
    }
    if (!is_subsequence(u, w)) return false;
  }
  return true;
}

std::size_t naive_iota(std::span<const Symbol> w, const Alphabet& alphabet) {
  std::size_t k = 0;
  while (naive_universality(w, alphabet, k + 1)) ++k;
  return k;
}

std::vector<AcceptedWord> enumerate_accepted(const Automaton& a, std::size_t max_len, std::size_t budget) {
  std::vector<AcceptedWord> out;
  struct Item {
    Word word;
    std::vector<Natural> paths;
  };
  std::vector<Item> frontier;
  std::vector<Natural> start(a.num_states());
  start[a.initial()] = 1;
  frontier.push_back({Word{}, start});
  std::size_t explored = 0;
  for (std::size_t len = 0; len <= max_len && !frontier.empty(); ++len) {
    std::vector<Item> next;
    for (const Item& item : frontier) {
      if (++explored > budget) throw LimitError("enumeration budget exceeded");
      Natural accepting = 0;
      for (State f : a.finals()) accepting += item.paths[f];
      if (sgn(accepting) != 0) out.push_back({item.word, naive_iota(item.word, a.alphabet()), accepting});
      if (len == max_len) continue;
      for (Symbol x = 0; x < a.sigma(); ++x) {
        std::vector<Natural> paths(a.num_states());
        bool any = false;
        for (State q = 0; q < a.num_states(); ++q) {
          if (sgn(item.paths[q]) == 0) continue;
          for (State r : a.successors(q, x)) {
            paths[r] += item.paths[q];
            any = true;
          }
        }
        if (!any) continue;
        Word w = item.word;
        w.push_back(x);
        next.push_back({std::move(w), std::move(paths)});
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end(), [](const AcceptedWord& l, const AcceptedWord& r) { return l.word < r.word; });
  return out;
}

OracleCounts oracle_count_rank(const Automaton& a, std::size_t k, std::size_t m) {
  OracleCounts counts;
  counts.words.assign(m + 1, 0);
  counts.paths.assign(m + 1, 0);
  counts.perfect_words.assign(m + 1, 0);
  counts.perfect_paths.assign(m + 1, 0);
  for (const AcceptedWord& entry : enumerate_accepted(a, m)) {
    const std::size_t len = entry.word.size();
    if (entry.iota < k) continue;
    counts.words[len] += 1;
    counts.paths[len] += entry.paths;
    counts.members.push_back(entry.word);
    bool perfect = false;
    if (k == 0) {
      perfect = entry.word.empty();
    } else if (entry.iota == k) {
      // The rest is empty iff dropping the last symbol loses an arch.
      const std::span<const Symbol> shorter(entry.word.data(), len - 1);
      perfect = naive_iota(shorter, a.alphabet()) == k - 1;
    }
    if (perfect) {
      counts.perfect_words[len] += 1;
      counts.perfect_paths[len] += entry.paths;
    }
  }
  return counts;
}

namespace {

// Layered reachability over (state, arches capped at cap, rest alphabet).
template <class Visit>
void product_layers(const Automaton& a, std::size_t cap, std::size_t max_len, Visit visit) {
  const SymbolSet full = SymbolSet::full(a.sigma());
  using Node = std::tuple<State, std::size_t, SymbolSet::Bits>;
  std::set<Node> layer{{a.initial(), 0, 0}};
  for (std::size_t len = 0; len <= max_len && !layer.empty(); ++len) {
    if (!visit(len, layer)) return;
    std::set<Node> next;
    for (const auto& [q, c, bits] : layer) {
      for (Symbol x = 0; x < a.sigma(); ++x) {
        std::size_t c2 = c;
        SymbolSet r2 = SymbolSet(bits).with(x);
        if (r2 == full) {
          c2 = std::min(c + 1, cap);
          r2 = SymbolSet();
        }
        for (State t : a.successors(q, x)) next.emplace(t, c2, r2.bits());
      }
    }
    layer = std::move(next);
  }
}

}  // namespace

bool exists_universal_word(const Automaton& a, std::size_t k, std::size_t min_len, std::size_t max_len) {
  bool found = false;
  product_layers(a, k, max_len, [&](std::size_t len, const auto& layer) {
    if (len < min_len) return true;
    for (const auto& [q, c, bits] : layer) {
      if (a.is_final(q) && c >= k) found = true;
    }
    return !found;
  });
  return found;
}

long min_iota_upto(const Automaton& a, std::size_t max_len) {
  long best = -1;
  product_layers(a, max_len + 1, max_len, [&](std::size_t, const auto& layer) {
    for (const auto& [q, c, bits] : layer) {
      if (a.is_final(q) && (best < 0 || static_cast<long>(c) < best)) best = static_cast<long>(c);
    }
    return true;
  });
  return best;
}

std::vector<std::vector<Natural>> path_counts(const Automaton& a, std::size_t max_len) {
  std::vector<std::vector<Natural>> out(max_len + 1, std::vector<Natural>(a.num_states()));
  out[0][a.initial()] = 1;
  for (std::size_t len = 1; len <= max_len; ++len) {
    for (State q = 0; q < a.num_states(); ++q) {
      for (Symbol x = 0; x < a.sigma(); ++x) {
        for (State r : a.successors(q, x)) out[len][r] += out[len - 1][q];
      }
    }
  }
  return out;
}

Alphabet letters(std::size_t sigma) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < sigma; ++i) names.emplace_back(1, static_cast<char>('a' + i));
  return Alphabet(std::move(names));
}

namespace {

constexpr int kMaxAttempts = 1000;

template <class Draw>
RandomAutomaton draw_until_nonempty(std::size_t n, std::size_t sigma, std::uint64_t seed, Draw draw) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("q" + std::to_string(i));
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<Transition> transitions = draw(rng);
    std::vector<State> finals;
    std::bernoulli_distribution coin(0.5);
    while (finals.empty()) {
      for (State q = 0; q < n; ++q) {
        if (coin(rng)) finals.push_back(q);
      }
    }
    Automaton trimmed = trim(Automaton(letters(sigma), names, 0, finals, transitions));
    if (!trimmed.finals().empty()) return {std::move(trimmed), false};
  }
  return {Automaton::empty_language(letters(sigma)), true};
}

}  // namespace

RandomAutomaton random_automaton(std::size_t n, std::size_t sigma, double density, std::uint64_t seed) {
  return draw_until_nonempty(n, sigma, seed, [&](std::mt19937_64& rng) {
    std::bernoulli_distribution present(density);
    std::vector<Transition> transitions;
    for (State p = 0; p < n; ++p) {
      for (Symbol x = 0; x < sigma; ++x) {
        for (State q = 0; q < n; ++q) {
          if (present(rng)) transitions.push_back({p, x, q});
        }
      }
    }
    return transitions;
  });
}

RandomAutomaton random_dfa(std::size_t n, std::size_t sigma, double density, std::uint64_t seed) {
  return draw_until_nonempty(n, sigma, seed, [&](std::mt19937_64& rng) {
    std::bernoulli_distribution present(density);
    std::uniform_int_distribution<State> target(0, static_cast<State>(n - 1));
    std::vector<Transition> transitions;
    for (State p = 0; p < n; ++p) {
      for (Symbol x = 0; x < sigma; ++x) {
        if (present(rng)) transitions.push_back({p, x, target(rng)});
      }
    }
    return transitions;
  });
}

}  // namespace subuniv::oracle
