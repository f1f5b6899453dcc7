#include <unordered_map>

#include "subuniv/automaton.hpp"
#include "subuniv/error.hpp"

namespace subuniv {

namespace {

using Subset = std::vector<std::uint64_t>;

struct SubsetHash {
  std::size_t operator()(const Subset& s) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::uint64_t w : s) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

Automaton determinize(const Automaton& a, const DeterminizeOptions& options) {
  const std::size_t n = a.num_states();
  const std::size_t words = (n + 63) / 64;

  std::unordered_map<Subset, State, SubsetHash> ids;
  std::vector<Subset> subsets;
  std::vector<Transition> transitions;
  bool warned = false;

  auto intern = [&](Subset s) -> State {
    auto [it, inserted] = ids.try_emplace(s, static_cast<State>(subsets.size()));
    if (inserted) {
      if (subsets.size() >= options.state_budget) {
        throw LimitError("subset construction exceeded the state budget of " +
                         std::to_string(options.state_budget) + " states");
      }
      subsets.push_back(std::move(s));
      if (!warned && subsets.size() > options.warn_threshold && options.warn) {
        warned = true;
        options.warn("subset construction passed " + std::to_string(options.warn_threshold) +
                     " states");
      }
    }
    return it->second;
  };

  Subset start(words, 0);
  start[a.initial() / 64] |= std::uint64_t{1} << (a.initial() % 64);
  intern(std::move(start));

  for (std::size_t i = 0; i < subsets.size(); ++i) {
    for (Symbol x = 0; x < a.sigma(); ++x) {
      Subset next(words, 0);
      bool any = false;
      for (State q = 0; q < n; ++q) {
        if (!((subsets[i][q / 64] >> (q % 64)) & 1U)) continue;
        for (State r : a.successors(q, x)) {
          next[r / 64] |= std::uint64_t{1} << (r % 64);
          any = true;
        }
      }
      if (!any) continue;
      const State target = intern(std::move(next));
      transitions.push_back({static_cast<State>(i), x, target});
    }
  }

  std::vector<std::string> names;
  std::vector<State> finals;
  names.reserve(subsets.size());
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    names.push_back("d" + std::to_string(i));
    for (State q = 0; q < n; ++q) {
      if (((subsets[i][q / 64] >> (q % 64)) & 1U) && a.is_final(q)) {
        finals.push_back(static_cast<State>(i));
        break;
      }
    }
  }
  return Automaton(a.alphabet(), std::move(names), 0, std::move(finals), std::move(transitions));
}

}  // namespace subuniv
