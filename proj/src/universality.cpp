#include "subuniv/universality.hpp"

#include <algorithm>

namespace subuniv {

namespace {

// Reports arch boundaries to `close_arch(end)` and returns the start of the rest.
template <typename OnArch>
std::size_t scan_arches(std::span<const Symbol> word, std::size_t sigma, std::vector<char>& seen,
                        OnArch close_arch) {
  std::size_t distinct = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (seen[word[i]]) continue;
    seen[word[i]] = 1;
    if (++distinct == sigma) {
      close_arch(start, i + 1);
      start = i + 1;
      distinct = 0;
      std::fill(seen.begin(), seen.end(), 0);
    }
  }
  return start;
}

}  // namespace

ArchFactorization arch_factorize(std::span<const Symbol> word, const Alphabet& alphabet) {
  alphabet.check(word);
  std::vector<char> seen(alphabet.size(), 0);
  ArchFactorization result;
  const std::size_t rest_start =
      scan_arches(word, alphabet.size(), seen, [&](std::size_t begin, std::size_t end) {
        result.arches.emplace_back(word.begin() + begin, word.begin() + end);
      });
  result.rest.assign(word.begin() + rest_start, word.end());
  for (Symbol x = 0; x < alphabet.size(); ++x) {
    if (seen[x]) result.rest_alphabet.push_back(x);
  }
  return result;
}

std::size_t iota(std::span<const Symbol> word, const Alphabet& alphabet) {
  alphabet.check(word);
  std::vector<char> seen(alphabet.size(), 0);
  std::size_t arches = 0;
  scan_arches(word, alphabet.size(), seen, [&](std::size_t, std::size_t) { ++arches; });
  return arches;
}

bool is_perfect_k_universal(std::span<const Symbol> word, const Alphabet& alphabet,
                            const Natural& k) {
  alphabet.check(word);
  std::vector<char> seen(alphabet.size(), 0);
  std::size_t arches = 0;
  const std::size_t rest_start =
      scan_arches(word, alphabet.size(), seen, [&](std::size_t, std::size_t) { ++arches; });
  return rest_start == word.size() && Natural(static_cast<unsigned long>(arches)) == k;
}

}  // namespace subuniv
