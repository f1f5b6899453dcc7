#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "subuniv/automaton.hpp"
#include "subuniv/limits.hpp"
#include "subuniv/natural.hpp"

namespace subuniv {

struct ExactLength {
  Natural length;
};
struct AtMostLength {
  Natural length;
};
struct Total {};

using Scope = std::variant<ExactLength, AtMostLength, Total>;

enum class Unit { Paths, Words };

/// A non-negative count or the distinguished value Infinite, which compares
/// above every finite count.
class Count {
 public:
  Count() = default;
  Count(Natural value) : value_(std::move(value)) {}
  static Count infinite() {
    Count c;
    c.value_.reset();
    return c;
  }

  bool is_infinite() const noexcept { return !value_; }
  /// Requires a finite count.
  const Natural& value() const { return *value_; }
  /// Decimal digits, or "infinite".
  std::string to_string() const { return value_ ? value_->get_str() : "infinite"; }

  friend bool operator==(const Count& lhs, const Count& rhs) {
    if (lhs.is_infinite() || rhs.is_infinite()) return lhs.is_infinite() == rhs.is_infinite();
    return *lhs.value_ == *rhs.value_;
  }
  friend std::strong_ordering operator<=>(const Count& lhs, const Count& rhs) {
    if (lhs.is_infinite() || rhs.is_infinite()) return lhs.is_infinite() <=> rhs.is_infinite();
    const int c = cmp(*lhs.value_, *rhs.value_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

 private:
  std::optional<Natural> value_ = Natural(0);
};

/// Diverging prefixes of the words lexicographically below w: w[1,i] x for
/// every i < |w| and every symbol x < w[i+1]. Sorted lexicographically.
struct PrefixSet {
  std::vector<Word> words;
};

PrefixSet prefix_set(std::span<const Symbol> w, const Alphabet& alphabet);

struct StandardSeed {};
using Seed = std::variant<StandardSeed, PrefixSet>;

/// T[q, len, c, R]: paths from the initial state to q of length len whose
/// label has exactly c < k arches and rest alphabet R.
class PathTable {
 public:
  PathTable(std::size_t num_states, std::size_t k, std::size_t sigma)
      : num_states_(num_states), k_(k), subsets_(std::size_t{1} << sigma) {}

  const Natural& at(State q, std::size_t len, std::size_t c, SymbolSet rest) const {
    return layers_.at(len)[(static_cast<std::size_t>(q) * k_ + c) * subsets_ + rest.bits()];
  }
  std::size_t max_length() const noexcept { return layers_.size() - 1; }

 private:
  friend class TableBuilder;
  std::size_t num_states_;
  std::size_t k_;
  std::size_t subsets_;
  std::vector<std::vector<Natural>> layers_;
};

/// U[q, len]: paths from the initial state to q of length len whose label
/// has at least k arches.
class UniversalTable {
 public:
  const Natural& at(State q, std::size_t len) const { return layers_.at(len).at(q); }
  std::size_t max_length() const noexcept { return layers_.size() - 1; }

 private:
  friend class TableBuilder;
  std::vector<std::vector<Natural>> layers_;
};

struct Tables {
  PathTable paths;
  UniversalTable universal;
};

/// All layers 0..m of T and U. With a PrefixSet seed only paths through one
/// of the prefixes are counted. Requires k >= 1.
Tables build_tables(const Automaton& a, std::size_t m, std::size_t k, const Seed& seed = StandardSeed{},
                    const Limits& limits = {});

/// Number of accepting paths (or accepted words, which requires a DFA) whose
/// label has at least k arches; with `perfect`, exactly k arches and an empty
/// rest. For k = 0 every path qualifies, and the perfect variant keeps only
/// the empty word.
Count count(const Automaton& a, const Natural& k, const Scope& scope, bool perfect = false,
            Unit unit = Unit::Paths, const Limits& limits = {});

/// Number of accepted words in the scoped set with at least k arches that are
/// lexicographically smaller than w. Requires a DFA.
Count rank(const Automaton& a, std::span<const Symbol> w, const Natural& k, const Scope& scope,
           const Limits& limits = {});

/// Member of the scoped set with the given rank, or nullopt when the index
/// is out of range. Requires a DFA and a bounded scope.
std::optional<Word> unrank(const Automaton& a, const Natural& k, const Scope& scope, const Natural& index,
                           const Limits& limits = {});

}  // namespace subuniv
