#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace subuniv {

/// Index of a symbol within its alphabet. Declaration order is the lexicographic order.
using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;

/// Ordered set of distinct symbol names.
class Alphabet {
 public:
  /// Throws AlphabetError when empty, when a name repeats, or when a name is
  /// not a single whitespace-free token.
  explicit Alphabet(std::vector<std::string> symbols);

  /// Accepts either separated tokens ("a b c", "a,b,c") or a run of
  /// single-character symbols ("abc").
  static Alphabet from_spec(std::string_view spec);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(Symbol x) const { return names_.at(x); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<Symbol> find(std::string_view name) const;
  /// Like find(), but throws AlphabetError for unknown names.
  Symbol index_of(std::string_view name) const;

  /// True when every symbol name is exactly one character long.
  bool single_character() const noexcept { return single_character_; }

  /// Words over single-character alphabets are written without separators;
  /// otherwise symbols are whitespace separated.
  Word parse_word(std::string_view text) const;
  std::string format_word(std::span<const Symbol> word) const;

  /// Throws AlphabetError if some symbol index is out of range.
  void check(std::span<const Symbol> word) const;

  friend bool operator==(const Alphabet& lhs, const Alphabet& rhs) { return lhs.names_ == rhs.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Symbol> index_;
  bool single_character_ = true;
};

/// Subset of an alphabet of at most 63 symbols, stored as a bit mask. The
/// raw mask doubles as the table index for subset-indexed dynamic programs.
class SymbolSet {
 public:
  using Bits = std::uint64_t;
  static constexpr std::size_t max_symbols = 63;

  constexpr SymbolSet() = default;
  constexpr explicit SymbolSet(Bits bits) : bits_(bits) {}

  static constexpr SymbolSet full(std::size_t sigma) { return SymbolSet((Bits{1} << sigma) - 1); }
  static constexpr SymbolSet single(Symbol x) { return SymbolSet(Bits{1} << x); }

  constexpr bool contains(Symbol x) const { return (bits_ >> x) & 1U; }
  constexpr SymbolSet with(Symbol x) const { return SymbolSet(bits_ | (Bits{1} << x)); }
  constexpr SymbolSet without(Symbol x) const { return SymbolSet(bits_ & ~(Bits{1} << x)); }
  constexpr SymbolSet operator|(SymbolSet other) const { return SymbolSet(bits_ | other.bits_); }
  constexpr bool subset_of(SymbolSet other) const { return (bits_ & ~other.bits_) == 0; }

  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr Bits bits() const { return bits_; }

  friend constexpr bool operator==(SymbolSet, SymbolSet) = default;

 private:
  Bits bits_ = 0;
};

}  // namespace subuniv
