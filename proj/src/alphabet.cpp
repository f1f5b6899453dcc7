#include "subuniv/alphabet.hpp"

#include <algorithm>
#include <cctype>

#include "subuniv/error.hpp"

namespace subuniv {

namespace {

bool is_separator(char c) { return std::isspace(static_cast<unsigned char>(c)) || c == ','; }

std::vector<std::string> split_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_separator(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_separator(text[j])) ++j;
    if (j > i) tokens.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return tokens;
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> symbols) : names_(std::move(symbols)) {
  if (names_.empty()) throw AlphabetError("alphabet is empty");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    const std::string& name = names_[i];
    if (name.empty()) throw AlphabetError("empty symbol name");
    if (std::any_of(name.begin(), name.end(),
                    [](char c) { return std::isspace(static_cast<unsigned char>(c)) || c == '#'; })) {
      throw AlphabetError("symbol name '" + name + "' contains whitespace or '#'");
    }
    if (!index_.emplace(name, static_cast<Symbol>(i)).second) {
      throw AlphabetError("duplicate symbol '" + name + "'");
    }
    if (name.size() != 1) single_character_ = false;
  }
}

Alphabet Alphabet::from_spec(std::string_view spec) {
  if (std::any_of(spec.begin(), spec.end(), is_separator)) return Alphabet(split_tokens(spec));
  std::vector<std::string> symbols;
  for (char c : spec) symbols.emplace_back(1, c);
  return Alphabet(std::move(symbols));
}

std::optional<Symbol> Alphabet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Symbol Alphabet::index_of(std::string_view name) const {
  if (auto x = find(name)) return *x;
  throw AlphabetError("symbol '" + std::string(name) + "' is not in the alphabet");
}

Word Alphabet::parse_word(std::string_view text) const {
  Word word;
  if (single_character_) {
    for (char c : text) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      word.push_back(index_of(std::string_view(&c, 1)));
    }
  } else {
    for (const std::string& token : split_tokens(text)) word.push_back(index_of(token));
  }
  return word;
}

std::string Alphabet::format_word(std::span<const Symbol> word) const {
  check(word);
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i > 0 && !single_character_) out += ' ';
    out += names_[word[i]];
  }
  return out;
}

void Alphabet::check(std::span<const Symbol> word) const {
  for (Symbol x : word) {
    if (x >= names_.size()) {
      throw AlphabetError("symbol index " + std::to_string(x) + " is outside an alphabet of size " +
                          std::to_string(names_.size()));
    }
  }
}

}  // namespace subuniv
