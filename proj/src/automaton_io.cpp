#include <cctype>
#include <optional>
#include <unordered_map>

#include "subuniv/automaton.hpp"
#include "subuniv/error.hpp"

namespace subuniv {

namespace {

struct Token {
  std::string text;
  std::size_t line;
  std::size_t column;
};

struct Entry {
  std::size_t line = 0;
  std::size_t column = 0;
  std::vector<Token> values;
};

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::vector<Token> tokenize(std::string_view text, std::size_t line, std::size_t offset) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (j > i) tokens.push_back({std::string(text.substr(i, j - i)), line, offset + i + 1});
    i = j;
  }
  return tokens;
}

[[noreturn]] void fail(const Token& token, const std::string& message) {
  throw ParseError(token.line, token.column, message);
}

}  // namespace

Automaton parse_automaton(std::string_view text) {
  std::optional<Entry> alphabet_entry;
  std::optional<Entry> states_entry;
  std::optional<Entry> initial_entry;
  std::vector<Token> final_tokens;
  std::vector<Entry> trans_entries;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::size_t first = 0;
    while (first < line.size() && is_space(line[first])) ++first;
    if (first == line.size()) continue;

    const std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError(line_no, first + 1, "expected 'key: values'");
    }
    std::string_view key = line.substr(first, colon - first);
    while (!key.empty() && is_space(key.back())) key.remove_suffix(1);

    Entry entry{line_no, first + 1, tokenize(line.substr(colon + 1), line_no, colon + 1)};
    auto set_once = [&](std::optional<Entry>& slot, const char* what) {
      if (slot) throw ParseError(line_no, first + 1, std::string("duplicate '") + what + "' line");
      slot = std::move(entry);
    };

    if (key == "alphabet") {
      set_once(alphabet_entry, "alphabet");
    } else if (key == "states") {
      set_once(states_entry, "states");
    } else if (key == "initial") {
      if (initial_entry || entry.values.size() > 1) {
        throw ParseError(line_no, first + 1, "multiple initial states");
      }
      if (entry.values.empty()) throw ParseError(line_no, first + 1, "missing initial state");
      initial_entry = std::move(entry);
    } else if (key == "final") {
      final_tokens.insert(final_tokens.end(), entry.values.begin(), entry.values.end());
    } else if (key == "trans") {
      if (entry.values.size() != 3) {
        throw ParseError(line_no, first + 1, "expected 'trans: SOURCE SYMBOL TARGET'");
      }
      trans_entries.push_back(std::move(entry));
    } else {
      throw ParseError(line_no, first + 1, "unknown key '" + std::string(key) + "'");
    }
  }

  const std::size_t last_line = line_no;
  if (!alphabet_entry) throw ParseError(last_line, 1, "missing 'alphabet' line");
  if (!states_entry) throw ParseError(last_line, 1, "missing 'states' line");
  if (!initial_entry) throw ParseError(last_line, 1, "missing 'initial' line");
  if (alphabet_entry->values.empty()) {
    throw ParseError(alphabet_entry->line, alphabet_entry->column, "empty alphabet");
  }
  if (states_entry->values.empty()) {
    throw ParseError(states_entry->line, states_entry->column, "no states declared");
  }

  std::vector<std::string> symbol_names;
  std::unordered_map<std::string, Symbol> symbols;
  for (const Token& t : alphabet_entry->values) {
    if (!symbols.emplace(t.text, static_cast<Symbol>(symbol_names.size())).second) {
      fail(t, "duplicate symbol '" + t.text + "'");
    }
    symbol_names.push_back(t.text);
  }

  std::vector<std::string> state_names;
  std::unordered_map<std::string, State> states;
  for (const Token& t : states_entry->values) {
    if (!states.emplace(t.text, static_cast<State>(state_names.size())).second) {
      fail(t, "duplicate state '" + t.text + "'");
    }
    state_names.push_back(t.text);
  }

  auto state_of = [&](const Token& t) {
    auto it = states.find(t.text);
    if (it == states.end()) fail(t, "unknown state '" + t.text + "'");
    return it->second;
  };
  auto symbol_of = [&](const Token& t) {
    auto it = symbols.find(t.text);
    if (it == symbols.end()) fail(t, "unknown symbol '" + t.text + "'");
    return it->second;
  };

  const State initial = state_of(initial_entry->values.front());
  std::vector<State> finals;
  for (const Token& t : final_tokens) finals.push_back(state_of(t));
  std::vector<Transition> transitions;
  for (const Entry& e : trans_entries) {
    transitions.push_back({state_of(e.values[0]), symbol_of(e.values[1]), state_of(e.values[2])});
  }

  return Automaton(Alphabet(std::move(symbol_names)), std::move(state_names), initial,
                   std::move(finals), std::move(transitions));
}

std::string serialize(const Automaton& a) {
  auto join = [](const std::vector<std::string>& names) {
    std::string out;
    for (const std::string& name : names) out += ' ' + name;
    return out;
  };
  std::string out = "alphabet:" + join(a.alphabet().names()) + '\n';
  out += "states:" + join(a.state_names()) + '\n';
  out += "initial: " + a.state_name(a.initial()) + '\n';
  out += "final:";
  for (State q : a.finals()) out += ' ' + a.state_name(q);
  out += '\n';
  for (const Transition& t : a.transitions()) {
    out += "trans: " + a.state_name(t.source) + ' ' + a.alphabet().name(t.symbol) + ' ' +
           a.state_name(t.target) + '\n';
  }
  return out;
}

}  // namespace subuniv
