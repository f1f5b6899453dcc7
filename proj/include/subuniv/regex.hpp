#pragma once

#include <string_view>

#include "subuniv/automaton.hpp"

namespace subuniv {

/// Compiles a regular expression over single-character symbols of `alphabet`.
///
/// Syntax: literals, concatenation, union `|`, Kleene star `*` and parentheses.
/// An empty operand denotes the empty word, so `(a|)` is `a` or nothing.
/// Whitespace is ignored. Epsilon transitions from the inductive
/// construction are removed before the automaton is returned.
///
/// Throws ParseError on malformed patterns and on literals outside the alphabet.
Automaton compile_regex(std::string_view pattern, const Alphabet& alphabet);

}  // namespace subuniv
