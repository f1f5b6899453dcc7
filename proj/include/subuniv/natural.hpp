#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>

namespace subuniv {

/// Arbitrary-precision non-negative integer used for counts, ranks and the
/// parameters k and m.
using Natural = mpz_class;

/// The value as a size_t, or nullopt when it is negative or does not fit.
inline std::optional<std::size_t> to_size(const Natural& value) {
  static_assert(sizeof(unsigned long) == sizeof(std::size_t));
  if (sgn(value) < 0 || !value.fits_ulong_p()) return std::nullopt;
  return static_cast<std::size_t>(value.get_ui());
}

/// Parses a decimal natural number; nullopt for anything else.
inline std::optional<Natural> parse_natural(const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
  return Natural(text, 10);
}

}  // namespace subuniv
