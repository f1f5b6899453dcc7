#pragma once

#include <cstddef>

namespace subuniv {

/// Resource caps for the subset-indexed algorithms, whose tables grow as 2^sigma.
struct Limits {
  /// Largest alphabet accepted by table-based algorithms.
  std::size_t sigma_cap = 24;
  /// Approximate ceiling on table memory, in bytes.
  std::size_t memory_budget = std::size_t{3} << 30;
};

/// Throws LimitError when sigma is above the cap (or above what a SymbolSet can hold).
void check_sigma(std::size_t sigma, const Limits& limits);

}  // namespace subuniv
