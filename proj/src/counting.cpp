#include <algorithm>

#include "layers.hpp"
#include "subuniv/counting.hpp"
#include "subuniv/deciders.hpp"
#include "subuniv/error.hpp"

namespace subuniv {

namespace {

std::size_t checked_size(const Natural& value, const char* what) {
  const auto v = to_size(value);
  if (!v) throw LimitError(std::string(what) + " " + value.get_str() + " is too large");
  return *v;
}

// Runs the recurrence from the empty word through layers 0..last, handing
// each layer to `visit` until it returns false.
template <class Visit>
void sweep(const Automaton& a, const detail::LayerEngine& engine, std::size_t last, const Limits& limits,
           Visit visit) {
  const std::size_t cells = engine.partial_cells() + 2 * a.num_states();
  detail::check_budget(2 * detail::layer_bytes(cells, detail::count_bits(a, last)), limits, "counting layers");
  detail::Layer prev = engine.empty_layer();
  detail::Layer next = engine.empty_layer();
  engine.add(prev, a.initial(), detail::arch_state({}, a.sigma(), engine.k()), Natural(1));
  if (!visit(std::size_t{0}, prev)) return;
  for (std::size_t len = 1; len <= last; ++len) {
    engine.step(prev, next, len / a.sigma());
    std::swap(prev, next);
    if (!visit(len, prev)) return;
  }
}

Count count_empty_word(const Automaton& a, const Scope& scope) {
  const bool empty_accepted = a.is_final(a.initial());
  if (const auto* exact = std::get_if<ExactLength>(&scope); exact && exact->length != 0) return Count(0);
  return Count(empty_accepted ? 1 : 0);
}

}  // namespace

Count count(const Automaton& input, const Natural& k, const Scope& scope, bool perfect, Unit unit,
            const Limits& limits) {
  if (unit == Unit::Words && !input.deterministic()) {
    throw NondeterministicError("counting words needs a deterministic automaton; determinize it first");
  }
  if (sgn(k) < 0) throw Error("k must be non-negative");
  check_sigma(input.sigma(), limits);
  const Automaton a = trim(input);
  if (a.finals().empty()) return Count(0);
  if (perfect && k == 0) return count_empty_word(a, scope);

  const std::size_t sigma = a.sigma();
  if (const auto* exact = std::get_if<ExactLength>(&scope)) {
    if (k * sigma > exact->length) return Count(0);
    const std::size_t m = checked_size(exact->length, "length");
    const detail::LayerEngine engine(a, checked_size(k, "k"));
    Natural result = 0;
    sweep(a, engine, m, limits, [&](std::size_t len, const detail::Layer& layer) {
      if (len == m) result = engine.accepted(layer, perfect);
      return true;
    });
    return Count(result);
  }
  if (const auto* at_most = std::get_if<AtMostLength>(&scope)) {
    if (k * sigma > at_most->length) return Count(0);
    const std::size_t m = checked_size(at_most->length, "length");
    const detail::LayerEngine engine(a, checked_size(k, "k"));
    Natural result = 0;
    sweep(a, engine, m, limits, [&](std::size_t, const detail::Layer& layer) {
      result += engine.accepted(layer, perfect);
      return true;
    });
    return Count(result);
  }

  // Total. A qualifying path longer than n revisits a state, and pumping
  // that cycle keeps it qualifying (for perfect words, only cycles inside an
  // arch that add no new symbol do).
  const std::size_t n = a.num_states();
  if (k > 0) {
    const MaxUniversality max = max_universality_index(a, limits);
    if (max.kind() == MaxUniversality::Kind::Finite && k > Natural(static_cast<unsigned long>(max.value()))) {
      return Count(0);
    }
    if (!perfect && max.kind() == MaxUniversality::Kind::Unbounded) return Count::infinite();
  }
  const std::size_t kk = checked_size(k, "k");
  std::size_t finite_bound = n;
  std::size_t last = std::max<std::size_t>(kk, 1) * n * sigma + n;
  if (perfect) {
    finite_bound = kk * sigma + kk * (sigma - 1) * (n - 1);
    last = finite_bound + n;
  }
  const detail::LayerEngine engine(a, kk);
  Natural result = 0;
  bool infinite = false;
  sweep(a, engine, last, limits, [&](std::size_t len, const detail::Layer& layer) {
    Natural here = engine.accepted(layer, perfect);
    if (len <= finite_bound) {
      result += here;
    } else if (sgn(here) != 0) {
      infinite = true;
      return false;
    }
    return true;
  });
  return infinite ? Count::infinite() : Count(result);
}

}  // namespace subuniv
