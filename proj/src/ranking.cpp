#include <algorithm>
#include <cmath>
#include <map>

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

void require_dfa(const Automaton& a, const char* what) {
  if (!a.deterministic()) {
    throw NondeterministicError(std::string(what) + " needs a deterministic automaton; determinize it first");
  }
}

// The successor of q on x in a DFA, or nullopt.
std::optional<State> delta(const Automaton& a, State q, Symbol x) {
  auto next = a.successors(q, x);
  if (next.empty()) return std::nullopt;
  return next.front();
}

// For every i in [0, |w|], whether w[0, i) is accepted with at least k arches.
std::vector<bool> qualifying_prefixes(const Automaton& a, std::span<const Symbol> w, std::size_t k) {
  std::vector<bool> out(w.size() + 1, false);
  std::optional<State> q = a.initial();
  detail::ArchState st = detail::arch_state({}, a.sigma(), k);
  const SymbolSet full = SymbolSet::full(a.sigma());
  for (std::size_t i = 0;; ++i) {
    out[i] = q && a.is_final(*q) && st.arches >= k;
    if (i == w.size() || !q) break;
    q = delta(a, *q, w[i]);
    if (st.arches < k) {
      st.rest = st.rest.with(w[i]);
      if (st.rest == full) {
        ++st.arches;
        st.rest = SymbolSet();
      }
    }
  }
  return out;
}

struct ScheduledSeed {
  State state;
  detail::ArchState arch;
};

}  // namespace

Count rank(const Automaton& input, std::span<const Symbol> w, const Natural& k, const Scope& scope,
           const Limits& limits) {
  require_dfa(input, "ranking");
  input.alphabet().check(w);
  if (sgn(k) < 0) throw Error("k must be non-negative");
  check_sigma(input.sigma(), limits);
  const Automaton a = trim(input);
  const std::size_t sigma = a.sigma();

  std::optional<std::size_t> m;
  if (const auto* exact = std::get_if<ExactLength>(&scope)) {
    if (k * sigma > exact->length) return Count(0);
    m = checked_size(exact->length, "length");
  } else if (const auto* at_most = std::get_if<AtMostLength>(&scope)) {
    if (k * sigma > at_most->length) return Count(0);
    m = checked_size(at_most->length, "length");
  } else if (k > 0 && !decide_esu(a, k, limits)) {
    return Count(0);
  }
  const std::size_t kk = checked_size(k, "k");
  const std::size_t n = a.num_states();
  const bool total = !m;
  const bool exact = std::holds_alternative<ExactLength>(scope);

  // Seeds join at the layer of their length; in the total scope layers are
  // counted from the end of the seed instead.
  std::map<std::size_t, std::vector<ScheduledSeed>> schedule;
  for (const Word& p : prefix_set(w, a.alphabet()).words) {
    if (m && p.size() > *m) continue;
    std::optional<State> q = a.initial();
    for (Symbol x : p) {
      if (!(q = delta(a, *q, x))) break;
    }
    if (!q) continue;
    schedule[total ? 0 : p.size()].push_back({*q, detail::arch_state(p, sigma, kk)});
  }

  const std::size_t last = total ? std::max<std::size_t>(kk, 1) * n * sigma + n : *m;
  const detail::LayerEngine engine(a, kk);
  const std::size_t cells = engine.partial_cells() + 2 * n;
  detail::check_budget(2 * detail::layer_bytes(cells, detail::count_bits(a, last)), limits, "ranking layers");
  detail::Layer prev = engine.empty_layer();
  detail::Layer next = engine.empty_layer();
  const Natural one(1);
  Natural below = 0;
  bool infinite = false;
  for (std::size_t len = 0; len <= last; ++len) {
    if (len > 0) {
      // Seeds in the total scope may carry arches beyond len / sigma.
      engine.step(prev, next, total ? kk : len / sigma);
      std::swap(prev, next);
    }
    if (auto it = schedule.find(len); it != schedule.end()) {
      for (const auto& seed : it->second) engine.add(prev, seed.state, seed.arch, one);
    }
    const Natural here = engine.accepted(prev, false);
    if (total && len > n) {
      if (sgn(here) != 0) {
        infinite = true;
        break;
      }
    } else if (!exact || len == *m) {
      below += here;
    }
  }
  if (infinite) return Count::infinite();

  // Proper prefixes of w precede w.
  const std::vector<bool> prefixes = qualifying_prefixes(a, w, kk);
  if (exact) {
    if (w.size() > *m && prefixes[*m]) below += 1;
  } else {
    const std::size_t limit = total ? w.size() : std::min(w.size(), *m + 1);
    for (std::size_t i = 0; i < limit; ++i) {
      if (prefixes[i]) below += 1;
    }
  }
  return Count(below);
}

namespace {

// Completion counts read backwards: layer t gives, per (state, arch state),
// the number of suffixes of length t (or at most t) that end in a final
// state with at least k arches.
class CompletionTables {
 public:
  CompletionTables(const Automaton& a, std::size_t k, std::size_t m, bool at_most, const Limits& limits)
      : a_(a), engine_(a, k), k_(k), m_(m), at_most_(at_most), full_(SymbolSet::full(a.sigma())) {
    const std::size_t cells = engine_.partial_cells() + a.num_states();
    const std::size_t per_layer = detail::layer_bytes(cells, detail::count_bits(a, m));
    if (per_layer * (m + 1) <= limits.memory_budget) {
      stride_ = m + 1;
    } else {
      stride_ = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(m + 1))));
      detail::check_budget(per_layer * (2 * stride_ + 1), limits, "unranking layers");
    }
    // Keep layers 0..m when they fit, otherwise every stride-th layer.
    detail::Layer layer = base();
    for (std::size_t t = 0; t <= m; ++t) {
      if (t > 0) {
        detail::Layer next = engine_.empty_layer();
        step(layer, next);
        layer = std::move(next);
      }
      if (stride_ > m || t % stride_ == 0) stored_[t] = layer;
    }
  }

  const detail::Layer& get(std::size_t t) {
    if (auto it = stored_.find(t); it != stored_.end()) return it->second;
    if (auto it = block_.find(t); it != block_.end()) return it->second;
    block_.clear();
    const std::size_t start = t / stride_ * stride_;
    detail::Layer layer = stored_.at(start);
    for (std::size_t u = start + 1; u <= std::min(start + stride_ - 1, m_); ++u) {
      detail::Layer next = engine_.empty_layer();
      step(layer, next);
      layer = std::move(next);
      block_[u] = layer;
    }
    return block_.at(t);
  }

  /// Count stored for (q, st) in layer.
  const Natural& at(const detail::Layer& layer, State q, const detail::ArchState& st) const {
    return st.arches >= k_ ? layer.universal[q] : layer.partial[engine_.cell(q, st.arches, st.rest)];
  }

  detail::ArchState extend(detail::ArchState st, Symbol x) const {
    if (st.arches >= k_) return st;
    st.rest = st.rest.with(x);
    if (st.rest == full_) {
      ++st.arches;
      st.rest = SymbolSet();
    }
    return st;
  }

 private:
  detail::Layer base() const {
    detail::Layer layer = engine_.empty_layer();
    for (State f : a_.finals()) layer.universal[f] = 1;
    return layer;
  }

  void step(const detail::Layer& prev, detail::Layer& next) const {
    const std::size_t subsets = std::size_t{1} << a_.sigma();
    for (State q = 0; q < a_.num_states(); ++q) {
      for (std::size_t c = 0; c < k_; ++c) {
        for (SymbolSet::Bits bits = 0; bits + 1 < subsets; ++bits) {
          const detail::ArchState st{c, SymbolSet(bits)};
          Natural& out = next.partial[engine_.cell(q, c, st.rest)];
          for (Symbol x = 0; x < a_.sigma(); ++x) {
            if (auto r = delta(a_, q, x)) out += at(prev, *r, extend(st, x));
          }
        }
      }
      Natural& out = next.universal[q];
      if (at_most_ && a_.is_final(q)) out = 1;
      for (Symbol x = 0; x < a_.sigma(); ++x) {
        if (auto r = delta(a_, q, x)) out += prev.universal[*r];
      }
    }
  }

  const Automaton& a_;
  detail::LayerEngine engine_;
  std::size_t k_;
  std::size_t m_;
  bool at_most_;
  SymbolSet full_;
  std::size_t stride_ = 1;
  std::map<std::size_t, detail::Layer> stored_;
  std::map<std::size_t, detail::Layer> block_;
};

}  // namespace

std::optional<Word> unrank(const Automaton& input, const Natural& k, const Scope& scope, const Natural& index,
                           const Limits& limits) {
  require_dfa(input, "unranking");
  if (std::holds_alternative<Total>(scope)) throw Error("unranking needs a bounded length scope");
  if (sgn(k) < 0) throw Error("k must be non-negative");
  check_sigma(input.sigma(), limits);
  if (sgn(index) < 0) return std::nullopt;
  const bool at_most = std::holds_alternative<AtMostLength>(scope);
  const Natural& length = at_most ? std::get<AtMostLength>(scope).length : std::get<ExactLength>(scope).length;
  const Automaton a = trim(input);
  if (k * a.sigma() > length || a.finals().empty()) return std::nullopt;
  const std::size_t m = checked_size(length, "length");
  const std::size_t kk = checked_size(k, "k");

  CompletionTables tables(a, kk, m, at_most, limits);
  State q = a.initial();
  detail::ArchState st = detail::arch_state({}, a.sigma(), kk);
  if (index >= tables.at(tables.get(m), q, st)) return std::nullopt;

  Natural remaining = index;
  Word word;
  for (std::size_t t = m; t > 0; --t) {
    if (at_most && a.is_final(q) && st.arches >= kk) {
      if (remaining == 0) return word;
      remaining -= 1;
    }
    const detail::Layer& layer = tables.get(t - 1);
    bool moved = false;
    for (Symbol x = 0; x < a.sigma() && !moved; ++x) {
      const auto r = delta(a, q, x);
      if (!r) continue;
      const detail::ArchState next = tables.extend(st, x);
      const Natural& completions = tables.at(layer, *r, next);
      if (remaining < completions) {
        word.push_back(x);
        q = *r;
        st = next;
        moved = true;
      } else {
        remaining -= completions;
      }
    }
    if (!moved) throw Error("internal error: unranking descent lost its way");
  }
  return word;
}

}  // namespace subuniv
