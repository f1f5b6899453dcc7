#include <algorithm>
#include <bit>
#include <map>

#include "layers.hpp"
#include "subuniv/counting.hpp"
#include "subuniv/error.hpp"

namespace subuniv {

namespace detail {

ArchState arch_state(std::span<const Symbol> w, std::size_t sigma, std::size_t k) {
  ArchState st;
  const SymbolSet full = SymbolSet::full(sigma);
  for (Symbol x : w) {
    if (st.arches >= k) break;
    st.rest = st.rest.with(x);
    if (st.rest == full) {
      ++st.arches;
      st.rest = SymbolSet();
    }
  }
  if (st.arches >= k) st.rest = SymbolSet();
  return st;
}

LayerEngine::LayerEngine(const Automaton& a, std::size_t k)
    : automaton_(a),
      reverse_(a),
      n_(a.num_states()),
      sigma_(a.sigma()),
      k_(k),
      subsets_(std::size_t{1} << a.sigma()),
      full_(SymbolSet::full(a.sigma())) {}

Layer LayerEngine::empty_layer() const {
  Layer layer;
  layer.partial.resize(partial_cells());
  layer.universal.resize(n_);
  layer.perfect.resize(n_);
  return layer;
}

void LayerEngine::clear(Layer& layer) const {
  for (auto* part : {&layer.partial, &layer.universal, &layer.perfect}) {
    for (Natural& v : *part) {
      if (sgn(v) != 0) v = 0;
    }
  }
}

void LayerEngine::step(const Layer& prev, Layer& next, std::size_t arch_bound) const {
  const std::size_t c_max = k_ == 0 ? 0 : std::min(arch_bound, k_ - 1);
  for (State target = 0; target < n_; ++target) {
    for (std::size_t c = 0; k_ > 0 && c <= c_max; ++c) {
      for (SymbolSet::Bits bits = 0; bits + 1 < subsets_; ++bits) {
        const SymbolSet rest(bits);
        Natural& t = next.partial[cell(target, c, rest)];
        t = 0;
        if (rest.empty()) {
          // The previous symbol completed an arch.
          if (c == 0) continue;
          for (Symbol x = 0; x < sigma_; ++x) {
            for (State q : reverse_.predecessors(target, x)) {
              const Natural& s = prev.partial[cell(q, c - 1, full_.without(x))];
              if (sgn(s) != 0) t += s;
            }
          }
          continue;
        }
        for (SymbolSet::Bits left = bits; left != 0; left &= left - 1) {
          const Symbol x = static_cast<Symbol>(std::countr_zero(left));
          for (State q : reverse_.predecessors(target, x)) {
            const Natural& same = prev.partial[cell(q, c, rest)];
            if (sgn(same) != 0) t += same;
            const Natural& fresh = prev.partial[cell(q, c, rest.without(x))];
            if (sgn(fresh) != 0) t += fresh;
          }
        }
      }
    }
    Natural& u = next.universal[target];
    Natural& p = next.perfect[target];
    u = 0;
    p = 0;
    for (Symbol x = 0; x < sigma_; ++x) {
      for (State q : reverse_.predecessors(target, x)) {
        if (sgn(prev.universal[q]) != 0) u += prev.universal[q];
        if (k_ == 0) continue;
        const Natural& s = prev.partial[cell(q, k_ - 1, full_.without(x))];
        if (sgn(s) != 0) p += s;
      }
    }
    u += p;
  }
}

void LayerEngine::add(Layer& layer, State q, ArchState st, const Natural& paths) const {
  if (st.arches >= k_) {
    layer.universal[q] += paths;
  } else {
    layer.partial[cell(q, st.arches, st.rest)] += paths;
  }
}

Natural LayerEngine::accepted(const Layer& layer, bool perfect) const {
  Natural total = 0;
  for (State q : automaton_.finals()) total += perfect ? layer.perfect[q] : layer.universal[q];
  return total;
}

std::size_t count_bits(const Automaton& a, std::size_t length) {
  std::size_t out = 1;
  for (State q = 0; q < a.num_states(); ++q) {
    std::size_t d = 0;
    for (Symbol x = 0; x < a.sigma(); ++x) d += a.successors(q, x).size();
    out = std::max(out, d);
  }
  return static_cast<std::size_t>(std::bit_width(out)) * length + 1;
}

std::size_t layer_bytes(std::size_t cells, std::size_t bits) {
  return cells * (sizeof(Natural) + 8 * ((bits + 63) / 64));
}

void check_budget(std::size_t bytes, const Limits& limits, const char* what) {
  if (bytes > limits.memory_budget) {
    throw LimitError(std::string(what) + " needs about " + std::to_string(bytes >> 20) +
                     " MiB, above the memory budget of " + std::to_string(limits.memory_budget >> 20) + " MiB");
  }
}

std::vector<Natural> paths_labelled(const Automaton& a, std::span<const Symbol> w) {
  a.alphabet().check(w);
  std::vector<Natural> current(a.num_states());
  current[a.initial()] = 1;
  std::vector<Natural> next(a.num_states());
  for (Symbol x : w) {
    for (Natural& v : next) v = 0;
    for (State q = 0; q < a.num_states(); ++q) {
      if (sgn(current[q]) == 0) continue;
      for (State r : a.successors(q, x)) next[r] += current[q];
    }
    current.swap(next);
  }
  return current;
}

}  // namespace detail

PrefixSet prefix_set(std::span<const Symbol> w, const Alphabet& alphabet) {
  alphabet.check(w);
  PrefixSet set;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (Symbol x = 0; x < w[i]; ++x) {
      Word p(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
      p.push_back(x);
      set.words.push_back(std::move(p));
    }
  }
  std::sort(set.words.begin(), set.words.end());
  return set;
}

class TableBuilder {
 public:
  static Tables build(const Automaton& a, std::size_t m, std::size_t k, const Seed& seed, const Limits& limits) {
    if (k == 0) throw Error("path tables need k >= 1; k = 0 counts every path");
    check_sigma(a.sigma(), limits);
    const detail::LayerEngine engine(a, k);
    const std::size_t cells = engine.partial_cells() + a.num_states();
    detail::check_budget(detail::layer_bytes(cells, detail::count_bits(a, m)) * (m + 1), limits, "path tables");

    // Seeds keyed by the layer they join.
    std::map<std::size_t, std::vector<std::pair<Word, std::vector<Natural>>>> schedule;
    if (const auto* prefixes = std::get_if<PrefixSet>(&seed)) {
      for (const Word& p : prefixes->words) {
        if (p.size() > m) {
          a.alphabet().check(p);
          continue;
        }
        schedule[p.size()].emplace_back(p, detail::paths_labelled(a, p));
      }
    } else {
      std::vector<Natural> start(a.num_states());
      start[a.initial()] = 1;
      schedule[0].emplace_back(Word{}, std::move(start));
    }

    Tables tables{PathTable(a.num_states(), k, a.sigma()), UniversalTable()};
    std::vector<detail::Layer> layers;
    layers.reserve(m + 1);
    for (std::size_t len = 0; len <= m; ++len) {
      detail::Layer layer = engine.empty_layer();
      if (len > 0) engine.step(layers.back(), layer, len / a.sigma());
      if (auto it = schedule.find(len); it != schedule.end()) {
        for (const auto& [p, paths] : it->second) {
          const detail::ArchState st = detail::arch_state(p, a.sigma(), k);
          for (State q = 0; q < a.num_states(); ++q) {
            if (sgn(paths[q]) != 0) engine.add(layer, q, st, paths[q]);
          }
        }
      }
      layers.push_back(std::move(layer));
    }
    for (auto& layer : layers) {
      tables.paths.layers_.push_back(std::move(layer.partial));
      tables.universal.layers_.push_back(std::move(layer.universal));
    }
    return tables;
  }
};

Tables build_tables(const Automaton& a, std::size_t m, std::size_t k, const Seed& seed, const Limits& limits) {
  return TableBuilder::build(a, m, k, seed, limits);
}

}  // namespace subuniv
