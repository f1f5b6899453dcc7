#include <doctest.h>

#include <random>

#include "subuniv/deciders.hpp"
#include "subuniv/error.hpp"
#include "support.hpp"

using namespace subuniv;

TEST_CASE("naive universality") {
  const Alphabet ab = Alphabet::from_spec("ab");
  const Word w = ab.parse_word("baaababb");
  CHECK(oracle::naive_universality(w, ab, 3));
  CHECK_FALSE(oracle::naive_universality(w, ab, 4));
  CHECK(oracle::naive_universality(Word{}, ab, 0));
  CHECK(oracle::naive_iota(w, ab) == 3);
  CHECK_THROWS_AS(oracle::naive_universality(w, ab, 30, 1000), LimitError);
}

TEST_CASE("enumeration") {
  const Automaton single = parse_automaton(
      "alphabet: a b c\nstates: p q r s\ninitial: p\nfinal: s\ntrans: p a q\ntrans: q b r\ntrans: r c s\n");
  const auto words = oracle::enumerate_accepted(single, 3);
  REQUIRE(words.size() == 1);
  CHECK(single.alphabet().format_word(words[0].word) == "abc");
  CHECK(words[0].iota == 1);

  const Automaton b = test::load("permutations.aut");
  std::vector<std::string> perms;
  for (const auto& entry : oracle::enumerate_accepted(b, 3)) perms.push_back(b.alphabet().format_word(entry.word));
  CHECK(perms == std::vector<std::string>{"abc", "acb", "bac", "bca", "cab", "cba"});

  CHECK(oracle::enumerate_accepted(Automaton::empty_language(Alphabet::from_spec("ab")), 5).empty());
  CHECK_THROWS_AS(oracle::enumerate_accepted(test::load("cab.aut"), 12, 100), LimitError);
}

TEST_CASE("enumeration agrees with membership") {
  std::mt19937_64 rng(7);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Automaton a = oracle::random_automaton(1 + seed % 6, 1 + seed % 3, 0.3, seed).automaton;
    const auto listed = oracle::enumerate_accepted(a, 6);
    for (std::size_t i = 0; i < listed.size(); ++i) {
      CHECK(accepts(a, listed[i].word));
      if (i > 0) CHECK(listed[i - 1].word < listed[i].word);
    }
    std::size_t rejected = 0;
    for (int attempt = 0; attempt < 10000 && rejected < 100; ++attempt) {
      Word w(std::uniform_int_distribution<std::size_t>(0, 6)(rng));
      for (Symbol& x : w) x = static_cast<Symbol>(std::uniform_int_distribution<std::size_t>(0, a.sigma() - 1)(rng));
      const bool listed_here = std::any_of(listed.begin(), listed.end(), [&](const auto& e) { return e.word == w; });
      CHECK(accepts(a, w) == listed_here);
      if (!listed_here) ++rejected;
    }
  }
}

TEST_CASE("oracle counts") {
  const Automaton a = test::load("cab.aut");
  const oracle::OracleCounts o = oracle::oracle_count_rank(a, 1, 4);
  CHECK(o.words[4] == 9);
  CHECK(o.paths[4] == 9);

  const oracle::OracleCounts all = oracle::oracle_count_rank(a, 0, 5);
  const auto accepted = oracle::enumerate_accepted(a, 5);
  for (std::size_t len = 0; len <= 5; ++len) {
    const auto n = std::count_if(accepted.begin(), accepted.end(), [&](const auto& e) { return e.word.size() == len; });
    CHECK(all.words[len] == static_cast<unsigned long>(n));
  }

  const oracle::OracleCounts none = oracle::oracle_count_rank(Automaton::empty_language(a.alphabet()), 1, 5);
  for (const Natural& v : none.paths) CHECK(v == 0);
  CHECK(none.members.empty());
}

TEST_CASE("random automata") {
  const auto first = oracle::random_automaton(5, 2, 0.3, 42);
  const auto second = oracle::random_automaton(5, 2, 0.3, 42);
  CHECK(first.automaton == second.automaton);
  CHECK_FALSE(first.exhausted);

  const auto sparse = oracle::random_automaton(4, 2, 0.0, 3);
  CHECK_FALSE(sparse.exhausted);
  CHECK(sparse.automaton.num_transitions() == 0);
  CHECK(accepts(sparse.automaton, Word{}));

  const auto dense = oracle::random_automaton(2, 2, 1.0, 5);
  CHECK(dense.automaton.num_states() == 2);
  CHECK(dense.automaton.num_transitions() == 8);
  for (State p = 0; p < 2; ++p) {
    for (Symbol x = 0; x < 2; ++x) CHECK(dense.automaton.successors(p, x).size() == 2);
  }

  const auto dfa = oracle::random_dfa(6, 3, 0.7, 11);
  CHECK(dfa.automaton.deterministic());
}

TEST_CASE("product searches") {
  const Automaton a = test::load("cab.aut");
  CHECK(oracle::exists_universal_word(a, 2, 0, 6));
  CHECK_FALSE(oracle::exists_universal_word(a, 2, 0, 5));
  CHECK_FALSE(oracle::exists_universal_word(a, 3, 0, 20));
  CHECK(oracle::min_iota_upto(a, 6) == 0);
  CHECK(oracle::min_iota_upto(test::load("permutations.aut"), 12) == 1);
  CHECK(oracle::min_iota_upto(Automaton::empty_language(a.alphabet()), 5) == -1);
  const auto counts = oracle::path_counts(a, 3);
  CHECK(counts[2][2] == 1);
  CHECK(counts[3][2] == 4);
}

TEST_CASE("shortest universal words in the a-cycle automaton") {
  // Lengths found by the bounded search: (sigma - 1) k n + n - 1 with n = 4, sigma = 3.
  const Automaton c = test::load("aaa_cycle.aut");
  const std::vector<std::size_t> shortest = {3, 11, 19, 27};
  for (std::size_t k = 0; k < shortest.size(); ++k) {
    CHECK(oracle::exists_universal_word(c, k, 0, shortest[k]));
    CHECK_FALSE(oracle::exists_universal_word(c, k, 0, shortest[k] - 1));
    const auto w = witness_k_universal(c, k);
    REQUIRE(w.has_value());
    CHECK(w->size() >= shortest[k]);
  }
}
