#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "subuniv/counting.hpp"
#include "subuniv/deciders.hpp"
#include "subuniv/error.hpp"
#include "subuniv/oracle.hpp"
#include "subuniv/regex.hpp"
#include "subuniv/universality.hpp"

namespace subuniv::cli {

namespace {

using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string automaton_file;
  std::optional<std::string> regex;
  std::string alphabet;
  std::string k;
  std::string length;
  std::string max_length;
  bool total = false;
  bool perfect = false;
  bool paths = false;
  bool words = false;
  bool json = false;
  bool determinize = false;
  std::size_t sigma_cap = Limits{}.sigma_cap;
  std::size_t memory_mib = Limits{}.memory_budget >> 20;
  std::string positional;
};

Natural parse_number(const std::string& text, const char* what) {
  auto value = parse_natural(text);
  if (!value) throw UsageError(std::string(what) + " must be a non-negative decimal integer, got '" + text + "'");
  return *value;
}

class Context {
 public:
  Context(const Options& opts, std::ostream& err) : opts_(opts), err_(err) {
    limits_.sigma_cap = opts.sigma_cap;
    limits_.memory_budget = opts.memory_mib << 20;
  }

  const Limits& limits() const { return limits_; }

  bool has_source() const { return !opts_.automaton_file.empty() || opts_.regex.has_value(); }

  Automaton automaton(bool want_dfa = false) {
    if (!opts_.automaton_file.empty() && opts_.regex.has_value()) {
      throw UsageError("give either --automaton or --regex, not both");
    }
    std::optional<Automaton> a;
    if (!opts_.automaton_file.empty()) {
      std::ifstream in(opts_.automaton_file);
      if (!in) throw Error("cannot read " + opts_.automaton_file);
      std::stringstream buffer;
      buffer << in.rdbuf();
      a = parse_automaton(buffer.str());
      inputs_["automaton"] = opts_.automaton_file;
    } else if (opts_.regex.has_value()) {
      if (opts_.alphabet.empty()) throw UsageError("--regex needs --alphabet");
      a = compile_regex(*opts_.regex, Alphabet::from_spec(opts_.alphabet));
      inputs_["regex"] = *opts_.regex;
      inputs_["alphabet"] = a->alphabet().names();
    } else {
      throw UsageError("an automaton is required: --automaton FILE or --regex PATTERN --alphabet SYMBOLS");
    }
    if (want_dfa && opts_.determinize && !a->deterministic()) {
      DeterminizeOptions d;
      d.warn = [this](const std::string& message) { warn(message); };
      a = determinize(*a, d);
      inputs_["determinized"] = true;
    }
    return *a;
  }

  /// Alphabet from --alphabet, or from the automaton when one is given.
  Alphabet alphabet() {
    if (!opts_.alphabet.empty() && opts_.automaton_file.empty() && !opts_.regex.has_value()) {
      Alphabet sigma = Alphabet::from_spec(opts_.alphabet);
      inputs_["alphabet"] = sigma.names();
      return sigma;
    }
    if (has_source()) return automaton().alphabet();
    throw UsageError("--alphabet is required");
  }

  Natural k() {
    if (opts_.k.empty()) throw UsageError("-k is required");
    Natural k = parse_number(opts_.k, "k");
    inputs_["k"] = k.get_str();
    return k;
  }

  Scope scope(bool allow_total) {
    const int given = !opts_.length.empty() + !opts_.max_length.empty() + opts_.total;
    if (given != 1) {
      throw UsageError(allow_total ? "give exactly one of --length, --max-length, --total"
                                   : "give exactly one of --length, --max-length");
    }
    if (!opts_.length.empty()) {
      Natural m = parse_number(opts_.length, "length");
      inputs_["scope"] = "exact";
      inputs_["length"] = m.get_str();
      return ExactLength{m};
    }
    if (!opts_.max_length.empty()) {
      Natural m = parse_number(opts_.max_length, "max-length");
      inputs_["scope"] = "at-most";
      inputs_["length"] = m.get_str();
      return AtMostLength{m};
    }
    if (!allow_total) throw UsageError("--total is not supported here");
    inputs_["scope"] = "total";
    return Total{};
  }

  Json& inputs() { return inputs_; }
  void warn(const std::string& message) { err_ << "warning: " << message << '\n'; }

 private:
  const Options& opts_;
  std::ostream& err_;
  Limits limits_;
  Json inputs_ = Json::object();
};

struct Outcome {
  std::string text;
  Json result;
};

std::string text_of_count(const Count& c) { return c.to_string(); }

Outcome dispatch(const std::string& command, const Options& opts, Context& ctx) {
  if (command == "iota" || command == "arches") {
    const Alphabet sigma = ctx.alphabet();
    const Word w = sigma.parse_word(opts.positional);
    ctx.inputs()["word"] = opts.positional;
    if (command == "iota") {
      const std::size_t value = iota(w, sigma);
      return {std::to_string(value), value};
    }
    const ArchFactorization f = arch_factorize(w, sigma);
    Json arches = Json::array();
    std::string text;
    for (const Word& arch : f.arches) {
      arches.push_back(sigma.format_word(arch));
      text += "(" + sigma.format_word(arch) + ")";
    }
    text += " " + sigma.format_word(f.rest);
    return {text, Json{{"arches", arches}, {"rest", sigma.format_word(f.rest)}, {"iota", f.index()}}};
  }
  if (command == "esu" || command == "asu") {
    const Automaton a = ctx.automaton();
    const Natural k = ctx.k();
    const bool value = command == "esu" ? decide_esu(a, k, ctx.limits()) : decide_asu(a, k);
    return {value ? "true" : "false", value};
  }
  if (command == "min-index") {
    const auto value = min_universality_index(ctx.automaton());
    if (!value) return {"empty", nullptr};
    return {std::to_string(*value), *value};
  }
  if (command == "max-index") {
    const MaxUniversality value = max_universality_index(ctx.automaton(), ctx.limits());
    switch (value.kind()) {
      case MaxUniversality::Kind::EmptyLanguage:
        return {"empty", nullptr};
      case MaxUniversality::Kind::Unbounded:
        return {"unbounded", "unbounded"};
      case MaxUniversality::Kind::Finite:
        return {std::to_string(value.value()), value.value()};
    }
  }
  if (command == "witness") {
    const Automaton a = ctx.automaton();
    const auto w = witness_k_universal(a, ctx.k(), ctx.limits());
    if (!w) return {"none", nullptr};
    return {a.alphabet().format_word(*w), a.alphabet().format_word(*w)};
  }
  if (command == "count") {
    if (opts.paths && opts.words) throw UsageError("give at most one of --paths, --words");
    const Automaton a = ctx.automaton(opts.words);
    const Natural k = ctx.k();
    const Scope scope = ctx.scope(true);
    const Unit unit = opts.words ? Unit::Words : Unit::Paths;
    ctx.inputs()["perfect"] = opts.perfect;
    ctx.inputs()["unit"] = opts.words ? "words" : "paths";
    const Count value = count(a, k, scope, opts.perfect, unit, ctx.limits());
    return {text_of_count(value), text_of_count(value)};
  }
  if (command == "rank") {
    const Automaton a = ctx.automaton(true);
    const Word w = a.alphabet().parse_word(opts.positional);
    ctx.inputs()["word"] = opts.positional;
    const Natural k = ctx.k();
    const Count value = rank(a, w, k, ctx.scope(true), ctx.limits());
    return {text_of_count(value), text_of_count(value)};
  }
  if (command == "unrank") {
    const Automaton a = ctx.automaton(true);
    const Natural index = parse_number(opts.positional, "index");
    ctx.inputs()["index"] = index.get_str();
    const Natural k = ctx.k();
    const auto w = unrank(a, k, ctx.scope(false), index, ctx.limits());
    if (!w) throw Error("index " + index.get_str() + " is out of range");
    return {a.alphabet().format_word(*w), a.alphabet().format_word(*w)};
  }
  if (command == "compile" || command == "trim" || command == "determinize") {
    Automaton a = ctx.automaton();
    if (command == "trim") a = trim(a);
    if (command == "determinize") {
      DeterminizeOptions d;
      d.warn = [&](const std::string& message) { ctx.warn(message); };
      a = determinize(a, d);
    }
    std::string text = serialize(a);
    if (!text.empty() && text.back() == '\n') text.pop_back();
    return {text, text};
  }
  if (command == "oracle") {
    const Automaton a = ctx.automaton();
    const std::size_t k = to_size(ctx.k()).value_or(SIZE_MAX);
    const Scope scope = ctx.scope(false);
    const Natural& m = std::holds_alternative<ExactLength>(scope) ? std::get<ExactLength>(scope).length
                                                                   : std::get<AtMostLength>(scope).length;
    const auto len = to_size(m);
    if (!len) throw LimitError("length is too large for enumeration");
    const oracle::OracleCounts counts = oracle::oracle_count_rank(a, k, *len);
    Json lengths = Json::array();
    std::string text;
    for (std::size_t l = 0; l <= *len; ++l) {
      lengths.push_back({{"length", l},
                         {"words", counts.words[l].get_str()},
                         {"paths", counts.paths[l].get_str()},
                         {"perfect_words", counts.perfect_words[l].get_str()},
                         {"perfect_paths", counts.perfect_paths[l].get_str()}});
      text += "length " + std::to_string(l) + ": words " + counts.words[l].get_str() + ", paths " +
              counts.paths[l].get_str() + ", perfect words " + counts.perfect_words[l].get_str() +
              ", perfect paths " + counts.perfect_paths[l].get_str() + "\n";
    }
    Json members = Json::array();
    const bool exact = std::holds_alternative<ExactLength>(scope);
    for (const Word& w : counts.members) {
      if (exact && w.size() != *len) continue;
      members.push_back(a.alphabet().format_word(w));
      text += std::to_string(members.size() - 1) + " " + a.alphabet().format_word(w) + "\n";
    }
    text.pop_back();
    return {text, Json{{"lengths", lengths}, {"members", members}}};
  }
  throw UsageError("unknown command " + command);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Subsequence universality of regular languages"};
  app.name("subuniv");
  app.require_subcommand(1);
  Options opts;

  struct Spec {
    const char* name;
    const char* help;
    bool source;
    bool k;
    bool scope;
    const char* positional;
  };
  const std::vector<Spec> specs = {
      {"iota", "universality index of a word", false, false, false, "word"},
      {"arches", "arch factorization of a word", false, false, false, "word"},
      {"esu", "does some accepted word have at least k arches", true, true, false, nullptr},
      {"asu", "does every accepted word have at least k arches", true, true, false, nullptr},
      {"min-index", "least universality index over the language", true, false, false, nullptr},
      {"max-index", "greatest universality index over the language", true, false, false, nullptr},
      {"witness", "an accepted word with at least k arches", true, true, false, nullptr},
      {"count", "count k-universal accepting paths or words", true, true, true, nullptr},
      {"rank", "number of smaller k-universal accepted words", true, true, true, "word"},
      {"unrank", "k-universal accepted word of a given rank", true, true, true, "index"},
      {"compile", "regular expression to automaton", true, false, false, nullptr},
      {"trim", "remove useless states", true, false, false, nullptr},
      {"determinize", "subset construction", true, false, false, nullptr},
      {"oracle", "", true, true, true, nullptr},
  };
  for (const Spec& spec : specs) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    if (std::string(spec.name) == "oracle") sub->group("");
    sub->add_option("--alphabet", opts.alphabet, "symbols, e.g. abc or \"x y z\"");
    if (spec.source || spec.positional) {
      sub->add_option("--automaton", opts.automaton_file, "automaton file");
      sub->add_option("--regex", opts.regex, "regular expression over single-character symbols");
      sub->add_option("--sigma-cap", opts.sigma_cap, "largest alphabet for subset tables");
      sub->add_option("--memory-budget", opts.memory_mib, "table memory budget in MiB");
    }
    if (spec.k) sub->add_option("-k", opts.k, "universality parameter");
    if (spec.scope) {
      sub->add_option("--length", opts.length, "exact length");
      sub->add_option("--max-length", opts.max_length, "maximum length");
      sub->add_flag("--total", opts.total, "all lengths");
    }
    const std::string name = spec.name;
    if (name == "count") {
      sub->add_flag("--perfect", opts.perfect, "exactly k arches and an empty rest");
      sub->add_flag("--paths", opts.paths, "count accepting paths (default)");
      sub->add_flag("--words", opts.words, "count words; needs a deterministic automaton");
    }
    if (name == "count" || name == "rank" || name == "unrank") {
      sub->add_flag("--determinize", opts.determinize, "determinize a nondeterministic input first");
    }
    if (spec.positional) sub->add_option(spec.positional, opts.positional, spec.positional)->required();
    sub->add_flag("--json", opts.json, "emit a JSON object");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  Context ctx(opts, err);
  try {
    Outcome outcome = dispatch(command, opts, ctx);
    if (opts.json) {
      Json doc;
      doc["command"] = command;
      doc["inputs"] = ctx.inputs();
      doc["result"] = outcome.result;
      out << doc.dump() << '\n';
    } else {
      out << outcome.text << '\n';
    }
    return 0;
  } catch (const UsageError& e) {
    err << "subuniv: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "subuniv: " << e.what() << '\n';
    return 1;
  } catch (const std::bad_alloc&) {
    err << "subuniv: out of memory\n";
    return 1;
  }
}

}  // namespace subuniv::cli
