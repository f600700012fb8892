#include "wshift/subshift_spec.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "wshift/errors.hpp"
#include "wshift/gallery.hpp"

namespace wshift {

namespace {

using nlohmann::json;

const json& require(const json& doc, const char* key) {
  if (!doc.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return doc.at(key);
}

std::size_t as_size(const json& value, const char* what) {
  if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<std::int64_t>() >= 0))
    throw InputError(std::string(what) + " must be a nonnegative integer");
  return value.get<std::size_t>();
}

Word word_from_json(const json& value, std::size_t k) {
  if (value.is_string()) return parse_word(value.get<std::string>(), k);
  if (value.is_array()) {
    Word w;
    for (const auto& s : value) {
      const auto sym = as_size(s, "symbol");
      if (sym >= k) throw InputError("symbol " + std::to_string(sym) + " out of range");
      w.push_back(static_cast<Symbol>(sym));
    }
    return w;
  }
  throw InputError("forbidden word must be a string or an array of symbols");
}

}  // namespace

void validate(const SubshiftSpec& spec) {
  const auto k = spec.alphabet.size();
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SftPresentation>) {
          for (const auto& w : p.forbidden) {
            if (w.empty()) throw InputError("forbidden words must be nonempty");
            if (!spec.alphabet.contains(w)) throw InputError("forbidden word uses a symbol outside the alphabet");
          }
        } else if constexpr (std::is_same_v<T, AutomatonPresentation>) {
          if (p.states == 0) throw InputError("automaton needs at least one state");
          for (const auto& e : p.edges) {
            if (e.from >= p.states || e.to >= p.states) throw InputError("automaton edge references a missing state");
            if (e.symbol >= k)
              throw InputError("automaton edge symbol " + std::to_string(e.symbol) + " out of range for alphabet of size " +
                               std::to_string(k));
          }
          for (auto s : p.start)
            if (s >= p.states) throw InputError("start state out of range");
        } else {
          if (p.name.empty()) throw InputError("builtin_name must be nonempty");
          // Parameter checks live with the gallery rules.
          (void)open_source(spec);
        }
      },
      spec.presentation);
}

SubshiftSpec parse_spec(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("spec document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("spec document must be a JSON object");

  SubshiftSpec spec{Alphabet(as_size(require(doc, "alphabet_size"), "alphabet_size")), {}};
  const auto k = spec.alphabet.size();
  const auto& kind_value = require(doc, "kind");
  if (!kind_value.is_string()) throw InputError("kind must be a string");
  const auto kind = kind_value.get<std::string>();

  try {
    if (kind == "sft") {
      SftPresentation sft;
      const auto& forbidden = require(doc, "forbidden");
      if (!forbidden.is_array()) throw InputError("forbidden must be a list");
      for (const auto& w : forbidden) sft.forbidden.push_back(word_from_json(w, k));
      spec.presentation = std::move(sft);
    } else if (kind == "automaton") {
      AutomatonPresentation aut;
      aut.states = as_size(require(doc, "states"), "states");
      const auto& edges = require(doc, "edges");
      if (!edges.is_array()) throw InputError("edges must be a list");
      for (const auto& e : edges) {
        if (!e.is_object()) throw InputError("edge must be an object {from, symbol, to}");
        aut.edges.push_back({as_size(require(e, "from"), "from"),
                             static_cast<Symbol>(as_size(require(e, "symbol"), "symbol")),
                             as_size(require(e, "to"), "to")});
      }
      if (doc.contains("start")) {
        const auto& start = doc.at("start");
        if (start.is_array()) {
          for (const auto& s : start) aut.start.push_back(as_size(s, "start"));
          if (aut.start.empty()) throw InputError("start list must be nonempty when given");
        } else {
          aut.start.push_back(as_size(start, "start"));
        }
      }
      spec.presentation = std::move(aut);
    } else if (kind == "builtin") {
      BuiltinPresentation builtin;
      const auto& name = require(doc, "builtin_name");
      if (!name.is_string()) throw InputError("builtin_name must be a string");
      builtin.name = name.get<std::string>();
      if (doc.contains("params")) {
        if (!doc.at("params").is_object()) throw InputError("params must be an object");
        builtin.params = doc.at("params");
      }
      spec.presentation = std::move(builtin);
    } else {
      throw InputError("unknown kind '" + kind + "' (expected sft, automaton or builtin)");
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed spec document: ") + e.what());
  }
  validate(spec);
  return spec;
}

SubshiftSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open spec file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_spec(buffer.str());
}

namespace {

std::size_t parse_count(std::string_view text, std::string_view whole) {
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end)
    throw InputError("malformed builtin name '" + std::string(whole) + "'");
  return value;
}

}  // namespace

namespace {

SubshiftSpec checked(SubshiftSpec spec) {
  validate(spec);
  return spec;
}

}  // namespace

SubshiftSpec builtin_spec(std::string_view name) {
  const auto colon = name.find(':');
  const auto head = name.substr(0, colon);
  const auto arg = colon == std::string_view::npos ? std::string_view{} : name.substr(colon + 1);

  if (head == "golden" && colon == std::string_view::npos)
    return checked({Alphabet(2), BuiltinPresentation{"golden", json::object()}});
  if (head == "full" && !arg.empty()) {
    const auto k = parse_count(arg, name);
    return checked({Alphabet(k), BuiltinPresentation{"full", {{"k", k}}}});
  }
  if (head == "gap" && !arg.empty()) {
    json params;
    if (arg == "n") {
      params = {{"rule", "n"}};
    } else {
      params = {{"rule", "constant"}, {"value", parse_count(arg, name)}};
    }
    return checked({Alphabet(2), BuiltinPresentation{"gap", params}});
  }
  if (head == "prop3" && !arg.empty())
    return checked({Alphabet(2), BuiltinPresentation{"prop3", {{"base", parse_count(arg, name)}}}});
  if (head == "sft" && colon != std::string_view::npos) {
    // Binary shorthand: "sft:11,101".
    SftPresentation sft;
    std::size_t start = 0;
    while (start <= arg.size() && !arg.empty()) {
      const auto comma = arg.find(',', start);
      sft.forbidden.push_back(parse_word(arg.substr(start, comma - start), 2));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return checked({Alphabet(2), std::move(sft)});
  }
  throw InputError("unknown builtin '" + std::string(name) + "'");
}

SubshiftSpec resolve_spec_argument(std::string_view argument) {
  const std::filesystem::path path{std::string(argument)};
  if (argument.ends_with(".json") || std::filesystem::exists(path)) return load_spec(path);
  return builtin_spec(argument);
}

json to_json(const SubshiftSpec& spec) {
  const auto k = spec.alphabet.size();
  json out = {{"alphabet_size", k}};
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SftPresentation>) {
          out["kind"] = "sft";
          out["forbidden"] = json::array();
          for (const auto& w : p.forbidden) out["forbidden"].push_back(format_word(w, k));
        } else if constexpr (std::is_same_v<T, AutomatonPresentation>) {
          out["kind"] = "automaton";
          out["states"] = p.states;
          out["edges"] = json::array();
          for (const auto& e : p.edges) out["edges"].push_back({{"from", e.from}, {"symbol", e.symbol}, {"to", e.to}});
          if (!p.start.empty()) out["start"] = p.start;
        } else {
          out["kind"] = "builtin";
          out["builtin_name"] = p.name;
          out["params"] = p.params;
        }
      },
      spec.presentation);
  return out;
}

std::string describe(const SubshiftSpec& spec) { return to_json(spec).dump(); }

}  // namespace wshift
