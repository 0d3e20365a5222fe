#pragma once

// JSON encodings of the library's finite objects.

#include <string>
#include <string_view>

#include <json.hpp>

#include "varietas/bimodule.hpp"
#include "varietas/duality.hpp"
#include "varietas/lang.hpp"
#include "varietas/monoid.hpp"
#include "varietas/order.hpp"
#include "varietas/qfa.hpp"
#include "varietas/recognition.hpp"
#include "varietas/varieties.hpp"

namespace varietas::io {

using nlohmann::json;

// Decoders throw ParseError for malformed documents; structural checks of the decoded
// objects raise the library's usual errors.

json to_json(const FiniteMonoid& m);
FiniteMonoid monoid_from_json(const json& j);

json to_json(const TransitionMonoid& t, const Alphabet& alphabet);

/// {"alphabet", "states", "init", "delta": [[...] per state], "finals": [state indices]}
json to_json(const Dfa& d);
Dfa dfa_from_json(const json& j);

/// A regex string or a DFA object.
RegularLanguage language_from_json(const json& j, const Alphabet& alphabet = Alphabet{});
/// {"regex", "states", "dfa"}
json to_json(const RegularLanguage& l);

json to_json(const FinitePoset& p);
FinitePoset poset_from_json(const json& j);

/// {"size", "leq": 0/1 matrix}; decoding also accepts "covers": [[i, j], ...] in place of "leq",
/// taking the reflexive-transitive closure.
json to_json(const Fdl& d);
Fdl lattice_from_json(const json& j);

/// {"monoid", "lattice", "iota", "act_left": |M| rows, "act_right": |D| rows}; "lattice" may also be
/// a reference {"chain": n}, {"boolean": k} or {"free": k}.
json to_json(const LatticeBimodule& b);
LatticeBimodule bimodule_from_json(const json& j);

/// {"alphabet", "bimodule", "letters"}
json to_json(const FreeHomSpec& h);
FreeHomSpec free_hom_from_json(const json& j);

json to_json(const FreeMonoidHom& g);
/// {"source", "target", "images": {letter: word}} or "images" as a list.
FreeMonoidHom monoid_hom_from_json(const json& j);

/// {"codomain", "machine", "val", "provenance"}
json to_json(const UQuotient& e);
UQuotient uquotient_from_json(const json& j);

/// {"alphabet", "languages": [regex or DFA]}; the language set must be derivative-closed.
json to_json(const LocalBasicVariety& v);
LocalBasicVariety variety_from_json(const json& j);

/// {"families": {alphabet: [[lang, ...], ...]}, "homs": [...]}
CotheorySample cotheory_from_json(const json& j);

/// {"states", "alphabet", "partition": "nnar" (whitespace ignored), "unitaries": {"κ", letters,
/// "$"}, "init"}; a matrix is k*k [re, im] pairs, flat or nested by rows.
Kwqfa qfa_from_json(const json& j);
json to_json(const Kwqfa& q);

json to_json(const AxiomReport& r);
json to_json(const UQuotientReport& r);
json to_json(const DualityReport& r);
json to_json(const CotheoryReport& r);
json to_json(const QfaReport& r);
json to_json(const SimTrace& t);
json to_json(const MarginReport& r);
json to_json(const ProbeReport& r);

json parse_text(std::string_view text);
/// Reads and parses a JSON file; throws ParseError.
json read_file(const std::string& path);

}  // namespace varietas::io
