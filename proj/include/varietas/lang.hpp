#pragma once

// Regular languages as canonical minimal DFAs.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "varietas/monoid.hpp"

namespace varietas {

/// Words are plain strings of single-character symbols; the empty string is the empty word.
using Word = std::string;

/// Ordered list of distinct single-character symbols.
class Alphabet {
public:
    Alphabet() = default;
    /// Throws StructuralError on duplicates, whitespace or reserved end-marker characters.
    explicit Alphabet(std::string symbols);

    std::size_t size() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }
    char operator[](std::size_t i) const { return symbols_[i]; }
    const std::string& str() const noexcept { return symbols_; }

    std::optional<std::size_t> index_of(char c) const;
    bool contains(char c) const { return index_of(c).has_value(); }
    bool contains_word(std::string_view w) const;
    /// Throws AlphabetMismatch naming the first foreign letter.
    void require_word(std::string_view w) const;

    auto operator<=>(const Alphabet&) const = default;

private:
    std::string symbols_;
};

/// All words of length <= n in length-lexicographic order.
std::vector<Word> words_up_to(const Alphabet& alphabet, std::size_t n);

/// Two-sided context x -> left x right.
struct Context {
    Word left;
    Word right;
};

/// Homomorphism of free monoids g: source* -> target*, given on letters.
struct FreeMonoidHom {
    Alphabet source;
    Alphabet target;
    std::vector<Word> image;  // indexed by source letter position

    FreeMonoidHom(Alphabet source, Alphabet target, std::vector<Word> image);
    static FreeMonoidHom identity(const Alphabet& a);

    Word apply(std::string_view w) const;
};

/// Finite join of finite meets of words. An empty outer list is bottom, an empty inner list is top.
struct DiamondTerm {
    std::vector<std::vector<Word>> clauses;
};

/// A complete deterministic automaton. delta is row-major: delta[q * |alphabet| + letter].
struct Dfa {
    Alphabet alphabet;
    std::size_t states = 0;
    std::size_t init = 0;
    std::vector<std::size_t> delta;
    std::vector<bool> finals;

    /// Throws StructuralError if the table is not total or indices are out of range.
    void validate() const;

    std::size_t next(std::size_t q, std::size_t letter) const { return delta[q * alphabet.size() + letter]; }
    /// Runs a word from q; throws AlphabetMismatch on foreign letters.
    std::size_t run(std::size_t q, std::string_view w) const;
};

class RegularLanguage;

/// Canonical minimal automaton: reachable only, Moore-minimized, states numbered by
/// breadth-first discovery from init in alphabet order.
RegularLanguage minimize(const Dfa& dfa);

class RegularLanguage {
public:
    RegularLanguage() = delete;

    static RegularLanguage empty(const Alphabet& a);
    static RegularLanguage universal(const Alphabet& a);

    const Dfa& dfa() const noexcept { return dfa_; }
    const Alphabet& alphabet() const noexcept { return dfa_.alphabet; }
    std::size_t num_states() const noexcept { return dfa_.states; }

    bool contains(std::string_view w) const;

    bool is_empty() const;
    bool is_universal() const;

    std::strong_ordering operator<=>(const RegularLanguage& o) const;
    bool operator==(const RegularLanguage& o) const;

private:
    explicit RegularLanguage(Dfa d) : dfa_(std::move(d)) {}
    friend RegularLanguage minimize(const Dfa&);

    Dfa dfa_;
};

bool membership(const RegularLanguage& lang, std::string_view w);

/// Canonical form of left^{-1} L right^{-1}.
RegularLanguage derivative(const RegularLanguage& lang, const Context& ctx);

/// Canonical form of g^{-1} L; g's target alphabet must equal L's alphabet.
RegularLanguage preimage(const RegularLanguage& lang, const FreeMonoidHom& g);

/// L1 subset of L2 (same alphabet), by product reachability.
bool included_in(const RegularLanguage& l1, const RegularLanguage& l2);

/// Transition monoid of the canonical DFA, i.e. the syntactic monoid of the language.
struct TransitionMonoid {
    FiniteMonoid monoid;
    std::vector<std::size_t> letter_map;            // letter position -> element
    std::vector<std::vector<std::size_t>> actions;  // element -> state transformation
    std::vector<Word> representatives;              // a shortest word per element

    std::size_t evaluate(std::string_view w, const Alphabet& alphabet) const;
};

/// Elements are discovered breadth-first from the identity by right multiplication with letters.
TransitionMonoid transition_monoid(const RegularLanguage& lang);

/// Transition monoid of an arbitrary automaton (finals ignored).
TransitionMonoid transition_monoid_of(const Dfa& dfa);

/// Parses the regex dialect: letters [A-Za-z0-9], concatenation, '|', '*', parentheses,
/// 'ε' for the empty word and '∅' for the empty language. If alphabet is empty the
/// letters occurring in the pattern are used (sorted); a pattern without letters gets {a}.
RegularLanguage parse_regex(std::string_view pattern, const Alphabet& alphabet = Alphabet{});

/// Best-effort regex rendering of a canonical DFA (state elimination); for display only.
std::string to_regex(const RegularLanguage& lang);

std::string to_dot(const Dfa& dfa, std::string_view name = "L");

}  // namespace varietas
