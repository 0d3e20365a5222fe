#pragma once

// Local basic varieties: finite derivative-closed sets of regular languages over one alphabet.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "varietas/lang.hpp"
#include "varietas/order.hpp"
#include "varietas/recognition.hpp"

namespace varietas {

/// Sorted, duplicate-free, derivative-closed.
class LocalBasicVariety {
public:
    /// Throws InvalidArgument if the set is not closed under derivatives and
    /// AlphabetMismatch if a member is over another alphabet.
    LocalBasicVariety(Alphabet alphabet, std::vector<RegularLanguage> languages);

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    const std::vector<RegularLanguage>& languages() const noexcept { return languages_; }
    std::size_t size() const noexcept { return languages_.size(); }
    bool contains(const RegularLanguage& l) const;
    std::optional<std::size_t> index_of(const RegularLanguage& l) const;

    /// Languages ordered by inclusion.
    FinitePoset inclusion_order() const;

    bool operator==(const LocalBasicVariety&) const = default;

private:
    struct Trusted {};
    LocalBasicVariety(Trusted, Alphabet alphabet, std::vector<RegularLanguage> languages)
        : alphabet_(std::move(alphabet)), languages_(std::move(languages)) {}
    friend LocalBasicVariety generated_local_variety(const Alphabet&, const std::vector<RegularLanguage>&);

    Alphabet alphabet_;
    std::vector<RegularLanguage> languages_;
};

/// All two-sided derivatives of L, by enumerating (reachable state, final-set transformer) pairs.
LocalBasicVariety derivative_closure(const RegularLanguage& lang);

/// Union of derivative closures; throws AlphabetMismatch on mixed alphabets.
LocalBasicVariety generated_local_variety(const Alphabet& alphabet, const std::vector<RegularLanguage>& langs);

bool is_local_basic_variety(const Alphabet& alphabet, const std::vector<RegularLanguage>& langs);

/// Per-alphabet families of finite local varieties (each family generates an ideal by
/// down-closure) and homomorphisms between the alphabets.
struct CotheorySample {
    std::map<std::string, std::vector<std::vector<RegularLanguage>>> families;
    std::vector<FreeMonoidHom> homs;
};

struct CotheoryViolation {
    std::string kind;  // "not-derivative-closed", "not-directed", "preimage-not-contained", "missing-family"
    std::string detail;
};

struct CotheoryReport {
    std::vector<CotheoryViolation> violations;
    bool ok() const noexcept { return violations.empty(); }
};

CotheoryReport check_cotheory(const CotheorySample& sample);

struct QuotientComparison {
    bool leq = false;
    std::optional<LatticeMorphism> factor;  // h with e1 = h . e2 when leq
};

/// e1 <= e2 iff e1 factors through e2; decided on the synchronized product of the machines.
QuotientComparison quotient_order(const UQuotient& e1, const UQuotient& e2);

}  // namespace varietas
