#pragma once

// Languages recognized by finite lattice bimodules and by finite U-quotients.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "varietas/bimodule.hpp"
#include "varietas/lang.hpp"
#include "varietas/order.hpp"

namespace varietas {

enum class Provenance { FromBimodule, DualOfVariety, External };

std::string to_string(Provenance p);

/// A finite presentation of a U-quotient e: the value of a word w is val(delta(init, w)).
/// The machine's final-state vector is unused.
struct UQuotient {
    Fdl codomain;
    Dfa machine;
    std::vector<std::size_t> val;
    Provenance provenance = Provenance::External;

    std::size_t value(std::string_view w) const { return val[machine.run(machine.init, w)]; }
};

struct UQuotientReport {
    bool generating = false;  // word values generate the codomain
    bool liftings = false;    // every context x -> vxw lifts to a lattice endomorphism
    std::vector<std::string> problems;
    bool ok() const noexcept { return generating && liftings; }
};

/// Checks generation and the lifting property over all contexts realizable in the machine.
UQuotientReport validate_uquotient(const UQuotient& e);

/// Deduplicated sorted set of L_c = { w : c <= iota(h(w)) } over the nonzero join-primes c.
std::vector<RegularLanguage> recognized_languages(const FreeHomSpec& h);

/// Throws AlphabetMismatch if L is over a different alphabet.
bool recognizes(const FreeHomSpec& h, const RegularLanguage& lang);

/// Machine on the reachable part of M (right multiplication), codomain the sublattice
/// generated by the iota-image.
UQuotient uquotient_of_hom(const FreeHomSpec& h);

/// Join-prime (codomain element) paired with its language, in join-prime order.
std::vector<std::pair<std::size_t, RegularLanguage>> rec_by_prime(const UQuotient& e);
/// Deduplicated sorted languages of rec_by_prime.
std::vector<RegularLanguage> rec_of_uquotient(const UQuotient& e);

/// Syntactic monoid acting on the up-set lattice of the derivative closure of L.
FreeHomSpec minimal_recognizer(const RegularLanguage& lang);

}  // namespace varietas
