#pragma once

// Generated inputs for the invariant suites: exhaustive small corpora and seeded random samples.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "varietas/bimodule.hpp"
#include "varietas/lang.hpp"

namespace varietas::suites {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

/// Trivial monoid, Z/2Z and the two-element semilattice {1, e}.
std::vector<FiniteMonoid> small_monoids();
/// Chains with 1..4 elements and the square 2 x 2.
std::vector<Fdl> small_lattices();
/// Bounded lattice endomorphisms by exhaustive search over all maps.
std::vector<std::vector<std::size_t>> lattice_endomorphisms(const Fdl& d);

/// Every valid bimodule on small_monoids() x small_lattices().
std::vector<LatticeBimodule> exhaustive_bimodules();

/// Products, sub-bimodules, quotients and free recognizers built from the corpus and from
/// random regexes; every result satisfies the axioms.
std::vector<LatticeBimodule> random_bimodules(Rng& rng, std::size_t count, const std::vector<LatticeBimodule>& corpus);

std::string random_regex(Rng& rng, const Alphabet& alphabet, int depth);
Word random_word(Rng& rng, const Alphabet& alphabet, std::size_t max_len);
FreeMonoidHom random_hom(Rng& rng, const Alphabet& source, const Alphabet& target, std::size_t max_len);

struct RegexSample {
    std::string pattern;
    RegularLanguage lang;
};

/// Distinct languages over {a} or {a, b} with at most max_states states and syntactic monoid
/// of at most max_monoid elements.
std::vector<RegexSample> regex_sample(std::uint64_t seed, std::size_t count, std::size_t max_states = 5,
                                      std::size_t max_monoid = 4);

}  // namespace varietas::suites
