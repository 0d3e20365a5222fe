#pragma once

// Brute-force reference implementations, written without the library's algorithms.

#include <functional>
#include <set>
#include <vector>

#include "varietas/bimodule.hpp"
#include "varietas/lang.hpp"
#include "varietas/order.hpp"

namespace varietas::oracles {

/// Restricted growth strings of length n.
std::vector<std::vector<std::size_t>> set_partitions(std::size_t n);

/// The monoid partition together with the lattice diagonal is a bimodule congruence.
bool is_diagonal_congruence(const LatticeBimodule& b, const std::vector<std::size_t>& labels);
bool is_reduced(const LatticeBimodule& b);
/// Join of all lattice-diagonal congruences, canonically labelled.
std::vector<std::size_t> greatest_diagonal_congruence(const LatticeBimodule& b);

/// Closure of the iota-image under joins and meets by naive fixpoint.
bool is_star_generated(const LatticeBimodule& b);

std::size_t count_downsets(const FinitePoset& p);
bool is_join_prime(const Fdl& d, std::size_t c);

/// All partial orders on {0..n-1} (labelled).
std::vector<FinitePoset> all_posets(std::size_t n);

/// f and L agree on every word of length <= n.
bool agrees_on_words(const RegularLanguage& lang, const std::function<bool(const Word&)>& f, std::size_t n);

/// Closure of {L} under single-letter left and right derivatives, each step by direct DFA surgery.
std::set<RegularLanguage> letter_derivative_fixpoint(const RegularLanguage& lang);

}  // namespace varietas::oracles
