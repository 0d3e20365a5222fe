#pragma once

// Finite posets and finite distributive lattices (the finite completely distributive lattices).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "varietas/lang.hpp"

namespace varietas {

/// Subset of a ground set with at most 64 elements.
using Mask = std::uint64_t;

class FinitePoset {
public:
    FinitePoset() = default;
    /// leq is row-major n x n; throws StructuralError unless it is a partial order.
    FinitePoset(std::size_t n, std::vector<std::uint8_t> leq);

    static FinitePoset antichain(std::size_t n);
    static FinitePoset chain(std::size_t n);
    static FinitePoset from_relation(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& leq);

    std::size_t size() const noexcept { return n_; }
    bool le(std::size_t i, std::size_t j) const { return leq_[i * n_ + j] != 0; }
    const std::vector<std::uint8_t>& leq() const noexcept { return leq_; }

    FinitePoset reversed() const;
    bool is_downset(Mask m) const;

    static std::optional<std::string> find_violation(std::size_t n, const std::vector<std::uint8_t>& leq);

    bool operator==(const FinitePoset&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint8_t> leq_;
};

/// Finite distributive lattice with explicit order and operation tables.
class Fdl {
public:
    Fdl() : Fdl(two()) {}

    /// Builds join/meet tables from an order; throws StructuralError unless the order is a
    /// distributive lattice.
    static Fdl from_order(const FinitePoset& order);
    /// Validated construction from complete tables.
    static Fdl from_tables(std::size_t n, std::vector<std::uint8_t> leq, std::vector<std::uint32_t> join,
                           std::vector<std::uint32_t> meet, std::size_t bottom, std::size_t top);
    /// Lattice of a family of sets closed under union and intersection, ordered by inclusion.
    /// Element i is members[i]; throws StructuralError if the family is not closed.
    static Fdl from_set_family(const std::vector<Mask>& members);

    static Fdl two();
    static Fdl trivial();
    static Fdl chain(std::size_t n);
    /// The boolean lattice 2^k.
    static Fdl boolean(std::size_t k);

    std::size_t size() const noexcept { return n_; }
    bool le(std::size_t a, std::size_t b) const { return leq_[a * n_ + b] != 0; }
    std::size_t join(std::size_t a, std::size_t b) const { return join_[a * n_ + b]; }
    std::size_t meet(std::size_t a, std::size_t b) const { return meet_[a * n_ + b]; }
    std::size_t bottom() const noexcept { return bottom_; }
    std::size_t top() const noexcept { return top_; }

    FinitePoset order() const { return FinitePoset(n_, leq_); }
    const std::vector<std::uint8_t>& leq_table() const noexcept { return leq_; }

    /// Exhaustive check of the lattice and distributivity laws against the stored tables.
    std::optional<std::string> find_violation() const;

    bool operator==(const Fdl&) const = default;

private:
    Fdl(std::size_t n, std::vector<std::uint8_t> leq, std::vector<std::uint32_t> join, std::vector<std::uint32_t> meet,
        std::size_t bottom, std::size_t top)
        : n_(n), leq_(std::move(leq)), join_(std::move(join)), meet_(std::move(meet)), bottom_(bottom), top_(top) {}

    std::size_t n_ = 0;
    std::vector<std::uint8_t> leq_;
    std::vector<std::uint32_t> join_;
    std::vector<std::uint32_t> meet_;
    std::size_t bottom_ = 0;
    std::size_t top_ = 0;
};

/// Largest lattice (in elements) any construction may tabulate.
inline constexpr std::size_t kMaxTabulatedLattice = 4096;

/// Map between finite lattices; a morphism iff it preserves binary joins, meets, bottom and top.
struct LatticeMorphism {
    Fdl source;
    Fdl target;
    std::vector<std::size_t> map;

    std::optional<std::string> find_violation() const;
    std::size_t operator()(std::size_t d) const { return map[d]; }
};

/// A lattice together with the subsets its elements denote.
class SetLattice {
public:
    /// members must be closed under union and intersection; element i denotes members[i].
    explicit SetLattice(std::vector<Mask> members);

    const Fdl& lattice() const noexcept { return lattice_; }
    const std::vector<Mask>& members() const noexcept { return members_; }
    Mask member(std::size_t i) const { return members_[i]; }
    std::size_t size() const noexcept { return members_.size(); }

    std::optional<std::size_t> index_of(Mask m) const;
    /// Throws InvalidArgument if m is not a member.
    std::size_t at(Mask m) const;

private:
    std::vector<Mask> members_;
    std::vector<std::pair<Mask, std::size_t>> lookup_;
    Fdl lattice_;
};

/// All down-sets of P ordered by inclusion. Throws BoundExceeded past kMaxTabulatedLattice
/// elements or more than 64 poset elements.
SetLattice downset_lattice(const FinitePoset& poset);
/// All up-sets of P ordered by inclusion.
SetLattice upset_lattice(const FinitePoset& poset);

struct JoinPrimes {
    FinitePoset poset;                 // order induced from the lattice
    std::vector<std::size_t> elements; // poset element -> lattice element, increasing
};

/// Nonzero join-prime elements with the order induced from D.
JoinPrimes join_primes(const Fdl& lattice);

/// Bound on free_cdl output size; reads VARIETAS_MAX_LATTICE, defaults to 168 (= |FCDL(4)|).
std::size_t free_cdl_size_bound();

struct FreeCdl {
    SetLattice lattice;                  // families of subsets of the generators, closed upward
    std::vector<std::size_t> generators; // generator i -> element {S : i in S}
};

/// Free distributive lattice with bounds on n generators, realised as the down-sets of
/// (P(n), superset). Throws BoundExceeded when the result would exceed free_cdl_size_bound().
FreeCdl free_cdl(std::size_t generators);

/// Known sizes of free bounded distributive lattices (Dedekind numbers); nullopt when unknown.
std::optional<std::uint64_t> free_cdl_size(std::size_t generators);

/// The points D -> 2, one per nonzero join-prime c, p_c(d) = [c <= d], in join-prime order.
std::vector<LatticeMorphism> points(const Fdl& lattice);

/// Dual of a monotone f: P -> Q, i.e. preimage on down-sets. Throws InvalidArgument if f is
/// not monotone.
LatticeMorphism dualize_monotone(const FinitePoset& source, const FinitePoset& target,
                                 const std::vector<std::size_t>& f);

/// Deterministic order-isomorphism search; maps elements of the first to the second.
std::optional<std::vector<std::size_t>> poset_iso(const FinitePoset& a, const FinitePoset& b);
std::optional<std::vector<std::size_t>> lattice_iso(const Fdl& a, const Fdl& b);

/// Product lattice; element (i, j) has index i * |b| + j.
Fdl product(const Fdl& a, const Fdl& b);

/// Closure of a set of elements under binary join, binary meet, bottom and top; sorted.
std::vector<std::size_t> generated_sublattice(const Fdl& lattice, const std::vector<std::size_t>& generators);

/// Restriction of D to a sublattice given as a sorted element list (the result numbers
/// elements by their position in the list).
Fdl restrict_lattice(const Fdl& lattice, const std::vector<std::size_t>& elements);

/// true iff equal labels are preserved by join and meet with any element.
bool is_lattice_congruence(const Fdl& lattice, const std::vector<std::size_t>& labels);

/// Quotient by a lattice congruence given as canonical labels 0..k-1.
Fdl quotient_lattice(const Fdl& lattice, const std::vector<std::size_t>& labels);

/// Canonical relabelling of a partition: classes numbered by their least member.
std::vector<std::size_t> canonical_labels(const std::vector<std::size_t>& labels);

/// Given generators g_i of `source` (closing to all of it) and proposed images, returns the
/// unique lattice morphism source -> target with g_i -> image_i, if one exists.
std::optional<std::vector<std::size_t>> extend_to_morphism(const Fdl& source, const std::vector<std::size_t>& generators,
                                                          const std::vector<std::size_t>& images, const Fdl& target);

/// Join of meets of valuation images; empty join is bottom and empty meet top.
std::size_t eval_diamond(const DiamondTerm& term, const Fdl& lattice,
                         const std::function<std::size_t(const Word&)>& valuation);

/// Hasse diagram; labels default to element indices.
std::string hasse_dot(const FinitePoset& poset, const std::vector<std::string>& labels = {},
                      std::string_view name = "P");

}  // namespace varietas
