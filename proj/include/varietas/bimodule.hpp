#pragma once

// Finite lattice bimodules (M, D, iota, left action, right action).

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "varietas/lang.hpp"
#include "varietas/monoid.hpp"
#include "varietas/order.hpp"

namespace varietas {

class LatticeBimodule {
public:
    /// act_left is row-major |M| x |D| (m > d), act_right is |D| x |M| (d < m).
    /// Only table shapes and ranges are validated here; use check_axioms for the laws.
    LatticeBimodule(FiniteMonoid monoid, Fdl lattice, std::vector<std::size_t> iota,
                    std::vector<std::size_t> act_left, std::vector<std::size_t> act_right);

    /// (1, 1): trivial monoid on the one-element lattice.
    static LatticeBimodule trivial();

    const FiniteMonoid& monoid() const noexcept { return monoid_; }
    const Fdl& lattice() const noexcept { return lattice_; }
    std::size_t monoid_size() const noexcept { return monoid_.size(); }
    std::size_t lattice_size() const noexcept { return lattice_.size(); }

    std::size_t iota(std::size_t m) const { return iota_[m]; }
    std::size_t left(std::size_t m, std::size_t d) const { return act_left_[m * lattice_.size() + d]; }
    std::size_t right(std::size_t d, std::size_t m) const { return act_right_[d * monoid_.size() + m]; }

    const std::vector<std::size_t>& iota_table() const noexcept { return iota_; }
    const std::vector<std::size_t>& left_table() const noexcept { return act_left_; }
    const std::vector<std::size_t>& right_table() const noexcept { return act_right_; }

    bool operator==(const LatticeBimodule&) const = default;

private:
    FiniteMonoid monoid_;
    Fdl lattice_;
    std::vector<std::size_t> iota_;
    std::vector<std::size_t> act_left_;
    std::vector<std::size_t> act_right_;
};

struct Violation {
    std::string law;
    std::string witness;
};

struct AxiomReport {
    std::vector<Violation> violations;
    bool ok() const noexcept { return violations.empty(); }
};

/// Exhaustive check of every bimodule law; stops collecting after max_violations.
AxiomReport check_axioms(const LatticeBimodule& b, std::size_t max_violations = 16);

/// Two-sorted map; star on the monoid, diamond on the lattice.
struct BimoduleHom {
    std::vector<std::size_t> star;
    std::vector<std::size_t> diamond;

    bool operator==(const BimoduleHom&) const = default;
};

/// First failing homomorphism condition (monoid hom, lattice morphism, the three squares).
std::optional<std::string> hom_violation(const LatticeBimodule& source, const LatticeBimodule& target,
                                         const BimoduleHom& h);

BimoduleHom identity_hom(const LatticeBimodule& b);
BimoduleHom compose(const BimoduleHom& second, const BimoduleHom& first);

/// A homomorphism out of the free bimodule on `alphabet`, fixed by the letter images.
struct FreeHomSpec {
    Alphabet alphabet;
    LatticeBimodule target;
    std::vector<std::size_t> letter_image;

    FreeHomSpec(Alphabet alphabet, LatticeBimodule target, std::vector<std::size_t> letter_image);
};

std::size_t eval_hom(const FreeHomSpec& h, std::string_view w);
std::size_t eval_hom_diamond(const FreeHomSpec& h, const DiamondTerm& t);

/// Componentwise product; element (i, j) has index i * |second| + j in both sorts.
LatticeBimodule product(const LatticeBimodule& a, const LatticeBimodule& b);

struct ProductProjections {
    BimoduleHom first;
    BimoduleHom second;
};
ProductProjections projections(const LatticeBimodule& a, const LatticeBimodule& b);

/// Partition of both sorts given by class labels.
struct BimoduleCongruence {
    std::vector<std::size_t> part_m;
    std::vector<std::size_t> part_d;

    static BimoduleCongruence diagonal(const LatticeBimodule& b);
    static BimoduleCongruence total(const LatticeBimodule& b);

    bool is_diagonal() const;
    bool operator==(const BimoduleCongruence&) const = default;
};

/// Stability under (m.), (.m), iota, (m >), (< m), (> d), (d <) and the lattice operations.
bool is_congruence(const LatticeBimodule& b, const BimoduleCongruence& c);

/// Least congruence identifying the given pairs.
BimoduleCongruence generate_congruence(const LatticeBimodule& b,
                                       const std::vector<std::pair<std::size_t, std::size_t>>& monoid_pairs,
                                       const std::vector<std::pair<std::size_t, std::size_t>>& lattice_pairs);

struct Quotient {
    LatticeBimodule bimodule;
    BimoduleHom hom;  // surjection onto bimodule; classes numbered by least member
};

/// Throws InvalidArgument if c is not a congruence.
Quotient quotient(const LatticeBimodule& b, const BimoduleCongruence& c);

/// Sub-bimodule generated by monoid and lattice elements (the identity, bottom and top are
/// always included). Element order follows the source indices.
struct Subbimodule {
    LatticeBimodule bimodule;
    BimoduleHom inclusion;
};
Subbimodule generated_subbimodule(const LatticeBimodule& b, const std::vector<std::size_t>& monoid_seeds,
                                  const std::vector<std::size_t>& lattice_seeds);

struct ImageFactorization {
    LatticeBimodule image;
    BimoduleHom surjection;  // source -> image (for a FreeHomSpec: the letter images in `image`)
    BimoduleHom injection;   // image -> target
    std::vector<std::size_t> letter_image;  // only for the FreeHomSpec overload
};

ImageFactorization image_factorization(const LatticeBimodule& source, const LatticeBimodule& target,
                                       const BimoduleHom& h);
/// Middle monoid = submonoid generated by the letter images, middle lattice = closure of its
/// iota-image. `surjection` is empty; the surjective part is letter_image into `image`.
ImageFactorization image_factorization(const FreeHomSpec& h);

bool is_star_generated(const LatticeBimodule& b);
bool is_star_embedded(const LatticeBimodule& b);

/// m ~ m' iff iota, left and right actions of m and m' coincide; diagonal on the lattice.
BimoduleCongruence canonical_collapse(const LatticeBimodule& b);
bool is_reduced(const LatticeBimodule& b);
/// Quotient by canonical_collapse; the diamond component of the hom is the identity.
Quotient reduce(const LatticeBimodule& b);

/// (M, FCDL(M)) with iota the generator embedding, translations extended to the free lattice.
FreeHomSpec recognizer_from_monoid(const FiniteMonoid& m, const Alphabet& alphabet,
                                   const std::vector<std::size_t>& letter_image);

/// The diamond bimodule (Z/2Z, {bot, 0, 1, top}) with iota injective onto the atoms.
LatticeBimodule diamond_bimodule();

}  // namespace varietas
