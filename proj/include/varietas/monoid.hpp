#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace varietas {

/// A finite monoid given by its multiplication table. Elements are indices 0..size-1.
class FiniteMonoid {
public:
    FiniteMonoid() : FiniteMonoid(trivial()) {}

    /// Validates the table (closure, identity law, associativity); throws StructuralError.
    FiniteMonoid(std::size_t size, std::size_t identity, std::vector<std::size_t> table);

    static FiniteMonoid trivial();
    /// The cyclic group Z/nZ with identity 0.
    static FiniteMonoid cyclic_group(std::size_t n);

    std::size_t size() const noexcept { return size_; }
    std::size_t identity() const noexcept { return identity_; }
    std::size_t times(std::size_t a, std::size_t b) const { return table_[a * size_ + b]; }
    const std::vector<std::size_t>& table() const noexcept { return table_; }

    /// First failing monoid law, if any.
    static std::optional<std::string> find_violation(std::size_t size, std::size_t identity,
                                                     const std::vector<std::size_t>& table);

    /// true iff the relation "same label" is compatible with multiplication on both sides.
    bool is_congruence(const std::vector<std::size_t>& labels) const;

    /// The submonoid generated by the given elements (always contains the identity), sorted.
    std::vector<std::size_t> generated_submonoid(const std::vector<std::size_t>& generators) const;

    bool operator==(const FiniteMonoid&) const = default;

private:
    struct Unchecked {};
    FiniteMonoid(Unchecked, std::size_t size, std::size_t identity, std::vector<std::size_t> table)
        : size_(size), identity_(identity), table_(std::move(table)) {}

    std::size_t size_ = 1;
    std::size_t identity_ = 0;
    std::vector<std::size_t> table_{0};
};

}  // namespace varietas
