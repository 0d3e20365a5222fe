#include "varietas/monoid.hpp"

#include <algorithm>

#include "varietas/error.hpp"

namespace varietas {

std::optional<std::string> FiniteMonoid::find_violation(std::size_t size, std::size_t identity,
                                                        const std::vector<std::size_t>& table) {
    if (size == 0) return "monoid must be non-empty";
    if (table.size() != size * size) return "table has wrong size";
    if (identity >= size) return "identity out of range";
    for (auto v : table)
        if (v >= size) return "table entry out of range";
    auto mul = [&](std::size_t a, std::size_t b) { return table[a * size + b]; };
    for (std::size_t a = 0; a < size; ++a)
        if (mul(identity, a) != a || mul(a, identity) != a)
            return "identity law fails at " + std::to_string(a);
    for (std::size_t a = 0; a < size; ++a)
        for (std::size_t b = 0; b < size; ++b)
            for (std::size_t c = 0; c < size; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    return "associativity fails at (" + std::to_string(a) + "," + std::to_string(b) +
                           "," + std::to_string(c) + ")";
    return std::nullopt;
}

FiniteMonoid::FiniteMonoid(std::size_t size, std::size_t identity, std::vector<std::size_t> table)
    : size_(size), identity_(identity), table_(std::move(table)) {
    if (auto v = find_violation(size_, identity_, table_)) throw StructuralError("monoid: " + *v);
}

FiniteMonoid FiniteMonoid::trivial() { return FiniteMonoid(Unchecked{}, 1, 0, {0}); }

FiniteMonoid FiniteMonoid::cyclic_group(std::size_t n) {
    if (n == 0) throw StructuralError("cyclic group of order 0");
    std::vector<std::size_t> t(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) t[a * n + b] = (a + b) % n;
    return FiniteMonoid(Unchecked{}, n, 0, std::move(t));
}

bool FiniteMonoid::is_congruence(const std::vector<std::size_t>& labels) const {
    if (labels.size() != size_) throw StructuralError("partition size does not match monoid");
    for (std::size_t a = 0; a < size_; ++a)
        for (std::size_t b = a + 1; b < size_; ++b) {
            if (labels[a] != labels[b]) continue;
            for (std::size_t c = 0; c < size_; ++c) {
                if (labels[times(a, c)] != labels[times(b, c)]) return false;
                if (labels[times(c, a)] != labels[times(c, b)]) return false;
            }
        }
    return true;
}

std::vector<std::size_t> FiniteMonoid::generated_submonoid(const std::vector<std::size_t>& generators) const {
    std::vector<bool> seen(size_, false);
    std::vector<std::size_t> order{identity_};
    seen[identity_] = true;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (auto g : generators) {
            if (g >= size_) throw StructuralError("generator out of range");
            auto p = times(order[i], g);
            if (!seen[p]) {
                seen[p] = true;
                order.push_back(p);
            }
        }
    std::sort(order.begin(), order.end());
    return order;
}

}  // namespace varietas
