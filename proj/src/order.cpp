#include "varietas/order.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>

#include "varietas/error.hpp"

namespace varietas {

// ---------------------------------------------------------------- FinitePoset

std::optional<std::string> FinitePoset::find_violation(std::size_t n, const std::vector<std::uint8_t>& leq) {
    if (leq.size() != n * n) return "order matrix has wrong size";
    auto le = [&](std::size_t i, std::size_t j) { return leq[i * n + j] != 0; };
    for (std::size_t i = 0; i < n; ++i)
        if (!le(i, i)) return "not reflexive at " + std::to_string(i);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (le(i, j) && le(j, i)) return "not antisymmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")";
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (le(i, j))
                for (std::size_t k = 0; k < n; ++k)
                    if (le(j, k) && !le(i, k))
                        return "not transitive at (" + std::to_string(i) + "," + std::to_string(j) + "," +
                               std::to_string(k) + ")";
    return std::nullopt;
}

FinitePoset::FinitePoset(std::size_t n, std::vector<std::uint8_t> leq) : n_(n), leq_(std::move(leq)) {
    if (auto v = find_violation(n_, leq_)) throw StructuralError("poset: " + *v);
}

FinitePoset FinitePoset::from_relation(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& leq) {
    std::vector<std::uint8_t> m(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i * n + j] = leq(i, j) ? 1 : 0;
    return FinitePoset(n, std::move(m));
}

FinitePoset FinitePoset::antichain(std::size_t n) {
    return from_relation(n, [](std::size_t i, std::size_t j) { return i == j; });
}

FinitePoset FinitePoset::chain(std::size_t n) {
    return from_relation(n, [](std::size_t i, std::size_t j) { return i <= j; });
}

FinitePoset FinitePoset::reversed() const {
    return from_relation(n_, [&](std::size_t i, std::size_t j) { return le(j, i); });
}

bool FinitePoset::is_downset(Mask m) const {
    for (std::size_t i = 0; i < n_; ++i)
        if (m >> i & 1)
            for (std::size_t j = 0; j < n_; ++j)
                if (le(j, i) && !(m >> j & 1)) return false;
    return true;
}

// ---------------------------------------------------------------- Fdl

namespace {

std::optional<std::string> check_tables(std::size_t n, const std::vector<std::uint8_t>& leq,
                                        const std::vector<std::uint32_t>& join, const std::vector<std::uint32_t>& meet,
                                        std::size_t bottom, std::size_t top) {
    if (n == 0) return "lattice must be non-empty";
    if (auto v = FinitePoset::find_violation(n, leq)) return *v;
    if (join.size() != n * n || meet.size() != n * n) return "operation tables have wrong size";
    if (bottom >= n || top >= n) return "bottom/top out of range";
    auto le = [&](std::size_t a, std::size_t b) { return leq[a * n + b] != 0; };
    auto J = [&](std::size_t a, std::size_t b) -> std::size_t { return join[a * n + b]; };
    auto M = [&](std::size_t a, std::size_t b) -> std::size_t { return meet[a * n + b]; };
    for (auto v : join)
        if (v >= n) return "join entry out of range";
    for (auto v : meet)
        if (v >= n) return "meet entry out of range";
    for (std::size_t a = 0; a < n; ++a)
        if (!le(bottom, a) || !le(a, top)) return "bottom/top are not extremal at " + std::to_string(a);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            auto j = J(a, b), m = M(a, b);
            if (!le(a, j) || !le(b, j)) return "join is not an upper bound at (" + std::to_string(a) + "," + std::to_string(b) + ")";
            if (!le(m, a) || !le(m, b)) return "meet is not a lower bound at (" + std::to_string(a) + "," + std::to_string(b) + ")";
            for (std::size_t c = 0; c < n; ++c) {
                if (le(a, c) && le(b, c) && !le(j, c))
                    return "join is not least at (" + std::to_string(a) + "," + std::to_string(b) + ")";
                if (le(c, a) && le(c, b) && !le(c, m))
                    return "meet is not greatest at (" + std::to_string(a) + "," + std::to_string(b) + ")";
            }
        }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (M(a, J(b, c)) != J(M(a, b), M(a, c)))
                    return "not distributive at (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
    return std::nullopt;
}

}  // namespace

std::optional<std::string> Fdl::find_violation() const { return check_tables(n_, leq_, join_, meet_, bottom_, top_); }

Fdl Fdl::from_tables(std::size_t n, std::vector<std::uint8_t> leq, std::vector<std::uint32_t> join,
                     std::vector<std::uint32_t> meet, std::size_t bottom, std::size_t top) {
    if (auto v = check_tables(n, leq, join, meet, bottom, top)) throw StructuralError("lattice: " + *v);
    return Fdl(n, std::move(leq), std::move(join), std::move(meet), bottom, top);
}

Fdl Fdl::from_order(const FinitePoset& order) {
    const std::size_t n = order.size();
    if (n == 0) throw StructuralError("lattice: must be non-empty");
    if (n > kMaxTabulatedLattice) throw BoundExceeded("lattice: too many elements");
    auto le = [&](std::size_t a, std::size_t b) { return order.le(a, b); };
    std::vector<std::uint32_t> join(n * n), meet(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            std::optional<std::size_t> lub, glb;
            for (std::size_t c = 0; c < n; ++c) {
                if (le(a, c) && le(b, c) && (!lub || le(c, *lub))) lub = c;
                if (le(c, a) && le(c, b) && (!glb || le(*glb, c))) glb = c;
            }
            // a minimal upper bound found greedily must also be below every other upper bound
            for (std::size_t c = 0; c < n; ++c) {
                if (le(a, c) && le(b, c) && !le(*lub, c))
                    throw StructuralError("lattice: no least upper bound for (" + std::to_string(a) + "," + std::to_string(b) + ")");
                if (le(c, a) && le(c, b) && !le(c, *glb))
                    throw StructuralError("lattice: no greatest lower bound for (" + std::to_string(a) + "," + std::to_string(b) + ")");
            }
            join[a * n + b] = join[b * n + a] = static_cast<std::uint32_t>(*lub);
            meet[a * n + b] = meet[b * n + a] = static_cast<std::uint32_t>(*glb);
        }
    std::size_t bottom = 0, top = 0;
    for (std::size_t a = 0; a < n; ++a) {
        bottom = meet[bottom * n + a];
        top = join[top * n + a];
    }
    return from_tables(n, order.leq(), std::move(join), std::move(meet), bottom, top);
}

Fdl Fdl::from_set_family(const std::vector<Mask>& members) {
    const std::size_t n = members.size();
    if (n == 0) throw StructuralError("lattice: empty set family");
    if (n > kMaxTabulatedLattice) throw BoundExceeded("lattice: set family has more than " + std::to_string(kMaxTabulatedLattice) + " members");
    std::vector<std::pair<Mask, std::size_t>> sorted(n);
    for (std::size_t i = 0; i < n; ++i) sorted[i] = {members[i], i};
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < n; ++i)
        if (sorted[i].first == sorted[i - 1].first) throw StructuralError("lattice: duplicate set in family");
    auto find = [&](Mask m) -> std::size_t {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), std::pair<Mask, std::size_t>{m, 0});
        if (it == sorted.end() || it->first != m) throw StructuralError("lattice: set family not closed under union/intersection");
        return it->second;
    };
    std::vector<std::uint8_t> leq(n * n);
    std::vector<std::uint32_t> join(n * n), meet(n * n);
    Mask all = 0, common = ~Mask{0};
    for (std::size_t a = 0; a < n; ++a) {
        all |= members[a];
        common &= members[a];
        for (std::size_t b = 0; b < n; ++b) {
            leq[a * n + b] = (members[a] & ~members[b]) == 0;
            if (b < a) continue;
            auto j = static_cast<std::uint32_t>(find(members[a] | members[b]));
            auto m = static_cast<std::uint32_t>(find(members[a] & members[b]));
            join[a * n + b] = join[b * n + a] = j;
            meet[a * n + b] = meet[b * n + a] = m;
        }
    }
    // set lattices are distributive by construction
    return Fdl(n, std::move(leq), std::move(join), std::move(meet), find(common), find(all));
}

Fdl Fdl::two() { return chain(2); }
Fdl Fdl::trivial() { return chain(1); }

Fdl Fdl::chain(std::size_t n) {
    if (n == 0) throw StructuralError("lattice: chain of length 0");
    std::vector<std::uint8_t> leq(n * n);
    std::vector<std::uint32_t> join(n * n), meet(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            leq[a * n + b] = a <= b;
            join[a * n + b] = static_cast<std::uint32_t>(std::max(a, b));
            meet[a * n + b] = static_cast<std::uint32_t>(std::min(a, b));
        }
    return Fdl(n, std::move(leq), std::move(join), std::move(meet), 0, n - 1);
}

Fdl Fdl::boolean(std::size_t k) {
    if (k > 12) throw BoundExceeded("boolean lattice too large");
    std::vector<Mask> members(std::size_t{1} << k);
    std::iota(members.begin(), members.end(), Mask{0});
    return from_set_family(members);
}

// ---------------------------------------------------------------- morphisms

std::optional<std::string> LatticeMorphism::find_violation() const {
    if (map.size() != source.size()) return "map is not total on the source";
    for (auto v : map)
        if (v >= target.size()) return "map value out of range";
    if (map[source.bottom()] != target.bottom()) return "bottom is not preserved";
    if (map[source.top()] != target.top()) return "top is not preserved";
    for (std::size_t a = 0; a < source.size(); ++a)
        for (std::size_t b = 0; b < source.size(); ++b) {
            if (map[source.join(a, b)] != target.join(map[a], map[b]))
                return "join is not preserved at (" + std::to_string(a) + "," + std::to_string(b) + ")";
            if (map[source.meet(a, b)] != target.meet(map[a], map[b]))
                return "meet is not preserved at (" + std::to_string(a) + "," + std::to_string(b) + ")";
        }
    return std::nullopt;
}

// ---------------------------------------------------------------- set lattices

SetLattice::SetLattice(std::vector<Mask> members) : members_(std::move(members)), lattice_(Fdl::from_set_family(members_)) {
    lookup_.resize(members_.size());
    for (std::size_t i = 0; i < members_.size(); ++i) lookup_[i] = {members_[i], i};
    std::sort(lookup_.begin(), lookup_.end());
}

std::optional<std::size_t> SetLattice::index_of(Mask m) const {
    auto it = std::lower_bound(lookup_.begin(), lookup_.end(), std::pair<Mask, std::size_t>{m, 0});
    if (it == lookup_.end() || it->first != m) return std::nullopt;
    return it->second;
}

std::size_t SetLattice::at(Mask m) const {
    if (auto i = index_of(m)) return *i;
    throw InvalidArgument("set is not an element of the lattice");
}

namespace {

std::vector<Mask> enumerate_downsets(const FinitePoset& p) {
    const std::size_t n = p.size();
    if (n > 64) throw BoundExceeded("down-set enumeration supports at most 64 poset elements");
    std::vector<Mask> strictly_below(n, 0);
    std::vector<std::size_t> order(n);
    std::vector<std::size_t> rank(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        order[i] = i;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i && p.le(j, i)) {
                strictly_below[i] |= Mask{1} << j;
                ++rank[i];
            }
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rank[a] < rank[b]; });
    std::vector<Mask> out;
    std::function<void(std::size_t, Mask)> rec = [&](std::size_t pos, Mask cur) {
        if (pos == n) {
            if (out.size() >= kMaxTabulatedLattice)
                throw BoundExceeded("down-set lattice exceeds " + std::to_string(kMaxTabulatedLattice) + " elements");
            out.push_back(cur);
            return;
        }
        auto i = order[pos];
        rec(pos + 1, cur);
        if ((strictly_below[i] & ~cur) == 0) rec(pos + 1, cur | Mask{1} << i);
    };
    rec(0, 0);
    std::sort(out.begin(), out.end(), [](Mask a, Mask b) {
        auto pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    return out;
}

}  // namespace

SetLattice downset_lattice(const FinitePoset& poset) { return SetLattice(enumerate_downsets(poset)); }

SetLattice upset_lattice(const FinitePoset& poset) { return SetLattice(enumerate_downsets(poset.reversed())); }

JoinPrimes join_primes(const Fdl& d) {
    // In a finite distributive lattice the join-primes are exactly the join-irreducibles:
    // nonzero elements strictly above the join of everything strictly below them.
    std::vector<std::size_t> primes;
    for (std::size_t c = 0; c < d.size(); ++c) {
        if (c == d.bottom()) continue;
        std::size_t below = d.bottom();
        for (std::size_t x = 0; x < d.size(); ++x)
            if (x != c && d.le(x, c)) below = d.join(below, x);
        if (below != c) primes.push_back(c);
    }
    auto poset = FinitePoset::from_relation(primes.size(), [&](std::size_t i, std::size_t j) { return d.le(primes[i], primes[j]); });
    return {std::move(poset), std::move(primes)};
}

std::optional<std::uint64_t> free_cdl_size(std::size_t generators) {
    static constexpr std::uint64_t kDedekind[] = {2, 3, 6, 20, 168, 7581, 7828354};
    if (generators < std::size(kDedekind)) return kDedekind[generators];
    return std::nullopt;
}

std::size_t free_cdl_size_bound() {
    if (const char* env = std::getenv("VARIETAS_MAX_LATTICE")) {
        char* end = nullptr;
        auto v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 168;
}

FreeCdl free_cdl(std::size_t k) {
    auto size = free_cdl_size(k);
    if (!size || *size > free_cdl_size_bound() || *size > kMaxTabulatedLattice)
        throw BoundExceeded("free lattice on " + std::to_string(k) + " generators exceeds the size bound " +
                            std::to_string(free_cdl_size_bound()));
    const std::size_t subsets = std::size_t{1} << k;
    // subsets ordered by reverse inclusion: down-sets are families closed under supersets
    auto powerset = FinitePoset::from_relation(subsets, [](std::size_t s, std::size_t t) { return (s & t) == t; });
    SetLattice lattice = downset_lattice(powerset);
    std::vector<std::size_t> gens;
    for (std::size_t i = 0; i < k; ++i) {
        Mask fam = 0;
        for (std::size_t s = 0; s < subsets; ++s)
            if (s >> i & 1) fam |= Mask{1} << s;
        gens.push_back(lattice.at(fam));
    }
    return {std::move(lattice), std::move(gens)};
}

std::vector<LatticeMorphism> points(const Fdl& d) {
    std::vector<LatticeMorphism> out;
    for (auto c : join_primes(d).elements) {
        std::vector<std::size_t> map(d.size());
        for (std::size_t x = 0; x < d.size(); ++x) map[x] = d.le(c, x) ? 1 : 0;
        out.push_back({d, Fdl::two(), std::move(map)});
    }
    return out;
}

LatticeMorphism dualize_monotone(const FinitePoset& source, const FinitePoset& target, const std::vector<std::size_t>& f) {
    if (f.size() != source.size()) throw StructuralError("monotone map is not total");
    for (auto v : f)
        if (v >= target.size()) throw StructuralError("monotone map value out of range");
    for (std::size_t i = 0; i < source.size(); ++i)
        for (std::size_t j = 0; j < source.size(); ++j)
            if (source.le(i, j) && !target.le(f[i], f[j]))
                throw InvalidArgument("map is not monotone at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    auto dq = downset_lattice(target);
    auto dp = downset_lattice(source);
    std::vector<std::size_t> map(dq.size());
    for (std::size_t e = 0; e < dq.size(); ++e) {
        Mask pre = 0;
        for (std::size_t i = 0; i < source.size(); ++i)
            if (dq.member(e) >> f[i] & 1) pre |= Mask{1} << i;
        map[e] = dp.at(pre);
    }
    return {dq.lattice(), dp.lattice(), std::move(map)};
}

// ---------------------------------------------------------------- isomorphism

std::optional<std::vector<std::size_t>> poset_iso(const FinitePoset& a, const FinitePoset& b) {
    const std::size_t n = a.size();
    if (b.size() != n) return std::nullopt;
    auto signature = [](const FinitePoset& p, std::size_t i) {
        std::size_t below = 0, above = 0, lower_covers = 0, upper_covers = 0;
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (j == i) continue;
            if (p.le(j, i)) {
                ++below;
                bool cover = true;
                for (std::size_t k = 0; k < p.size() && cover; ++k)
                    if (k != i && k != j && p.le(j, k) && p.le(k, i)) cover = false;
                lower_covers += cover;
            }
            if (p.le(i, j)) {
                ++above;
                bool cover = true;
                for (std::size_t k = 0; k < p.size() && cover; ++k)
                    if (k != i && k != j && p.le(i, k) && p.le(k, j)) cover = false;
                upper_covers += cover;
            }
        }
        return std::array<std::size_t, 4>{below, above, lower_covers, upper_covers};
    };
    std::vector<std::array<std::size_t, 4>> sa(n), sb(n);
    for (std::size_t i = 0; i < n; ++i) {
        sa[i] = signature(a, i);
        sb[i] = signature(b, i);
    }
    {
        auto x = sa, y = sb;
        std::sort(x.begin(), x.end());
        std::sort(y.begin(), y.end());
        if (x != y) return std::nullopt;
    }
    // assign most constrained (rarest signature) first
    std::map<std::array<std::size_t, 4>, std::size_t> freq;
    for (auto& s : sa) ++freq[s];
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return freq[sa[x]] < freq[sa[y]]; });

    std::vector<std::size_t> f(n, SIZE_MAX);
    std::vector<bool> used(n, false);
    std::function<bool(std::size_t)> rec = [&](std::size_t pos) {
        if (pos == n) return true;
        auto i = order[pos];
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j] || sb[j] != sa[i]) continue;
            bool ok = true;
            for (std::size_t q = 0; q < pos && ok; ++q) {
                auto k = order[q];
                if (a.le(i, k) != b.le(j, f[k]) || a.le(k, i) != b.le(f[k], j)) ok = false;
            }
            if (!ok) continue;
            f[i] = j;
            used[j] = true;
            if (rec(pos + 1)) return true;
            used[j] = false;
            f[i] = SIZE_MAX;
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    return f;
}

std::optional<std::vector<std::size_t>> lattice_iso(const Fdl& a, const Fdl& b) {
    if (a.size() != b.size()) return std::nullopt;
    return poset_iso(a.order(), b.order());
}

// ---------------------------------------------------------------- constructions

Fdl product(const Fdl& a, const Fdl& b) {
    const std::size_t n = a.size() * b.size();
    if (n > kMaxTabulatedLattice) throw BoundExceeded("product lattice too large");
    std::vector<std::uint8_t> leq(n * n);
    std::vector<std::uint32_t> join(n * n), meet(n * n);
    auto enc = [&](std::size_t i, std::size_t j) { return i * b.size() + j; };
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            auto xi = x / b.size(), xj = x % b.size(), yi = y / b.size(), yj = y % b.size();
            leq[x * n + y] = a.le(xi, yi) && b.le(xj, yj);
            join[x * n + y] = static_cast<std::uint32_t>(enc(a.join(xi, yi), b.join(xj, yj)));
            meet[x * n + y] = static_cast<std::uint32_t>(enc(a.meet(xi, yi), b.meet(xj, yj)));
        }
    return Fdl::from_tables(n, std::move(leq), std::move(join), std::move(meet), enc(a.bottom(), b.bottom()),
                            enc(a.top(), b.top()));
}

std::vector<std::size_t> generated_sublattice(const Fdl& d, const std::vector<std::size_t>& generators) {
    std::vector<bool> in(d.size(), false);
    std::vector<std::size_t> elems;
    auto add = [&](std::size_t x) {
        if (!in[x]) {
            in[x] = true;
            elems.push_back(x);
        }
    };
    add(d.bottom());
    add(d.top());
    for (auto g : generators) {
        if (g >= d.size()) throw StructuralError("generator out of range");
        add(g);
    }
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            add(d.join(elems[i], elems[j]));
            add(d.meet(elems[i], elems[j]));
        }
    std::sort(elems.begin(), elems.end());
    return elems;
}

Fdl restrict_lattice(const Fdl& d, const std::vector<std::size_t>& elements) {
    const std::size_t n = elements.size();
    std::vector<std::size_t> pos(d.size(), SIZE_MAX);
    for (std::size_t i = 0; i < n; ++i) pos[elements[i]] = i;
    std::vector<std::uint8_t> leq(n * n);
    std::vector<std::uint32_t> join(n * n), meet(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            leq[i * n + j] = d.le(elements[i], elements[j]);
            auto jn = pos[d.join(elements[i], elements[j])], mt = pos[d.meet(elements[i], elements[j])];
            if (jn == SIZE_MAX || mt == SIZE_MAX) throw StructuralError("element set is not a sublattice");
            join[i * n + j] = static_cast<std::uint32_t>(jn);
            meet[i * n + j] = static_cast<std::uint32_t>(mt);
        }
    if (pos[d.bottom()] == SIZE_MAX || pos[d.top()] == SIZE_MAX) throw StructuralError("sublattice must contain bottom and top");
    return Fdl::from_tables(n, std::move(leq), std::move(join), std::move(meet), pos[d.bottom()], pos[d.top()]);
}

bool is_lattice_congruence(const Fdl& d, const std::vector<std::size_t>& labels) {
    if (labels.size() != d.size()) throw StructuralError("partition size does not match lattice");
    for (std::size_t a = 0; a < d.size(); ++a)
        for (std::size_t b = a + 1; b < d.size(); ++b) {
            if (labels[a] != labels[b]) continue;
            for (std::size_t c = 0; c < d.size(); ++c)
                if (labels[d.join(a, c)] != labels[d.join(b, c)] || labels[d.meet(a, c)] != labels[d.meet(b, c)])
                    return false;
        }
    return true;
}

std::vector<std::size_t> canonical_labels(const std::vector<std::size_t>& labels) {
    std::map<std::size_t, std::size_t> renum;
    std::vector<std::size_t> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, _] = renum.emplace(labels[i], renum.size());
        out[i] = it->second;
    }
    return out;
}

Fdl quotient_lattice(const Fdl& d, const std::vector<std::size_t>& raw) {
    if (!is_lattice_congruence(d, raw)) throw InvalidArgument("partition is not a lattice congruence");
    auto labels = canonical_labels(raw);
    std::size_t k = 0;
    for (auto l : labels) k = std::max(k, l + 1);
    std::vector<std::size_t> rep(k, SIZE_MAX);
    for (std::size_t i = 0; i < d.size(); ++i)
        if (rep[labels[i]] == SIZE_MAX) rep[labels[i]] = i;
    std::vector<std::uint8_t> leq(k * k);
    std::vector<std::uint32_t> join(k * k), meet(k * k);
    for (std::size_t x = 0; x < k; ++x)
        for (std::size_t y = 0; y < k; ++y) {
            auto j = labels[d.join(rep[x], rep[y])];
            join[x * k + y] = static_cast<std::uint32_t>(j);
            meet[x * k + y] = static_cast<std::uint32_t>(labels[d.meet(rep[x], rep[y])]);
            leq[x * k + y] = j == y;
        }
    return Fdl::from_tables(k, std::move(leq), std::move(join), std::move(meet), labels[d.bottom()], labels[d.top()]);
}

std::optional<std::vector<std::size_t>> extend_to_morphism(const Fdl& source, const std::vector<std::size_t>& generators,
                                                          const std::vector<std::size_t>& images, const Fdl& target) {
    if (generators.size() != images.size()) throw StructuralError("generator and image lists differ in length");
    for (std::size_t i = 0; i < generators.size(); ++i)
        for (std::size_t j = i + 1; j < generators.size(); ++j)
            if (generators[i] == generators[j] && images[i] != images[j]) return std::nullopt;

    // A morphism is determined by its dual map on join-primes: target prime c is sent to the
    // source prime whose generator profile matches that of c.
    auto profile = [&](const Fdl& lat, std::size_t c, const std::vector<std::size_t>& elems) {
        std::vector<std::uint8_t> p(elems.size());
        for (std::size_t i = 0; i < elems.size(); ++i) p[i] = lat.le(c, elems[i]);
        return p;
    };
    std::map<std::vector<std::uint8_t>, std::size_t> source_primes;
    for (auto c : join_primes(source).elements) source_primes.emplace(profile(source, c, generators), c);
    auto target_primes = join_primes(target).elements;
    std::vector<std::size_t> dual(target_primes.size());
    for (std::size_t t = 0; t < target_primes.size(); ++t) {
        auto it = source_primes.find(profile(target, target_primes[t], images));
        if (it == source_primes.end()) return std::nullopt;
        dual[t] = it->second;
    }
    std::vector<std::size_t> map(source.size());
    for (std::size_t d = 0; d < source.size(); ++d) {
        std::size_t v = target.bottom();
        for (std::size_t t = 0; t < target_primes.size(); ++t)
            if (source.le(dual[t], d)) v = target.join(v, target_primes[t]);
        map[d] = v;
    }
    for (std::size_t i = 0; i < generators.size(); ++i)
        if (map[generators[i]] != images[i]) return std::nullopt;
    LatticeMorphism check{source, target, map};
    if (check.find_violation()) return std::nullopt;
    return map;
}

std::size_t eval_diamond(const DiamondTerm& term, const Fdl& d, const std::function<std::size_t(const Word&)>& valuation) {
    std::size_t acc = d.bottom();
    for (const auto& clause : term.clauses) {
        std::size_t m = d.top();
        for (const auto& w : clause) m = d.meet(m, valuation(w));
        acc = d.join(acc, m);
    }
    return acc;
}

std::string hasse_dot(const FinitePoset& p, const std::vector<std::string>& labels, std::string_view name) {
    std::ostringstream os;
    os << "digraph \"" << name << "\" {\n  rankdir=BT;\n  node [shape=box];\n";
    for (std::size_t i = 0; i < p.size(); ++i)
        os << "  n" << i << " [label=\"" << (i < labels.size() ? labels[i] : std::to_string(i)) << "\"];\n";
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (i == j || !p.le(i, j)) continue;
            bool cover = true;
            for (std::size_t k = 0; k < p.size() && cover; ++k)
                if (k != i && k != j && p.le(i, k) && p.le(k, j)) cover = false;
            if (cover) os << "  n" << i << " -> n" << j << ";\n";
        }
    os << "}\n";
    return os.str();
}

}  // namespace varietas
