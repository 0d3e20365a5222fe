#include "varietas/suites/oracles.hpp"

#include <algorithm>

namespace varietas::oracles {

std::vector<std::vector<std::size_t>> set_partitions(std::size_t n) {
    std::vector<std::vector<std::size_t>> out;
    if (n == 0) return {{}};
    std::vector<std::size_t> a(n, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t blocks) {
        if (i == n) {
            out.push_back(a);
            return;
        }
        for (std::size_t b = 0; b <= blocks; ++b) {
            a[i] = b;
            rec(i + 1, std::max(blocks, b + 1));
        }
    };
    a[0] = 0;
    rec(1, 1);
    return out;
}

bool is_diagonal_congruence(const LatticeBimodule& b, const std::vector<std::size_t>& labels) {
    const std::size_t nm = b.monoid_size(), nd = b.lattice_size();
    for (std::size_t x = 0; x < nm; ++x)
        for (std::size_t y = x + 1; y < nm; ++y) {
            if (labels[x] != labels[y]) continue;
            if (b.iota(x) != b.iota(y)) return false;
            for (std::size_t d = 0; d < nd; ++d)
                if (b.left(x, d) != b.left(y, d) || b.right(d, x) != b.right(d, y)) return false;
            for (std::size_t z = 0; z < nm; ++z) {
                if (labels[b.monoid().times(x, z)] != labels[b.monoid().times(y, z)]) return false;
                if (labels[b.monoid().times(z, x)] != labels[b.monoid().times(z, y)]) return false;
            }
        }
    return true;
}

bool is_reduced(const LatticeBimodule& b) {
    for (const auto& p : set_partitions(b.monoid_size())) {
        bool diagonal = *std::max_element(p.begin(), p.end()) + 1 == p.size();
        if (!diagonal && is_diagonal_congruence(b, p)) return false;
    }
    return true;
}

std::vector<std::size_t> greatest_diagonal_congruence(const LatticeBimodule& b) {
    const std::size_t nm = b.monoid_size();
    std::vector<std::size_t> parent(nm);
    for (std::size_t i = 0; i < nm; ++i) parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (const auto& p : set_partitions(nm)) {
        if (!is_diagonal_congruence(b, p)) continue;
        for (std::size_t x = 0; x < nm; ++x)
            for (std::size_t y = 0; y < nm; ++y)
                if (p[x] == p[y]) parent[find(x)] = find(y);
    }
    // least member labelling
    std::vector<std::size_t> out(nm), first(nm, nm);
    std::size_t next = 0;
    for (std::size_t x = 0; x < nm; ++x) {
        auto r = find(x);
        if (first[r] == nm) first[r] = next++;
        out[x] = first[r];
    }
    return out;
}

bool is_star_generated(const LatticeBimodule& b) {
    const Fdl& d = b.lattice();
    std::set<std::size_t> s{d.bottom(), d.top()};
    for (auto v : b.iota_table()) s.insert(v);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::size_t> cur(s.begin(), s.end());
        for (auto x : cur)
            for (auto y : cur) {
                grew |= s.insert(d.join(x, y)).second;
                grew |= s.insert(d.meet(x, y)).second;
            }
    }
    return s.size() == d.size();
}

std::size_t count_downsets(const FinitePoset& p) {
    const std::size_t n = p.size();
    std::size_t count = 0;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
        bool ok = true;
        for (std::size_t j = 0; ok && j < n; ++j)
            if (s >> j & 1)
                for (std::size_t i = 0; ok && i < n; ++i)
                    if (p.le(i, j) && !(s >> i & 1)) ok = false;
        count += ok;
    }
    return count;
}

bool is_join_prime(const Fdl& d, std::size_t c) {
    if (c == d.bottom()) return false;
    for (std::size_t x = 0; x < d.size(); ++x)
        for (std::size_t y = 0; y < d.size(); ++y)
            if (d.le(c, d.join(x, y)) && !d.le(c, x) && !d.le(c, y)) return false;
    return true;
}

std::vector<FinitePoset> all_posets(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    std::size_t total = 1;
    for (std::size_t k = 0; k < pairs.size(); ++k) total *= 3;
    std::vector<FinitePoset> out;
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<std::uint8_t> m(n * n, 0);
        for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1;
        std::size_t c = code;
        for (auto [i, j] : pairs) {
            if (c % 3 == 1) m[i * n + j] = 1;
            if (c % 3 == 2) m[j * n + i] = 1;
            c /= 3;
        }
        bool transitive = true;
        for (std::size_t i = 0; transitive && i < n; ++i)
            for (std::size_t j = 0; transitive && j < n; ++j)
                for (std::size_t k = 0; transitive && k < n; ++k)
                    if (m[i * n + j] && m[j * n + k] && !m[i * n + k]) transitive = false;
        if (transitive) out.emplace_back(n, std::move(m));
    }
    return out;
}

bool agrees_on_words(const RegularLanguage& lang, const std::function<bool(const Word&)>& f, std::size_t n) {
    for (const auto& w : words_up_to(lang.alphabet(), n))
        if (lang.contains(w) != f(w)) return false;
    return true;
}

namespace {

RegularLanguage left_letter(const RegularLanguage& l, std::size_t a) {
    Dfa d = l.dfa();
    d.init = d.next(d.init, a);
    return minimize(d);
}

RegularLanguage right_letter(const RegularLanguage& l, std::size_t a) {
    Dfa d = l.dfa();
    std::vector<bool> f(d.states);
    for (std::size_t q = 0; q < d.states; ++q) f[q] = l.dfa().finals[d.next(q, a)];
    d.finals = f;
    return minimize(d);
}

}  // namespace

std::set<RegularLanguage> letter_derivative_fixpoint(const RegularLanguage& lang) {
    std::set<RegularLanguage> seen{lang};
    std::vector<RegularLanguage> todo{lang};
    while (!todo.empty()) {
        auto l = todo.back();
        todo.pop_back();
        for (std::size_t a = 0; a < l.alphabet().size(); ++a)
            for (auto next : {left_letter(l, a), right_letter(l, a)})
                if (seen.insert(next).second) todo.push_back(next);
    }
    return seen;
}

}  // namespace varietas::oracles
