#include "varietas/bimodule.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "varietas/error.hpp"

namespace varietas {

namespace {

std::string wit(std::initializer_list<std::pair<const char*, std::size_t>> parts) {
    std::string s;
    for (auto [k, v] : parts) {
        if (!s.empty()) s += ", ";
        s += k;
        s += "=";
        s += std::to_string(v);
    }
    return s;
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        parent[b] = a;
        return true;
    }
    std::vector<std::size_t> labels() {
        std::vector<std::size_t> out(parent.size());
        for (std::size_t i = 0; i < parent.size(); ++i) out[i] = find(i);
        return canonical_labels(out);
    }
};

std::vector<std::size_t> positions(std::size_t universe, const std::vector<std::size_t>& elems) {
    std::vector<std::size_t> pos(universe, SIZE_MAX);
    for (std::size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = i;
    return pos;
}

// Restriction of b to sorted element lists closed under every operation.
LatticeBimodule restrict_bimodule(const LatticeBimodule& b, const std::vector<std::size_t>& ms,
                                  const std::vector<std::size_t>& ds) {
    auto pm = positions(b.monoid_size(), ms);
    auto pd = positions(b.lattice_size(), ds);
    const std::size_t nm = ms.size(), nd = ds.size();
    auto need = [](std::size_t v) {
        if (v == SIZE_MAX) throw StructuralError("element sets are not closed under the bimodule operations");
        return v;
    };
    std::vector<std::size_t> table(nm * nm);
    for (std::size_t i = 0; i < nm; ++i)
        for (std::size_t j = 0; j < nm; ++j) table[i * nm + j] = need(pm[b.monoid().times(ms[i], ms[j])]);
    FiniteMonoid monoid(nm, need(pm[b.monoid().identity()]), std::move(table));
    Fdl lattice = restrict_lattice(b.lattice(), ds);
    std::vector<std::size_t> iota(nm), left(nm * nd), right(nd * nm);
    for (std::size_t i = 0; i < nm; ++i) {
        iota[i] = need(pd[b.iota(ms[i])]);
        for (std::size_t d = 0; d < nd; ++d) {
            left[i * nd + d] = need(pd[b.left(ms[i], ds[d])]);
            right[d * nm + i] = need(pd[b.right(ds[d], ms[i])]);
        }
    }
    return LatticeBimodule(std::move(monoid), std::move(lattice), std::move(iota), std::move(left), std::move(right));
}

}  // namespace

// ---------------------------------------------------------------- LatticeBimodule

LatticeBimodule::LatticeBimodule(FiniteMonoid monoid, Fdl lattice, std::vector<std::size_t> iota,
                                 std::vector<std::size_t> act_left, std::vector<std::size_t> act_right)
    : monoid_(std::move(monoid)),
      lattice_(std::move(lattice)),
      iota_(std::move(iota)),
      act_left_(std::move(act_left)),
      act_right_(std::move(act_right)) {
    const std::size_t m = monoid_.size(), d = lattice_.size();
    if (iota_.size() != m) throw StructuralError("bimodule: iota must have one entry per monoid element");
    if (act_left_.size() != m * d) throw StructuralError("bimodule: left action table has wrong size");
    if (act_right_.size() != d * m) throw StructuralError("bimodule: right action table has wrong size");
    for (const auto* t : {&iota_, &act_left_, &act_right_})
        for (auto v : *t)
            if (v >= d) throw StructuralError("bimodule: table entry outside the lattice");
}

LatticeBimodule LatticeBimodule::trivial() {
    return LatticeBimodule(FiniteMonoid::trivial(), Fdl::trivial(), {0}, {0}, {0});
}

AxiomReport check_axioms(const LatticeBimodule& b, std::size_t max_violations) {
    AxiomReport r;
    const auto& M = b.monoid();
    const auto& D = b.lattice();
    const std::size_t nm = M.size(), nd = D.size();
    auto fail = [&](const char* law, std::string w) {
        if (r.violations.size() < max_violations) r.violations.push_back({law, std::move(w)});
    };
    const auto one = M.identity();
    for (std::size_t d = 0; d < nd; ++d) {
        if (b.left(one, d) != d) fail("unit-left", wit({{"d", d}}));
        if (b.right(d, one) != d) fail("unit-right", wit({{"d", d}}));
    }
    for (std::size_t m = 0; m < nm; ++m) {
        if (b.left(m, D.bottom()) != D.bottom()) fail("left-bottom", wit({{"m", m}}));
        if (b.left(m, D.top()) != D.top()) fail("left-top", wit({{"m", m}}));
        if (b.right(D.bottom(), m) != D.bottom()) fail("right-bottom", wit({{"m", m}}));
        if (b.right(D.top(), m) != D.top()) fail("right-top", wit({{"m", m}}));
        for (std::size_t n = 0; n < nm; ++n) {
            if (b.left(m, b.iota(n)) != b.iota(M.times(m, n))) fail("translation-left", wit({{"m", m}, {"n", n}}));
            if (b.right(b.iota(m), n) != b.iota(M.times(m, n))) fail("translation-right", wit({{"m", m}, {"n", n}}));
            for (std::size_t d = 0; d < nd; ++d) {
                if (b.left(M.times(m, n), d) != b.left(m, b.left(n, d)))
                    fail("biaction-left", wit({{"m", m}, {"n", n}, {"d", d}}));
                if (b.right(d, M.times(m, n)) != b.right(b.right(d, m), n))
                    fail("biaction-right", wit({{"m", m}, {"n", n}, {"d", d}}));
                if (b.right(b.left(m, d), n) != b.left(m, b.right(d, n)))
                    fail("compatibility", wit({{"m", m}, {"n", n}, {"d", d}}));
            }
        }
        for (std::size_t d = 0; d < nd; ++d)
            for (std::size_t e = 0; e < nd; ++e) {
                if (b.left(m, D.join(d, e)) != D.join(b.left(m, d), b.left(m, e)))
                    fail("left-join", wit({{"m", m}, {"d", d}, {"e", e}}));
                if (b.left(m, D.meet(d, e)) != D.meet(b.left(m, d), b.left(m, e)))
                    fail("left-meet", wit({{"m", m}, {"d", d}, {"e", e}}));
                if (b.right(D.join(d, e), m) != D.join(b.right(d, m), b.right(e, m)))
                    fail("right-join", wit({{"m", m}, {"d", d}, {"e", e}}));
                if (b.right(D.meet(d, e), m) != D.meet(b.right(d, m), b.right(e, m)))
                    fail("right-meet", wit({{"m", m}, {"d", d}, {"e", e}}));
            }
    }
    return r;
}

// ---------------------------------------------------------------- homomorphisms

std::optional<std::string> hom_violation(const LatticeBimodule& s, const LatticeBimodule& t, const BimoduleHom& h) {
    if (h.star.size() != s.monoid_size() || h.diamond.size() != s.lattice_size()) return "hom is not total";
    for (auto v : h.star)
        if (v >= t.monoid_size()) return "star value out of range";
    for (auto v : h.diamond)
        if (v >= t.lattice_size()) return "diamond value out of range";
    if (h.star[s.monoid().identity()] != t.monoid().identity()) return "star does not preserve the identity";
    for (std::size_t m = 0; m < s.monoid_size(); ++m)
        for (std::size_t n = 0; n < s.monoid_size(); ++n)
            if (h.star[s.monoid().times(m, n)] != t.monoid().times(h.star[m], h.star[n]))
                return "star does not preserve products at " + wit({{"m", m}, {"n", n}});
    if (auto v = LatticeMorphism{s.lattice(), t.lattice(), h.diamond}.find_violation()) return "diamond: " + *v;
    for (std::size_t m = 0; m < s.monoid_size(); ++m) {
        if (h.diamond[s.iota(m)] != t.iota(h.star[m])) return "iota square fails at " + wit({{"m", m}});
        for (std::size_t d = 0; d < s.lattice_size(); ++d) {
            if (h.diamond[s.left(m, d)] != t.left(h.star[m], h.diamond[d]))
                return "left-action square fails at " + wit({{"m", m}, {"d", d}});
            if (h.diamond[s.right(d, m)] != t.right(h.diamond[d], h.star[m]))
                return "right-action square fails at " + wit({{"m", m}, {"d", d}});
        }
    }
    return std::nullopt;
}

BimoduleHom identity_hom(const LatticeBimodule& b) {
    BimoduleHom h{std::vector<std::size_t>(b.monoid_size()), std::vector<std::size_t>(b.lattice_size())};
    std::iota(h.star.begin(), h.star.end(), 0);
    std::iota(h.diamond.begin(), h.diamond.end(), 0);
    return h;
}

BimoduleHom compose(const BimoduleHom& second, const BimoduleHom& first) {
    BimoduleHom h;
    for (auto v : first.star) h.star.push_back(second.star.at(v));
    for (auto v : first.diamond) h.diamond.push_back(second.diamond.at(v));
    return h;
}

FreeHomSpec::FreeHomSpec(Alphabet a, LatticeBimodule t, std::vector<std::size_t> li)
    : alphabet(std::move(a)), target(std::move(t)), letter_image(std::move(li)) {
    if (letter_image.size() != alphabet.size()) throw StructuralError("free hom: one monoid element per letter required");
    for (auto v : letter_image)
        if (v >= target.monoid_size()) throw StructuralError("free hom: letter image outside the monoid");
}

std::size_t eval_hom(const FreeHomSpec& h, std::string_view w) {
    std::size_t m = h.target.monoid().identity();
    for (char c : w) {
        auto i = h.alphabet.index_of(c);
        if (!i) throw AlphabetMismatch(std::string("letter '") + c + "' is not in alphabet {" + h.alphabet.str() + "}");
        m = h.target.monoid().times(m, h.letter_image[*i]);
    }
    return m;
}

std::size_t eval_hom_diamond(const FreeHomSpec& h, const DiamondTerm& t) {
    return eval_diamond(t, h.target.lattice(), [&](const Word& w) { return h.target.iota(eval_hom(h, w)); });
}

// ---------------------------------------------------------------- products

LatticeBimodule product(const LatticeBimodule& a, const LatticeBimodule& b) {
    const std::size_t am = a.monoid_size(), bm = b.monoid_size(), ad = a.lattice_size(), bd = b.lattice_size();
    const std::size_t nm = am * bm, nd = ad * bd;
    std::vector<std::size_t> table(nm * nm);
    for (std::size_t x = 0; x < nm; ++x)
        for (std::size_t y = 0; y < nm; ++y)
            table[x * nm + y] = a.monoid().times(x / bm, y / bm) * bm + b.monoid().times(x % bm, y % bm);
    FiniteMonoid monoid(nm, a.monoid().identity() * bm + b.monoid().identity(), std::move(table));
    Fdl lattice = product(a.lattice(), b.lattice());
    std::vector<std::size_t> iota(nm), left(nm * nd), right(nd * nm);
    for (std::size_t x = 0; x < nm; ++x) {
        iota[x] = a.iota(x / bm) * bd + b.iota(x % bm);
        for (std::size_t d = 0; d < nd; ++d) {
            left[x * nd + d] = a.left(x / bm, d / bd) * bd + b.left(x % bm, d % bd);
            right[d * nm + x] = a.right(d / bd, x / bm) * bd + b.right(d % bd, x % bm);
        }
    }
    return LatticeBimodule(std::move(monoid), std::move(lattice), std::move(iota), std::move(left), std::move(right));
}

ProductProjections projections(const LatticeBimodule& a, const LatticeBimodule& b) {
    ProductProjections p;
    const std::size_t bm = b.monoid_size(), bd = b.lattice_size();
    for (std::size_t x = 0; x < a.monoid_size() * bm; ++x) {
        p.first.star.push_back(x / bm);
        p.second.star.push_back(x % bm);
    }
    for (std::size_t d = 0; d < a.lattice_size() * bd; ++d) {
        p.first.diamond.push_back(d / bd);
        p.second.diamond.push_back(d % bd);
    }
    return p;
}

// ---------------------------------------------------------------- congruences

BimoduleCongruence BimoduleCongruence::diagonal(const LatticeBimodule& b) {
    BimoduleCongruence c{std::vector<std::size_t>(b.monoid_size()), std::vector<std::size_t>(b.lattice_size())};
    std::iota(c.part_m.begin(), c.part_m.end(), 0);
    std::iota(c.part_d.begin(), c.part_d.end(), 0);
    return c;
}

BimoduleCongruence BimoduleCongruence::total(const LatticeBimodule& b) {
    return {std::vector<std::size_t>(b.monoid_size(), 0), std::vector<std::size_t>(b.lattice_size(), 0)};
}

bool BimoduleCongruence::is_diagonal() const {
    auto distinct = [](const std::vector<std::size_t>& p) {
        auto s = p;
        std::sort(s.begin(), s.end());
        return std::adjacent_find(s.begin(), s.end()) == s.end();
    };
    return distinct(part_m) && distinct(part_d);
}

bool is_congruence(const LatticeBimodule& b, const BimoduleCongruence& c) {
    const std::size_t nm = b.monoid_size(), nd = b.lattice_size();
    if (c.part_m.size() != nm || c.part_d.size() != nd) throw StructuralError("congruence: partition sizes do not match");
    if (!is_lattice_congruence(b.lattice(), c.part_d)) return false;
    if (!b.monoid().is_congruence(c.part_m)) return false;
    const auto& pm = c.part_m;
    const auto& pd = c.part_d;
    for (std::size_t m = 0; m < nm; ++m)
        for (std::size_t m2 = m + 1; m2 < nm; ++m2) {
            if (pm[m] != pm[m2]) continue;
            if (pd[b.iota(m)] != pd[b.iota(m2)]) return false;
            for (std::size_t d = 0; d < nd; ++d)
                if (pd[b.left(m, d)] != pd[b.left(m2, d)] || pd[b.right(d, m)] != pd[b.right(d, m2)]) return false;
        }
    for (std::size_t d = 0; d < nd; ++d)
        for (std::size_t d2 = d + 1; d2 < nd; ++d2) {
            if (pd[d] != pd[d2]) continue;
            for (std::size_t m = 0; m < nm; ++m)
                if (pd[b.left(m, d)] != pd[b.left(m, d2)] || pd[b.right(d, m)] != pd[b.right(d2, m)]) return false;
        }
    return true;
}

BimoduleCongruence generate_congruence(const LatticeBimodule& b,
                                       const std::vector<std::pair<std::size_t, std::size_t>>& monoid_pairs,
                                       const std::vector<std::pair<std::size_t, std::size_t>>& lattice_pairs) {
    const std::size_t nm = b.monoid_size(), nd = b.lattice_size();
    const auto& M = b.monoid();
    const auto& D = b.lattice();
    UnionFind um(nm), ud(nd);
    for (auto [x, y] : monoid_pairs) um.unite(x, y);
    for (auto [x, y] : lattice_pairs) ud.unite(x, y);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t x = 0; x < nm; ++x) {
            auto r = um.find(x);
            if (r == x) continue;
            changed |= ud.unite(b.iota(x), b.iota(r));
            for (std::size_t n = 0; n < nm; ++n) {
                changed |= um.unite(M.times(n, x), M.times(n, r));
                changed |= um.unite(M.times(x, n), M.times(r, n));
            }
            for (std::size_t d = 0; d < nd; ++d) {
                changed |= ud.unite(b.left(x, d), b.left(r, d));
                changed |= ud.unite(b.right(d, x), b.right(d, r));
            }
        }
        for (std::size_t x = 0; x < nd; ++x) {
            auto r = ud.find(x);
            if (r == x) continue;
            for (std::size_t m = 0; m < nm; ++m) {
                changed |= ud.unite(b.left(m, x), b.left(m, r));
                changed |= ud.unite(b.right(x, m), b.right(r, m));
            }
            for (std::size_t e = 0; e < nd; ++e) {
                changed |= ud.unite(D.join(x, e), D.join(r, e));
                changed |= ud.unite(D.meet(x, e), D.meet(r, e));
            }
        }
    }
    return {um.labels(), ud.labels()};
}

Quotient quotient(const LatticeBimodule& b, const BimoduleCongruence& c) {
    if (!is_congruence(b, c)) throw InvalidArgument("quotient: partition pair is not a bimodule congruence");
    auto lm = canonical_labels(c.part_m);
    auto ld = canonical_labels(c.part_d);
    const std::size_t km = *std::max_element(lm.begin(), lm.end()) + 1;
    const std::size_t kd = *std::max_element(ld.begin(), ld.end()) + 1;
    std::vector<std::size_t> rm(km, SIZE_MAX), rd(kd, SIZE_MAX);
    for (std::size_t i = 0; i < lm.size(); ++i)
        if (rm[lm[i]] == SIZE_MAX) rm[lm[i]] = i;
    for (std::size_t i = 0; i < ld.size(); ++i)
        if (rd[ld[i]] == SIZE_MAX) rd[ld[i]] = i;
    std::vector<std::size_t> table(km * km);
    for (std::size_t x = 0; x < km; ++x)
        for (std::size_t y = 0; y < km; ++y) table[x * km + y] = lm[b.monoid().times(rm[x], rm[y])];
    FiniteMonoid monoid(km, lm[b.monoid().identity()], std::move(table));
    Fdl lattice = quotient_lattice(b.lattice(), ld);
    std::vector<std::size_t> iota(km), left(km * kd), right(kd * km);
    for (std::size_t x = 0; x < km; ++x) {
        iota[x] = ld[b.iota(rm[x])];
        for (std::size_t d = 0; d < kd; ++d) {
            left[x * kd + d] = ld[b.left(rm[x], rd[d])];
            right[d * km + x] = ld[b.right(rd[d], rm[x])];
        }
    }
    return {LatticeBimodule(std::move(monoid), std::move(lattice), std::move(iota), std::move(left), std::move(right)),
            BimoduleHom{std::move(lm), std::move(ld)}};
}

// ---------------------------------------------------------------- sub-objects and images

Subbimodule generated_subbimodule(const LatticeBimodule& b, const std::vector<std::size_t>& monoid_seeds,
                                  const std::vector<std::size_t>& lattice_seeds) {
    auto ms = b.monoid().generated_submonoid(monoid_seeds);
    std::vector<bool> in(b.lattice_size(), false);
    std::vector<std::size_t> ds;
    auto add = [&](std::size_t d) {
        if (d >= b.lattice_size()) throw StructuralError("lattice seed out of range");
        if (!in[d]) {
            in[d] = true;
            ds.push_back(d);
        }
    };
    add(b.lattice().bottom());
    add(b.lattice().top());
    for (auto m : ms) add(b.iota(m));
    for (auto d : lattice_seeds) add(d);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        for (auto m : ms) {
            add(b.left(m, ds[i]));
            add(b.right(ds[i], m));
        }
        for (std::size_t j = 0; j <= i; ++j) {
            add(b.lattice().join(ds[i], ds[j]));
            add(b.lattice().meet(ds[i], ds[j]));
        }
    }
    std::sort(ds.begin(), ds.end());
    return {restrict_bimodule(b, ms, ds), BimoduleHom{ms, ds}};
}

ImageFactorization image_factorization(const LatticeBimodule& source, const LatticeBimodule& target, const BimoduleHom& h) {
    if (auto v = hom_violation(source, target, h)) throw InvalidArgument("image factorization: not a homomorphism: " + *v);
    auto ms = h.star;
    auto ds = h.diamond;
    for (auto* v : {&ms, &ds}) {
        std::sort(v->begin(), v->end());
        v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    auto image = restrict_bimodule(target, ms, ds);
    auto pm = positions(target.monoid_size(), ms);
    auto pd = positions(target.lattice_size(), ds);
    BimoduleHom surj;
    for (auto v : h.star) surj.star.push_back(pm[v]);
    for (auto v : h.diamond) surj.diamond.push_back(pd[v]);
    return {std::move(image), std::move(surj), BimoduleHom{ms, ds}, {}};
}

ImageFactorization image_factorization(const FreeHomSpec& h) {
    auto sub = generated_subbimodule(h.target, h.letter_image, {});
    auto pm = positions(h.target.monoid_size(), sub.inclusion.star);
    std::vector<std::size_t> letters;
    for (auto v : h.letter_image) letters.push_back(pm[v]);
    return {std::move(sub.bimodule), {}, std::move(sub.inclusion), std::move(letters)};
}

bool is_star_generated(const LatticeBimodule& b) {
    return generated_sublattice(b.lattice(), b.iota_table()).size() == b.lattice_size();
}

bool is_star_embedded(const LatticeBimodule& b) {
    auto s = b.iota_table();
    std::sort(s.begin(), s.end());
    return std::adjacent_find(s.begin(), s.end()) == s.end();
}

BimoduleCongruence canonical_collapse(const LatticeBimodule& b) {
    const std::size_t nm = b.monoid_size(), nd = b.lattice_size();
    std::map<std::vector<std::size_t>, std::size_t> sigs;
    std::vector<std::size_t> labels(nm);
    for (std::size_t m = 0; m < nm; ++m) {
        std::vector<std::size_t> sig;
        sig.reserve(2 * nd + 1);
        sig.push_back(b.iota(m));
        for (std::size_t d = 0; d < nd; ++d) sig.push_back(b.left(m, d));
        for (std::size_t d = 0; d < nd; ++d) sig.push_back(b.right(d, m));
        auto [it, _] = sigs.emplace(std::move(sig), sigs.size());
        labels[m] = it->second;
    }
    BimoduleCongruence c = BimoduleCongruence::diagonal(b);
    c.part_m = canonical_labels(labels);
    return c;
}

bool is_reduced(const LatticeBimodule& b) { return canonical_collapse(b).is_diagonal(); }

Quotient reduce(const LatticeBimodule& b) { return quotient(b, canonical_collapse(b)); }

// ---------------------------------------------------------------- canonical examples

FreeHomSpec recognizer_from_monoid(const FiniteMonoid& monoid, const Alphabet& alphabet,
                                   const std::vector<std::size_t>& letter_image) {
    const std::size_t nm = monoid.size();
    auto fc = free_cdl(nm);
    const Fdl& D = fc.lattice.lattice();
    const std::size_t nd = D.size();
    const std::size_t subsets = std::size_t{1} << nm;
    // Element E is a superset-closed family of subsets J of M, i.e. the join over J in E of
    // the meet of the generators in J. Translations act on each generator.
    auto translate = [&](std::size_t e, auto&& act) {
        std::size_t v = D.bottom();
        for (std::size_t j = 0; j < subsets; ++j) {
            if (!(fc.lattice.member(e) >> j & 1)) continue;
            std::size_t clause = D.top();
            for (std::size_t x = 0; x < nm; ++x)
                if (j >> x & 1) clause = D.meet(clause, fc.generators[act(x)]);
            v = D.join(v, clause);
        }
        return v;
    };
    std::vector<std::size_t> iota(nm), left(nm * nd), right(nd * nm);
    for (std::size_t m = 0; m < nm; ++m) {
        iota[m] = fc.generators[m];
        for (std::size_t e = 0; e < nd; ++e) {
            left[m * nd + e] = translate(e, [&](std::size_t x) { return monoid.times(m, x); });
            right[e * nm + m] = translate(e, [&](std::size_t x) { return monoid.times(x, m); });
        }
    }
    LatticeBimodule b(monoid, D, std::move(iota), std::move(left), std::move(right));
    return FreeHomSpec(alphabet, std::move(b), letter_image);
}

LatticeBimodule diamond_bimodule() {
    // lattice elements: 0 = bot, 1 = {0}, 2 = {1}, 3 = top
    Fdl d = Fdl::boolean(2);
    return LatticeBimodule(FiniteMonoid::cyclic_group(2), std::move(d), {1, 2}, {0, 1, 2, 3, 0, 2, 1, 3},
                           {0, 0, 1, 2, 2, 1, 3, 3});
}

}  // namespace varietas
