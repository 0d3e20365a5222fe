#include "varietas/suites/corpus.hpp"

#include <algorithm>
#include <set>

#include "varietas/error.hpp"
#include "varietas/recognition.hpp"

namespace varietas::suites {

std::vector<FiniteMonoid> small_monoids() {
    return {FiniteMonoid::trivial(), FiniteMonoid::cyclic_group(2), FiniteMonoid(2, 0, {0, 1, 1, 1})};
}

std::vector<Fdl> small_lattices() {
    return {Fdl::chain(1), Fdl::chain(2), Fdl::chain(3), Fdl::chain(4), Fdl::boolean(2)};
}

std::vector<std::vector<std::size_t>> lattice_endomorphisms(const Fdl& d) {
    const std::size_t n = d.size();
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> f(n, 0);
    while (true) {
        bool ok = f[d.bottom()] == d.bottom() && f[d.top()] == d.top();
        for (std::size_t x = 0; ok && x < n; ++x)
            for (std::size_t y = 0; ok && y < n; ++y)
                ok = f[d.join(x, y)] == d.join(f[x], f[y]) && f[d.meet(x, y)] == d.meet(f[x], f[y]);
        if (ok) out.push_back(f);
        std::size_t i = 0;
        while (i < n && ++f[i] == n) f[i++] = 0;
        if (i == n) break;
    }
    return out;
}

std::vector<LatticeBimodule> exhaustive_bimodules() {
    std::vector<LatticeBimodule> out;
    for (const auto& m : small_monoids()) {
        for (const auto& d : small_lattices()) {
            const std::size_t nm = m.size(), nd = d.size();
            auto ends = lattice_endomorphisms(d);
            std::vector<std::size_t> id(nd);
            for (std::size_t i = 0; i < nd; ++i) id[i] = i;
            // one action choice per non-identity element and side
            std::vector<std::size_t> others;
            for (std::size_t x = 0; x < nm; ++x)
                if (x != m.identity()) others.push_back(x);
            std::size_t choices = 1;
            for (std::size_t i = 0; i < 2 * others.size(); ++i) choices *= ends.size();
            std::size_t iotas = 1;
            for (std::size_t i = 0; i < nm; ++i) iotas *= nd;
            for (std::size_t c = 0; c < choices; ++c) {
                std::vector<std::size_t> left(nm * nd), right(nd * nm);
                std::size_t code = c;
                for (std::size_t x = 0; x < nm; ++x) {
                    const std::vector<std::size_t>* fl = &id;
                    const std::vector<std::size_t>* fr = &id;
                    if (x != m.identity()) {
                        fl = &ends[code % ends.size()];
                        code /= ends.size();
                        fr = &ends[code % ends.size()];
                        code /= ends.size();
                    }
                    for (std::size_t e = 0; e < nd; ++e) {
                        left[x * nd + e] = (*fl)[e];
                        right[e * nm + x] = (*fr)[e];
                    }
                }
                for (std::size_t ic = 0; ic < iotas; ++ic) {
                    std::vector<std::size_t> iota(nm);
                    std::size_t t = ic;
                    for (std::size_t x = 0; x < nm; ++x) {
                        iota[x] = t % nd;
                        t /= nd;
                    }
                    LatticeBimodule b(m, d, iota, left, right);
                    if (check_axioms(b, 1).ok()) out.push_back(std::move(b));
                }
            }
        }
    }
    return out;
}

std::string random_regex(Rng& rng, const Alphabet& alphabet, int depth) {
    if (depth <= 0 || pick(rng, 4) == 0) {
        auto r = pick(rng, 10);
        if (r == 0) return "ε";
        if (r == 1) return "∅";
        return std::string(1, alphabet[pick(rng, alphabet.size())]);
    }
    switch (pick(rng, 3)) {
        case 0: return "(" + random_regex(rng, alphabet, depth - 1) + random_regex(rng, alphabet, depth - 1) + ")";
        case 1: return "(" + random_regex(rng, alphabet, depth - 1) + "|" + random_regex(rng, alphabet, depth - 1) + ")";
        default: return "(" + random_regex(rng, alphabet, depth - 1) + ")*";
    }
}

Word random_word(Rng& rng, const Alphabet& alphabet, std::size_t max_len) {
    Word w;
    std::size_t len = pick(rng, max_len + 1);
    for (std::size_t i = 0; i < len; ++i) w += alphabet[pick(rng, alphabet.size())];
    return w;
}

FreeMonoidHom random_hom(Rng& rng, const Alphabet& source, const Alphabet& target, std::size_t max_len) {
    std::vector<Word> images;
    for (std::size_t a = 0; a < source.size(); ++a) images.push_back(random_word(rng, target, max_len));
    return FreeMonoidHom(source, target, std::move(images));
}

std::vector<RegexSample> regex_sample(std::uint64_t seed, std::size_t count, std::size_t max_states,
                                      std::size_t max_monoid) {
    Rng rng(seed ^ 0x7265676578ULL);
    const Alphabet alphabets[] = {Alphabet("a"), Alphabet("ab")};
    std::vector<RegexSample> out;
    std::set<RegularLanguage> seen;
    for (std::size_t attempt = 0; out.size() < count && attempt < 100000; ++attempt) {
        const Alphabet& a = alphabets[out.size() % 3 == 0 ? 0 : 1];
        auto pattern = random_regex(rng, a, 3);
        auto lang = parse_regex(pattern, a);
        if (lang.num_states() > max_states) continue;
        if (transition_monoid(lang).monoid.size() > max_monoid) continue;
        if (!seen.insert(lang).second) continue;
        out.push_back({pattern, lang});
    }
    return out;
}

namespace {

LatticeBimodule random_product(Rng& rng, const std::vector<LatticeBimodule>& corpus) {
    while (true) {
        const auto& a = corpus[pick(rng, corpus.size())];
        const auto& b = corpus[pick(rng, corpus.size())];
        if (a.monoid_size() * b.monoid_size() <= 4 && a.lattice_size() * b.lattice_size() <= 16 &&
            a.lattice_size() * b.lattice_size() > 4)
            return product(a, b);
    }
}

}  // namespace

std::vector<LatticeBimodule> random_bimodules(Rng& rng, std::size_t count, const std::vector<LatticeBimodule>& corpus) {
    std::vector<LatticeBimodule> out;
    std::vector<RegexSample> langs = regex_sample(rng(), 24, 5, 4);
    while (out.size() < count) {
        switch (out.size() % 5) {
            case 0: out.push_back(random_product(rng, corpus)); break;
            case 1: {
                auto p = random_product(rng, corpus);
                std::vector<std::size_t> ms{pick(rng, p.monoid_size())}, ds{pick(rng, p.lattice_size())};
                out.push_back(generated_subbimodule(p, ms, ds).bimodule);
                break;
            }
            case 2: {
                auto p = random_product(rng, corpus);
                std::vector<std::pair<std::size_t, std::size_t>> mp, dp;
                if (pick(rng, 2)) mp.emplace_back(pick(rng, p.monoid_size()), pick(rng, p.monoid_size()));
                else dp.emplace_back(pick(rng, p.lattice_size()), pick(rng, p.lattice_size()));
                out.push_back(quotient(p, generate_congruence(p, mp, dp)).bimodule);
                break;
            }
            case 3: {
                const auto& s = langs[pick(rng, langs.size())];
                auto tm = transition_monoid(s.lang);
                out.push_back(recognizer_from_monoid(tm.monoid, s.lang.alphabet(), tm.letter_map).target);
                break;
            }
            default: {
                const auto& s = langs[pick(rng, langs.size())];
                out.push_back(minimal_recognizer(s.lang).target);
                break;
            }
        }
    }
    return out;
}

}  // namespace varietas::suites
