#include "varietas/varieties.hpp"

#include <algorithm>
#include <set>

#include "varietas/error.hpp"

namespace varietas {

namespace {

void require_alphabet(const Alphabet& a, const RegularLanguage& l) {
    if (l.alphabet() != a)
        throw AlphabetMismatch("language over {" + l.alphabet().str() + "} in a variety over {" + a.str() + "}");
}

std::vector<RegularLanguage> sorted_unique(std::vector<RegularLanguage> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

bool closed_under_letters(const Alphabet& a, const std::vector<RegularLanguage>& sorted) {
    for (const auto& l : sorted)
        for (std::size_t i = 0; i < a.size(); ++i) {
            Word x(1, a[i]);
            if (!std::binary_search(sorted.begin(), sorted.end(), derivative(l, {x, ""}))) return false;
            if (!std::binary_search(sorted.begin(), sorted.end(), derivative(l, {"", x}))) return false;
        }
    return true;
}

void add_derivatives(const RegularLanguage& lang, std::set<RegularLanguage>& out) {
    const Dfa& d = lang.dfa();
    auto tm = transition_monoid(lang);
    Dfa probe = d;
    for (std::size_t p = 0; p < d.states; ++p) {
        probe.init = p;
        for (const auto& t : tm.actions) {
            for (std::size_t q = 0; q < d.states; ++q) probe.finals[q] = d.finals[t[q]];
            out.insert(minimize(probe));
        }
    }
}

}  // namespace

LocalBasicVariety::LocalBasicVariety(Alphabet alphabet, std::vector<RegularLanguage> languages)
    : alphabet_(std::move(alphabet)) {
    for (const auto& l : languages) require_alphabet(alphabet_, l);
    languages_ = sorted_unique(std::move(languages));
    if (!closed_under_letters(alphabet_, languages_))
        throw InvalidArgument("language set is not closed under derivatives");
}

bool LocalBasicVariety::contains(const RegularLanguage& l) const {
    return std::binary_search(languages_.begin(), languages_.end(), l);
}

std::optional<std::size_t> LocalBasicVariety::index_of(const RegularLanguage& l) const {
    auto it = std::lower_bound(languages_.begin(), languages_.end(), l);
    if (it == languages_.end() || !(*it == l)) return std::nullopt;
    return static_cast<std::size_t>(it - languages_.begin());
}

FinitePoset LocalBasicVariety::inclusion_order() const {
    return FinitePoset::from_relation(languages_.size(), [&](std::size_t i, std::size_t j) {
        return i == j || included_in(languages_[i], languages_[j]);
    });
}

LocalBasicVariety derivative_closure(const RegularLanguage& lang) {
    return generated_local_variety(lang.alphabet(), {lang});
}

LocalBasicVariety generated_local_variety(const Alphabet& alphabet, const std::vector<RegularLanguage>& langs) {
    std::set<RegularLanguage> out;
    for (const auto& l : langs) {
        require_alphabet(alphabet, l);
        add_derivatives(l, out);
    }
    return LocalBasicVariety(LocalBasicVariety::Trusted{}, alphabet, {out.begin(), out.end()});
}

bool is_local_basic_variety(const Alphabet& alphabet, const std::vector<RegularLanguage>& langs) {
    for (const auto& l : langs)
        if (l.alphabet() != alphabet) return false;
    return closed_under_letters(alphabet, sorted_unique(langs));
}

namespace {

bool subset_of(const std::vector<RegularLanguage>& small, const std::vector<RegularLanguage>& sorted_big) {
    for (const auto& l : small)
        if (!std::binary_search(sorted_big.begin(), sorted_big.end(), l)) return false;
    return true;
}

}  // namespace

CotheoryReport check_cotheory(const CotheorySample& sample) {
    CotheoryReport r;
    std::map<std::string, std::vector<std::vector<RegularLanguage>>> sorted;
    for (const auto& [key, family] : sample.families) {
        Alphabet a(key);
        auto& fam = sorted[key];
        for (std::size_t i = 0; i < family.size(); ++i) {
            fam.push_back(sorted_unique(family[i]));
            if (!is_local_basic_variety(a, fam.back()))
                r.violations.push_back({"not-derivative-closed", "{" + key + "} member " + std::to_string(i)});
        }
        for (std::size_t i = 0; i < fam.size(); ++i)
            for (std::size_t j = i + 1; j < fam.size(); ++j) {
                auto both = fam[i];
                both.insert(both.end(), fam[j].begin(), fam[j].end());
                bool found = std::any_of(fam.begin(), fam.end(), [&](const auto& m) { return subset_of(both, m); });
                if (!found)
                    r.violations.push_back({"not-directed", "{" + key + "} members " + std::to_string(i) + " and " +
                                                                std::to_string(j) + " have no common upper bound"});
            }
    }
    for (std::size_t h = 0; h < sample.homs.size(); ++h) {
        const auto& g = sample.homs[h];
        auto src = sorted.find(g.source.str());
        auto dst = sorted.find(g.target.str());
        if (src == sorted.end() || dst == sorted.end()) {
            r.violations.push_back({"missing-family", "hom " + std::to_string(h) + " {" + g.source.str() + "} -> {" +
                                                          g.target.str() + "}"});
            continue;
        }
        for (std::size_t i = 0; i < dst->second.size(); ++i) {
            std::vector<RegularLanguage> pulled;
            for (const auto& l : dst->second[i]) pulled.push_back(preimage(l, g));
            bool found =
                std::any_of(src->second.begin(), src->second.end(), [&](const auto& m) { return subset_of(pulled, m); });
            if (!found)
                r.violations.push_back({"preimage-not-contained", "hom " + std::to_string(h) + " member " +
                                                                      std::to_string(i) + " of {" + g.target.str() +
                                                                      "}"});
        }
    }
    return r;
}

QuotientComparison quotient_order(const UQuotient& e1, const UQuotient& e2) {
    if (e1.machine.alphabet != e2.machine.alphabet)
        throw AlphabetMismatch("U-quotients over {" + e1.machine.alphabet.str() + "} and {" +
                               e2.machine.alphabet.str() + "}");
    const std::size_t k = e1.machine.alphabet.size();
    const std::size_t n2 = e2.machine.states;
    std::vector<bool> seen(e1.machine.states * n2, false);
    std::vector<std::pair<std::size_t, std::size_t>> queue{{e1.machine.init, e2.machine.init}};
    seen[e1.machine.init * n2 + e2.machine.init] = true;
    std::vector<std::size_t> gens, images;
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        auto [p, q] = queue[i];
        if (pairs.insert({e2.val[q], e1.val[p]}).second) {
            gens.push_back(e2.val[q]);
            images.push_back(e1.val[p]);
        }
        for (std::size_t a = 0; a < k; ++a) {
            auto np = e1.machine.next(p, a), nq = e2.machine.next(q, a);
            if (!seen[np * n2 + nq]) {
                seen[np * n2 + nq] = true;
                queue.emplace_back(np, nq);
            }
        }
    }
    QuotientComparison out;
    if (generated_sublattice(e2.codomain, gens).size() != e2.codomain.size()) return out;
    auto f = extend_to_morphism(e2.codomain, gens, images, e1.codomain);
    if (!f) return out;
    out.leq = true;
    out.factor = LatticeMorphism{e2.codomain, e1.codomain, std::move(*f)};
    return out;
}

}  // namespace varietas
