#include "varietas/recognition.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "varietas/duality.hpp"
#include "varietas/error.hpp"
#include "varietas/varieties.hpp"

namespace varietas {

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::FromBimodule: return "from-bimodule";
        case Provenance::DualOfVariety: return "dual-of-variety";
        case Provenance::External: return "external";
    }
    return "external";
}

namespace {

std::vector<RegularLanguage> sorted_unique(std::vector<RegularLanguage> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<std::size_t> reachable_states(const Dfa& d) {
    std::vector<bool> seen(d.states, false);
    std::vector<std::size_t> out{d.init};
    seen[d.init] = true;
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t a = 0; a < d.alphabet.size(); ++a) {
            auto t = d.next(out[i], a);
            if (!seen[t]) {
                seen[t] = true;
                out.push_back(t);
            }
        }
    return out;
}

}  // namespace

UQuotientReport validate_uquotient(const UQuotient& e) {
    UQuotientReport r;
    try {
        e.machine.validate();
    } catch (const Error& ex) {
        r.problems.emplace_back(ex.what());
        return r;
    }
    if (e.val.size() != e.machine.states) {
        r.problems.emplace_back("val must have one entry per machine state");
        return r;
    }
    for (auto v : e.val)
        if (v >= e.codomain.size()) {
            r.problems.emplace_back("val entry outside the codomain");
            return r;
        }

    auto reach = reachable_states(e.machine);
    std::vector<std::size_t> word_values;
    for (auto q : reach) word_values.push_back(e.val[q]);
    r.generating = generated_sublattice(e.codomain, word_values).size() == e.codomain.size();
    if (!r.generating) {
        r.problems.emplace_back("word values do not generate the codomain");
        return r;
    }

    // Words act through the transition monoid; a context (v, w) is determined by the state
    // reached by v and the transformation of w.
    auto tm = transition_monoid_of(e.machine);
    const auto& acts = tm.actions;
    std::vector<std::size_t> generators;
    for (const auto& t : acts) generators.push_back(e.val[t[e.machine.init]]);
    std::set<std::vector<std::size_t>> seen;
    r.liftings = true;
    for (auto p : reach) {
        for (const auto& tw : acts) {
            std::vector<std::size_t> images;
            images.reserve(acts.size());
            for (const auto& tx : acts) images.push_back(e.val[tw[tx[p]]]);
            if (!seen.insert(images).second) continue;
            if (!extend_to_morphism(e.codomain, generators, images, e.codomain)) {
                r.liftings = false;
                r.problems.emplace_back("context from state " + std::to_string(p) + " has no lifting");
                return r;
            }
        }
    }
    return r;
}

std::vector<RegularLanguage> recognized_languages(const FreeHomSpec& h) {
    const auto& B = h.target;
    const std::size_t k = h.alphabet.size();
    Dfa d;
    d.alphabet = h.alphabet;
    d.states = B.monoid_size();
    d.init = B.monoid().identity();
    d.delta.resize(d.states * k);
    for (std::size_t m = 0; m < d.states; ++m)
        for (std::size_t a = 0; a < k; ++a) d.delta[m * k + a] = B.monoid().times(m, h.letter_image[a]);
    std::vector<RegularLanguage> out;
    for (auto c : join_primes(B.lattice()).elements) {
        d.finals.assign(d.states, false);
        for (std::size_t m = 0; m < d.states; ++m) d.finals[m] = B.lattice().le(c, B.iota(m));
        out.push_back(minimize(d));
    }
    return sorted_unique(std::move(out));
}

bool recognizes(const FreeHomSpec& h, const RegularLanguage& lang) {
    if (lang.alphabet() != h.alphabet)
        throw AlphabetMismatch("language alphabet {" + lang.alphabet().str() + "} differs from recognizer alphabet {" +
                               h.alphabet.str() + "}");
    auto langs = recognized_languages(h);
    return std::binary_search(langs.begin(), langs.end(), lang);
}

UQuotient uquotient_of_hom(const FreeHomSpec& h) {
    const auto& B = h.target;
    const std::size_t k = h.alphabet.size();
    std::vector<std::size_t> id(B.monoid_size(), SIZE_MAX);
    std::vector<std::size_t> elems{B.monoid().identity()};
    id[elems[0]] = 0;
    Dfa d;
    d.alphabet = h.alphabet;
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t a = 0; a < k; ++a) {
            auto t = B.monoid().times(elems[i], h.letter_image[a]);
            if (id[t] == SIZE_MAX) {
                id[t] = elems.size();
                elems.push_back(t);
            }
            d.delta.push_back(id[t]);
        }
    d.states = elems.size();
    d.init = 0;
    d.finals.assign(d.states, false);

    std::vector<std::size_t> values;
    for (auto m : elems) values.push_back(B.iota(m));
    auto sub = generated_sublattice(B.lattice(), values);
    std::vector<std::size_t> pos(B.lattice_size(), SIZE_MAX);
    for (std::size_t i = 0; i < sub.size(); ++i) pos[sub[i]] = i;
    std::vector<std::size_t> val;
    for (auto v : values) val.push_back(pos[v]);
    return {restrict_lattice(B.lattice(), sub), std::move(d), std::move(val), Provenance::FromBimodule};
}

std::vector<std::pair<std::size_t, RegularLanguage>> rec_by_prime(const UQuotient& e) {
    e.machine.validate();
    std::vector<std::pair<std::size_t, RegularLanguage>> out;
    Dfa d = e.machine;
    for (auto c : join_primes(e.codomain).elements) {
        for (std::size_t q = 0; q < d.states; ++q) d.finals[q] = e.codomain.le(c, e.val[q]);
        out.emplace_back(c, minimize(d));
    }
    return out;
}

std::vector<RegularLanguage> rec_of_uquotient(const UQuotient& e) {
    std::vector<RegularLanguage> out;
    for (auto& [c, l] : rec_by_prime(e)) out.push_back(std::move(l));
    return sorted_unique(std::move(out));
}

FreeHomSpec minimal_recognizer(const RegularLanguage& lang) {
    auto tm = transition_monoid(lang);
    auto variety = derivative_closure(lang);
    auto lat = dual_lattice(variety);
    const auto& V = variety.languages();
    const std::size_t nm = tm.monoid.size(), nd = lat.size(), nv = V.size();

    // left_shift[m][i] = index of w_m^{-1} V_i, right_shift[m][i] = index of V_i w_m^{-1}
    std::vector<std::vector<std::size_t>> left_shift(nm, std::vector<std::size_t>(nv));
    std::vector<std::vector<std::size_t>> right_shift(nm, std::vector<std::size_t>(nv));
    std::vector<Mask> iota_mask(nm, 0);
    for (std::size_t m = 0; m < nm; ++m) {
        const auto& w = tm.representatives[m];
        for (std::size_t i = 0; i < nv; ++i) {
            if (V[i].contains(w)) iota_mask[m] |= Mask{1} << i;
            left_shift[m][i] = *variety.index_of(derivative(V[i], {w, ""}));
            right_shift[m][i] = *variety.index_of(derivative(V[i], {"", w}));
        }
    }
    auto pull = [&](Mask s, const std::vector<std::size_t>& shift) {
        Mask out = 0;
        for (std::size_t i = 0; i < nv; ++i)
            if (s >> shift[i] & 1) out |= Mask{1} << i;
        return out;
    };
    std::vector<std::size_t> iota(nm), left(nm * nd), right(nd * nm);
    for (std::size_t m = 0; m < nm; ++m) {
        iota[m] = lat.at(iota_mask[m]);
        for (std::size_t e = 0; e < nd; ++e) {
            left[m * nd + e] = lat.at(pull(lat.member(e), left_shift[m]));
            right[e * nm + m] = lat.at(pull(lat.member(e), right_shift[m]));
        }
    }
    LatticeBimodule b(tm.monoid, lat.lattice(), std::move(iota), std::move(left), std::move(right));
    return FreeHomSpec(lang.alphabet(), std::move(b), tm.letter_map);
}

}  // namespace varietas
