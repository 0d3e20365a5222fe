#include "varietas/duality.hpp"

#include <algorithm>
#include <map>

#include "varietas/error.hpp"

namespace varietas {

SetLattice dual_lattice(const LocalBasicVariety& v) {
    if (v.size() > 64) throw BoundExceeded("variety with " + std::to_string(v.size()) + " languages exceeds 64");
    return upset_lattice(v.inclusion_order());
}

UQuotient dual_of_variety(const LocalBasicVariety& v) {
    auto lat = dual_lattice(v);
    const auto& langs = v.languages();
    const std::size_t k = v.alphabet().size();
    std::map<std::vector<std::size_t>, std::size_t> id;
    std::vector<std::vector<std::size_t>> states;
    std::vector<std::size_t> start;
    for (const auto& l : langs) start.push_back(l.dfa().init);
    id[start] = 0;
    states.push_back(start);
    Dfa d;
    d.alphabet = v.alphabet();
    std::vector<std::size_t> val;
    for (std::size_t i = 0; i < states.size(); ++i) {
        Mask m = 0;
        for (std::size_t j = 0; j < langs.size(); ++j)
            if (langs[j].dfa().finals[states[i][j]]) m |= Mask{1} << j;
        val.push_back(lat.at(m));
        for (std::size_t a = 0; a < k; ++a) {
            std::vector<std::size_t> next(langs.size());
            for (std::size_t j = 0; j < langs.size(); ++j) next[j] = langs[j].dfa().next(states[i][j], a);
            auto [it, fresh] = id.try_emplace(next, states.size());
            if (fresh) states.push_back(next);
            d.delta.push_back(it->second);
        }
    }
    d.states = states.size();
    d.init = 0;
    d.finals.assign(d.states, false);
    return {lat.lattice(), std::move(d), std::move(val), Provenance::DualOfVariety};
}

DualityReport verify_local_duality(const LocalBasicVariety& v) {
    DualityReport r;
    auto e = dual_of_variety(v);
    auto primes = rec_by_prime(e);
    std::vector<RegularLanguage> rec;
    for (const auto& [c, l] : primes) rec.push_back(l);
    auto sorted = rec;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    r.sets_equal = sorted == v.languages();
    if (!r.sets_equal) r.problems.emplace_back("recognized languages differ from the variety");

    r.order_iso = sorted.size() == primes.size() && primes.size() == v.size();
    if (!r.order_iso) r.problems.emplace_back("join-primes and languages are not in bijection");
    for (std::size_t i = 0; r.order_iso && i < primes.size(); ++i)
        for (std::size_t j = 0; j < primes.size(); ++j) {
            bool le = e.codomain.le(primes[i].first, primes[j].first);
            if (le != included_in(primes[j].second, primes[i].second)) {
                r.order_iso = false;
                r.problems.emplace_back("order mismatch between join-primes " + std::to_string(i) + " and " +
                                        std::to_string(j));
                break;
            }
        }
    if (r.order_iso && !poset_iso(join_primes(e.codomain).poset.reversed(), v.inclusion_order())) {
        r.order_iso = false;
        r.problems.emplace_back("join-prime poset is not anti-isomorphic to inclusion");
    }
    return r;
}

HomSquare dual_of_hom_square(const FreeMonoidHom& g, const LocalBasicVariety& v) {
    if (g.target != v.alphabet())
        throw AlphabetMismatch("hom target {" + g.target.str() + "} differs from variety alphabet {" +
                               v.alphabet().str() + "}");
    std::vector<RegularLanguage> pulled;
    for (const auto& l : v.languages()) pulled.push_back(preimage(l, g));
    HomSquare out{generated_local_variety(g.source, pulled), std::nullopt, false};

    auto et = dual_of_variety(out.target);
    auto ev = dual_of_variety(v);
    auto lt = dual_lattice(out.target);
    auto lv = dual_lattice(v);
    std::vector<std::size_t> phi;
    for (const auto& p : pulled) phi.push_back(*out.target.index_of(p));
    std::vector<std::size_t> map(lt.size());
    for (std::size_t s = 0; s < lt.size(); ++s) {
        Mask m = 0;
        for (std::size_t j = 0; j < phi.size(); ++j)
            if (lt.member(s) >> phi[j] & 1) m |= Mask{1} << j;
        map[s] = lv.at(m);
    }
    out.lift = LatticeMorphism{lt.lattice(), lv.lattice(), std::move(map)};

    const std::size_t k = g.source.size();
    const std::size_t nv = ev.machine.states;
    std::vector<bool> seen(et.machine.states * nv, false);
    std::vector<std::pair<std::size_t, std::size_t>> queue{{0, 0}};
    seen[0] = true;
    out.commutes = true;
    for (std::size_t i = 0; i < queue.size() && out.commutes; ++i) {
        auto [p, q] = queue[i];
        if ((*out.lift)(et.val[p]) != ev.val[q]) out.commutes = false;
        for (std::size_t a = 0; a < k; ++a) {
            auto np = et.machine.next(p, a);
            auto nq = ev.machine.run(q, g.image[a]);
            if (!seen[np * nv + nq]) {
                seen[np * nv + nq] = true;
                queue.emplace_back(np, nq);
            }
        }
    }
    return out;
}

}  // namespace varietas
