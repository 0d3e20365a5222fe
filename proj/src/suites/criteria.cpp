#include "varietas/suites/criteria.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <sstream>

#include "varietas/bimodule.hpp"
#include "varietas/duality.hpp"
#include "varietas/qfa.hpp"
#include "varietas/recognition.hpp"
#include "varietas/suites/corpus.hpp"
#include "varietas/suites/oracles.hpp"
#include "varietas/varieties.hpp"

namespace varietas::suites {

namespace {

bool free_cdl_sizes(std::uint64_t, std::string& detail) {
    const std::size_t expected[] = {2, 3, 6, 20};
    std::ostringstream os;
    bool ok = true;
    for (std::size_t k = 0; k < 4; ++k) {
        auto f = free_cdl(k);
        // down-sets of the powerset ordered by reverse inclusion, counted by brute force
        std::size_t n = std::size_t{1} << k;
        auto ps = FinitePoset::from_relation(n, [](std::size_t i, std::size_t j) { return (i & j) == j; });
        auto brute = oracles::count_downsets(ps);
        os << "|FCDL(" << k << ")|=" << f.lattice.size() << " ";
        ok = ok && f.lattice.size() == expected[k] && brute == expected[k] && f.generators.size() == k;
    }
    detail = os.str();
    return ok;
}

bool diamond_example(std::uint64_t, std::string& detail) {
    auto b = diamond_bimodule();
    std::ostringstream os;
    bool axioms = check_axioms(b).ok();
    bool gen = is_star_generated(b), emb = is_star_embedded(b), red = is_reduced(b);
    os << "axioms=" << axioms << " generated=" << gen << " embedded=" << emb << " reduced=" << red;

    auto sub = generated_subbimodule(b, {b.monoid().identity()}, {1, 2});
    bool sub_ok = sub.bimodule.monoid_size() == 1 && sub.bimodule.lattice_size() == 4 &&
                  check_axioms(sub.bimodule).ok() && !is_star_generated(sub.bimodule);
    os << " sub{0}: generated=" << is_star_generated(sub.bimodule);

    BimoduleCongruence c = BimoduleCongruence::diagonal(b);
    c.part_d.assign(b.lattice_size(), 0);
    auto q = quotient(b, c);
    bool q_ok = q.bimodule.monoid_size() == 2 && q.bimodule.lattice_size() == 1 && check_axioms(q.bimodule).ok() &&
                is_star_generated(q.bimodule) && !is_star_embedded(q.bimodule) && !is_reduced(q.bimodule);
    os << " quotient(Z/2,1): generated=" << is_star_generated(q.bimodule) << " reduced=" << is_reduced(q.bimodule);
    detail = os.str();
    return axioms && gen && emb && red && sub_ok && q_ok && oracles::is_reduced(b) && !oracles::is_reduced(q.bimodule);
}

std::vector<LatticeBimodule> lemma_corpus(std::uint64_t seed, std::size_t& exhaustive) {
    auto corpus = exhaustive_bimodules();
    exhaustive = corpus.size();
    Rng rng(seed ^ 0x636f72707573ULL);
    auto extra = random_bimodules(rng, 200, corpus);
    corpus.insert(corpus.end(), extra.begin(), extra.end());
    return corpus;
}

bool reduced_lemmas(std::uint64_t seed, std::string& detail) {
    std::size_t exhaustive = 0;
    auto corpus = lemma_corpus(seed, exhaustive);
    std::size_t bad_axioms = 0, c1 = 0, c2 = 0, embedded = 0, gen_reduced = 0;
    for (const auto& b : corpus) {
        if (!check_axioms(b, 1).ok()) ++bad_axioms;
        bool emb = is_star_embedded(b), red = is_reduced(b), gen = is_star_generated(b);
        embedded += emb;
        gen_reduced += gen && red;
        if (emb && !red) ++c1;
        if (gen && red && !emb) ++c2;
    }
    std::ostringstream os;
    os << exhaustive << " exhaustive + " << corpus.size() - exhaustive << " random; embedded=" << embedded
       << " generated&reduced=" << gen_reduced << "; counterexamples " << c1 << " + " << c2
       << "; invalid " << bad_axioms;
    detail = os.str();
    return c1 == 0 && c2 == 0 && bad_axioms == 0 && exhaustive > 0;
}

bool reduced_oracle(std::uint64_t seed, std::string& detail) {
    std::size_t exhaustive = 0;
    auto corpus = lemma_corpus(seed, exhaustive);
    std::size_t disagree = 0, gen_disagree = 0, reduced = 0;
    for (const auto& b : corpus) {
        bool fast = is_reduced(b);
        reduced += fast;
        if (fast != oracles::is_reduced(b)) ++disagree;
        if (is_star_generated(b) != oracles::is_star_generated(b)) ++gen_disagree;
    }
    std::ostringstream os;
    os << corpus.size() << " bimodules, " << reduced << " reduced; disagreements " << disagree
       << " (star-generation " << gen_disagree << ")";
    detail = os.str();
    return disagree == 0 && gen_disagree == 0;
}

bool reduce_contract(std::uint64_t seed, std::string& detail) {
    Rng rng(seed ^ 0x726564756365ULL);
    auto corpus = exhaustive_bimodules();
    auto pool = random_bimodules(rng, 60, corpus);
    pool.insert(pool.end(), corpus.begin(), corpus.end());
    std::size_t failures = 0, collapsed = 0;
    std::string first;
    for (int t = 0; t < 100; ++t) {
        const auto& b = pool[pick(rng, pool.size())];
        std::vector<std::pair<std::size_t, std::size_t>> mp, dp;
        auto k = pick(rng, 3);
        for (std::size_t i = 0; i < k; ++i) {
            if (pick(rng, 2)) mp.emplace_back(pick(rng, b.monoid_size()), pick(rng, b.monoid_size()));
            else dp.emplace_back(pick(rng, b.lattice_size()), pick(rng, b.lattice_size()));
        }
        auto q = quotient(b, generate_congruence(b, mp, dp));
        auto r = reduce(q.bimodule);
        auto composite = compose(r.hom, q.hom);
        std::vector<std::size_t> id(q.bimodule.lattice_size());
        for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
        auto again = reduce(r.bimodule);
        std::vector<std::size_t> idm(r.bimodule.monoid_size());
        for (std::size_t i = 0; i < idm.size(); ++i) idm[i] = i;
        bool ok = check_axioms(r.bimodule, 1).ok() && r.hom.diamond == id &&
                  r.bimodule.lattice() == q.bimodule.lattice() && composite.diamond == q.hom.diamond &&
                  !hom_violation(b, r.bimodule, composite) && !hom_violation(q.bimodule, r.bimodule, r.hom) &&
                  is_reduced(r.bimodule) && oracles::is_reduced(r.bimodule) && again.bimodule == r.bimodule &&
                  again.hom.star == idm && canonical_collapse(q.bimodule).part_m ==
                                               oracles::greatest_diagonal_congruence(q.bimodule);
        collapsed += r.bimodule.monoid_size() < q.bimodule.monoid_size();
        if (!ok && failures++ == 0) first = "trial " + std::to_string(t);
    }
    std::ostringstream os;
    os << "100 quotient homs, " << collapsed << " with a proper monoid collapse; failures " << failures;
    if (failures) os << " (first: " << first << ")";
    detail = os.str();
    return failures == 0;
}

bool recognition(std::uint64_t seed, std::string& detail) {
    auto sample = regex_sample(seed, 20);
    std::size_t failures = 0;
    std::string first;
    for (const auto& s : sample) {
        auto tm = transition_monoid(s.lang);
        auto h = recognizer_from_monoid(tm.monoid, s.lang.alphabet(), tm.letter_map);
        bool rec = recognizes(h, s.lang);
        // some join-prime cut of the recognizer matches L on all short words
        bool brute = false;
        for (auto c : join_primes(h.target.lattice()).elements)
            brute = brute || oracles::agrees_on_words(
                                 s.lang, [&](const Word& w) { return h.target.lattice().le(c, h.target.iota(eval_hom(h, w))); },
                                 6);
        bool ok = rec && brute && check_axioms(h.target, 1).ok() && is_star_generated(h.target) &&
                  is_reduced(h.target) && oracles::is_reduced(h.target);
        if (!ok && failures++ == 0) first = s.pattern;
    }
    std::ostringstream os;
    os << sample.size() << " regexes; failures " << failures;
    if (failures) os << " (first: " << first << ")";
    detail = os.str();
    return sample.size() == 20 && failures == 0;
}

bool duality(std::uint64_t seed, std::string& detail) {
    auto sample = regex_sample(seed, 20);
    std::size_t failures = 0, total = 0;
    std::string first;
    for (const auto& s : sample) {
        auto v = derivative_closure(s.lang);
        total += v.size();
        auto fix = oracles::letter_derivative_fixpoint(s.lang);
        bool closure_ok = std::vector<RegularLanguage>(fix.begin(), fix.end()) == v.languages();
        auto rep = verify_local_duality(v);
        auto e = dual_of_variety(v);
        bool ok = closure_ok && rep.ok() && validate_uquotient(e).ok();
        if (!ok && failures++ == 0) first = s.pattern;
    }
    std::ostringstream os;
    os << sample.size() << " closures, " << total << " languages; failures " << failures;
    if (failures) os << " (first: " << first << ")";
    detail = os.str();
    return sample.size() == 20 && failures == 0;
}

bool exchange(std::uint64_t seed, std::string& detail) {
    Rng rng(seed ^ 0x65786368ULL);
    const Alphabet sigmas[] = {Alphabet("a"), Alphabet("ab")};
    const Alphabet deltas[] = {Alphabet("c"), Alphabet("cd"), Alphabet("ab")};
    std::size_t failures = 0;
    std::string first;
    for (int t = 0; t < 200; ++t) {
        const auto& sigma = sigmas[pick(rng, 2)];
        const auto& delta = deltas[pick(rng, 3)];
        auto lang = parse_regex(random_regex(rng, sigma, 3), sigma);
        auto g = random_hom(rng, delta, sigma, 2);
        auto v = random_word(rng, delta, 3), w = random_word(rng, delta, 3);
        auto lhs = derivative(preimage(lang, g), {v, w});
        auto rhs = preimage(derivative(lang, {g.apply(v), g.apply(w)}), g);
        bool brute = oracles::agrees_on_words(lhs, [&](const Word& x) { return lang.contains(g.apply(v + x + w)); }, 5);
        if (!(lhs == rhs && brute) && failures++ == 0) first = "trial " + std::to_string(t);
    }
    std::ostringstream os;
    os << "200 tuples; failures " << failures;
    if (failures) os << " (first: " << first << ")";
    detail = os.str();
    return failures == 0;
}

bool qfa_exactness(std::uint64_t, std::string& detail) {
    const double pi = std::acos(-1.0);
    auto rot = rotation_machine(pi / 4);
    auto par = parity_machine();
    std::ostringstream os;
    bool ok = validate(rot).ok && validate(par).ok;
    for (auto mode : {Measurement::Subspace, Measurement::Basis}) {
        double a = accept_probability(rot, "a", mode), aa = accept_probability(rot, "aa", mode);
        os << to_string(mode) << ": p(a)=" << a << " p(aa)=" << aa << "; ";
        ok = ok && std::abs(a - 0.5) <= 1e-9 && std::abs(aa - 0.75) <= 1e-9;
    }
    auto m = margin_report(par, parse_regex("(aa)*", Alphabet("a")), 6);
    os << "parity margin (" << m.min_accept_in << ", " << m.max_accept_out << ")";
    ok = ok && m.min_accept_in == 1.0 && m.max_accept_out == 0.0 && m.bounded && m.p == 1.0;
    double worst = 0;
    std::size_t runs = 0;
    Dfa mod3;
    mod3.alphabet = Alphabet("ab");
    mod3.states = 3;
    mod3.delta = {1, 0, 2, 1, 0, 2};
    mod3.finals = {true, false, false};
    auto perm = from_permutation_dfa(mod3);
    for (const Kwqfa* q : {&rot, &par, &perm})
        for (auto mode : {Measurement::Subspace, Measurement::Basis})
            for (const auto& w : words_up_to(q->alphabet, 6)) {
                ++runs;
                for (const auto& s : simulate(*q, w, mode).steps)
                    worst = std::max(worst, std::abs(s.p_acc + s.p_rej + s.continuing - 1.0));
            }
    os << "; conservation max error " << worst << " over " << runs << " runs";
    detail = os.str();
    return ok && worst <= 1e-9;
}

bool birkhoff(std::uint64_t, std::string& detail) {
    std::size_t count = 0, fail_p = 0, fail_d = 0;
    for (std::size_t n = 0; n <= 5; ++n)
        for (const auto& p : oracles::all_posets(n)) {
            ++count;
            auto d = downset_lattice(p);
            if (d.size() != oracles::count_downsets(p)) ++fail_d;
            auto jp = join_primes(d.lattice());
            for (auto c : jp.elements)
                if (!oracles::is_join_prime(d.lattice(), c)) ++fail_p;
            if (!poset_iso(p, jp.poset)) ++fail_p;
            auto dd = downset_lattice(jp.poset);
            if (!lattice_iso(d.lattice(), dd.lattice())) ++fail_d;
        }
    std::ostringstream os;
    os << count << " posets; poset round-trip failures " << fail_p << ", lattice round-trip failures " << fail_d;
    detail = os.str();
    return fail_p == 0 && fail_d == 0 && count == 4474;
}

}  // namespace

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all{
        {1, "free-cdl", "free CDL sizes 2, 3, 6, 20", 1.0, free_cdl_sizes},
        {2, "diamond", "diamond example flags", 0, diamond_example},
        {3, "reduced-lemmas", "embedded => reduced and generated+reduced => embedded", 120.0, reduced_lemmas},
        {4, "reduced-oracle", "is_reduced agrees with brute force", 0, reduced_oracle},
        {5, "reduce-contract", "reduce keeps the lattice map, is reduced and idempotent", 0, reduce_contract},
        {6, "recognition", "free recognizers recognize, are generated and reduced", 0, recognition},
        {7, "duality", "local duality round trip on derivative closures", 300.0, duality},
        {8, "exchange", "derivative of preimage equals preimage of derivative", 0, exchange},
        {9, "qfa", "QFA exact probabilities, margins and conservation", 0, qfa_exactness},
        {10, "birkhoff", "poset and lattice round trips up to isomorphism", 0, birkhoff},
    };
    return all;
}

CriterionResult run(const Criterion& c, std::uint64_t seed) {
    CriterionResult r{c.id, c.key, c.title, false, "", 0};
    auto t0 = std::chrono::steady_clock::now();
    try {
        r.pass = c.run(seed, r.detail);
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_seconds > 0 && r.seconds >= c.limit_seconds) {
        r.pass = false;
        r.detail += "; exceeded time limit";
    }
    return r;
}

}  // namespace varietas::suites
