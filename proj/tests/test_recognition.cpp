#include <doctest.h>

#include "varietas/duality.hpp"
#include "varietas/error.hpp"
#include "varietas/recognition.hpp"
#include "varietas/suites/corpus.hpp"
#include "varietas/varieties.hpp"

using namespace varietas;

namespace {

const Alphabet A("a");
const Alphabet AB("ab");

FreeHomSpec diamond_hom() { return FreeHomSpec(A, diamond_bimodule(), {1}); }

std::vector<RegularLanguage> langs(std::initializer_list<const char*> ps, const Alphabet& a) {
    std::vector<RegularLanguage> out;
    for (auto p : ps) out.push_back(parse_regex(p, a));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("recognized languages") {
    CHECK(recognized_languages(diamond_hom()) == langs({"(aa)*", "a(aa)*"}, A));
    CHECK(recognized_languages(FreeHomSpec(A, LatticeBimodule::trivial(), {0})).empty());
    auto tm = transition_monoid(parse_regex("(aa)*", A));
    auto h = recognizer_from_monoid(tm.monoid, A, tm.letter_map);
    CHECK(recognizes(h, parse_regex("(aa)*", A)));
}

TEST_CASE("recognizes") {
    auto h = diamond_hom();
    CHECK(recognizes(h, parse_regex("(aa)*", A)));
    CHECK_FALSE(recognizes(h, parse_regex("a*", A)));
    CHECK_THROWS_AS(recognizes(h, parse_regex("ab", AB)), AlphabetMismatch);
}

TEST_CASE("U-quotient of a hom") {
    auto e = uquotient_of_hom(diamond_hom());
    CHECK(e.machine.states == 2);
    CHECK(e.codomain.size() == 4);
    CHECK(e.value("") != e.value("a"));
    CHECK(e.provenance == Provenance::FromBimodule);
    CHECK(validate_uquotient(e).ok());
    CHECK(rec_of_uquotient(e) == recognized_languages(diamond_hom()));

    auto t = uquotient_of_hom(FreeHomSpec(A, LatticeBimodule::trivial(), {0}));
    CHECK(t.machine.states == 1);
    CHECK(t.codomain.size() == 1);

    auto z = uquotient_of_hom(recognizer_from_monoid(FiniteMonoid::cyclic_group(2), A, {1}));
    CHECK(z.codomain.size() == 6);
    CHECK(validate_uquotient(z).ok());
}

TEST_CASE("rec of simple U-quotients") {
    UQuotient top{Fdl::two(), Dfa{A, 1, 0, {0}, {false}}, {1}, Provenance::External};
    CHECK(rec_of_uquotient(top) == std::vector<RegularLanguage>{RegularLanguage::universal(A)});
    auto l = parse_regex("(a|b)*a", AB);
    UQuotient ind{Fdl::two(), l.dfa(), {}, Provenance::External};
    for (std::size_t q = 0; q < l.num_states(); ++q) ind.val.push_back(l.dfa().finals[q] ? 1 : 0);
    CHECK(rec_of_uquotient(ind) == std::vector<RegularLanguage>{l});
}

TEST_CASE("U-quotient validation rejects missing liftings") {
    // values by state of (a|b)*a on Two: the context (ε, b) does not lift since the value of
    // every x b is 0 while x ranges over both values
    auto l = parse_regex("(a|b)*a", AB);
    UQuotient ind{Fdl::two(), l.dfa(), {}, Provenance::External};
    for (std::size_t q = 0; q < l.num_states(); ++q) ind.val.push_back(l.dfa().finals[q] ? 1 : 0);
    auto r = validate_uquotient(ind);
    CHECK(r.generating);
    CHECK_FALSE(r.liftings);

    UQuotient constant{Fdl::boolean(2), Dfa{A, 1, 0, {0}, {false}}, {3}, Provenance::External};
    CHECK_FALSE(validate_uquotient(constant).generating);
}

TEST_CASE("minimal recognizer examples") {
    auto even = minimal_recognizer(parse_regex("(aa)*", A));
    CHECK(even.target.monoid_size() == 2);
    CHECK(lattice_iso(even.target.lattice(), Fdl::boolean(2)).has_value());
    auto all = minimal_recognizer(RegularLanguage::universal(A));
    CHECK(all.target.monoid_size() == 1);
    CHECK(all.target.lattice_size() == 2);
    auto none = minimal_recognizer(RegularLanguage::empty(A));
    CHECK(none.target.lattice_size() == 2);
    CHECK(recognized_languages(none) == std::vector<RegularLanguage>{RegularLanguage::empty(A)});
}

TEST_CASE("minimal recognizer recognizes exactly the derivative closure") {
    for (const auto& s : suites::regex_sample(21, 30, 6, 12)) {
        auto h = minimal_recognizer(s.lang);
        REQUIRE(check_axioms(h.target, 1).ok());
        CHECK(is_star_generated(h.target));
        CHECK(is_star_embedded(h.target));
        CHECK(is_reduced(h.target));
        CHECK(recognized_languages(h) == derivative_closure(s.lang).languages());
    }
}

TEST_CASE("recognized languages are derivative-closed and survive reduction") {
    suites::Rng rng(12);
    auto corpus = suites::exhaustive_bimodules();
    auto more = suites::random_bimodules(rng, 40, corpus);
    corpus.insert(corpus.end(), more.begin(), more.end());
    for (const auto& b : corpus) {
        std::string letters = "ab";
        std::vector<std::size_t> img{suites::pick(rng, b.monoid_size()), suites::pick(rng, b.monoid_size())};
        FreeHomSpec h(Alphabet(letters), b, img);
        auto rec = recognized_languages(h);
        REQUIRE(is_local_basic_variety(h.alphabet, rec));
        auto r = reduce(b);
        std::vector<std::size_t> rimg{r.hom.star[img[0]], r.hom.star[img[1]]};
        REQUIRE(recognized_languages(FreeHomSpec(h.alphabet, r.bimodule, rimg)) == rec);
        REQUIRE(verify_local_duality(generated_local_variety(h.alphabet, rec)).ok());
    }
}

TEST_CASE("minimal recognizer factors through sampled recognizers") {
    for (const auto& s : suites::regex_sample(33, 10)) {
        auto tm = transition_monoid(s.lang);
        auto big = uquotient_of_hom(recognizer_from_monoid(tm.monoid, s.lang.alphabet(), tm.letter_map));
        auto small = uquotient_of_hom(minimal_recognizer(s.lang));
        CHECK(quotient_order(small, big).leq);
    }
}
