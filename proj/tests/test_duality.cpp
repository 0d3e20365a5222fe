#include <doctest.h>

#include "varietas/duality.hpp"
#include "varietas/error.hpp"
#include "varietas/suites/corpus.hpp"

using namespace varietas;

namespace {

const Alphabet A("a");
const Alphabet AB("ab");
const Alphabet C("c");

}  // namespace

TEST_CASE("dual of variety examples") {
    auto all = dual_of_variety(derivative_closure(RegularLanguage::universal(A)));
    CHECK(all.codomain.size() == 2);
    CHECK(all.value("aaa") == all.codomain.top());
    CHECK(all.provenance == Provenance::DualOfVariety);

    auto even = dual_of_variety(derivative_closure(parse_regex("(aa)*", A)));
    CHECK(lattice_iso(even.codomain, Fdl::boolean(2)).has_value());

    auto none = dual_of_variety(derivative_closure(RegularLanguage::empty(A)));
    CHECK(none.codomain.size() == 2);
    CHECK(none.value("a") == none.codomain.bottom());
}

TEST_CASE("dual lattice is the up-set lattice of inclusion") {
    auto v = derivative_closure(parse_regex("(a|b)*a", AB));
    auto d = dual_lattice(v);
    for (auto m : d.members())
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = 0; j < v.size(); ++j)
                if ((m >> i & 1) && included_in(v.languages()[i], v.languages()[j])) CHECK((m >> j & 1));
}

TEST_CASE("local duality examples") {
    CHECK(verify_local_duality(derivative_closure(RegularLanguage::universal(A))).ok());
    CHECK(verify_local_duality(derivative_closure(parse_regex("(aa)*", A))).ok());
    CHECK(verify_local_duality(generated_local_variety(A, {})).ok());
    for (const auto& s : suites::regex_sample(17, 20, 6, 16)) {
        auto v = derivative_closure(s.lang);
        auto e = dual_of_variety(v);
        REQUIRE(validate_uquotient(e).ok());
        REQUIRE(verify_local_duality(v).ok());
    }
}

TEST_CASE("dual order follows variety inclusion") {
    suites::Rng rng(23);
    for (const auto& s : suites::regex_sample(23, 12)) {
        auto small = derivative_closure(s.lang);
        auto extra = parse_regex(suites::random_regex(rng, s.lang.alphabet(), 2), s.lang.alphabet());
        std::vector<RegularLanguage> seeds = small.languages();
        seeds.push_back(extra);
        auto big = generated_local_variety(s.lang.alphabet(), seeds);
        if (big.size() > 20) continue;
        CHECK(quotient_order(dual_of_variety(small), dual_of_variety(big)).leq);
        bool strict = big.size() > small.size();
        CHECK(quotient_order(dual_of_variety(big), dual_of_variety(small)).leq == !strict);
    }
}

TEST_CASE("dual of hom squares") {
    auto v = derivative_closure(parse_regex("(ab)*", AB));
    auto id = dual_of_hom_square(FreeMonoidHom::identity(AB), v);
    CHECK(id.target == v);
    CHECK(id.commutes);
    REQUIRE(id.lift.has_value());
    CHECK_FALSE(id.lift->find_violation().has_value());

    auto sq = dual_of_hom_square(FreeMonoidHom(C, AB, {"ab"}), v);
    std::vector<RegularLanguage> expected{parse_regex("c*", C), parse_regex("ε", C), RegularLanguage::empty(C)};
    std::sort(expected.begin(), expected.end());
    CHECK(sq.target.languages() == expected);
    CHECK(sq.commutes);
    CHECK_FALSE(sq.lift->find_violation().has_value());

    auto eps = dual_of_hom_square(FreeMonoidHom(C, AB, {""}), v);
    for (const auto& l : eps.target.languages()) CHECK((l.is_empty() || l.is_universal()));
    CHECK(eps.commutes);

    CHECK_THROWS_AS(dual_of_hom_square(FreeMonoidHom::identity(A), v), AlphabetMismatch);
}

TEST_CASE("random hom squares commute") {
    suites::Rng rng(6);
    const Alphabet CD("cd");
    for (const auto& s : suites::regex_sample(29, 12)) {
        auto g = suites::random_hom(rng, CD, s.lang.alphabet(), 3);
        auto sq = dual_of_hom_square(g, derivative_closure(s.lang));
        CHECK(sq.commutes);
        CHECK_FALSE(sq.lift->find_violation().has_value());
    }
}
