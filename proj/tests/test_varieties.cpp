#include <doctest.h>

#include "varietas/error.hpp"
#include "varietas/suites/corpus.hpp"
#include "varietas/suites/oracles.hpp"
#include "varietas/duality.hpp"
#include "varietas/varieties.hpp"

using namespace varietas;

namespace {

const Alphabet A("a");
const Alphabet AB("ab");
const Alphabet C("c");

std::vector<RegularLanguage> langs(std::initializer_list<const char*> ps, const Alphabet& a) {
    std::vector<RegularLanguage> out;
    for (auto p : ps) out.push_back(parse_regex(p, a));
    std::sort(out.begin(), out.end());
    return out;
}

std::set<RegularLanguage> brute_derivatives(const RegularLanguage& l, std::size_t n) {
    std::set<RegularLanguage> out;
    auto words = words_up_to(l.alphabet(), n);
    for (const auto& v : words)
        for (const auto& w : words) out.insert(derivative(l, {v, w}));
    return out;
}

}  // namespace

TEST_CASE("derivative closure examples") {
    CHECK(derivative_closure(parse_regex("(aa)*", A)).languages() == langs({"(aa)*", "a(aa)*"}, A));
    CHECK(derivative_closure(RegularLanguage::empty(A)).languages() == langs({"∅"}, A));
    auto last = parse_regex("(a|b)*a", AB);
    auto v = derivative_closure(last);
    auto brute = brute_derivatives(last, 4);
    CHECK(v.languages() == std::vector<RegularLanguage>(brute.begin(), brute.end()));
    CHECK(v.size() == 4);
}

TEST_CASE("derivative closure against bounded brute force and the letter fixpoint") {
    for (const auto& s : suites::regex_sample(9, 25, 5, 16)) {
        auto v = derivative_closure(s.lang);
        auto brute = brute_derivatives(s.lang, 4);
        auto fix = oracles::letter_derivative_fixpoint(s.lang);
        REQUIRE(v.languages() == std::vector<RegularLanguage>(brute.begin(), brute.end()));
        REQUIRE(v.languages() == std::vector<RegularLanguage>(fix.begin(), fix.end()));
        CHECK(v.contains(s.lang));
        CHECK(is_local_basic_variety(s.lang.alphabet(), v.languages()));
        CHECK(v.size() <= s.lang.num_states() * transition_monoid(s.lang).monoid.size());
        for (const auto& l : v.languages()) {
            auto inner = derivative_closure(l);
            for (const auto& k : inner.languages()) CHECK(v.contains(k));
        }
    }
}

TEST_CASE("generated local varieties") {
    CHECK(generated_local_variety(A, {RegularLanguage::universal(A)}).size() == 1);
    CHECK(generated_local_variety(A, {parse_regex("(aa)*", A)}).languages() == langs({"(aa)*", "a(aa)*"}, A));
    CHECK(generated_local_variety(A, {}).size() == 0);
    CHECK_THROWS_AS(generated_local_variety(A, {parse_regex("ab", AB)}), AlphabetMismatch);
}

TEST_CASE("is local basic variety") {
    CHECK(is_local_basic_variety(A, langs({"(aa)*", "a(aa)*"}, A)));
    CHECK_FALSE(is_local_basic_variety(A, langs({"(aa)*"}, A)));
    CHECK(is_local_basic_variety(A, langs({"∅"}, A)));
    CHECK_THROWS_AS(LocalBasicVariety(A, langs({"(aa)*"}, A)), InvalidArgument);
}

TEST_CASE("cotheory checks") {
    CotheorySample trivial;
    trivial.families["a"] = {{RegularLanguage::empty(A)}};
    trivial.homs.push_back(FreeMonoidHom::identity(A));
    CHECK(check_cotheory(trivial).ok());

    auto sigma = derivative_closure(parse_regex("(ab)*", AB)).languages();
    // the derivatives ∅ and ε|b(ab)*a pull back to ∅ and {ε}
    auto delta = langs({"c*", "ε", "∅"}, C);
    CotheorySample s;
    s.families["ab"] = {sigma};
    s.families["c"] = {delta};
    s.homs.push_back(FreeMonoidHom(C, AB, {"ab"}));
    CHECK(check_cotheory(s).ok());
    s.families["c"] = {derivative_closure(parse_regex("c*", C)).languages()};
    CHECK(check_cotheory(s).violations.size() == 1);

    s.families["c"] = {{RegularLanguage::empty(C)}};
    auto r = check_cotheory(s);
    REQUIRE_FALSE(r.ok());
    CHECK(r.violations.front().kind == "preimage-not-contained");

    CotheorySample missing;
    missing.families["ab"] = {sigma};
    missing.homs.push_back(FreeMonoidHom(C, AB, {"ab"}));
    CHECK(check_cotheory(missing).violations.front().kind == "missing-family");

    CotheorySample open;
    open.families["a"] = {langs({"(aa)*"}, A)};
    CHECK(check_cotheory(open).violations.front().kind == "not-derivative-closed");

    CotheorySample undirected;
    undirected.families["a"] = {derivative_closure(parse_regex("(aa)*", A)).languages(),
                                derivative_closure(parse_regex("(aaa)*", A)).languages()};
    CHECK(check_cotheory(undirected).violations.front().kind == "not-directed");
}

TEST_CASE("self-generated cotheory samples pass") {
    suites::Rng rng(2);
    const Alphabet CD("cd");
    for (const auto& s : suites::regex_sample(4, 10)) {
        if (s.lang.alphabet() != AB) continue;
        auto v = derivative_closure(s.lang);
        auto g = suites::random_hom(rng, CD, AB, 2);
        std::vector<RegularLanguage> pulled;
        for (const auto& l : v.languages()) pulled.push_back(preimage(l, g));
        CotheorySample sample;
        sample.families["ab"] = {v.languages()};
        sample.families["cd"] = {generated_local_variety(CD, pulled).languages()};
        sample.homs.push_back(g);
        CHECK(check_cotheory(sample).ok());
    }
}

TEST_CASE("quotient order") {
    auto even = dual_of_variety(derivative_closure(parse_regex("(aa)*", A)));
    auto all = dual_of_variety(derivative_closure(RegularLanguage::universal(A)));
    auto three = dual_of_variety(derivative_closure(parse_regex("(aaa)*", A)));
    CHECK(quotient_order(even, even).leq);
    CHECK(quotient_order(even, even).factor.has_value());
    CHECK_FALSE(quotient_order(even, three).leq);
    CHECK_FALSE(quotient_order(three, even).leq);
    // the universal language lies outside the parity variety, so the two are incomparable
    CHECK_FALSE(quotient_order(all, even).leq);
    auto both = dual_of_variety(generated_local_variety(A, {parse_regex("(aa)*", A), RegularLanguage::universal(A)}));
    auto cmp = quotient_order(all, both);
    REQUIRE(cmp.leq);
    CHECK_FALSE(cmp.factor->find_violation().has_value());
    CHECK(quotient_order(even, both).leq);
    CHECK_FALSE(quotient_order(both, even).leq);
}
