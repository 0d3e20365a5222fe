#include <doctest.h>

#include "varietas/bimodule.hpp"
#include "varietas/error.hpp"
#include "varietas/suites/corpus.hpp"
#include "varietas/suites/oracles.hpp"

using namespace varietas;

namespace {

// diamond element indices: 0 bottom, 1 = 0-bar, 2 = 1-bar, 3 top
const LatticeBimodule& diamond() {
    static const LatticeBimodule b = diamond_bimodule();
    return b;
}

LatticeBimodule z2_one() {
    BimoduleCongruence c = BimoduleCongruence::diagonal(diamond());
    c.part_d.assign(4, 0);
    return quotient(diamond(), c).bimodule;
}

const std::vector<LatticeBimodule>& corpus() {
    static const std::vector<LatticeBimodule> c = [] {
        auto base = suites::exhaustive_bimodules();
        suites::Rng rng(1);
        auto extra = suites::random_bimodules(rng, 60, base);
        base.insert(base.end(), extra.begin(), extra.end());
        return base;
    }();
    return c;
}

}  // namespace

TEST_CASE("monoid validation") {
    CHECK_THROWS_AS(FiniteMonoid(2, 0, {0, 1, 1, 1, 0}), StructuralError);
    CHECK_THROWS_AS(FiniteMonoid(2, 0, {0, 1, 0, 0}), StructuralError);  // 1 is not absorbed
    CHECK(FiniteMonoid::cyclic_group(3).times(2, 2) == 1);
    auto z4 = FiniteMonoid::cyclic_group(4);
    CHECK(z4.generated_submonoid({2}) == std::vector<std::size_t>{0, 2});
    CHECK(z4.is_congruence({0, 1, 0, 1}));
    CHECK_FALSE(z4.is_congruence({0, 0, 1, 1}));
}

TEST_CASE("axiom checks") {
    CHECK(check_axioms(diamond()).ok());
    CHECK(check_axioms(LatticeBimodule::trivial()).ok());
    auto left = diamond().left_table();
    left[1 * 4 + 1] = 1;  // 1 > (0-bar) should be 1-bar
    LatticeBimodule bad(diamond().monoid(), diamond().lattice(), diamond().iota_table(), left,
                        diamond().right_table());
    auto r = check_axioms(bad);
    REQUIRE_FALSE(r.ok());
    CHECK(r.violations.front().law.size() > 0);
    CHECK(r.violations.front().witness.find("m=1") != std::string::npos);
    CHECK_THROWS_AS(LatticeBimodule(diamond().monoid(), diamond().lattice(), {0}, left, diamond().right_table()),
                    StructuralError);
}

TEST_CASE("every single-cell corruption of the diamond is caught") {
    const auto& b = diamond();
    for (std::size_t cell = 0; cell < 8; ++cell)
        for (std::size_t v = 0; v < 4; ++v) {
            auto left = b.left_table();
            if (left[cell] == v) continue;
            left[cell] = v;
            LatticeBimodule bad(b.monoid(), b.lattice(), b.iota_table(), left, b.right_table());
            REQUIRE_FALSE(check_axioms(bad).ok());
        }
}

TEST_CASE("free hom evaluation") {
    FreeHomSpec h(Alphabet("a"), diamond(), {1});
    CHECK(eval_hom(h, "") == 0);
    CHECK(eval_hom(h, "aaa") == 1);
    CHECK(diamond().iota(eval_hom(h, "aaa")) == 2);
    CHECK(eval_hom_diamond(h, DiamondTerm{{{"a", "aa"}}}) == diamond().lattice().bottom());
    CHECK_THROWS_AS(eval_hom(h, "b"), AlphabetMismatch);
}

TEST_CASE("products") {
    auto p = product(LatticeBimodule::trivial(), diamond());
    CHECK(p.monoid_size() == 2);
    auto prj = projections(LatticeBimodule::trivial(), diamond());
    CHECK_FALSE(hom_violation(p, diamond(), prj.second));
    auto dd = product(diamond(), diamond());
    CHECK(dd.monoid_size() == 4);
    CHECK(dd.lattice_size() == 16);
    CHECK(check_axioms(dd).ok());
    auto pp = projections(diamond(), diamond());
    CHECK_FALSE(hom_violation(dd, diamond(), pp.first));
    CHECK_FALSE(hom_violation(dd, diamond(), pp.second));
}

TEST_CASE("congruences and quotients") {
    const auto& b = diamond();
    CHECK(is_congruence(b, BimoduleCongruence::diagonal(b)));
    CHECK(is_congruence(b, BimoduleCongruence::total(b)));
    BimoduleCongruence collapse_m = BimoduleCongruence::diagonal(b);
    collapse_m.part_m = {0, 0};
    CHECK_FALSE(is_congruence(b, collapse_m));
    CHECK_THROWS_AS(quotient(b, collapse_m), InvalidArgument);

    auto same = quotient(b, BimoduleCongruence::diagonal(b));
    CHECK(same.bimodule == b);
    auto q = z2_one();
    CHECK(q.monoid_size() == 2);
    CHECK(q.lattice_size() == 1);
    auto t = quotient(b, BimoduleCongruence::total(b));
    CHECK(t.bimodule.monoid_size() == 1);
    CHECK(t.bimodule.lattice_size() == 1);
    CHECK(generate_congruence(b, {{0, 1}}, {}) == BimoduleCongruence::total(b));
}

TEST_CASE("quotients of corpus bimodules satisfy the axioms") {
    suites::Rng rng(4);
    for (const auto& b : corpus()) {
        auto c = generate_congruence(b, {{suites::pick(rng, b.monoid_size()), suites::pick(rng, b.monoid_size())}}, {});
        REQUIRE(is_congruence(b, c));
        auto q = quotient(b, c);
        REQUIRE(check_axioms(q.bimodule, 1).ok());
        REQUIRE_FALSE(hom_violation(b, q.bimodule, q.hom));
        if (is_star_generated(b)) REQUIRE(is_star_generated(q.bimodule));
    }
}

TEST_CASE("homomorphism theorem on sampled quotients") {
    // e <= e' iff ker e' is contained in ker e, sortwise
    const auto& b = diamond();
    auto dd = product(b, b);
    std::vector<BimoduleCongruence> cs{BimoduleCongruence::diagonal(dd), BimoduleCongruence::total(dd),
                                       generate_congruence(dd, {{1, 2}}, {}), generate_congruence(dd, {}, {{0, 1}}),
                                       generate_congruence(dd, {}, {{0, 5}})};
    auto refines = [](const BimoduleCongruence& fine, const BimoduleCongruence& coarse) {
        for (std::size_t i = 0; i < fine.part_m.size(); ++i)
            for (std::size_t j = 0; j < fine.part_m.size(); ++j)
                if (fine.part_m[i] == fine.part_m[j] && coarse.part_m[i] != coarse.part_m[j]) return false;
        for (std::size_t i = 0; i < fine.part_d.size(); ++i)
            for (std::size_t j = 0; j < fine.part_d.size(); ++j)
                if (fine.part_d[i] == fine.part_d[j] && coarse.part_d[i] != coarse.part_d[j]) return false;
        return true;
    };
    for (const auto& c1 : cs)
        for (const auto& c2 : cs) {
            auto q1 = quotient(dd, c1), q2 = quotient(dd, c2);
            // q1 factors through q2 iff the kernel of q2 refines the kernel of q1
            bool factors = true;
            std::vector<std::size_t> fm(q2.bimodule.monoid_size(), SIZE_MAX), fd(q2.bimodule.lattice_size(), SIZE_MAX);
            for (std::size_t m = 0; m < dd.monoid_size(); ++m) {
                auto& slot = fm[q2.hom.star[m]];
                if (slot != SIZE_MAX && slot != q1.hom.star[m]) factors = false;
                slot = q1.hom.star[m];
            }
            for (std::size_t d = 0; d < dd.lattice_size(); ++d) {
                auto& slot = fd[q2.hom.diamond[d]];
                if (slot != SIZE_MAX && slot != q1.hom.diamond[d]) factors = false;
                slot = q1.hom.diamond[d];
            }
            if (factors) CHECK_FALSE(hom_violation(q2.bimodule, q1.bimodule, {fm, fd}));
            CHECK(factors == refines(c2, c1));
        }
}

TEST_CASE("image factorization") {
    auto dd = product(diamond(), diamond());
    FreeHomSpec h(Alphabet("a"), dd, {3});
    auto f = image_factorization(h);
    CHECK(f.image.monoid_size() == 2);
    CHECK(check_axioms(f.image).ok());
    CHECK(f.injection.star == std::vector<std::size_t>{0, 3});
    for (const auto& w : words_up_to(Alphabet("a"), 4))
        CHECK(f.injection.star[eval_hom(FreeHomSpec(Alphabet("a"), f.image, f.letter_image), w)] == eval_hom(h, w));
    FreeHomSpec constant(Alphabet("ab"), diamond(), {0, 0});
    CHECK(image_factorization(constant).image.monoid_size() == 1);

    auto prj = projections(diamond(), diamond());
    auto g = image_factorization(dd, diamond(), prj.first);
    CHECK(g.image.monoid_size() == 2);
    CHECK(g.image.lattice_size() == 4);
    CHECK(compose(g.injection, g.surjection) == prj.first);
}

TEST_CASE("star generation is witnessed by a surjective free hom") {
    for (const auto& b : corpus()) {
        Alphabet letters(std::string("abcdefghijklmnop").substr(0, b.monoid_size()));
        std::vector<std::size_t> all(b.monoid_size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        auto f = image_factorization(FreeHomSpec(letters, b, all));
        bool onto = f.image.lattice_size() == b.lattice_size() && f.image.monoid_size() == b.monoid_size();
        REQUIRE(is_star_generated(b) == onto);
    }
}

TEST_CASE("iota kernel is a monoid congruence") {
    for (const auto& b : corpus()) REQUIRE(b.monoid().is_congruence(b.iota_table()));
}

TEST_CASE("diamond example flags") {
    const auto& b = diamond();
    CHECK(is_star_generated(b));
    CHECK(is_star_embedded(b));
    CHECK(is_reduced(b));
    auto sub = generated_subbimodule(b, {0}, {1, 2});
    CHECK(sub.bimodule.monoid_size() == 1);
    CHECK_FALSE(is_star_generated(sub.bimodule));
    auto q = z2_one();
    CHECK(is_star_generated(q));
    CHECK_FALSE(is_star_embedded(q));
    CHECK_FALSE(is_reduced(q));

    LatticeBimodule one_two(FiniteMonoid::trivial(), Fdl::two(), {1}, {0, 1}, {0, 1});
    CHECK(check_axioms(one_two).ok());
    CHECK(is_star_generated(one_two));
    CHECK(is_star_embedded(one_two));
}

TEST_CASE("canonical collapse and reduce") {
    CHECK(canonical_collapse(diamond()).is_diagonal());
    auto q = z2_one();
    CHECK(canonical_collapse(q).part_m == std::vector<std::size_t>{0, 0});
    auto r = reduce(q);
    CHECK(r.bimodule.monoid_size() == 1);
    CHECK(r.bimodule.lattice_size() == 1);
    CHECK(reduce(diamond()).bimodule == diamond());
    for (const auto& b : corpus()) {
        auto c = canonical_collapse(b);
        REQUIRE(is_congruence(b, c));
        if (is_star_embedded(b)) REQUIRE(c.is_diagonal());
        auto once = reduce(b);
        REQUIRE(is_reduced(once.bimodule));
        REQUIRE(reduce(once.bimodule).bimodule == once.bimodule);
        REQUIRE(c.part_m == oracles::greatest_diagonal_congruence(b));
    }
}

TEST_CASE("recognizer from monoid") {
    auto z2 = recognizer_from_monoid(FiniteMonoid::cyclic_group(2), Alphabet("a"), {1});
    CHECK(z2.target.lattice_size() == 6);
    CHECK(check_axioms(z2.target).ok());
    CHECK(is_star_generated(z2.target));
    CHECK(is_star_embedded(z2.target));
    CHECK(is_reduced(z2.target));
    auto one = recognizer_from_monoid(FiniteMonoid::trivial(), Alphabet("a"), {0});
    CHECK(one.target.lattice_size() == 3);
    CHECK(check_axioms(one.target).ok());
    CHECK_THROWS_AS(recognizer_from_monoid(FiniteMonoid::cyclic_group(5), Alphabet("a"), {1}), BoundExceeded);
}
