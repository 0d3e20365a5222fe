#include <doctest.h>

#include <cstdlib>

#include "varietas/error.hpp"
#include "varietas/order.hpp"
#include "varietas/suites/corpus.hpp"
#include "varietas/suites/oracles.hpp"

using namespace varietas;

TEST_CASE("poset validation") {
    CHECK_THROWS_AS(FinitePoset(2, {1, 1, 1, 1}), StructuralError);
    CHECK_THROWS_AS(FinitePoset(2, {0, 0, 0, 1}), StructuralError);
    CHECK_THROWS_AS(FinitePoset(3, {1, 1, 0, 0, 1, 1, 0, 0, 1}), StructuralError);
    CHECK(FinitePoset::chain(3).le(0, 2));
}

TEST_CASE("lattice validation") {
    // pentagon N5: 0 < a < b < 1, 0 < c < 1
    auto n5 = FinitePoset::from_relation(5, [](std::size_t i, std::size_t j) {
        if (i == j || i == 0 || j == 4) return true;
        return i == 1 && j == 2;
    });
    CHECK_THROWS_AS(Fdl::from_order(n5), StructuralError);
    auto anti = FinitePoset::antichain(2);
    CHECK_THROWS_AS(Fdl::from_order(anti), StructuralError);
    CHECK_FALSE(Fdl::boolean(3).find_violation().has_value());
}

TEST_CASE("downset lattice examples") {
    CHECK(downset_lattice(FinitePoset::chain(1)).size() == 2);
    auto b = downset_lattice(FinitePoset::antichain(2));
    CHECK(b.size() == 4);
    CHECK(lattice_iso(b.lattice(), Fdl::boolean(2)).has_value());
    CHECK(lattice_iso(downset_lattice(FinitePoset::chain(2)).lattice(), Fdl::chain(3)).has_value());
}

TEST_CASE("join primes examples") {
    CHECK(join_primes(Fdl::chain(2)).elements.size() == 1);
    auto jb = join_primes(Fdl::boolean(2));
    CHECK(jb.elements.size() == 2);
    CHECK(jb.poset == FinitePoset::antichain(2));
    auto jc = join_primes(Fdl::chain(3));
    CHECK(jc.poset == FinitePoset::chain(2));
}

TEST_CASE("join primes agree with the brute-force predicate") {
    for (std::size_t n = 0; n <= 4; ++n)
        for (const auto& p : oracles::all_posets(n)) {
            auto d = downset_lattice(p).lattice();
            auto jp = join_primes(d);
            std::size_t count = 0;
            for (std::size_t c = 0; c < d.size(); ++c) count += oracles::is_join_prime(d, c);
            REQUIRE(count == jp.elements.size());
            for (auto c : jp.elements) REQUIRE(oracles::is_join_prime(d, c));
        }
}

TEST_CASE("every element is the join of the join-primes below it") {
    for (std::size_t n = 0; n <= 4; ++n)
        for (const auto& p : oracles::all_posets(n)) {
            auto d = downset_lattice(p).lattice();
            auto jp = join_primes(d);
            for (std::size_t x = 0; x < d.size(); ++x) {
                std::size_t j = d.bottom();
                for (auto c : jp.elements)
                    if (d.le(c, x)) j = d.join(j, c);
                REQUIRE(j == x);
            }
        }
}

TEST_CASE("Birkhoff round trip on lattices up to size 10") {
    std::size_t seen = 0;
    for (std::size_t n = 0; n <= 5; ++n)
        for (const auto& p : oracles::all_posets(n)) {
            auto d = downset_lattice(p).lattice();
            if (d.size() > 10) continue;
            ++seen;
            REQUIRE(lattice_iso(downset_lattice(join_primes(d).poset).lattice(), d).has_value());
        }
    CHECK(seen > 100);
    CHECK(lattice_iso(downset_lattice(join_primes(Fdl::chain(7)).poset).lattice(), Fdl::chain(7)));
}

TEST_CASE("free CDL sizes and free property") {
    CHECK(free_cdl(0).lattice.size() == 2);
    CHECK(free_cdl(1).lattice.size() == 3);
    CHECK(free_cdl(2).lattice.size() == 6);
    CHECK(free_cdl(3).lattice.size() == 20);
    CHECK(free_cdl(4).lattice.size() == 168);
    CHECK(free_cdl_size(5) == 7581u);
    CHECK_THROWS_AS(free_cdl(5), BoundExceeded);

    // every assignment of generators into every small distributive lattice extends uniquely
    std::vector<Fdl> targets;
    for (std::size_t n = 0; n <= 4; ++n)
        for (const auto& p : oracles::all_posets(n)) {
            auto d = downset_lattice(p).lattice();
            if (d.size() <= 6) targets.push_back(d);
        }
    for (std::size_t k = 0; k <= 2; ++k) {
        auto f = free_cdl(k);
        for (const auto& t : targets) {
            std::size_t assignments = 1;
            for (std::size_t i = 0; i < k; ++i) assignments *= t.size();
            for (std::size_t a = 0; a < assignments; ++a) {
                std::vector<std::size_t> img(k);
                std::size_t c = a;
                for (std::size_t i = 0; i < k; ++i) {
                    img[i] = c % t.size();
                    c /= t.size();
                }
                auto ext = extend_to_morphism(f.lattice.lattice(), f.generators, img, t);
                REQUIRE(ext.has_value());
                REQUIRE_FALSE(LatticeMorphism{f.lattice.lattice(), t, *ext}.find_violation().has_value());
            }
        }
    }
}

TEST_CASE("free CDL bound from the environment") {
    setenv("VARIETAS_MAX_LATTICE", "10", 1);
    CHECK(free_cdl_size_bound() == 10);
    CHECK_THROWS_AS(free_cdl(3), BoundExceeded);
    CHECK(free_cdl(2).lattice.size() == 6);
    unsetenv("VARIETAS_MAX_LATTICE");
    CHECK(free_cdl_size_bound() == 168);
}

TEST_CASE("points") {
    CHECK(points(Fdl::trivial()).empty());
    CHECK(points(Fdl::two()).size() == 1);
    auto b = Fdl::boolean(2);
    auto ps = points(b);
    CHECK(ps.size() == 2);
    // brute force over all maps into Two
    std::size_t morphisms = 0;
    for (std::size_t code = 0; code < 16; ++code) {
        std::vector<std::size_t> f(4);
        for (std::size_t i = 0; i < 4; ++i) f[i] = code >> i & 1;
        morphisms += !LatticeMorphism{b, Fdl::two(), f}.find_violation().has_value();
    }
    CHECK(morphisms == 2);
    // p_c <= p_c' pointwise iff c' <= c
    auto d = downset_lattice(FinitePoset::chain(3)).lattice();
    auto jp = join_primes(d);
    auto pts = points(d);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j) {
            bool pointwise = true;
            for (std::size_t x = 0; x < d.size(); ++x) pointwise = pointwise && pts[i](x) <= pts[j](x);
            CHECK(pointwise == d.le(jp.elements[j], jp.elements[i]));
        }
}

TEST_CASE("dualize monotone") {
    auto c2 = FinitePoset::chain(2);
    auto id = dualize_monotone(c2, c2, {0, 1});
    for (std::size_t i = 0; i < id.map.size(); ++i) CHECK(id.map[i] == i);
    auto bottom = dualize_monotone(c2, c2, {0, 0});
    CHECK_FALSE(bottom.find_violation().has_value());
    auto collapse = dualize_monotone(c2, FinitePoset::chain(1), {0, 0});
    CHECK(collapse.source.size() == 2);
    CHECK(collapse.target.size() == 3);
    CHECK_FALSE(collapse.find_violation().has_value());
    CHECK_THROWS_AS(dualize_monotone(c2, c2, {1, 0}), InvalidArgument);
}

TEST_CASE("lattice isomorphism") {
    auto b = Fdl::boolean(2);
    auto self = lattice_iso(b, b);
    REQUIRE(self);
    // relabelled boolean lattice with atoms swapped in position
    std::vector<std::size_t> perm{0, 2, 1, 3};
    std::vector<std::uint8_t> leq(16);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) leq[perm[i] * 4 + perm[j]] = b.le(i, j);
    auto other = Fdl::from_order(FinitePoset(4, leq));
    CHECK(lattice_iso(b, other).has_value());
    CHECK_FALSE(lattice_iso(Fdl::chain(3), b).has_value());
    CHECK_FALSE(lattice_iso(Fdl::chain(4), b).has_value());
}

TEST_CASE("products, sublattices and congruences") {
    auto p = product(Fdl::chain(2), Fdl::chain(2));
    CHECK(lattice_iso(p, Fdl::boolean(2)).has_value());
    auto sub = generated_sublattice(Fdl::boolean(2), {1});
    CHECK(sub.size() == 3);
    CHECK_FALSE(restrict_lattice(Fdl::boolean(2), sub).find_violation().has_value());
    std::vector<std::size_t> labels{0, 0, 1, 1};
    CHECK(is_lattice_congruence(Fdl::boolean(2), labels));
    CHECK(quotient_lattice(Fdl::boolean(2), labels).size() == 2);
    CHECK_FALSE(is_lattice_congruence(Fdl::chain(3), {0, 1, 0}));
}

TEST_CASE("eval diamond") {
    auto two = Fdl::two();
    DiamondTerm bottom{};
    CHECK(eval_diamond(bottom, two, [](const Word&) { return 1u; }) == two.bottom());
    CHECK(eval_diamond(DiamondTerm{{{"x"}}}, two, [](const Word&) { return 1u; }) == 1);
    DiamondTerm t{{{"w1", "w2"}, {"w3"}}};
    auto f = [](const Word& w) -> std::size_t { return w == "w2" ? 1 : 0; };
    CHECK(eval_diamond(t, two, f) == 0);
    CHECK(eval_diamond(DiamondTerm{{{}}}, two, f) == two.top());
}

TEST_CASE("hasse dot") {
    auto s = hasse_dot(FinitePoset::chain(3));
    CHECK(s.find("n0 -> n1") != std::string::npos);
    CHECK(s.find("n0 -> n2") == std::string::npos);
}
