#include <doctest.h>

#include "varietas/error.hpp"
#include "varietas/io.hpp"
#include "varietas/suites/corpus.hpp"

using namespace varietas;
using io::json;

TEST_CASE("dfa and language round trip") {
    auto l = parse_regex("(ab)*", Alphabet("ab"));
    auto j = io::to_json(l.dfa());
    CHECK(j["finals"] == json::array({0}));
    CHECK(minimize(io::dfa_from_json(j)) == l);
    CHECK(io::language_from_json(json("(ab)*"), Alphabet("ab")) == l);
    CHECK(io::language_from_json(j) == l);
    CHECK(io::to_json(l)["states"] == l.num_states());
}

TEST_CASE("monoid and lattice round trip") {
    auto t = transition_monoid(parse_regex("(a|b)*a", Alphabet("ab")));
    CHECK(io::monoid_from_json(io::to_json(t.monoid)) == t.monoid);
    for (auto d : {Fdl::chain(3), Fdl::boolean(2), free_cdl(2).lattice.lattice()})
        CHECK(io::lattice_from_json(io::to_json(d)) == d);
    auto p = io::poset_from_json(json::parse(R"({"size": 3, "covers": [[0, 1], [1, 2]]})"));
    CHECK(p == FinitePoset::chain(3));
}

TEST_CASE("bimodule round trip over the corpus") {
    auto corpus = suites::exhaustive_bimodules();
    for (std::size_t i = 0; i < corpus.size(); i += 7)
        REQUIRE(io::bimodule_from_json(io::to_json(corpus[i])) == corpus[i]);
    auto d = diamond_bimodule();
    CHECK(io::bimodule_from_json(json::parse(io::to_json(d).dump())) == d);
}

TEST_CASE("free hom and uquotient round trip") {
    auto h = minimal_recognizer(parse_regex("(aa)*", Alphabet("a")));
    auto back = io::free_hom_from_json(io::to_json(h));
    CHECK(back.target == h.target);
    CHECK(back.letter_image == h.letter_image);
    auto e = uquotient_of_hom(h);
    auto e2 = io::uquotient_from_json(io::to_json(e));
    CHECK(e2.val == e.val);
    CHECK(e2.provenance == e.provenance);
    CHECK(e2.codomain == e.codomain);
}

TEST_CASE("monoid hom images in both forms") {
    auto j = json::parse(R"({"source": "c", "target": "ab", "images": {"c": "ab"}})");
    auto g = io::monoid_hom_from_json(j);
    CHECK(g.apply("cc") == "abab");
    auto k = io::monoid_hom_from_json(io::to_json(g));
    CHECK(k.apply("c") == "ab");
}

TEST_CASE("variety and cotheory documents") {
    auto v = io::variety_from_json(json::parse(R"({"alphabet": "a", "languages": ["(aa)*", "a(aa)*"]})"));
    CHECK(v.size() == 2);
    CHECK_THROWS_AS(io::variety_from_json(json::parse(R"({"alphabet": "a", "languages": ["(aa)*"]})")),
                    InvalidArgument);
    auto s = io::cotheory_from_json(json::parse(R"({
        "families": {"ab": [["(ab)*", "b(ab)*", "(ab)*a", "ε|b(ab)*a", "∅"]],
                     "c": [["c*", "ε", "∅"]]},
        "homs": [{"source": "c", "target": "ab", "images": {"c": "ab"}}]})"));
    CHECK(check_cotheory(s).ok());
}

TEST_CASE("qfa round trip") {
    auto q = rotation_machine(0.4);
    auto back = io::qfa_from_json(io::to_json(q));
    CHECK(back.partition == q.partition);
    CHECK(std::abs(accept_probability(back, "aaa") - accept_probability(q, "aaa")) <= 1e-12);
    auto nested = io::qfa_from_json(json::parse(R"({
        "states": 2, "alphabet": "a", "partition": "n r", "init": 0,
        "unitaries": {"κ": [[1, 0], [0, 1]], "a": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]], "$": [[1, 0], [0, 1]]}})"));
    CHECK(validate(nested).ok);
    CHECK(accept_probability(nested, "a") == 0.0);
}

TEST_CASE("malformed documents") {
    CHECK_THROWS_AS(io::parse_text("{\"a\": "), ParseError);
    CHECK_THROWS_AS(io::read_file("/nonexistent/file.json"), ParseError);
    CHECK_THROWS_AS(io::dfa_from_json(json::parse(R"({"alphabet": "a"})")), ParseError);
    CHECK_THROWS_AS(io::monoid_from_json(json(3)), ParseError);
    CHECK_THROWS_AS(io::qfa_from_json(json::parse(R"({"states": 2, "alphabet": "a", "partition": "nx"})")),
                    ParseError);
}

TEST_CASE("lattice references and action aliases") {
    CHECK(io::lattice_from_json(json::parse(R"({"chain": 3})")) == Fdl::chain(3));
    CHECK(io::lattice_from_json(json::parse(R"({"free": 2})")).size() == 6);
    auto j = io::to_json(diamond_bimodule());
    CHECK(j.contains("act_left"));
    j["left"] = j["act_left"];
    j.erase("act_left");
    CHECK(io::bimodule_from_json(j) == diamond_bimodule());
}
