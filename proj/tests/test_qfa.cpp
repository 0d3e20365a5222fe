#include <doctest.h>

#include <cmath>

#include "varietas/error.hpp"
#include "varietas/kernels.hpp"
#include "varietas/qfa.hpp"
#include "varietas/suites/corpus.hpp"

using namespace varietas;

namespace {

const double kPi = std::acos(-1.0);

Kwqfa identity_machine(std::size_t k) {
    Kwqfa q;
    q.states = k;
    q.alphabet = Alphabet("a");
    q.partition.assign(k, StateKind::NonHalting);
    ComplexMatrix id(k * k, 0.0);
    for (std::size_t i = 0; i < k; ++i) id[i * k + i] = 1.0;
    q.left_marker = q.right_marker = id;
    q.letters = {id};
    return q;
}

}  // namespace

TEST_CASE("validation") {
    auto id = validate(identity_machine(3));
    CHECK(id.ok);
    CHECK(id.max_residual == 0.0);
    auto scaled = identity_machine(2);
    for (auto& z : scaled.letters[0]) z *= 1.001;
    auto r = validate(scaled);
    CHECK_FALSE(r.ok);
    CHECK(r.max_residual == doctest::Approx(2.001e-3).epsilon(1e-6));
    CHECK(validate(parity_machine()).ok);
    auto shape = identity_machine(2);
    shape.partition.pop_back();
    CHECK_FALSE(validate(shape).ok);
}

TEST_CASE("parity machine") {
    auto q = parity_machine();
    for (auto mode : {Measurement::Subspace, Measurement::Basis}) {
        CHECK(accept_probability(q, "aa", mode) == 1.0);
        CHECK(accept_probability(q, "a", mode) == 0.0);
    }
    CHECK_THROWS_AS(accept_probability(q, "b"), AlphabetMismatch);
}

TEST_CASE("rotation machine by hand") {
    auto q = rotation_machine(kPi / 4);
    CHECK(std::abs(accept_probability(q, "a") - 0.5) <= 1e-9);
    CHECK(std::abs(accept_probability(q, "aa") - 0.75) <= 1e-9);
    CHECK(std::abs(accept_probability(q, "") - 0.0) <= 1e-9);
    auto t = simulate(q, "aa");
    REQUIRE(t.steps.size() == 4);
    CHECK(t.steps[0].symbol == "κ");
    CHECK(t.steps[3].symbol == "$");
}

TEST_CASE("modes agree on the rotation family") {
    for (int k = 1; k < 12; ++k) {
        auto q = rotation_machine(k * kPi / 12);
        for (const auto& w : words_up_to(q.alphabet, 7))
            REQUIRE(std::abs(accept_probability(q, w, Measurement::Subspace) -
                             accept_probability(q, w, Measurement::Basis)) <= 1e-9);
    }
}

TEST_CASE("modes differ when amplitudes interfere") {
    // Hadamard on two non-halting states, then the right marker routes q0 to accept
    Kwqfa q;
    q.states = 4;
    q.alphabet = Alphabet("a");
    q.partition = {StateKind::NonHalting, StateKind::NonHalting, StateKind::Accept, StateKind::Reject};
    const double h = 1 / std::sqrt(2.0);
    ComplexMatrix id(16, 0.0);
    for (int i = 0; i < 4; ++i) id[i * 4 + i] = 1.0;
    q.left_marker = id;
    q.letters = {id};
    q.letters[0][0] = h;
    q.letters[0][1] = h;
    q.letters[0][4] = h;
    q.letters[0][5] = -h;
    q.right_marker.assign(16, 0.0);
    q.right_marker[2 * 4 + 0] = q.right_marker[0 * 4 + 2] = 1.0;
    q.right_marker[3 * 4 + 1] = q.right_marker[1 * 4 + 3] = 1.0;
    REQUIRE(validate(q).ok);
    CHECK(std::abs(accept_probability(q, "aa", Measurement::Subspace) - 1.0) <= 1e-9);
    CHECK(std::abs(accept_probability(q, "aa", Measurement::Basis) - 0.5) <= 1e-9);
}

TEST_CASE("conservation and norm preservation") {
    suites::Rng rng(1);
    std::vector<Kwqfa> machines{rotation_machine(0.3), rotation_machine(kPi / 4), parity_machine()};
    Dfa mod3;
    mod3.alphabet = Alphabet("ab");
    mod3.states = 3;
    mod3.delta = {1, 0, 2, 1, 0, 2};
    mod3.finals = {false, true, false};
    machines.push_back(from_permutation_dfa(mod3));
    for (const auto& q : machines)
        for (auto mode : {Measurement::Subspace, Measurement::Basis})
            for (const auto& w : words_up_to(q.alphabet, 6))
                for (const auto& s : simulate(q, w, mode).steps)
                    REQUIRE(std::abs(s.p_acc + s.p_rej + s.continuing - 1.0) <= 1e-9);
    // |T psi| = |psi| before measurement
    const auto& K = kernels::active();
    for (const auto& q : machines)
        for (const auto& t : q.letters) {
            std::vector<std::complex<double>> psi(q.states), out(q.states);
            for (auto& z : psi) z = {double(rng() % 100) / 100, double(rng() % 100) / 100};
            K.complex_matvec(q.states, t.data(), psi.data(), out.data());
            CHECK(std::abs(K.norm2(q.states, out.data()) - K.norm2(q.states, psi.data())) <= 1e-9);
        }
}

TEST_CASE("permutation automata embed deterministically") {
    suites::Rng rng(7);
    for (int t = 0; t < 30; ++t) {
        Dfa d;
        d.alphabet = Alphabet(t % 2 ? "ab" : "a");
        d.states = 1 + suites::pick(rng, 4);
        d.init = suites::pick(rng, d.states);
        for (std::size_t a = 0; a < d.alphabet.size(); ++a) {
            std::vector<std::size_t> perm(d.states);
            for (std::size_t i = 0; i < d.states; ++i) perm[i] = i;
            std::shuffle(perm.begin(), perm.end(), rng);
            d.delta.resize(d.states * d.alphabet.size());
            for (std::size_t s = 0; s < d.states; ++s) d.delta[s * d.alphabet.size() + a] = perm[s];
        }
        d.finals.resize(d.states);
        for (std::size_t s = 0; s < d.states; ++s) d.finals[s] = rng() % 2;
        auto q = from_permutation_dfa(d);
        REQUIRE(validate(q).ok);
        for (auto mode : {Measurement::Subspace, Measurement::Basis})
            for (const auto& w : words_up_to(d.alphabet, 8)) {
                double p = accept_probability(q, w, mode);
                bool in = d.finals[d.run(d.init, w)];
                REQUIRE(p == (in ? 1.0 : 0.0));
            }
    }
    Dfa reset{Alphabet("a"), 2, 0, {1, 1}, {true, false}};
    CHECK_THROWS_AS(from_permutation_dfa(reset), InvalidArgument);
}

TEST_CASE("margin reports") {
    auto par = margin_report(parity_machine(), parse_regex("(aa)*", Alphabet("a")), 6);
    CHECK(par.min_accept_in == 1.0);
    CHECK(par.max_accept_out == 0.0);
    CHECK(par.bounded);
    CHECK(par.p == 1.0);
    CHECK(par.words_in + par.words_out == 7);

    auto rot = margin_report(rotation_machine(kPi / 4), parse_regex("aa*", Alphabet("a")), 4);
    CHECK(std::abs(rot.min_accept_in - 0.5) <= 1e-9);
    CHECK_FALSE(rot.bounded);

    CHECK_THROWS_AS(margin_report(parity_machine(), parse_regex("ab", Alphabet("ab")), 3), AlphabetMismatch);
    CHECK_THROWS_AS(margin_report(parity_machine(), parse_regex("a", Alphabet("a")), 40), BoundExceeded);

    // the threaded path agrees with per-word evaluation
    Dfa mod3{Alphabet("ab"), 3, 0, {1, 0, 2, 1, 0, 2}, {true, false, false}};
    auto q = from_permutation_dfa(mod3);
    auto big = margin_report(q, minimize(mod3), 10);
    CHECK(big.bounded);
    CHECK(big.words_in + big.words_out == 2047);
}

TEST_CASE("basic variety probe") {
    auto q = parity_machine();
    auto r = basic_variety_probe(q, {{"a", ""}}, {}, 5);
    REQUIRE(r.derivatives.size() == 1);
    for (const auto& w : r.derivatives[0].cut) CHECK(w.size() % 2 == 1);
    CHECK(r.derivatives[0].cut.size() == 3);
    CHECK(r.consistent);
    CHECK_FALSE(ProbeReport::conclusive);

    auto id = basic_variety_probe(q, {}, {FreeMonoidHom::identity(q.alphabet)}, 5);
    CHECK(id.preimages[0].cut == id.base.cut);

    auto c2 = basic_variety_probe(q, {}, {FreeMonoidHom(Alphabet("c"), q.alphabet, {"aa"})}, 4);
    CHECK(c2.preimages[0].cut.size() == 5);
    CHECK(c2.preimages[0].consistent);

    auto rot = basic_variety_probe(rotation_machine(kPi / 4), {}, {}, 3);
    CHECK_FALSE(rot.consistent);
}

TEST_CASE("measurement names") {
    CHECK(parse_measurement("basis") == Measurement::Basis);
    CHECK(to_string(Measurement::Subspace) == "subspace");
    CHECK_THROWS_AS(parse_measurement("full"), ParseError);
}
