#include "varietas/qfa.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

#include "varietas/error.hpp"
#include "varietas/kernels.hpp"

namespace varietas {

std::string to_string(Measurement m) { return m == Measurement::Basis ? "basis" : "subspace"; }

Measurement parse_measurement(std::string_view s) {
    if (s == "subspace") return Measurement::Subspace;
    if (s == "basis") return Measurement::Basis;
    throw ParseError("unknown measurement mode '" + std::string(s) + "'");
}

namespace {

double unitarity_residual(std::size_t k, const ComplexMatrix& t) {
    double r = 0;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            std::complex<double> s = 0;
            for (std::size_t l = 0; l < k; ++l) s += std::conj(t[l * k + i]) * t[l * k + j];
            if (i == j) s -= 1.0;
            r = std::max(r, std::abs(s));
        }
    return r;
}

void check_shape(const Kwqfa& q) {
    const std::size_t kk = q.states * q.states;
    if (q.states == 0) throw StructuralError("automaton needs at least one state");
    if (q.partition.size() != q.states) throw StructuralError("partition must tag every state");
    if (q.init >= q.states) throw StructuralError("initial state out of range");
    if (q.letters.size() != q.alphabet.size()) throw StructuralError("one unitary per letter required");
    if (q.left_marker.size() != kk || q.right_marker.size() != kk) throw StructuralError("marker matrix size");
    for (const auto& t : q.letters)
        if (t.size() != kk) throw StructuralError("letter matrix size");
}

std::vector<std::pair<std::string, const ComplexMatrix*>> symbols(const Kwqfa& q) {
    std::vector<std::pair<std::string, const ComplexMatrix*>> out{{std::string(kLeftMarker), &q.left_marker}};
    for (std::size_t a = 0; a < q.alphabet.size(); ++a) out.emplace_back(std::string(1, q.alphabet[a]), &q.letters[a]);
    out.emplace_back(std::string(kRightMarker), &q.right_marker);
    return out;
}

}  // namespace

QfaReport validate(const Kwqfa& q) {
    QfaReport r;
    try {
        check_shape(q);
    } catch (const Error& e) {
        r.problems.emplace_back(e.what());
        return r;
    }
    for (const auto& [name, t] : symbols(q)) {
        double res = unitarity_residual(q.states, *t);
        r.residuals.emplace_back(name, res);
        r.max_residual = std::max(r.max_residual, res);
        if (!(res <= kQfaTolerance)) r.problems.push_back("matrix for " + name + " is not unitary");
    }
    r.ok = r.problems.empty();
    return r;
}

SimTrace simulate(const Kwqfa& q, std::string_view w, Measurement mode) {
    check_shape(q);
    q.alphabet.require_word(w);
    const std::size_t k = q.states;
    const auto& K = kernels::active();
    std::vector<const ComplexMatrix*> seq{&q.left_marker};
    std::vector<std::string> names{std::string(kLeftMarker)};
    for (char c : w) {
        seq.push_back(&q.letters[*q.alphabet.index_of(c)]);
        names.emplace_back(1, c);
    }
    seq.push_back(&q.right_marker);
    names.emplace_back(kRightMarker);

    SimTrace tr;
    tr.mode = mode;
    double acc = 0, rej = 0;
    if (mode == Measurement::Subspace) {
        std::vector<std::complex<double>> psi(k, 0.0), next(k);
        psi[q.init] = 1.0;
        for (std::size_t s = 0; s < seq.size(); ++s) {
            K.complex_matvec(k, seq[s]->data(), psi.data(), next.data());
            for (std::size_t i = 0; i < k; ++i) {
                double m = std::norm(next[i]);
                if (q.partition[i] == StateKind::Accept) acc += m;
                else if (q.partition[i] == StateKind::Reject) rej += m;
                if (q.partition[i] != StateKind::NonHalting) next[i] = 0.0;
            }
            psi.swap(next);
            tr.steps.push_back({names[s], acc, rej, K.norm2(k, psi.data())});
        }
    } else {
        std::vector<double> dist(k, 0.0), next(k), weights(k * k);
        dist[q.init] = 1.0;
        for (std::size_t s = 0; s < seq.size(); ++s) {
            for (std::size_t i = 0; i < k * k; ++i) weights[i] = std::norm((*seq[s])[i]);
            K.real_matvec(k, weights.data(), dist.data(), next.data());
            double cont = 0;
            for (std::size_t i = 0; i < k; ++i) {
                if (q.partition[i] == StateKind::Accept) acc += next[i];
                else if (q.partition[i] == StateKind::Reject) rej += next[i];
                if (q.partition[i] != StateKind::NonHalting) next[i] = 0.0;
                cont += next[i];
            }
            dist.swap(next);
            tr.steps.push_back({names[s], acc, rej, cont});
        }
    }
    return tr;
}

double accept_probability(const Kwqfa& q, std::string_view w, Measurement mode) {
    return simulate(q, w, mode).accept();
}

MarginReport margin_report(const Kwqfa& q, const RegularLanguage& lang, std::size_t n, Measurement mode) {
    if (lang.alphabet() != q.alphabet)
        throw AlphabetMismatch("language over {" + lang.alphabet().str() + "} but automaton over {" +
                               q.alphabet.str() + "}");
    if (n > kMaxMarginLength)
        throw BoundExceeded("length bound " + std::to_string(n) + " exceeds " + std::to_string(kMaxMarginLength));
    check_shape(q);
    auto words = words_up_to(q.alphabet, n);
    std::vector<double> probs(words.size());
    std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 8);
    if (words.size() < 256) workers = 1;
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < words.size(); i += workers) probs[i] = accept_probability(q, words[i], mode);
        });
    for (auto& th : pool) th.join();

    MarginReport r;
    r.n = n;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (lang.contains(words[i])) {
            ++r.words_in;
            r.min_accept_in = std::min(r.min_accept_in, probs[i]);
        } else {
            ++r.words_out;
            r.max_accept_out = std::max(r.max_accept_out, probs[i]);
        }
    }
    r.bounded = r.min_accept_in > 0.5 && r.max_accept_out < 0.5;
    r.p = std::min(r.min_accept_in, 1.0 - r.max_accept_out);
    return r;
}

namespace {

ProbeEntry probe(std::string label, const std::vector<Word>& domain, const std::function<double(const Word&)>& p) {
    ProbeEntry e;
    e.label = std::move(label);
    e.isolation = 0.5;
    for (const auto& x : domain) {
        double v = p(x);
        if (v > 0.5) e.cut.push_back(x);
        e.isolation = std::min(e.isolation, std::abs(v - 0.5));
    }
    e.consistent = e.isolation > kQfaTolerance;
    return e;
}

}  // namespace

ProbeReport basic_variety_probe(const Kwqfa& q, const std::vector<Context>& contexts,
                                const std::vector<FreeMonoidHom>& homs, std::size_t n, Measurement mode) {
    if (n > kMaxMarginLength)
        throw BoundExceeded("length bound " + std::to_string(n) + " exceeds " + std::to_string(kMaxMarginLength));
    ProbeReport r;
    r.n = n;
    auto domain = words_up_to(q.alphabet, n);
    auto run = [&](const Word& w) { return accept_probability(q, w, mode); };
    r.base = probe("base", domain, run);
    r.consistent = r.base.consistent;
    for (const auto& c : contexts) {
        q.alphabet.require_word(c.left);
        q.alphabet.require_word(c.right);
        r.derivatives.push_back(probe("(" + c.left + ", " + c.right + ")", domain,
                                      [&](const Word& x) { return run(c.left + x + c.right); }));
        r.consistent = r.consistent && r.derivatives.back().consistent;
    }
    for (const auto& g : homs) {
        if (g.target != q.alphabet)
            throw AlphabetMismatch("hom target {" + g.target.str() + "} differs from {" + q.alphabet.str() + "}");
        std::string label = "{" + g.source.str() + "} ->";
        for (std::size_t a = 0; a < g.source.size(); ++a) label += std::string(" ") + g.source[a] + ":" + g.image[a];
        r.preimages.push_back(
            probe(label, words_up_to(g.source, n), [&](const Word& x) { return run(g.apply(x)); }));
        r.consistent = r.consistent && r.preimages.back().consistent;
    }
    return r;
}

Kwqfa from_permutation_dfa(const Dfa& dfa) {
    dfa.validate();
    const std::size_t n = dfa.states, k = 2 * n;
    Kwqfa q;
    q.states = k;
    q.alphabet = dfa.alphabet;
    q.init = dfa.init;
    q.partition.assign(k, StateKind::NonHalting);
    for (std::size_t s = 0; s < n; ++s) q.partition[n + s] = dfa.finals[s] ? StateKind::Accept : StateKind::Reject;
    auto identity = [&] {
        ComplexMatrix m(k * k, 0.0);
        for (std::size_t i = 0; i < k; ++i) m[i * k + i] = 1.0;
        return m;
    };
    q.left_marker = identity();
    q.right_marker.assign(k * k, 0.0);
    for (std::size_t s = 0; s < n; ++s) {
        q.right_marker[(n + s) * k + s] = 1.0;
        q.right_marker[s * k + n + s] = 1.0;
    }
    for (std::size_t a = 0; a < dfa.alphabet.size(); ++a) {
        std::vector<bool> hit(n, false);
        ComplexMatrix m(k * k, 0.0);
        for (std::size_t s = 0; s < n; ++s) {
            auto t = dfa.next(s, a);
            if (hit[t]) throw InvalidArgument(std::string("letter ") + dfa.alphabet[a] + " is not a permutation");
            hit[t] = true;
            m[t * k + s] = 1.0;
            m[(n + s) * k + n + s] = 1.0;
        }
        q.letters.push_back(std::move(m));
    }
    return q;
}

Kwqfa rotation_machine(double angle) {
    Kwqfa q;
    q.states = 2;
    q.alphabet = Alphabet("a");
    q.init = 0;
    q.partition = {StateKind::NonHalting, StateKind::Accept};
    q.left_marker = {1.0, 0.0, 0.0, 1.0};
    q.right_marker = q.left_marker;
    double c = std::cos(angle), s = std::sin(angle);
    q.letters = {{c, -s, s, c}};
    return q;
}

Kwqfa parity_machine() {
    Dfa d;
    d.alphabet = Alphabet("a");
    d.states = 2;
    d.init = 0;
    d.delta = {1, 0};
    d.finals = {true, false};
    return from_permutation_dfa(d);
}

}  // namespace varietas
