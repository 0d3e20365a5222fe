#include "varietas/lang.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "varietas/error.hpp"

namespace varietas {

// ---------------------------------------------------------------- Alphabet

namespace {

bool is_reserved(char c) {
    return c == '$' || static_cast<unsigned char>(c) >= 0x80 || c == ' ' || c == '\t' || c == '\n' ||
           c == '\r';
}

}  // namespace

Alphabet::Alphabet(std::string symbols) : symbols_(std::move(symbols)) {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (is_reserved(symbols_[i]))
            throw StructuralError("alphabet: reserved or non-ASCII symbol at position " + std::to_string(i));
        if (symbols_.find(symbols_[i], i + 1) != std::string::npos)
            throw StructuralError(std::string("alphabet: duplicate symbol '") + symbols_[i] + "'");
    }
}

std::optional<std::size_t> Alphabet::index_of(char c) const {
    auto pos = symbols_.find(c);
    if (pos == std::string::npos) return std::nullopt;
    return pos;
}

bool Alphabet::contains_word(std::string_view w) const {
    return std::all_of(w.begin(), w.end(), [&](char c) { return contains(c); });
}

void Alphabet::require_word(std::string_view w) const {
    for (char c : w)
        if (!contains(c))
            throw AlphabetMismatch(std::string("letter '") + c + "' is not in alphabet {" + symbols_ + "}");
}

std::vector<Word> words_up_to(const Alphabet& alphabet, std::size_t n) {
    std::vector<Word> out{Word{}};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= n; ++len) {
        std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (std::size_t a = 0; a < alphabet.size(); ++a) out.push_back(out[i] + alphabet[a]);
        begin = end;
        if (alphabet.empty()) break;
    }
    return out;
}

// ---------------------------------------------------------------- FreeMonoidHom

FreeMonoidHom::FreeMonoidHom(Alphabet src, Alphabet tgt, std::vector<Word> img)
    : source(std::move(src)), target(std::move(tgt)), image(std::move(img)) {
    if (image.size() != source.size())
        throw StructuralError("homomorphism must give one image per source letter");
    for (const auto& w : image) target.require_word(w);
}

FreeMonoidHom FreeMonoidHom::identity(const Alphabet& a) {
    std::vector<Word> img;
    for (std::size_t i = 0; i < a.size(); ++i) img.emplace_back(1, a[i]);
    return FreeMonoidHom(a, a, std::move(img));
}

Word FreeMonoidHom::apply(std::string_view w) const {
    Word out;
    for (char c : w) {
        auto i = source.index_of(c);
        if (!i) throw AlphabetMismatch(std::string("letter '") + c + "' is not in the source alphabet");
        out += image[*i];
    }
    return out;
}

// ---------------------------------------------------------------- Dfa

void Dfa::validate() const {
    if (states == 0) throw StructuralError("dfa: needs at least one state");
    if (init >= states) throw StructuralError("dfa: init out of range");
    if (delta.size() != states * alphabet.size()) throw StructuralError("dfa: transition table is not total");
    for (auto t : delta)
        if (t >= states) throw StructuralError("dfa: transition target out of range");
    if (finals.size() != states) throw StructuralError("dfa: final-state vector has wrong size");
}

std::size_t Dfa::run(std::size_t q, std::string_view w) const {
    for (char c : w) {
        auto i = alphabet.index_of(c);
        if (!i) throw AlphabetMismatch(std::string("letter '") + c + "' is not in alphabet {" + alphabet.str() + "}");
        q = next(q, *i);
    }
    return q;
}

// ---------------------------------------------------------------- minimization

RegularLanguage minimize(const Dfa& dfa) {
    dfa.validate();
    const std::size_t k = dfa.alphabet.size();

    // reachable part
    std::vector<std::size_t> reach_id(dfa.states, SIZE_MAX);
    std::vector<std::size_t> reach{dfa.init};
    reach_id[dfa.init] = 0;
    for (std::size_t i = 0; i < reach.size(); ++i)
        for (std::size_t a = 0; a < k; ++a) {
            auto t = dfa.next(reach[i], a);
            if (reach_id[t] == SIZE_MAX) {
                reach_id[t] = reach.size();
                reach.push_back(t);
            }
        }
    const std::size_t n = reach.size();

    // Moore refinement: class ids are renumbered by signature each round until stable.
    std::vector<std::size_t> cls(n);
    for (std::size_t i = 0; i < n; ++i) cls[i] = dfa.finals[reach[i]] ? 1 : 0;
    std::size_t num_classes = 0;
    for (;;) {
        std::map<std::vector<std::size_t>, std::size_t> sig_ids;
        std::vector<std::size_t> next_cls(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::size_t> sig;
            sig.reserve(k + 1);
            sig.push_back(cls[i]);
            for (std::size_t a = 0; a < k; ++a) sig.push_back(cls[reach_id[dfa.next(reach[i], a)]]);
            auto [it, _] = sig_ids.emplace(std::move(sig), sig_ids.size());
            next_cls[i] = it->second;
        }
        bool stable = sig_ids.size() == num_classes;
        num_classes = sig_ids.size();
        cls = std::move(next_cls);
        if (stable) break;
    }

    // canonical BFS numbering of classes
    std::vector<std::size_t> rep(num_classes, SIZE_MAX);
    for (std::size_t i = 0; i < n; ++i)
        if (rep[cls[i]] == SIZE_MAX) rep[cls[i]] = i;
    std::vector<std::size_t> canon(num_classes, SIZE_MAX);
    std::vector<std::size_t> order{cls[0]};
    canon[cls[0]] = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t a = 0; a < k; ++a) {
            auto c = cls[reach_id[dfa.next(reach[rep[order[i]]], a)]];
            if (canon[c] == SIZE_MAX) {
                canon[c] = order.size();
                order.push_back(c);
            }
        }

    Dfa out;
    out.alphabet = dfa.alphabet;
    out.states = num_classes;
    out.init = 0;
    out.delta.resize(num_classes * k);
    out.finals.resize(num_classes);
    for (std::size_t s = 0; s < num_classes; ++s) {
        auto q = reach[rep[order[s]]];
        out.finals[s] = dfa.finals[q];
        for (std::size_t a = 0; a < k; ++a) out.delta[s * k + a] = canon[cls[reach_id[dfa.next(q, a)]]];
    }
    return RegularLanguage(std::move(out));
}

// ---------------------------------------------------------------- RegularLanguage

RegularLanguage RegularLanguage::empty(const Alphabet& a) {
    Dfa d{a, 1, 0, std::vector<std::size_t>(a.size(), 0), {false}};
    return minimize(d);
}

RegularLanguage RegularLanguage::universal(const Alphabet& a) {
    Dfa d{a, 1, 0, std::vector<std::size_t>(a.size(), 0), {true}};
    return minimize(d);
}

bool RegularLanguage::contains(std::string_view w) const { return dfa_.finals[dfa_.run(dfa_.init, w)]; }

bool RegularLanguage::is_empty() const { return dfa_.states == 1 && !dfa_.finals[0]; }
bool RegularLanguage::is_universal() const { return dfa_.states == 1 && dfa_.finals[0]; }

std::strong_ordering RegularLanguage::operator<=>(const RegularLanguage& o) const {
    if (auto c = dfa_.alphabet <=> o.dfa_.alphabet; c != 0) return c;
    if (auto c = dfa_.states <=> o.dfa_.states; c != 0) return c;
    if (auto c = dfa_.finals <=> o.dfa_.finals; c != 0) return c;
    return dfa_.delta <=> o.dfa_.delta;
}

bool RegularLanguage::operator==(const RegularLanguage& o) const { return (*this <=> o) == 0; }

bool membership(const RegularLanguage& lang, std::string_view w) { return lang.contains(w); }

RegularLanguage derivative(const RegularLanguage& lang, const Context& ctx) {
    const Dfa& d = lang.dfa();
    d.alphabet.require_word(ctx.left);
    d.alphabet.require_word(ctx.right);
    Dfa out = d;
    out.init = d.run(d.init, ctx.left);
    for (std::size_t q = 0; q < d.states; ++q) out.finals[q] = d.finals[d.run(q, ctx.right)];
    return minimize(out);
}

RegularLanguage preimage(const RegularLanguage& lang, const FreeMonoidHom& g) {
    if (g.target != lang.alphabet())
        throw AlphabetMismatch("preimage: homomorphism target {" + g.target.str() + "} differs from language alphabet {" +
                               lang.alphabet().str() + "}");
    const Dfa& d = lang.dfa();
    Dfa out;
    out.alphabet = g.source;
    out.states = d.states;
    out.init = d.init;
    out.finals = d.finals;
    out.delta.resize(d.states * g.source.size());
    for (std::size_t q = 0; q < d.states; ++q)
        for (std::size_t c = 0; c < g.source.size(); ++c) out.delta[q * g.source.size() + c] = d.run(q, g.image[c]);
    return minimize(out);
}

bool included_in(const RegularLanguage& l1, const RegularLanguage& l2) {
    if (l1.alphabet() != l2.alphabet()) throw AlphabetMismatch("inclusion test across different alphabets");
    const Dfa& a = l1.dfa();
    const Dfa& b = l2.dfa();
    const std::size_t k = a.alphabet.size();
    std::vector<bool> seen(a.states * b.states, false);
    std::vector<std::pair<std::size_t, std::size_t>> stack{{a.init, b.init}};
    seen[a.init * b.states + b.init] = true;
    while (!stack.empty()) {
        auto [p, q] = stack.back();
        stack.pop_back();
        if (a.finals[p] && !b.finals[q]) return false;
        for (std::size_t c = 0; c < k; ++c) {
            auto p2 = a.next(p, c), q2 = b.next(q, c);
            if (!seen[p2 * b.states + q2]) {
                seen[p2 * b.states + q2] = true;
                stack.emplace_back(p2, q2);
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------- transition monoid

std::size_t TransitionMonoid::evaluate(std::string_view w, const Alphabet& alphabet) const {
    std::size_t m = monoid.identity();
    for (char c : w) {
        auto i = alphabet.index_of(c);
        if (!i) throw AlphabetMismatch(std::string("letter '") + c + "' is not in alphabet {" + alphabet.str() + "}");
        m = monoid.times(m, letter_map[*i]);
    }
    return m;
}

TransitionMonoid transition_monoid_of(const Dfa& dfa) {
    dfa.validate();
    const std::size_t n = dfa.states;
    const std::size_t k = dfa.alphabet.size();
    std::vector<std::vector<std::size_t>> elems;
    std::vector<Word> reps;
    std::map<std::vector<std::size_t>, std::size_t> index;

    std::vector<std::size_t> id(n);
    for (std::size_t q = 0; q < n; ++q) id[q] = q;
    elems.push_back(id);
    reps.emplace_back();
    index.emplace(id, 0);

    // right_mult[e * k + a] = e followed by letter a
    std::vector<std::size_t> right_mult;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (std::size_t a = 0; a < k; ++a) {
            std::vector<std::size_t> t(n);
            for (std::size_t q = 0; q < n; ++q) t[q] = dfa.next(elems[i][q], a);
            auto [it, inserted] = index.emplace(t, elems.size());
            if (inserted) {
                elems.push_back(std::move(t));
                reps.push_back(reps[i] + dfa.alphabet[a]);
            }
        }
    }
    const std::size_t size = elems.size();
    std::vector<std::size_t> table(size * size);
    std::vector<std::size_t> t(n);
    for (std::size_t x = 0; x < size; ++x)
        for (std::size_t y = 0; y < size; ++y) {
            for (std::size_t q = 0; q < n; ++q) t[q] = elems[y][elems[x][q]];
            table[x * size + y] = index.at(t);
        }
    TransitionMonoid out{FiniteMonoid(size, 0, std::move(table)), {}, std::move(elems), std::move(reps)};
    for (std::size_t a = 0; a < k; ++a) {
        std::vector<std::size_t> lt(n);
        for (std::size_t q = 0; q < n; ++q) lt[q] = dfa.next(q, a);
        out.letter_map.push_back(index.at(lt));
    }
    return out;
}

TransitionMonoid transition_monoid(const RegularLanguage& lang) { return transition_monoid_of(lang.dfa()); }

// ---------------------------------------------------------------- regex

namespace {

struct Nfa {
    struct State {
        std::vector<std::pair<int, std::size_t>> edges;  // letter index or -1 for epsilon
    };
    std::vector<State> states;
    std::size_t add() {
        states.emplace_back();
        return states.size() - 1;
    }
};

struct Fragment {
    std::size_t start;
    std::size_t accept;
};

class RegexParser {
public:
    RegexParser(std::string_view src, const Alphabet& alphabet, Nfa& nfa) : src_(src), alpha_(alphabet), nfa_(nfa) {}

    Fragment parse() {
        auto f = alternation();
        if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("regex: " + msg + " at offset " + std::to_string(pos_));
    }

    bool at_end() const { return pos_ >= src_.size(); }
    bool starts_with(std::string_view tok) const { return src_.substr(pos_, tok.size()) == tok; }

    Fragment epsilon() {
        auto s = nfa_.add();
        return {s, s};
    }

    Fragment alternation() {
        auto left = concatenation();
        while (!at_end() && src_[pos_] == '|') {
            ++pos_;
            auto right = concatenation();
            auto s = nfa_.add(), t = nfa_.add();
            nfa_.states[s].edges = {{-1, left.start}, {-1, right.start}};
            nfa_.states[left.accept].edges.emplace_back(-1, t);
            nfa_.states[right.accept].edges.emplace_back(-1, t);
            left = {s, t};
        }
        return left;
    }

    Fragment concatenation() {
        std::optional<Fragment> acc;
        while (!at_end() && src_[pos_] != '|' && src_[pos_] != ')') {
            auto f = repetition();
            if (!acc) {
                acc = f;
            } else {
                nfa_.states[acc->accept].edges.emplace_back(-1, f.start);
                acc->accept = f.accept;
            }
        }
        return acc ? *acc : epsilon();
    }

    Fragment repetition() {
        auto f = atom();
        while (!at_end() && src_[pos_] == '*') {
            ++pos_;
            auto s = nfa_.add(), t = nfa_.add();
            nfa_.states[s].edges = {{-1, f.start}, {-1, t}};
            nfa_.states[f.accept].edges.emplace_back(-1, f.start);
            nfa_.states[f.accept].edges.emplace_back(-1, t);
            f = {s, t};
        }
        return f;
    }

    Fragment atom() {
        if (at_end()) fail("unexpected end of pattern");
        if (src_[pos_] == '(') {
            ++pos_;
            auto f = alternation();
            if (at_end() || src_[pos_] != ')') fail("missing ')'");
            ++pos_;
            return f;
        }
        if (starts_with("ε")) {
            pos_ += std::string_view("ε").size();
            return epsilon();
        }
        if (starts_with("∅")) {
            pos_ += std::string_view("∅").size();
            return {nfa_.add(), nfa_.add()};  // no path from start to accept
        }
        char c = src_[pos_];
        if (!std::isalnum(static_cast<unsigned char>(c))) fail("unexpected '" + std::string(1, c) + "'");
        auto idx = alpha_.index_of(c);
        if (!idx) throw AlphabetMismatch(std::string("regex letter '") + c + "' is not in alphabet {" + alpha_.str() + "}");
        ++pos_;
        auto s = nfa_.add(), t = nfa_.add();
        nfa_.states[s].edges.emplace_back(static_cast<int>(*idx), t);
        return {s, t};
    }

    std::string_view src_;
    const Alphabet& alpha_;
    Nfa& nfa_;
    std::size_t pos_ = 0;
};

std::set<std::size_t> eps_closure(const Nfa& nfa, std::set<std::size_t> s) {
    std::vector<std::size_t> stack(s.begin(), s.end());
    while (!stack.empty()) {
        auto q = stack.back();
        stack.pop_back();
        for (auto [l, t] : nfa.states[q].edges)
            if (l < 0 && s.insert(t).second) stack.push_back(t);
    }
    return s;
}

}  // namespace

RegularLanguage parse_regex(std::string_view pattern, const Alphabet& alphabet) {
    Alphabet alpha = alphabet;
    if (alpha.empty()) {
        std::string letters;
        for (char c : pattern)
            if (std::isalnum(static_cast<unsigned char>(c)) && letters.find(c) == std::string::npos) letters += c;
        std::sort(letters.begin(), letters.end());
        alpha = Alphabet(letters.empty() ? "a" : letters);
    }
    Nfa nfa;
    auto frag = RegexParser(pattern, alpha, nfa).parse();

    const std::size_t k = alpha.size();
    std::map<std::set<std::size_t>, std::size_t> ids;
    std::vector<std::set<std::size_t>> subsets;
    auto start = eps_closure(nfa, {frag.start});
    ids.emplace(start, 0);
    subsets.push_back(start);
    Dfa d;
    d.alphabet = alpha;
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        for (std::size_t a = 0; a < k; ++a) {
            std::set<std::size_t> next;
            for (auto q : subsets[i])
                for (auto [l, t] : nfa.states[q].edges)
                    if (l == static_cast<int>(a)) next.insert(t);
            next = eps_closure(nfa, std::move(next));
            auto [it, inserted] = ids.emplace(next, subsets.size());
            if (inserted) subsets.push_back(std::move(next));
            d.delta.push_back(it->second);
        }
    }
    d.states = subsets.size();
    d.init = 0;
    for (const auto& s : subsets) d.finals.push_back(s.count(frag.accept) > 0);
    return minimize(d);
}

// ---------------------------------------------------------------- display

namespace {

// Regex AST strings for state elimination; "" means the empty language, "ε" the empty word.
const std::string kNone = "";
const std::string kEps = "ε";

bool needs_parens_for_concat(const std::string& r) {
    int depth = 0;
    for (char c : r) {
        if (c == '(') ++depth;
        else if (c == ')') --depth;
        else if (c == '|' && depth == 0) return true;
    }
    return false;
}

bool is_atomic(const std::string& r) {
    if (r.size() == 1) return true;
    if (r == kEps) return true;
    if (r.front() != '(' || r.back() != ')') return false;
    int depth = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] == '(') ++depth;
        else if (r[i] == ')' && --depth == 0 && i + 1 != r.size()) return false;
    }
    return true;
}

std::string alt(const std::string& a, const std::string& b) {
    if (a == kNone) return b;
    if (b == kNone || a == b) return a;
    return a + "|" + b;
}

std::string cat(const std::string& a, const std::string& b) {
    if (a == kNone || b == kNone) return kNone;
    if (a == kEps) return b;
    if (b == kEps) return a;
    auto wrap = [](const std::string& r) { return needs_parens_for_concat(r) ? "(" + r + ")" : r; };
    return wrap(a) + wrap(b);
}

std::string star(const std::string& a) {
    if (a == kNone || a == kEps) return kEps;
    if (is_atomic(a)) return a.back() == '*' ? a : a + "*";
    return "(" + a + ")*";
}

}  // namespace

std::string to_regex(const RegularLanguage& lang) {
    const Dfa& d = lang.dfa();
    if (lang.is_empty()) return "∅";
    // states 0..n-1, plus source n and sink n+1
    const std::size_t n = d.states;
    const std::size_t src = n, dst = n + 1;
    std::vector<std::vector<std::string>> e(n + 2, std::vector<std::string>(n + 2, kNone));
    e[src][d.init] = kEps;
    for (std::size_t q = 0; q < n; ++q) {
        if (d.finals[q]) e[q][dst] = kEps;
        for (std::size_t a = 0; a < d.alphabet.size(); ++a)
            e[q][d.next(q, a)] = alt(e[q][d.next(q, a)], std::string(1, d.alphabet[a]));
    }
    for (std::size_t k = 0; k < n; ++k) {
        auto loop = star(e[k][k]);
        for (std::size_t i = 0; i < n + 2; ++i) {
            if (i == k || e[i][k] == kNone) continue;
            for (std::size_t j = 0; j < n + 2; ++j) {
                if (j == k || e[k][j] == kNone) continue;
                e[i][j] = alt(e[i][j], cat(cat(e[i][k], loop), e[k][j]));
            }
        }
        for (std::size_t i = 0; i < n + 2; ++i) e[i][k] = e[k][i] = kNone;
    }
    return e[src][dst] == kNone ? "∅" : e[src][dst];
}

std::string to_dot(const Dfa& dfa, std::string_view name) {
    std::ostringstream os;
    os << "digraph \"" << name << "\" {\n  rankdir=LR;\n  __start [shape=point];\n";
    for (std::size_t q = 0; q < dfa.states; ++q)
        os << "  q" << q << " [shape=" << (dfa.finals[q] ? "doublecircle" : "circle") << "];\n";
    os << "  __start -> q" << dfa.init << ";\n";
    for (std::size_t q = 0; q < dfa.states; ++q) {
        std::map<std::size_t, std::string> labels;
        for (std::size_t a = 0; a < dfa.alphabet.size(); ++a) {
            auto& l = labels[dfa.next(q, a)];
            if (!l.empty()) l += ",";
            l += dfa.alphabet[a];
        }
        for (const auto& [t, l] : labels) os << "  q" << q << " -> q" << t << " [label=\"" << l << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace varietas
