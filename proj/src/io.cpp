#include "varietas/io.hpp"

#include <algorithm>
#include <optional>
#include <fstream>
#include <sstream>

#include "varietas/error.hpp"

namespace varietas::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::size_t as_index(const json& j, const char* what) {
    if (!j.is_number_integer() || j.get<long long>() < 0) fail(std::string(what) + " must be a non-negative integer");
    return j.get<std::size_t>();
}

std::vector<std::size_t> index_list(const json& j, const char* what) {
    if (!j.is_array()) fail(std::string(what) + " must be an array");
    std::vector<std::size_t> out;
    for (const auto& x : j) out.push_back(as_index(x, what));
    return out;
}

/// Accepts rows x cols as nested rows or flat.
std::vector<std::size_t> index_table(const json& j, std::size_t rows, std::size_t cols, const char* what) {
    if (!j.is_array()) fail(std::string(what) + " must be an array");
    std::vector<std::size_t> out;
    if (!j.empty() && j.front().is_array()) {
        if (j.size() != rows) fail(std::string(what) + " has the wrong number of rows");
        for (const auto& row : j) {
            auto r = index_list(row, what);
            if (r.size() != cols) fail(std::string(what) + " has a row of the wrong length");
            out.insert(out.end(), r.begin(), r.end());
        }
    } else {
        out = index_list(j, what);
        if (out.size() != rows * cols) fail(std::string(what) + " has the wrong size");
    }
    return out;
}

json rows(const std::vector<std::size_t>& flat, std::size_t cols) {
    json out = json::array();
    for (std::size_t i = 0; cols && i < flat.size(); i += cols)
        out.push_back(std::vector<std::size_t>(flat.begin() + i, flat.begin() + i + cols));
    return out;
}

Alphabet alphabet_of(const json& j) {
    if (!j.is_string()) fail("alphabet must be a string");
    try {
        return Alphabet(j.get<std::string>());
    } catch (const StructuralError& e) {
        fail(e.what());
    }
}

}  // namespace

json to_json(const FiniteMonoid& m) {
    return {{"size", m.size()}, {"identity", m.identity()}, {"table", rows(m.table(), m.size())}};
}

FiniteMonoid monoid_from_json(const json& j) {
    auto n = as_index(field(j, "size"), "size");
    return FiniteMonoid(n, as_index(field(j, "identity"), "identity"), index_table(field(j, "table"), n, n, "table"));
}

json to_json(const TransitionMonoid& t, const Alphabet& alphabet) {
    json letters = json::object();
    for (std::size_t a = 0; a < alphabet.size(); ++a) letters[std::string(1, alphabet[a])] = t.letter_map[a];
    return {{"monoid", to_json(t.monoid)}, {"letters", letters}, {"representatives", t.representatives}};
}

json to_json(const Dfa& d) {
    std::vector<std::size_t> finals;
    for (std::size_t q = 0; q < d.states; ++q)
        if (d.finals[q]) finals.push_back(q);
    return {{"alphabet", d.alphabet.str()}, {"states", d.states}, {"init", d.init},
            {"delta", rows(d.delta, d.alphabet.size())}, {"finals", finals}};
}

Dfa dfa_from_json(const json& j) {
    Dfa d;
    d.alphabet = alphabet_of(field(j, "alphabet"));
    d.states = as_index(field(j, "states"), "states");
    d.init = j.contains("init") ? as_index(j["init"], "init") : 0;
    d.delta = index_table(field(j, "delta"), d.states, d.alphabet.size(), "delta");
    d.finals.assign(d.states, false);
    for (auto q : index_list(field(j, "finals"), "finals")) {
        if (q >= d.states) fail("final state out of range");
        d.finals[q] = true;
    }
    d.validate();
    return d;
}

RegularLanguage language_from_json(const json& j, const Alphabet& alphabet) {
    if (j.is_string()) return parse_regex(j.get<std::string>(), alphabet);
    auto d = dfa_from_json(j);
    if (!alphabet.empty() && d.alphabet != alphabet)
        throw AlphabetMismatch("automaton over {" + d.alphabet.str() + "} where {" + alphabet.str() + "} is expected");
    return minimize(d);
}

json to_json(const RegularLanguage& l) {
    return {{"regex", to_regex(l)}, {"states", l.num_states()}, {"dfa", to_json(l.dfa())}};
}

json to_json(const FinitePoset& p) {
    json m = json::array();
    for (std::size_t i = 0; i < p.size(); ++i) {
        std::vector<int> row;
        for (std::size_t k = 0; k < p.size(); ++k) row.push_back(p.le(i, k) ? 1 : 0);
        m.push_back(row);
    }
    return {{"size", p.size()}, {"leq", m}};
}

FinitePoset poset_from_json(const json& j) {
    auto n = as_index(field(j, "size"), "size");
    std::vector<std::uint8_t> m(n * n, 0);
    if (j.contains("leq")) {
        auto flat = index_table(j["leq"], n, n, "leq");
        for (std::size_t i = 0; i < n * n; ++i) {
            if (flat[i] > 1) fail("leq matrix entries must be 0 or 1");
            m[i] = static_cast<std::uint8_t>(flat[i]);
        }
        return FinitePoset(n, std::move(m));
    }
    const auto& covers = field(j, "covers");
    if (!covers.is_array()) fail("covers must be an array of pairs");
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1;
    for (const auto& p : covers) {
        auto ij = index_list(p, "covers pair");
        if (ij.size() != 2 || ij[0] >= n || ij[1] >= n) fail("covers pair out of range");
        m[ij[0] * n + ij[1]] = 1;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l)
                if (m[i * n + k] && m[k * n + l]) m[i * n + l] = 1;
    return FinitePoset(n, std::move(m));
}

json to_json(const Fdl& d) {
    json j = to_json(d.order());
    j["bottom"] = d.bottom();
    j["top"] = d.top();
    return j;
}

Fdl lattice_from_json(const json& j) {
    if (j.is_object() && j.size() == 1) {
        auto ref = [&](const char* key) -> std::optional<std::size_t> {
            if (!j.contains(key)) return std::nullopt;
            if (!j[key].is_number_unsigned()) fail(std::string(key) + " must be a non-negative integer");
            return j[key].get<std::size_t>();
        };
        if (auto n = ref("chain")) return Fdl::chain(*n);
        if (auto k = ref("boolean")) return Fdl::boolean(*k);
        if (auto k = ref("free")) return free_cdl(*k).lattice.lattice();
    }
    return Fdl::from_order(poset_from_json(j));
}

json to_json(const LatticeBimodule& b) {
    return {{"monoid", to_json(b.monoid())},
            {"lattice", to_json(b.lattice())},
            {"iota", b.iota_table()},
            {"act_left", rows(b.left_table(), b.lattice_size())},
            {"act_right", rows(b.right_table(), b.monoid_size())}};
}

LatticeBimodule bimodule_from_json(const json& j) {
    auto m = monoid_from_json(field(j, "monoid"));
    auto d = lattice_from_json(field(j, "lattice"));
    auto iota = index_list(field(j, "iota"), "iota");
    auto table = [&](const char* key, const char* alias) -> const json& {
        return j.contains(key) ? j[key] : field(j, alias);
    };
    auto left = index_table(table("act_left", "left"), m.size(), d.size(), "act_left");
    auto right = index_table(table("act_right", "right"), d.size(), m.size(), "act_right");
    return LatticeBimodule(std::move(m), std::move(d), std::move(iota), std::move(left), std::move(right));
}

json to_json(const FreeHomSpec& h) {
    return {{"alphabet", h.alphabet.str()}, {"bimodule", to_json(h.target)}, {"letters", h.letter_image}};
}

FreeHomSpec free_hom_from_json(const json& j) {
    return FreeHomSpec(alphabet_of(field(j, "alphabet")), bimodule_from_json(field(j, "bimodule")),
                       index_list(field(j, "letters"), "letters"));
}

json to_json(const FreeMonoidHom& g) {
    json images = json::object();
    for (std::size_t a = 0; a < g.source.size(); ++a) images[std::string(1, g.source[a])] = g.image[a];
    return {{"source", g.source.str()}, {"target", g.target.str()}, {"images", images}};
}

FreeMonoidHom monoid_hom_from_json(const json& j) {
    auto src = alphabet_of(field(j, "source"));
    auto dst = alphabet_of(field(j, "target"));
    const auto& im = field(j, "images");
    std::vector<Word> images;
    if (im.is_object()) {
        for (std::size_t a = 0; a < src.size(); ++a) {
            std::string key(1, src[a]);
            if (!im.contains(key) || !im[key].is_string()) fail("missing image for letter " + key);
            images.push_back(im[key].get<std::string>());
        }
    } else if (im.is_array()) {
        for (const auto& w : im) {
            if (!w.is_string()) fail("images must be strings");
            images.push_back(w.get<std::string>());
        }
    } else {
        fail("images must be an object or an array");
    }
    return FreeMonoidHom(src, dst, std::move(images));
}

json to_json(const UQuotient& e) {
    return {{"codomain", to_json(e.codomain)},
            {"machine", to_json(e.machine)},
            {"val", e.val},
            {"provenance", to_string(e.provenance)}};
}

UQuotient uquotient_from_json(const json& j) {
    UQuotient e;
    e.codomain = lattice_from_json(field(j, "codomain"));
    const auto& m = field(j, "machine");
    if (!m.contains("finals")) {
        json copy = m;
        copy["finals"] = json::array();
        e.machine = dfa_from_json(copy);
    } else {
        e.machine = dfa_from_json(m);
    }
    e.val = index_list(field(j, "val"), "val");
    e.provenance = Provenance::External;
    if (j.contains("provenance")) {
        const auto& p = j["provenance"];
        if (!p.is_string()) fail("provenance must be a string");
        for (auto c : {Provenance::FromBimodule, Provenance::DualOfVariety, Provenance::External})
            if (to_string(c) == p.get<std::string>()) e.provenance = c;
    }
    return e;
}

json to_json(const LocalBasicVariety& v) {
    json langs = json::array();
    for (const auto& l : v.languages()) langs.push_back(to_regex(l));
    return {{"alphabet", v.alphabet().str()}, {"size", v.size()}, {"languages", langs}};
}

LocalBasicVariety variety_from_json(const json& j) {
    auto a = alphabet_of(field(j, "alphabet"));
    const auto& ls = field(j, "languages");
    if (!ls.is_array()) fail("languages must be an array");
    std::vector<RegularLanguage> langs;
    for (const auto& l : ls) langs.push_back(language_from_json(l, a));
    return LocalBasicVariety(a, std::move(langs));
}

CotheorySample cotheory_from_json(const json& j) {
    CotheorySample s;
    const auto& fams = field(j, "families");
    if (!fams.is_object()) fail("families must be an object");
    for (const auto& [key, family] : fams.items()) {
        auto a = alphabet_of(json(key));
        auto& out = s.families[key];
        if (!family.is_array()) fail("family must be an array of varieties");
        for (const auto& member : family) {
            if (!member.is_array()) fail("family member must be an array of languages");
            std::vector<RegularLanguage> langs;
            for (const auto& l : member) langs.push_back(language_from_json(l, a));
            out.push_back(std::move(langs));
        }
    }
    if (j.contains("homs"))
        for (const auto& g : j["homs"]) s.homs.push_back(monoid_hom_from_json(g));
    return s;
}

namespace {

ComplexMatrix matrix_from_json(const json& j, std::size_t k) {
    if (!j.is_array()) fail("unitary must be an array");
    std::vector<json> entries;
    bool nested = j.size() == k && k * k != k && std::all_of(j.begin(), j.end(), [&](const json& r) {
        return r.is_array() && r.size() == k;
    });
    if (k == 1 && j.size() == 1 && j.front().is_array() && j.front().size() == 1) nested = true;
    if (nested) {
        for (const auto& row : j) {
            if (!row.is_array() || row.size() != k) fail("unitary row has the wrong length");
            for (const auto& x : row) entries.push_back(x);
        }
    } else {
        for (const auto& x : j) entries.push_back(x);
    }
    if (entries.size() != k * k) fail("unitary must have k*k entries");
    ComplexMatrix m;
    for (const auto& x : entries) {
        if (x.is_number()) {
            m.emplace_back(x.get<double>(), 0.0);
        } else if (x.is_array() && x.size() == 2 && x[0].is_number() && x[1].is_number()) {
            m.emplace_back(x[0].get<double>(), x[1].get<double>());
        } else {
            fail("matrix entries must be [re, im] pairs");
        }
    }
    return m;
}

json matrix_to_json(const ComplexMatrix& m) {
    json out = json::array();
    for (const auto& z : m) out.push_back({z.real(), z.imag()});
    return out;
}

}  // namespace

Kwqfa qfa_from_json(const json& j) {
    Kwqfa q;
    q.states = as_index(field(j, "states"), "states");
    q.alphabet = alphabet_of(field(j, "alphabet"));
    q.init = j.contains("init") ? as_index(j["init"], "init") : 0;
    const auto& part = field(j, "partition");
    if (!part.is_string()) fail("partition must be a string of a, r, n");
    for (char c : part.get<std::string>()) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == 'a') q.partition.push_back(StateKind::Accept);
        else if (c == 'r') q.partition.push_back(StateKind::Reject);
        else if (c == 'n') q.partition.push_back(StateKind::NonHalting);
        else fail(std::string("unknown state tag '") + c + "'");
    }
    if (q.partition.size() != q.states) fail("partition must tag every state exactly once");
    const auto& u = field(j, "unitaries");
    if (!u.is_object()) fail("unitaries must be an object");
    auto get = [&](const std::string& key) {
        if (!u.contains(key)) fail("missing unitary for '" + key + "'");
        return matrix_from_json(u[key], q.states);
    };
    q.left_marker = get(std::string(kLeftMarker));
    q.right_marker = get(std::string(kRightMarker));
    for (std::size_t a = 0; a < q.alphabet.size(); ++a) q.letters.push_back(get(std::string(1, q.alphabet[a])));
    return q;
}

json to_json(const Kwqfa& q) {
    std::string part;
    for (auto k : q.partition) part += k == StateKind::Accept ? 'a' : k == StateKind::Reject ? 'r' : 'n';
    json u = json::object();
    u[std::string(kLeftMarker)] = matrix_to_json(q.left_marker);
    for (std::size_t a = 0; a < q.alphabet.size(); ++a) u[std::string(1, q.alphabet[a])] = matrix_to_json(q.letters[a]);
    u[std::string(kRightMarker)] = matrix_to_json(q.right_marker);
    return {{"states", q.states}, {"alphabet", q.alphabet.str()}, {"partition", part}, {"unitaries", u}, {"init", q.init}};
}

json to_json(const AxiomReport& r) {
    json v = json::array();
    for (const auto& x : r.violations) v.push_back({{"law", x.law}, {"witness", x.witness}});
    return {{"ok", r.ok()}, {"violations", v}};
}

json to_json(const UQuotientReport& r) {
    return {{"ok", r.ok()}, {"generating", r.generating}, {"liftings", r.liftings}, {"problems", r.problems}};
}

json to_json(const DualityReport& r) {
    return {{"ok", r.ok()}, {"sets_equal", r.sets_equal}, {"order_iso", r.order_iso}, {"problems", r.problems}};
}

json to_json(const CotheoryReport& r) {
    json v = json::array();
    for (const auto& x : r.violations) v.push_back({{"kind", x.kind}, {"detail", x.detail}});
    return {{"ok", r.ok()}, {"violations", v}};
}

json to_json(const QfaReport& r) {
    json res = json::object();
    for (const auto& [k, v] : r.residuals) res[k] = v;
    return {{"ok", r.ok}, {"max_residual", r.max_residual}, {"residuals", res}, {"problems", r.problems}};
}

json to_json(const SimTrace& t) {
    json steps = json::array();
    for (const auto& s : t.steps)
        steps.push_back({{"symbol", s.symbol}, {"p_acc", s.p_acc}, {"p_rej", s.p_rej}, {"continuing", s.continuing}});
    return {{"mode", to_string(t.mode)}, {"accept", t.accept()}, {"steps", steps}};
}

json to_json(const MarginReport& r) {
    return {{"n", r.n},
            {"words_in", r.words_in},
            {"words_out", r.words_out},
            {"min_accept_in", r.min_accept_in},
            {"max_accept_out", r.max_accept_out},
            {"bounded", r.bounded},
            {"p", r.p}};
}

namespace {

json probe_json(const ProbeEntry& e) {
    return {{"label", e.label}, {"cut", e.cut}, {"isolation", e.isolation}, {"consistent", e.consistent}};
}

}  // namespace

json to_json(const ProbeReport& r) {
    json d = json::array(), p = json::array();
    for (const auto& e : r.derivatives) d.push_back(probe_json(e));
    for (const auto& e : r.preimages) p.push_back(probe_json(e));
    return {{"n", r.n},           {"base", probe_json(r.base)}, {"derivatives", d},
            {"preimages", p},     {"consistent", r.consistent}, {"conclusive", ProbeReport::conclusive}};
}

json parse_text(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(e.what());
    }
}

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
}

}  // namespace varietas::io
