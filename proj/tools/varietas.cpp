#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "varietas/bimodule.hpp"
#include "varietas/duality.hpp"
#include "varietas/error.hpp"
#include "varietas/io.hpp"
#include "varietas/lang.hpp"
#include "varietas/qfa.hpp"
#include "varietas/recognition.hpp"
#include "varietas/suites/criteria.hpp"
#include "varietas/varieties.hpp"

using namespace varietas;
using io::json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Globals {
    bool json = false;
    bool dot = false;
    std::string alphabet;
};

Globals g;

Alphabet alphabet_flag() { return g.alphabet.empty() ? Alphabet{} : Alphabet(g.alphabet); }

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool is_file(const std::string& s) {
    std::error_code ec;
    return std::filesystem::is_regular_file(s, ec);
}

// A regex, or a JSON file holding a regex string or a DFA object.
RegularLanguage load_language(const std::string& spec) {
    if (spec.empty()) throw UsageError("empty language");
    if (is_file(spec)) return io::language_from_json(io::read_file(spec), alphabet_flag());
    return parse_regex(spec, alphabet_flag());
}

std::string summary(const RegularLanguage& l) { return to_regex(l) + " (" + std::to_string(l.num_states()) + " states)"; }

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

void print_languages(const std::vector<RegularLanguage>& langs) {
    for (std::size_t i = 0; i < langs.size(); ++i) {
        if (g.dot)
            std::cout << to_dot(langs[i].dfa(), "L" + std::to_string(i)) << "\n";
        else
            std::cout << "  " << summary(langs[i]) << "\n";
    }
}

int cmd_syntactic(const std::string& spec) {
    auto l = load_language(spec);
    auto t = transition_monoid(l);
    if (g.json) {
        print({{"language", io::to_json(l)}, {"monoid", io::to_json(t, l.alphabet())}});
    } else if (g.dot) {
        std::cout << to_dot(l.dfa()) << "\n";
    } else {
        std::cout << "language " << summary(l) << "\n";
        std::cout << "syntactic monoid size " << t.monoid.size() << "\n";
        for (std::size_t a = 0; a < l.alphabet().size(); ++a)
            std::cout << "  " << l.alphabet()[a] << " -> m" << t.letter_map[a] << "\n";
        for (std::size_t m = 0; m < t.monoid.size(); ++m) {
            const auto& w = t.representatives[m];
            std::cout << "  m" << m << " = [" << (w.empty() ? "ε" : w) << "]\n";
        }
    }
    return kPass;
}

int cmd_closure(const std::string& spec) {
    auto l = load_language(spec);
    auto v = derivative_closure(l);
    if (g.json) {
        print(io::to_json(v));
    } else {
        std::cout << "derivative closure size " << v.size() << "\n";
        print_languages(v.languages());
    }
    return kPass;
}

LocalBasicVariety load_variety(const std::string& arg) {
    if (is_file(arg)) return io::variety_from_json(io::read_file(arg));
    return derivative_closure(load_language(arg));
}

int cmd_dualize(const std::string& arg) {
    auto v = load_variety(arg);
    auto e = dual_of_variety(v);
    if (g.json) {
        print(io::to_json(e));
    } else if (g.dot) {
        std::cout << to_dot(e.machine, "dual") << "\n";
    } else {
        std::cout << "variety size " << v.size() << "\n";
        std::cout << "dual lattice size " << e.codomain.size() << "\n";
        std::cout << "machine states " << e.machine.states << "\n";
    }
    return kPass;
}

int cmd_verify_duality(const std::string& arg) {
    auto v = load_variety(arg);
    auto r = verify_local_duality(v);
    if (g.json) {
        print(io::to_json(r));
    } else {
        std::cout << "sets equal " << (r.sets_equal ? "yes" : "no") << "\n";
        std::cout << "order iso " << (r.order_iso ? "yes" : "no") << "\n";
        for (const auto& p : r.problems) std::cout << "  " << p << "\n";
        std::cout << (r.ok() ? "OK" : "FAIL") << "\n";
    }
    return r.ok() ? kPass : kFail;
}

int cmd_check(const std::string& path) {
    auto b = io::bimodule_from_json(io::read_file(path));
    auto r = check_axioms(b);
    bool laws = r.ok();
    json props;
    if (laws)
        props = {{"star_generated", is_star_generated(b)},
                 {"star_embedded", is_star_embedded(b)},
                 {"reduced", is_reduced(b)}};
    if (g.json) {
        auto j = io::to_json(r);
        if (laws) j["properties"] = props;
        print(j);
    } else {
        std::cout << "monoid size " << b.monoid_size() << ", lattice size " << b.lattice_size() << "\n";
        for (const auto& v : r.violations) std::cout << "violation " << v.law << ": " << v.witness << "\n";
        if (laws)
            for (const auto& [k, val] : props.items()) std::cout << k << " " << (val.get<bool>() ? "yes" : "no") << "\n";
        std::cout << (laws ? "OK" : "FAIL") << "\n";
    }
    return laws ? kPass : kFail;
}

int cmd_reduce(const std::string& path) {
    auto b = io::bimodule_from_json(io::read_file(path));
    auto r = check_axioms(b);
    if (!r.ok()) {
        for (const auto& v : r.violations) std::cerr << "violation " << v.law << ": " << v.witness << "\n";
        return kFail;
    }
    auto q = reduce(b);
    if (g.json) {
        print({{"bimodule", io::to_json(q.bimodule)}, {"star", q.hom.star}, {"diamond", q.hom.diamond}});
    } else {
        std::cout << "monoid " << b.monoid_size() << " -> " << q.bimodule.monoid_size() << "\n";
        std::cout << "lattice " << b.lattice_size() << " -> " << q.bimodule.lattice_size() << "\n";
        std::cout << "reduced " << (is_reduced(q.bimodule) ? "yes" : "no") << "\n";
    }
    return kPass;
}

int cmd_rec(const std::string& path) {
    auto j = io::read_file(path);
    std::vector<RegularLanguage> langs;
    std::optional<UQuotientReport> report;
    if (j.is_object() && j.contains("val")) {
        auto e = io::uquotient_from_json(j);
        report = validate_uquotient(e);
        if (report->ok()) langs = rec_of_uquotient(e);
    } else {
        auto h = io::free_hom_from_json(j);
        langs = recognized_languages(h);
    }
    bool ok = !report || report->ok();
    if (g.json) {
        json out;
        if (report) out["uquotient"] = io::to_json(*report);
        out["languages"] = json::array();
        for (const auto& l : langs) out["languages"].push_back(io::to_json(l));
        print(out);
    } else {
        if (report)
            for (const auto& p : report->problems) std::cout << "problem: " << p << "\n";
        if (ok) {
            std::cout << "recognized languages " << langs.size() << "\n";
            print_languages(langs);
        } else {
            std::cout << "FAIL\n";
        }
    }
    return ok ? kPass : kFail;
}

int cmd_pipeline(const std::string& spec) {
    auto l = load_language(spec);
    auto v = derivative_closure(l);
    auto e = dual_of_variety(v);
    auto h = minimal_recognizer(l);
    auto duality = verify_local_duality(v);
    auto back = rec_of_uquotient(e);
    bool round_trip = back == v.languages();
    bool recognized = recognizes(h, l);
    bool reduced = is_reduced(h.target) && is_star_generated(h.target);
    bool ok = duality.ok() && round_trip && recognized;
    if (g.json) {
        print({{"language", io::to_json(l)},
               {"closure_size", v.size()},
               {"dual_size", e.codomain.size()},
               {"recognizer", {{"monoid", h.target.monoid_size()},
                               {"lattice", h.target.lattice_size()},
                               {"recognizes", recognized},
                               {"star_generated_reduced", reduced}}},
               {"duality", io::to_json(duality)},
               {"round_trip", round_trip},
               {"ok", ok}});
    } else {
        std::cout << "language " << summary(l) << "\n";
        std::cout << "closure size " << v.size() << "\n";
        std::cout << "D size " << e.codomain.size() << "\n";
        std::cout << "recognizer (" << h.target.monoid_size() << ", " << h.target.lattice_size() << ") recognizes "
                  << (recognized ? "yes" : "no") << "\n";
        std::cout << "rec round trip " << (round_trip ? "OK" : "FAIL") << "\n";
        for (const auto& p : duality.problems) std::cout << "  " << p << "\n";
        std::cout << (ok ? "OK" : "FAIL") << "\n";
    }
    return ok ? kPass : kFail;
}

int cmd_check_cotheory(const std::string& path) {
    auto r = check_cotheory(io::cotheory_from_json(io::read_file(path)));
    if (g.json) {
        print(io::to_json(r));
    } else {
        for (const auto& v : r.violations) std::cout << v.kind << ": " << v.detail << "\n";
        std::cout << (r.ok() ? "OK" : "FAIL") << "\n";
    }
    return r.ok() ? kPass : kFail;
}

// A QFA JSON file, "parity", or "rotation:<angle in radians>".
Kwqfa load_qfa(const std::string& spec) {
    if (spec == "parity") return parity_machine();
    if (spec.rfind("rotation:", 0) == 0) {
        std::size_t used = 0;
        double angle = 0;
        try {
            angle = std::stod(spec.substr(9), &used);
        } catch (const std::exception&) {
            throw UsageError("bad rotation angle: " + spec);
        }
        if (used != spec.size() - 9 || !std::isfinite(angle)) throw UsageError("bad rotation angle: " + spec);
        return rotation_machine(angle);
    }
    if (!is_file(spec)) throw UsageError("no such QFA file: " + spec);
    return io::qfa_from_json(io::read_file(spec));
}

int cmd_qfa_validate(const std::string& spec) {
    auto r = validate(load_qfa(spec));
    if (g.json) {
        print(io::to_json(r));
    } else {
        for (const auto& p : r.problems) std::cout << "problem: " << p << "\n";
        std::cout << "max residual " << r.max_residual << "\n" << (r.ok ? "OK" : "FAIL") << "\n";
    }
    return r.ok ? kPass : kFail;
}

int cmd_qfa_run(const std::string& spec, const std::string& word, const std::string& mode) {
    auto q = load_qfa(spec);
    auto r = validate(q);
    if (!r.ok) {
        for (const auto& p : r.problems) std::cerr << "problem: " << p << "\n";
        return kFail;
    }
    auto t = simulate(q, word, parse_measurement(mode));
    if (g.json) {
        print(io::to_json(t));
    } else {
        std::cout.precision(12);
        for (const auto& s : t.steps)
            std::cout << s.symbol << "  acc " << s.p_acc << "  rej " << s.p_rej << "  cont " << s.continuing << "\n";
        std::cout << "p_acc " << t.accept() << "\n";
    }
    return kPass;
}

int cmd_qfa_margin(const std::string& spec, const std::string& lang, std::size_t n, const std::string& mode) {
    auto q = load_qfa(spec);
    auto r = validate(q);
    if (!r.ok) {
        for (const auto& p : r.problems) std::cerr << "problem: " << p << "\n";
        return kFail;
    }
    auto l = is_file(lang) ? io::language_from_json(io::read_file(lang), q.alphabet) : parse_regex(lang, q.alphabet);
    auto m = margin_report(q, l, n, parse_measurement(mode));
    if (g.json) {
        print(io::to_json(m));
    } else {
        std::cout.precision(12);
        std::cout << "n " << m.n << ", words in " << m.words_in << ", out " << m.words_out << "\n";
        std::cout << "min accept in " << m.min_accept_in << "\n";
        std::cout << "max accept out " << m.max_accept_out << "\n";
        if (m.bounded)
            std::cout << "bounded error, p " << m.p << "\n";
        else
            std::cout << "not bounded at this length\n";
    }
    return kPass;
}

int cmd_verify(std::uint64_t seed, const std::vector<std::string>& suites_wanted,
               const std::vector<std::string>& fixtures) {
    json out = {{"seed", seed}, {"criteria", json::array()}, {"fixtures", json::array()}};
    bool all = true;
    for (const auto& key : suites_wanted) {
        bool known = false;
        for (const auto& c : suites::criteria()) known |= key == c.key || key == std::to_string(c.id);
        if (!known) throw UsageError("unknown suite: " + key);
    }
    for (const auto& c : suites::criteria()) {
        if (!suites_wanted.empty()) {
            bool wanted = false;
            for (const auto& key : suites_wanted) wanted |= key == c.key || key == std::to_string(c.id);
            if (!wanted) continue;
        }
        auto r = suites::run(c, seed);
        all &= r.pass;
        out["criteria"].push_back(
            {{"id", r.id}, {"key", r.key}, {"pass", r.pass}, {"seconds", r.seconds}, {"detail", r.detail}});
        if (!g.json)
            std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.key << "  " << r.detail << "\n";
    }
    for (const auto& path : fixtures) {
        auto r = check_axioms(io::bimodule_from_json(io::read_file(path)));
        all &= r.ok();
        out["fixtures"].push_back({{"path", path}, {"pass", r.ok()}, {"violations", io::to_json(r)["violations"]}});
        if (!g.json) {
            std::cout << (r.ok() ? "[PASS] " : "[FAIL] ") << "fixture " << path;
            if (!r.ok()) std::cout << "  " << r.violations.front().law << ": " << r.violations.front().witness;
            std::cout << "\n";
        }
    }
    out["pass"] = all;
    if (g.json) print(out);
    return all ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"varietas: regular languages, lattice bimodules and their duals"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", g.json, "machine-readable output");
    app.add_flag("--dot", g.dot, "Graphviz output where a diagram exists");
    app.add_option("--alphabet", g.alphabet, "alphabet for regex input");

    int code = kPass;
    std::string arg, word, lang, mode = "subspace";
    std::size_t n = 6;
    std::uint64_t seed = 0;
    std::vector<std::string> suite_keys, fixtures;

    auto lang_cmd = [&](const char* name, const char* help, int (*fn)(const std::string&), const char* what) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option(what, arg, "input")->required();
        sub->callback([&, fn] { code = fn(arg); });
    };
    lang_cmd("syntactic", "syntactic monoid of a language", cmd_syntactic, "language");
    lang_cmd("closure", "derivative closure of a language", cmd_closure, "language");
    lang_cmd("dualize", "dual U-quotient of a variety (JSON file or language)", cmd_dualize, "variety");
    lang_cmd("verify-duality", "check rec(dual(V)) = V", cmd_verify_duality, "variety");
    lang_cmd("check", "check the bimodule laws", cmd_check, "bimodule");
    lang_cmd("reduce", "reduce a bimodule", cmd_reduce, "bimodule");
    lang_cmd("rec", "languages recognized by a free hom or U-quotient", cmd_rec, "file");
    lang_cmd("pipeline", "closure, dual, recognizer and round trip", cmd_pipeline, "language");
    lang_cmd("check-cotheory", "check a basic variety sample", cmd_check_cotheory, "file");

    auto* qfa = app.add_subcommand("qfa", "Kondacs-Watrous automata");
    qfa->require_subcommand(1);
    qfa->fallthrough();
    auto mode_opt = [&](CLI::App* s) {
        s->add_option("--mode", mode, "subspace or basis")->check(CLI::IsMember({"subspace", "basis"}));
    };
    auto* run = qfa->add_subcommand("run", "simulate one word");
    run->add_option("machine", arg, "QFA file, parity or rotation:<angle>")->required();
    run->add_option("word", word, "input word");
    mode_opt(run);
    run->callback([&] { code = cmd_qfa_run(arg, word, mode); });
    auto* margin = qfa->add_subcommand("margin", "acceptance margin against a language");
    margin->add_option("machine", arg, "QFA file, parity or rotation:<angle>")->required();
    margin->add_option("language", lang, "regex or DFA file")->required();
    margin->add_option("-n,--length", n, "maximum word length")->capture_default_str();
    mode_opt(margin);
    margin->callback([&] { code = cmd_qfa_margin(arg, lang, n, mode); });
    auto* val = qfa->add_subcommand("validate", "unitarity and partition checks");
    val->add_option("machine", arg, "QFA file, parity or rotation:<angle>")->required();
    val->callback([&] { code = cmd_qfa_validate(arg); });

    auto* verify = app.add_subcommand("verify", "run the verification suites");
    verify->add_option("--seed", seed, "corpus seed")->capture_default_str();
    verify->add_option("--suite", suite_keys, "suite key or number (repeatable)");
    verify->add_option("--bimodule", fixtures, "also check the laws of a bimodule file (repeatable)");
    verify->callback([&] { code = cmd_verify(seed, suite_keys, fixtures); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const varietas::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return code;
}
