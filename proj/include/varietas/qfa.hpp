#pragma once

// Measure-many quantum finite automata with end-markers.

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "varietas/lang.hpp"

namespace varietas {

enum class StateKind { Accept, Reject, NonHalting };
enum class Measurement { Subspace, Basis };

std::string to_string(Measurement m);
/// "subspace" or "basis"; throws ParseError otherwise.
Measurement parse_measurement(std::string_view s);

/// Row-major k x k.
using ComplexMatrix = std::vector<std::complex<double>>;

inline constexpr double kQfaTolerance = 1e-9;
inline constexpr std::string_view kLeftMarker = "κ";
inline constexpr std::string_view kRightMarker = "$";

struct Kwqfa {
    std::size_t states = 0;
    Alphabet alphabet;
    ComplexMatrix left_marker;
    ComplexMatrix right_marker;
    std::vector<ComplexMatrix> letters;  // indexed by alphabet position
    std::size_t init = 0;
    std::vector<StateKind> partition;
};

struct QfaReport {
    bool ok = false;
    double max_residual = 0;  // max over symbols of max |(T^dagger T - I)_ij|
    std::vector<std::pair<std::string, double>> residuals;
    std::vector<std::string> problems;
};

QfaReport validate(const Kwqfa& q);

struct SimStep {
    std::string symbol;
    double p_acc = 0;
    double p_rej = 0;
    double continuing = 0;
};

struct SimTrace {
    Measurement mode = Measurement::Subspace;
    std::vector<SimStep> steps;  // one per symbol of the marked word
    double accept() const { return steps.empty() ? 0.0 : steps.back().p_acc; }
};

/// Runs the marked word; throws AlphabetMismatch on foreign letters and StructuralError on
/// malformed shapes.
SimTrace simulate(const Kwqfa& q, std::string_view w, Measurement mode = Measurement::Subspace);
double accept_probability(const Kwqfa& q, std::string_view w, Measurement mode = Measurement::Subspace);

/// Longest word length margin_report accepts.
inline constexpr std::size_t kMaxMarginLength = 16;

struct MarginReport {
    std::size_t n = 0;
    std::size_t words_in = 0;
    std::size_t words_out = 0;
    double min_accept_in = 1.0;   // over L, 1 when empty
    double max_accept_out = 0.0;  // over the complement, 0 when empty
    bool bounded = false;         // min_accept_in > 1/2 and max_accept_out < 1/2
    double p = 0.0;               // min(min_accept_in, 1 - max_accept_out)
};

/// Exhaustive over all words of length <= n. Throws AlphabetMismatch and BoundExceeded.
MarginReport margin_report(const Kwqfa& q, const RegularLanguage& lang, std::size_t n,
                           Measurement mode = Measurement::Subspace);

struct ProbeEntry {
    std::string label;
    std::vector<Word> cut;    // words of the probed domain accepted with probability > 1/2
    double isolation = 0;     // min |p - 1/2| over the domain
    bool consistent = false;  // isolation > tolerance
};

/// Evidence only: a cut far from 1/2 everywhere on a finite domain says nothing about longer words.
struct ProbeReport {
    std::size_t n = 0;
    ProbeEntry base;
    std::vector<ProbeEntry> derivatives;  // x in alphabet^{<=n}, probability of v x w
    std::vector<ProbeEntry> preimages;    // x in source^{<=n}, probability of g(x)
    bool consistent = false;
    static constexpr bool conclusive = false;
};

ProbeReport basic_variety_probe(const Kwqfa& q, const std::vector<Context>& contexts,
                                const std::vector<FreeMonoidHom>& homs, std::size_t n,
                                Measurement mode = Measurement::Subspace);

/// Two states per automaton state: a non-halting copy and a halting twin tagged by finality.
/// Letters permute the non-halting copies; the right marker swaps each state with its twin.
/// Throws InvalidArgument unless every letter acts as a permutation.
Kwqfa from_permutation_dfa(const Dfa& dfa);

/// Two states q0 (non-halting, initial) and q1 (accepting); the letter rotates by `angle`.
Kwqfa rotation_machine(double angle);
/// Accepts words of even length over {a} with certainty.
Kwqfa parity_machine();

}  // namespace varietas
