#pragma once

// Finite local basic varieties versus U-quotients with finite codomain.

#include <optional>
#include <string>
#include <vector>

#include "varietas/order.hpp"
#include "varietas/recognition.hpp"
#include "varietas/varieties.hpp"

namespace varietas {

/// Up-sets of (V, inclusion); bit i stands for V.languages()[i]. At most 64 languages.
SetLattice dual_lattice(const LocalBasicVariety& v);

/// Codomain dual_lattice(V); machine the reachable synchronized product of the member
/// automata; the value of w is { L in V : w in L }.
UQuotient dual_of_variety(const LocalBasicVariety& v);

struct DualityReport {
    bool sets_equal = false;  // rec(dual(V)) = V
    bool order_iso = false;   // c <= c' in the codomain iff L_c' is included in L_c, bijectively
    std::vector<std::string> problems;
    bool ok() const noexcept { return sets_equal && order_iso; }
};

DualityReport verify_local_duality(const LocalBasicVariety& v);

struct HomSquare {
    LocalBasicVariety target;             // variety generated by { g^-1 L : L in V }
    std::optional<LatticeMorphism> lift;  // dual(target) codomain -> dual(V) codomain
    bool commutes = false;                // lift(value_target(w)) = value_V(g(w)) on all reachable pairs
};

HomSquare dual_of_hom_square(const FreeMonoidHom& g, const LocalBasicVariety& v);

}  // namespace varietas
