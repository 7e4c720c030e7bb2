#pragma once

#include "defo/builtin.hpp"
#include "defo/defpipe.hpp"
#include "defo/descent.hpp"
#include "defo/semicosimplicial.hpp"

#include <string>
#include <vector>

namespace defo {

/// Scaling automorphism of sl₂-type algebras: e ↦ 2e, f ↦ f/2, h ↦ h (to the given power).
DglaMap sl2_scaling(const DglaPtr& l, int power);
/// Cover whose restriction I ⊂ J is the scaling to the power min I − min J: isomorphic to the
/// uniform cover but with non-identity faces.
CoverModel scaled_cover(int opens, int top, const DglaPtr& l);
/// One basis vector in the given degree.
DglaPtr line_dgla(int degree);
/// Two opens whose overlap has two components, sections ℚ; `sign` twists one gluing.
ScDgla circle_sc(int sign);

/// Named semicosimplicial dgLas: constant_sl2_dg, uniform_end_pair, scaled_sl2, scaled_sl2_dg,
/// uniform_abelian, scaled_sl2_dg_3, circle, twisted_circle, counterexample.
ScDgla builtin_sc(const std::string& name);
std::vector<std::string> builtin_sc_names();
/// Names of the diagrams satisfying the strong vanishing hypothesis with at least three levels.
std::vector<std::string> strong_sc_names();

/// Named A₂ data: modules S1, S2, P1, P2 and the canonical morphisms.
struct A2Case {
    std::string name;
    FinMod f, g;
    Mat alpha;
};
/// zero (S1 → S2, α = 0), identity (S1 → S1), simple_to_projective (S2 ⊂ P1).
std::vector<A2Case> a2_canonical_cases(const AlgPtr& a);
FinMod a2_module(const AlgPtr& a, const std::string& name);

}  // namespace defo
