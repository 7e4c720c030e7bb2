#pragma once

#include "defo/semicosimplicial.hpp"

#include <string>
#include <vector>

namespace defo {

/// Negative cohomology of every level and the two vanishing patterns under which descent applies.
struct HypothesisReport {
    int lo = 0;                            // lowest degree present in any level (≤ −1)
    std::vector<std::vector<Index>> neg;   // neg[i][j - lo] = dim H^j(g_i) for lo ≤ j < 0
    bool strong = true;                    // H^j(g_i) = 0 for all i and j < 0
    bool weak = true;                      // H^{−n}(g_n), H^{1−n}(g_n) (n ≥ 2), H^{2−n}(g_n) (n ≥ 3) vanish
    std::vector<std::string> failures;     // offending (level, degree) pairs for the weak pattern

    Index dim(int level, int degree) const;
    bool applies() const { return strong || weak; }
};
HypothesisReport check_hypothesis(const ScDgla& g);

/// MC element of the totalisation over levels 0..1: x ∈ g_0, p(t) ∈ g_1^0[t]·t.
struct TwPairMC {
    Elem x;
    Elem p;
};
ValidationReport tw_pair_verify(const TotContext& c, const TwPairMC& e);
/// (x, p) ↦ (x, p(1)) with the zero level-2 witness.
TotDelObject phi1_obj(const TotContext& c, const TwPairMC& e);
/// (l, m) ↦ (l, m·t).
TwPairMC phi1_essential_lift(const TotContext& c, const TotDelObject& o);
/// Homotopy in the totalisation over levels 0..1 (one path variable) between the lifts of source and target.
TwElem phi1_full_lift(const TotPtr& ctx, const TotDelMorphism& f);
/// Level-0 gauge T(1) of a homotopy z(ξ) = e^{T(ξ)} * z(0).
Elem phi_mor_gauge(const TwElem& z);

/// Splits an MC element of the totalisation (levels 0..2 used) into (x, p, r).
TwTruncMC tw_mc_decompose(const TotContext& c, const TwElem& x);
/// (x, p, r) ↦ (x, p(1), u) with u solving the level-2 coherence.
TotDelObject phi2_obj(const TotContext& c, const TwTruncMC& e);
/// Homotopy z(ξ) between MC elements ↦ morphism with gauge T(1) between the images of the endpoints.
TotDelMorphism phi2_mor(const TotPtr& ctx, const TwElem& z);

/// Lift of a Tot(Del) object to (x, p, r), with the intermediate data kept for inspection.
struct Phi2Lift {
    TwTruncMC e;
    Elem conj_witness;  // ũ with (−α)•(du+[B,u])•α = dũ+[A,ũ]
    Elem edge_log;      // E(t,dt) = (tγ)•α•ψ(t) on the edge opposite the base vertex
    Elem surface_log;   // ρ(t,s,dt,ds) with e^ρ * A the level-2 element
};
Phi2Lift phi2_essential_lift(const TotContext& c, const TotDelObject& o);

struct DescentResult {
    bool refused = false;
    HypothesisReport hypothesis;
    TwTruncMC decomposed;
    TotDelObject object;
    ValidationReport check;
};
/// Truncates to levels 0..2, decomposes and applies Φ₂; refuses when neither vanishing pattern holds.
DescentResult phi_descend(const TotPtr& ctx, const TwElem& x);

/// Square-zero comparison of π₀: H¹(total) ⊗ m_A against iso classes of Tot(Del).
struct Pi0Comparison {
    Index coeff_dim = 0;
    Index h1_total = 0;     // over ℚ
    Index cocycles = 0;     // dim of {(l, m)} satisfying the object equations (over ℚ)
    Index boundaries = 0;   // dim of the gauge orbit directions
    bool iso = false;       // the map c ↦ (c_0, −c_1) induces an isomorphism
    Index tot_side() const { return h1_total * coeff_dim; }
    Index totdel_side() const { return (cocycles - boundaries) * coeff_dim; }
};
Pi0Comparison pi0_compare_square_zero(const ScDgla& g, const ArtinPtr& a);

/// Zero everywhere except g_2 = ℚ in degree −1.
ScDgla negative_counterexample();

}  // namespace defo
