#pragma once

#include "defo/mc.hpp"
#include "defo/random.hpp"

#include <map>
#include <memory>
#include <vector>

namespace defo {

/// Semicosimplicial dgLa g_0 ⇉ g_1 ⇛ … ⇛ g_N; faces[i][k] : g_{i−1} → g_i for 0 ≤ k ≤ i.
struct ScDgla {
    std::vector<DglaPtr> levels;
    std::vector<std::vector<DglaMap>> faces;  // faces[0] is empty

    int top() const { return static_cast<int>(levels.size()) - 1; }
    const DglaMap& face(int k, int i) const { return faces.at(static_cast<size_t>(i)).at(static_cast<size_t>(k)); }
    /// Composite coface g_p → g_n for the injection [p] → [n] with image `subset`.
    DglaMap coface(const std::vector<int>& subset, int n) const;
};

/// Semicosimplicial identities and dgLa-map axioms for every face.
ValidationReport validate_sc(const ScDgla& g);
/// Levels above i replaced by zero dgLas (the number of levels is kept).
ScDgla truncate(const ScDgla& g, int i);
/// g at every level 0..top with identity faces.
ScDgla constant_sc(const DglaPtr& l, int top);

/// Direct-sum total complex: degree n is ⊕_p g_p^{n−p} (blocks in increasing p),
/// D = d + (−1)^{q+1} Σ_k (−1)^k ∂_k on g_p^q.
struct TotalComplex {
    ChainComplexQ complex;
    std::vector<DglaPtr> levels;
    /// Offset of the g_p^{n−p} block inside degree n.
    Index block_offset(int n, int p) const;
};
TotalComplex total_complex(const ScDgla& g);

/// Synthetic Čech data: sections over strictly increasing multi-indices of length ≤ top+1,
/// restriction maps for every codimension-one inclusion I ⊂ J.
struct CoverModel {
    int opens = 0;
    int top = 0;
    std::map<std::vector<int>, DglaPtr> sections;
    std::map<std::pair<std::vector<int>, std::vector<int>>, DglaMap> restrictions;
};
std::vector<std::vector<int>> multi_indices(int opens, int p);
/// Every multi-index carries l; all restrictions are identities.
CoverModel uniform_cover(int opens, int top, const DglaPtr& l);
/// Levels ∏_{|I|=p+1} sections(I), faces (∂_k x)_J = ρ_{J∖j_k ⊂ J}(x_{J∖j_k}).
ScDgla cech_from_cover(const CoverModel& c);

/// Per-level coefficient contexts g_n ⊗ m_A (scalar coefficients when no algebra is given).
struct TotContext {
    ScDgla g;
    ArtinPtr artin;
    std::vector<NilpPtr> ctx;

    int top() const { return g.top(); }
    Elem face(int k, int i, const Elem& x) const { return apply_map(g.face(k, i), x, ctx[static_cast<size_t>(i)]); }
    Elem coface(const std::vector<int>& subset, int n, const Elem& x) const;
};
using TotPtr = std::shared_ptr<const TotContext>;
TotPtr make_tot_context(const ScDgla& g, const ArtinPtr& a);

/// Thom–Whitney element: at level n an element of g_n ⊗ Ω_n ⊗ Ω_extra ⊗ m_A, the first n
/// variables being simplex coordinates and the remaining `extra` ones path variables.
class TwElem {
public:
    TwElem() = default;
    TwElem(TotPtr ctx, int extra);

    const TotPtr& ctx() const { return ctx_; }
    int extra() const { return extra_; }
    int levels() const { return static_cast<int>(levels_.size()); }
    const Elem& at(int n) const { return levels_[static_cast<size_t>(n)]; }
    Elem& at(int n) { return levels_[static_cast<size_t>(n)]; }
    bool is_zero() const;

    TwElem operator+(const TwElem& o) const;
    TwElem operator-(const TwElem& o) const;
    TwElem operator-() const;
    friend TwElem operator*(const Rat& c, const TwElem& x);
    bool operator==(const TwElem& o) const { return levels_ == o.levels_; }
    bool operator!=(const TwElem& o) const { return !(*this == o); }

private:
    TotPtr ctx_;
    int extra_ = 0;
    std::vector<Elem> levels_;
};

TwElem bracket(const TwElem& x, const TwElem& y);
TwElem differential(const TwElem& x);
int nilpotency(const TwElem& x);
int path_vars(const TwElem& x);
TwElem add_path_vars(const TwElem& x, int k);
TwElem mul_path_var(const TwElem& x, int k);
TwElem subst_path_var(const TwElem& x, int k, const Rat& c);
/// Multiplies level n by the form f(n) (in the simplex variables).
TwElem form_mul(const std::vector<Form>& f, const TwElem& x);

/// Face compatibility δ^k x_n = ∂_k x_{n−1}.
ValidationReport tw_compatible(const TwElem& x);

/// ∫_{Δ^p} of the top-form part at every level p, placed in total degree `deg`.
/// Coordinates of the result are (position in degree deg) * coeff_dim + coefficient.
Vec integration_map(const TwElem& x, const TotalComplex& t, int deg);
/// W(z)_n = ε_p Σ_{|I|=p+1} ∂_I z ⊗ ω_I for z ∈ g_p, ε_p the sign with ∫_{Δ^p} ω_{[p]} = ε_p.
TwElem whitney_map(const TotPtr& ctx, const TotalComplex& t, const Vec& z, int deg);

/// Power sums Σ_i t_i^k over all barycentric coordinates of Δ_n, for n = 0..top (compatible family).
std::vector<Form> power_sum_family(int k, int top, int extra = 0);
/// Random element of total degree `deg` built from Whitney images times compatible forms.
TwElem random_tw_elem(const TotPtr& ctx, const TotalComplex& t, int deg, Rng& rng, int maxdeg = 2);
/// e^a * W(c) with c a total-complex 1-cocycle over the top power of m_A.
TwElem random_tw_mc(const TotPtr& ctx, const TotalComplex& t, Rng& rng);

/// MC element of Tot(g^{Δ[0,2]}) in decomposed form: x ∈ g_0, p(t) ∈ g_1[t], r(t,s,ds) ∈ g_2[t,s,ds].
struct TwTruncMC {
    Elem x;
    Elem p;
    Elem r;
};
TwTruncMC tw_mc_assemble(const TotContext& c, const Elem& x, const Elem& p, const Elem& r);
/// Checks the four face conditions; failures are reported by index.
ValidationReport tw_mc_verify(const TotContext& c, const TwTruncMC& e);
/// Levels x, e^{p}*∂_{0,1}x, e^{r}*∂_{0,2}∂_{0,1}x (zero above level 2).
TwElem tw_mc_element(const TotPtr& ctx, const TwTruncMC& e);

/// Object of the total Deligne groupoid over levels 0..2.
struct TotDelObject {
    Elem l;
    Elem m;
    Elem u;
};
struct TotDelMorphism {
    Elem a;
    Elem b;
    TotDelObject source;
    TotDelObject target;
};
ValidationReport totdel_verify(const TotContext& c, const TotDelObject& o);
ValidationReport totdel_verify(const TotContext& c, const TotDelMorphism& f);
/// Level-2 element ∂_{0,2}m • (−∂_{1,2}m) • ∂_{2,2}m.
Elem totdel_cocycle(const TotContext& c, const Elem& m);
/// Level-1 element (−m_0) • (−∂_{1,1}a) • m_1 • ∂_{0,1}a.
Elem totdel_morphism_loop(const TotContext& c, const Elem& a, const Elem& m0, const Elem& m1);
TotDelMorphism totdel_identity(const TotContext& c, const TotDelObject& o);
/// f ∘ g with a fresh witness from a linear solve.
TotDelMorphism totdel_compose(const TotContext& c, const TotDelMorphism& f, const TotDelMorphism& g);
TotDelMorphism totdel_inverse(const TotContext& c, const TotDelMorphism& f);
/// Same morphism in Tot(Del): the level-0 gauges agree up to the irrelevant stabiliser of the source.
bool totdel_morphism_equal(const TotDelMorphism& f, const TotDelMorphism& g);

}  // namespace defo
