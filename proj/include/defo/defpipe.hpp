#pragma once

#include "defo/builtin.hpp"
#include "defo/random.hpp"
#include "defo/semicosimplicial.hpp"

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace defo {

/// Finite-dimensional unital associative Q-algebra given by structure constants.
/// Path algebras additionally record their quiver; their basis is the set of paths.
struct FinAlg {
    std::vector<std::string> names;
    std::vector<Mat> left;  // left[i] · v = (basis_i) · v on coordinate vectors
    Vec unit;
    std::vector<Vec> idempotents;  // complete set of primitive orthogonal idempotents
    Mat radical;                   // columns span the Jacobson radical

    int vertices = 0;
    std::vector<std::pair<int, int>> arrows;  // (tail, head) per arrow

    Index dim() const { return static_cast<Index>(names.size()); }
    Vec mul(const Vec& a, const Vec& b) const;
    Vec basis_vec(Index i) const;
};
using AlgPtr = std::shared_ptr<const FinAlg>;

ValidationReport validate_alg(const FinAlg& a);
/// Path algebra of an acyclic quiver with vertices 0..n−1. Paths compose like maps:
/// for arrows a : i → j, b : j → k the product b·a is the path i → k.
AlgPtr path_algebra(int vertices, const std::vector<std::pair<int, int>>& arrows);
/// The A₂ quiver 0 → 1 (vertex 0 plays S₁/P₁, vertex 1 plays S₂/P₂).
AlgPtr a2_algebra();

/// Left module; act[i] is the action of algebra basis element i.
struct FinMod {
    AlgPtr alg;
    Index dim = 0;
    std::vector<Mat> act;

    /// Action of an arbitrary algebra element.
    Mat action(const Vec& a) const;
};

ValidationReport validate_mod(const FinMod& m);
bool same_module(const FinMod& a, const FinMod& b);
FinMod zero_module(const AlgPtr& a);
/// Quiver representation: a space per vertex and a matrix per arrow (head dim × tail dim).
FinMod representation(const AlgPtr& a, const std::vector<Index>& dims, const std::vector<Mat>& arrow_maps);
/// Indecomposable projective A·e_i in the basis of paths starting at vertex i.
FinMod proj_module(const AlgPtr& a, int vertex);
/// Simple top of A·e_i.
FinMod simple_module(const AlgPtr& a, int vertex);
FinMod direct_sum(const FinMod& a, const FinMod& b);
/// Submodule on the columns of s (closure is checked).
FinMod submodule(const FinMod& m, const Mat& s);
/// Smallest submodule containing the columns of v.
Subspace generated_submodule(const FinMod& m, const Mat& v);
bool is_module_map(const FinMod& src, const FinMod& tgt, const Mat& f);
/// Hom_A(src, tgt) as a subspace of column-major vectorised tgt.dim × src.dim matrices.
Subspace hom_space(const FinMod& src, const FinMod& tgt);
Mat unvec(const Vec& v, Index rows, Index cols);

/// ⊕_j A·e_{types[j]} together with a module map onto (a quotient of) some module.
struct ProjMap {
    FinMod source;
    std::vector<int> types;
    Mat map;
};
FinMod proj_sum(const AlgPtr& a, const std::vector<int>& types);
/// Module map ⊕ A·e_{types[j]} → m sending the j-th generator to gens.col(j) ∈ e_{types[j]} m.
Mat map_from_generators(const FinMod& m, const std::vector<int>& types, const Mat& gens);
/// Minimal projective P with a map into the submodule z of m whose image together with b spans z.
ProjMap cover_modulo(const FinMod& m, const Subspace& z, const Subspace& b);
ProjMap projective_cover(const FinMod& m);

/// Bounded complex E^lo → … → E^0 of modules. `proj[k]` lists the summand types of a
/// term that is a direct sum of indecomposable projectives in standard coordinates.
struct BddComplex {
    AlgPtr alg;
    int lo = 0;
    std::vector<FinMod> terms;  // degree lo + k
    std::vector<Mat> d;         // d[k] : terms[k] → terms[k + 1]
    std::vector<std::vector<int>> proj;
    bool projective = false;

    FinMod at(int deg) const;
    /// Differential out of degree deg (zero-shaped outside the range).
    Mat diff(int deg) const;
    Index dim(int deg) const;
    Index total_dim() const;
    /// Offset of degree deg inside the total space.
    Index offset(int deg) const;
    ChainComplexQ complex() const;
    /// Block-diagonal action of an algebra basis element on the total space.
    Mat total_action(Index basis) const;
};

ValidationReport validate_complex(const BddComplex& c);
BddComplex single_term(const FinMod& m, int deg = 0);
BddComplex zero_complex(const AlgPtr& a);
/// Degreewise E ⊕ F.
BddComplex direct_sum(const BddComplex& e, const BddComplex& f);

/// Degreewise module maps source^k → target^k.
struct ModChainMap {
    BddComplex source, target;
    std::vector<Mat> maps;  // by degree from lo = min(source.lo, target.lo)
    int lo = 0;

    Mat at(int deg) const;
    /// Block matrix on total spaces (target total × source total).
    Mat total() const;
    ChainMapQ linear() const;
};

ValidationReport validate_chain_map(const ModChainMap& f);
ModChainMap make_mod_map(const BddComplex& s, const BddComplex& t, const std::vector<Mat>& maps_from_lo, int lo);
ModChainMap identity_chain_map(const BddComplex& c);
ModChainMap zero_chain_map(const BddComplex& s, const BddComplex& t);
ModChainMap compose(const ModChainMap& f, const ModChainMap& g);  // f after g
/// cone(f)^k = source^{k+1} ⊕ target^k, d(e, p) = (−de, f e + dp).
BddComplex cone(const ModChainMap& f);

/// A bounded complex with augmentation E^0 → M.
struct Resolution {
    BddComplex cx;
    FinMod target;
    Mat aug;

    int length() const { return -cx.lo; }
};

/// Terms projective, aug a surjective module map, and E → M → 0 exact.
ValidationReport validate_resolution(const Resolution& r);
/// Minimal projective resolution by iterated projective covers; throws past n_max.
Resolution projective_resolution(const FinMod& m, int n_max = 8);

/// Sub-dgLa of the vector-space End of a complex cut out by A-linearity and by
/// extra blockwise conditions.
struct ModEnd {
    BddComplex complex;
    std::shared_ptr<const EndDgla> ambient;
    SubDgla sub;
    Mat left_inv;  // left inverse of sub.inclusion.m

    const DglaPtr& dgla() const { return sub.sub; }
    Mat to_matrix(const Vec& v) const;
    /// Coordinates of a total-space matrix; throws if it is not in the sub-dgLa.
    Vec from_matrix(const Mat& m) const;
};

/// left[j] ∘ φ ∘ right[i] = 0 on every block Hom(k^i, k^j); matrices indexed by degree − k.lo.
struct KillCondition {
    std::vector<Mat> left, right;
};
ModEnd module_end(const BddComplex& c, const std::vector<KillCondition>& kill = {}, std::shared_ptr<const EndDgla> ambient = nullptr,
                  const std::string& prefix = "");
/// End-dgLa of a complex of modules: ⊕_i Hom_A(k^i, k^{i+p}) in degree p.
ModEnd end_dgla(const BddComplex& k);
/// Endomorphisms of amb carrying the image of the degreewise injective chain map incl into itself.
ModEnd sub_preserving_dgla(const ModChainMap& incl);
/// φ(im incl) ⊂ im incl.
KillCondition preserve_condition(const ModChainMap& incl);

struct Graph {
    BddComplex graph;
    ModChainMap inclusion;  // graph → source ⊕ target, x ↦ (x, f x)
};
Graph graph_complex(const ModChainMap& f);

struct MorphismLift {
    Resolution res_f;
    Resolution res_g;
    ModChainMap lift;  // res_f.cx → res_g.cx over alpha
};
/// Augmented squares: ε_G ∘ lift⁰ = α ∘ ε_F and lift is a chain map.
ValidationReport validate_lift(const MorphismLift& l, const Mat& alpha);
/// Resolution of F over the given resolution of G via fibre products and projective covers.
MorphismLift lift_morphism(const FinMod& f, const Mat& alpha, const Resolution& res_g, int n_max = 8);
/// Chain map P → E over a module map φ : M → N between resolved modules, by linear solves.
ModChainMap comparison_map(const Resolution& p, const Resolution& e, const Mat& phi);

/// Resolution of a submodule pair: sub.cx ⊂ amb.cx degreewise split, lifting an injective j.
struct PairResolution {
    Resolution sub, amb;
    ModChainMap incl;
    Mat j;  // sub.target → amb.target
};
ValidationReport validate_pair(const PairResolution& p);
/// The graph of α as a pair (E_F ⊂ E_F ⊕ E_G) resolving graph(α) ⊂ F ⊕ G.
PairResolution graph_pair(const MorphismLift& l, const Mat& alpha);
/// Adds the acyclic summand A·e_v → A·e_v in degrees deg−1, deg to the ambient complex
/// (and to the sub complex as well when both is set).
PairResolution pad_pair(const PairResolution& p, int vertex, int deg, bool both);

struct CombinedResolution {
    PairResolution first, second;
    PairResolution combined;  // Q ⊂ P
    BddComplex r, n;          // Q/(E_F ⊕ E_F'), P/(E_G ⊕ E_G')
    ModChainMap i1, i2, j1, j2;
    bool rows_exact = false;  // both rows 0 → old → new → quotient → 0
    bool quasi_isos = false;  // i1, i2, j1, j2
    ValidationReport check;
};
/// Killing-cycles construction of a resolution pair receiving both given ones.
CombinedResolution combined_resolution(const PairResolution& a, const PairResolution& b, int n_max = 8);

struct ConeComparison {
    BddComplex cone;
    ModEnd d;
    ModEnd l;  // End(E_G) preserving E_F
    ModEnd m;  // End(P) preserving Q
    DglaMap pi1, pi2;
    bool pi1_surjective = false, pi2_surjective = false;
    bool pi1_quasi_iso = false, pi2_quasi_iso = false;
    ValidationReport check;
    bool ok() const { return check.ok() && pi1_surjective && pi2_surjective && pi1_quasi_iso && pi2_quasi_iso; }
};
/// j1 : E → P with j1(E_sub) ⊂ P_sub, for pairs e = (E_sub ⊂ E) and p = (P_sub ⊂ P).
/// Throws std::invalid_argument unless j1 and its restriction are quasi-isomorphisms.
ConeComparison cone_comparison(const PairResolution& e, const PairResolution& p, const ModChainMap& j1);

/// The two-level semicosimplicial dgLa End(E_F) ⊕ End(E_G) ⊕ L ⇉ End(E_F ⊕ E_G).
struct HData {
    MorphismLift lift;
    Mat alpha;
    BddComplex sum;       // E_F ⊕ E_G
    Graph graph;
    ModEnd end_f, end_g, end_sum, l, hom_fg;
    DirectSum level0;
    ScDgla h;
};
HData build_H(const MorphismLift& lift, const Mat& alpha);

/// dims of H^i(Tot H) for i in [lo, hi] computed through the shifted cone of ∂₀ − ∂₁.
struct HCohomology {
    int lo = 0;
    std::vector<Index> dims;
    Index at(int i) const;
};
HCohomology h_cohomology(const ScDgla& h);
/// Same over the synthetic cover by `opens` opens with identity gluings (Čech bicomplex).
HCohomology h_cohomology_cover(const ScDgla& h, int opens);

/// Hom_A(P, N) for a projective resolution P: degree i is Hom_A(P^{−i}, N).
struct HomComplex {
    ChainComplexQ complex;
    std::vector<Mat> basis;  // per degree: columns are vectorised maps P^{−i} → N
    std::vector<Mat> left_inv;
    Resolution res;
    FinMod target;
};
HomComplex hom_complex(const Resolution& p, const FinMod& n);
/// dims Ext^i(F, G) for i = 0..n_max from a minimal projective resolution of F.
std::vector<Index> ext_bruteforce(const FinMod& f, const FinMod& g, int n_max = 8);

struct Junction {
    std::string at;  // name of the middle term
    int degree = 0;
    Index dim_middle = 0, rank_in = 0, rank_out = 0;
    bool composite_zero = false;
    bool exact = false;
};

struct LesReport {
    int max_degree = 0;
    std::vector<Index> h, ext_ff, ext_gg, ext_fg;  // degrees 0..max_degree (h up to max_degree + 1)
    std::vector<Junction> junctions;
    bool negative_vanish = false;   // H^i(Tot H) = 0 for i < 0
    bool comparison_iso = false;    // resolutions' Hom complexes agree with the oracle
    bool comparison_commutes = false;
    bool quasi_iso_cone = false;    // Tot H → cone of ū
    Index h0_kernel_dim = 0;        // dim {(f,g) : g∘α = α∘f}
    bool h0_is_kernel = false;
    bool exact() const;
};
LesReport les_check(const HData& hd, int max_degree = 3);

struct PipelineReport {
    LesReport les;
    HCohomology h;
    ValidationReport check;  // resolutions, lift, H(V)
    Index tangent = 0;       // dim H¹
    Index obstruction = 0;   // dim H²
    bool ok() const { return check.ok() && les.exact(); }
};
PipelineReport run_pipeline(const FinMod& f, const FinMod& g, const Mat& alpha, int max_degree = 3, int n_max = 8);

/// Random representation of the A₂ quiver with vertex dims ≤ max_dim.
FinMod random_a2_module(const AlgPtr& a, Rng& rng, Index max_dim = 2);
/// Random element of Hom_A(f, g) with small integer coefficients.
Mat random_hom(const FinMod& f, const FinMod& g, Rng& rng);

}  // namespace defo
