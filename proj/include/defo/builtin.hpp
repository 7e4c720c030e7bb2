#pragma once

#include "defo/dgla.hpp"

#include <string>
#include <vector>

namespace defo {

/// Graded endomorphism dgLa of a complex of vector spaces. Basis vectors are the
/// elementary maps E(a,b) sending position b of the total space to position a.
struct EndDgla {
    DglaPtr dgla;
    ChainComplexQ complex;
    std::vector<std::pair<Index, Index>> entry;  // (row, col) per basis vector

    /// Block matrix on the total space of `complex` for a global coordinate vector.
    Mat to_matrix(const Vec& v) const;
    /// Coordinates of a homogeneous block matrix; throws if an entry has no basis vector.
    Vec from_matrix(const Mat& m) const;
    /// Degree of a total-space position.
    int position_degree(Index pos) const;
};

/// d(φ) = d∘φ − (−1)^{|φ|} φ∘d, [φ,ψ] = φψ − (−1)^{|φ||ψ|} ψφ.
EndDgla end_dgla(const ChainComplexQ& c);

/// Abelian dgLa in degrees −1..2 with a nonzero differential.
DglaPtr abelian_dgla();
/// sl₂ concentrated in degree 0.
DglaPtr sl2_dgla();
/// sl₂ ⊗ K for the graded-commutative algebra K = ⟨1, e, v, w = ev⟩ (|e| = −1, |v| = 1), d e = w.
DglaPtr sl2_dg_dgla();
/// End of the length-one complex Q --(1,0)--> Q² in degrees −1, 0.
EndDgla end_pair_dgla();

/// Built-in dgLas by name: abelian, sl2, sl2_dg, end_pair.
DglaPtr builtin_dgla(const std::string& name);
std::vector<std::string> builtin_dgla_names();

}  // namespace defo
