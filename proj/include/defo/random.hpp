#pragma once

#include "defo/element.hpp"

#include <cstdint>
#include <random>

namespace defo {

/// Deterministic generator; distributions are computed by hand so that
/// outputs do not depend on the standard library implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}
    std::uint64_t next() { return g_(); }
    /// Uniform integer in [lo, hi].
    int uniform(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
    bool coin(int percent = 50) { return uniform(0, 99) < percent; }
    /// Nonzero rational with small numerator and denominator.
    Rat small_rat();

private:
    std::mt19937_64 g_;
};

/// Random constant element of L^deg ⊗ m_A.
Elem random_elem(const NilpPtr& ctx, int deg, Rng& rng, int density = 60);
/// Random constant element of L^deg ⊗ m_A^k (coefficients of monomial degree ≥ k).
Elem random_elem_in_power(const NilpPtr& ctx, int deg, int k, Rng& rng, int density = 60);
/// Random Maurer–Cartan element: e^a * z for a d-cocycle z with coefficients in the top power of m_A.
Elem random_mc(const NilpPtr& ctx, Rng& rng);
/// Random p(t) = Σ_{k=1}^{maxdeg} a_k t^k with a_k ∈ L⁰ ⊗ m_A.
Elem random_path_log(const NilpPtr& ctx, Rng& rng, int maxdeg);
/// Random r(t,s,ds) of 2-homotopy shape with polynomial degree ≤ maxdeg.
Elem random_surface_log(const NilpPtr& ctx, Rng& rng, int maxdeg);
/// Random form-valued element of total degree `deg` in `nvars` variables, polynomial degree ≤ maxdeg.
Elem random_poly_elem(const NilpPtr& ctx, int deg, int nvars, int maxdeg, Rng& rng, int density = 30);

}  // namespace defo
