#pragma once

#include "defo/linalg.hpp"

#include <memory>
#include <string>
#include <vector>

namespace defo {

using Monomial = std::vector<int>;  // exponent per variable

/// Local Artin Q-algebra Q[x_1..x_r]/(monomial ideal); elements of m_A are
/// vectors over the basis of non-constant standard monomials.
class ArtinAlgebra {
public:
    ArtinAlgebra(int r, std::vector<Monomial> ideal);

    int vars() const { return r_; }
    const std::vector<Monomial>& ideal() const { return ideal_; }
    const std::vector<Monomial>& basis() const { return basis_; }
    Index dim() const { return static_cast<Index>(basis_.size()); }
    int nilpotency() const { return nu_; }

    /// Basis index of the product of basis monomials i and j, or -1 when it vanishes.
    int product(int i, int j) const { return table_[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
    /// Basis index of a monomial, or -1 if it lies in the ideal (or is 1).
    int index_of(const Monomial& m) const;
    /// Basis index of the generator x_i, or -1 if x_i lies in the ideal.
    int generator(int i) const;
    int degree(int i) const;
    bool square_zero() const { return nu_ <= 2; }

    std::string monomial_name(int i) const;
    std::string describe() const;

private:
    int r_;
    std::vector<Monomial> ideal_;
    std::vector<Monomial> basis_;
    std::vector<std::vector<int>> table_;
    int nu_ = 1;
};

using ArtinPtr = std::shared_ptr<const ArtinAlgebra>;

ArtinPtr make_artin(int r, const std::vector<Monomial>& ideal);
/// Parses "x1^2*x2" style monomials; x, y, z abbreviate x1, x2, x3.
Monomial parse_monomial(const std::string& s, int r);
/// Named shortcuts: "eps2" (Q[e]/e^2), "t<k>" (Q[t]/t^k), "xy2" (Q[x,y]/(x^2,xy,y^2)),
/// and "m<r>^<k>" for Q[x_1..x_r]/m^k.
ArtinPtr artin_from_name(const std::string& name);

Vec multiply(const ArtinAlgebra& a, const Vec& u, const Vec& v);

class ArtinMorphism {
public:
    /// `images[i]` is the image of generator x_{i+1} as an m-element of the target.
    ArtinMorphism(ArtinPtr source, ArtinPtr target, std::vector<Vec> images);

    const ArtinPtr& source() const { return src_; }
    const ArtinPtr& target() const { return tgt_; }
    const std::vector<Vec>& images() const { return images_; }
    /// Image of source basis monomial i.
    const Vec& basis_image(int i) const { return basis_images_[static_cast<size_t>(i)]; }
    Vec apply(const Vec& u) const;

private:
    ArtinPtr src_, tgt_;
    std::vector<Vec> images_;
    std::vector<Vec> basis_images_;
};

ArtinMorphism compose(const ArtinMorphism& f, const ArtinMorphism& g);  // f after g
ArtinMorphism identity_morphism(const ArtinPtr& a);
inline Vec base_change(const ArtinMorphism& f, const Vec& u) { return f.apply(u); }

}  // namespace defo
