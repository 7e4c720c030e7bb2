#pragma once

#include "defo/linalg.hpp"

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace defo {

/// Sparse coordinate list over a global basis.
using SparseVec = std::vector<std::pair<int, Rat>>;

/// Bounded dgLa over Q given by structure constants. Basis vectors are globally
/// indexed in increasing degree; out-of-range degrees are zero.
class Dgla {
public:
    struct Basis {
        std::string name;
        int degree;
    };

    Dgla() = default;
    /// `diff[i]` lists d(e_i); `bracket[i * n + j]` lists [e_i, e_j].
    Dgla(std::vector<Basis> basis, std::vector<SparseVec> diff, std::vector<SparseVec> bracket);

    int size() const { return static_cast<int>(basis_.size()); }
    const Basis& basis(int i) const { return basis_[static_cast<size_t>(i)]; }
    int degree(int i) const { return basis_[static_cast<size_t>(i)].degree; }
    const std::string& name(int i) const { return basis_[static_cast<size_t>(i)].name; }
    int index_of(const std::string& name) const;

    int lo() const { return lo_; }
    int hi() const { return hi_; }
    /// Global indices [offset(k), offset(k) + dim(k)) span degree k.
    int offset(int k) const;
    Index dim(int k) const;

    const SparseVec& d(int i) const { return diff_[static_cast<size_t>(i)]; }
    const SparseVec& bracket(int i, int j) const { return bracket_[static_cast<size_t>(i) * basis_.size() + static_cast<size_t>(j)]; }

    /// Matrix of d : L^k -> L^{k+1} in degree-local coordinates.
    Mat d_matrix(int k) const;
    /// Dense global operations.
    Vec d_vec(const Vec& a) const;
    Vec bracket_vec(const Vec& a, const Vec& b) const;

    ChainComplexQ complex() const;

private:
    std::vector<Basis> basis_;
    std::vector<SparseVec> diff_;
    std::vector<SparseVec> bracket_;
    std::vector<int> offsets_;
    int lo_ = 0, hi_ = -1;
};

using DglaPtr = std::shared_ptr<const Dgla>;

/// Incremental construction by basis names.
class DglaBuilder {
public:
    int add(const std::string& name, int degree);
    void set_d(const std::string& from, const std::string& to, const Rat& c);
    /// Sets [a,b]; the partner [b,a] is filled by graded antisymmetry unless set explicitly.
    void set_bracket(const std::string& a, const std::string& b, const SparseVec& value);
    void set_bracket(const std::string& a, const std::string& b, const std::string& c, const Rat& coeff);
    DglaPtr build() const;

private:
    int idx(const std::string& n) const;
    std::vector<Dgla::Basis> basis_;
    std::vector<std::tuple<int, int, Rat>> d_entries_;
    std::vector<std::tuple<int, int, SparseVec>> brackets_;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
    void add(std::string v) { violations.push_back(std::move(v)); }
    void merge(const ValidationReport& o, const std::string& prefix = {});
};

ValidationReport validate_dgla(const Dgla& l);
Index cohomology_dgla(const Dgla& l, int i);

/// Degree-preserving linear map given by a global matrix (target.size() x source.size()).
struct DglaMap {
    DglaPtr source;
    DglaPtr target;
    Mat m;

    Vec operator()(const Vec& v) const { return m * v; }
    /// Image of basis vector i as a sparse list.
    SparseVec image(int i) const;
};

ValidationReport validate_map(const DglaMap& f);
DglaMap compose(const DglaMap& f, const DglaMap& g);  // f after g
DglaMap identity_map(const DglaPtr& l);
DglaMap zero_map(const DglaPtr& s, const DglaPtr& t);
ChainMapQ chain_map(const DglaMap& f);

DglaPtr zero_dgla();
DglaPtr direct_sum(const DglaPtr& a, const DglaPtr& b);
/// Inclusions and projections of a direct sum built by direct_sum(a, b).
DglaMap sum_inclusion(const DglaPtr& sum, const DglaPtr& a, const DglaPtr& b, int which);
DglaMap sum_projection(const DglaPtr& sum, const DglaPtr& a, const DglaPtr& b, int which);

/// Direct sum of several dgLas, degree-sorted; part i basis vector j sits at pos[i][j].
struct DirectSum {
    DglaPtr sum;
    std::vector<DglaPtr> parts;
    std::vector<std::vector<int>> pos;

    DglaMap inclusion(size_t i) const;
    DglaMap projection(size_t i) const;
};
/// Basis names become prefix[i] + "." + name when a prefix is given.
DirectSum direct_sum_of(const std::vector<DglaPtr>& parts, const std::vector<std::string>& prefixes = {});

/// Sub-dgLa spanned degreewise by the columns of `spans[k - ambient.lo()]`
/// (global coordinates). Throws if not closed under d and bracket.
struct SubDgla {
    DglaPtr sub;
    DglaMap inclusion;
};
SubDgla sub_dgla(const DglaPtr& ambient, const std::vector<Mat>& spans, const std::string& prefix = "");

}  // namespace defo
