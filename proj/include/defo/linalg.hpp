#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

namespace defo {

using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                          boost::multiprecision::et_off>;
using Index = Eigen::Index;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Mat = MatrixX<Rat>;
using Vec = VectorX<Rat>;

Rat parse_rat(const std::string& s);
std::string to_string(const Rat& r);

bool is_zero(const Mat& m);
bool is_zero(const Vec& v);

/// Reduced row-echelon form together with its pivot columns.
struct Rref {
    Mat r;
    std::vector<Index> pivots;
    Index rank() const { return static_cast<Index>(pivots.size()); }
};

Rref rref(const Mat& m);
Index rank(const Mat& m);

/// Linear subspace of Q^ambient, basis stored as the columns of `basis`.
struct Subspace {
    Index ambient = 0;
    Mat basis;  // ambient x dim

    Subspace() = default;
    explicit Subspace(Index n) : ambient(n), basis(n, 0) {}
    Subspace(Index n, Mat b) : ambient(n), basis(std::move(b)) {}

    Index dim() const { return basis.cols(); }
    bool contains(const Vec& v) const;
    bool contains(const Subspace& other) const;
};

/// Columns of m reduced to a linearly independent spanning set (first-come order).
Subspace span(const Mat& m);
Subspace span(Index ambient, const std::vector<Vec>& vs);
Subspace kernel(const Mat& m);
Subspace image(const Mat& m);
Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);
bool same_subspace(const Subspace& a, const Subspace& b);

struct Solution {
    Vec particular;
    Subspace kernel;
};

/// Solves a x = b exactly; absent when inconsistent. Throws on dimension mismatch.
std::optional<Solution> solve(const Mat& a, const Vec& b);

/// Coordinates of v in the basis of s, absent when v is not in s.
std::optional<Vec> coordinates(const Subspace& s, const Vec& v);

/// Inverse of a square matrix; throws if singular.
Mat invert(const Mat& m);
/// Some left inverse of a matrix with independent columns; throws otherwise.
Mat left_inverse(const Mat& m);

Mat hstack(const Mat& a, const Mat& b);
Mat vstack(const Mat& a, const Mat& b);
Mat block_diag(const Mat& a, const Mat& b);

/// Bounded cochain complex C^lo -> ... -> C^hi with d^i : C^i -> C^{i+1}.
class ChainComplexQ {
public:
    ChainComplexQ() = default;
    /// `diffs[k]` is the differential out of degree lo+k; there are dims.size()-1 of them.
    ChainComplexQ(int lo, std::vector<Index> dims, std::vector<Mat> diffs);

    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
    Index dim(int i) const;
    /// Differential C^i -> C^{i+1}; an empty-shaped zero matrix outside the range.
    Mat d(int i) const;
    Index total_dim() const;

private:
    int lo_ = 0;
    std::vector<Index> dims_;
    std::vector<Mat> diffs_;
};

struct CohomologyResult {
    Index dim = 0;
    Mat reps;  // cocycles, one per column
};

CohomologyResult cohomology(const ChainComplexQ& c, int i);
std::vector<Index> betti(const ChainComplexQ& c);

/// Degreewise linear maps f^i : C^i -> D^i.
struct ChainMapQ {
    ChainComplexQ source;
    ChainComplexQ target;
    std::vector<Mat> maps;  // indexed by degree - min(source.lo, target.lo)
    int lo = 0;

    Mat at(int i) const;
    bool is_chain_map() const;
};

ChainMapQ make_chain_map(const ChainComplexQ& src, const ChainComplexQ& tgt,
                         const std::vector<Mat>& maps_from_lo, int lo);

/// cone(f)^i = C^{i+1} (+) D^i, d(c, e) = (-dc, f c + de). Throws if f is not a chain map.
ChainComplexQ cone(const ChainMapQ& f);

bool is_acyclic(const ChainComplexQ& c);
bool is_quasi_iso(const ChainMapQ& f);

/// Matrix of H^i(f) in the representative bases returned by cohomology().
Mat induced_map(const ChainMapQ& f, int i);

/// Coordinates of a cocycle z in the cohomology basis of C^i (modulo boundaries).
Vec cohomology_class(const ChainComplexQ& c, int i, const Vec& z);

}  // namespace defo
