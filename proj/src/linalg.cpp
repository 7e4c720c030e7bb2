#include "defo/linalg.hpp"

#include <stdexcept>

namespace defo {

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(boost::multiprecision::mpz_int(s));
        boost::multiprecision::mpz_int num(s.substr(0, slash));
        boost::multiprecision::mpz_int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("not a rational number: '" + s + "'");
    }
}

std::string to_string(const Rat& r) { return r.str(); }

bool is_zero(const Mat& m) {
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i)
            if (m(i, j) != 0) return false;
    return true;
}

bool is_zero(const Vec& v) {
    for (Index i = 0; i < v.size(); ++i)
        if (v(i) != 0) return false;
    return true;
}

Rref rref(const Mat& m) {
    Rref out{m, {}};
    Mat& a = out.r;
    const Index rows = a.rows(), cols = a.cols();
    Index row = 0;
    for (Index col = 0; col < cols && row < rows; ++col) {
        Index piv = -1;
        for (Index i = row; i < rows; ++i)
            if (a(i, col) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != row) a.row(piv).swap(a.row(row));
        const Rat inv = 1 / a(row, col);
        for (Index j = col; j < cols; ++j) a(row, j) *= inv;
        for (Index i = 0; i < rows; ++i) {
            if (i == row || a(i, col) == 0) continue;
            const Rat f = a(i, col);
            for (Index j = col; j < cols; ++j)
                if (a(row, j) != 0) a(i, j) -= f * a(row, j);
        }
        out.pivots.push_back(col);
        ++row;
    }
    return out;
}

Index rank(const Mat& m) { return rref(m).rank(); }

Mat invert(const Mat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("invert: matrix is not square");
    const Index n = m.rows();
    Rref rr = rref(hstack(m, Mat::Identity(n, n)));
    if (rr.rank() < n || (n > 0 && rr.pivots[static_cast<size_t>(n - 1)] >= n))
        throw std::invalid_argument("invert: matrix is singular");
    return rr.r.topRightCorner(n, n);
}

Mat left_inverse(const Mat& m) {
    Rref rr = rref(Mat(m.transpose()));
    if (rr.rank() != m.cols()) throw std::invalid_argument("left_inverse: columns are dependent");
    Mat sub(m.cols(), m.cols());
    for (Index r = 0; r < m.cols(); ++r) sub.row(r) = m.row(rr.pivots[static_cast<size_t>(r)]);
    const Mat inv = invert(sub);
    Mat out = Mat::Zero(m.cols(), m.rows());
    for (Index r = 0; r < m.cols(); ++r) out.col(rr.pivots[static_cast<size_t>(r)]) = inv.col(r);
    return out;
}

Mat hstack(const Mat& a, const Mat& b) {
    if (a.cols() == 0) return b;
    if (b.cols() == 0) return a;
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
    Mat out(a.rows(), a.cols() + b.cols());
    out << a, b;
    return out;
}

Mat vstack(const Mat& a, const Mat& b) {
    if (a.rows() == 0) return b;
    if (b.rows() == 0) return a;
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
    Mat out(a.rows() + b.rows(), a.cols());
    out << a, b;
    return out;
}

Mat block_diag(const Mat& a, const Mat& b) {
    Mat out = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

Subspace span(const Mat& m) {
    Rref rr = rref(m);
    Mat b(m.rows(), rr.rank());
    for (Index k = 0; k < rr.rank(); ++k) b.col(k) = m.col(rr.pivots[k]);
    return Subspace(m.rows(), b);
}

Subspace span(Index ambient, const std::vector<Vec>& vs) {
    Mat m(ambient, static_cast<Index>(vs.size()));
    for (size_t k = 0; k < vs.size(); ++k) m.col(static_cast<Index>(k)) = vs[k];
    return span(m);
}

Subspace image(const Mat& m) { return span(m); }

Subspace kernel(const Mat& m) {
    Rref rr = rref(m);
    const Index n = m.cols();
    std::vector<bool> is_piv(static_cast<size_t>(n), false);
    for (Index p : rr.pivots) is_piv[static_cast<size_t>(p)] = true;
    Mat b = Mat::Zero(n, n - rr.rank());
    Index k = 0;
    for (Index f = 0; f < n; ++f) {
        if (is_piv[static_cast<size_t>(f)]) continue;
        b(f, k) = 1;
        for (Index r = 0; r < rr.rank(); ++r) b(rr.pivots[static_cast<size_t>(r)], k) = -rr.r(r, f);
        ++k;
    }
    return Subspace(n, b);
}

bool Subspace::contains(const Vec& v) const {
    if (v.size() != ambient) throw std::invalid_argument("Subspace::contains: size mismatch");
    if (is_zero(v)) return true;
    if (dim() == 0) return false;
    return rank(hstack(basis, v)) == dim();
}

bool Subspace::contains(const Subspace& other) const {
    if (other.dim() == 0) return true;
    return rank(hstack(basis, other.basis)) == dim();
}

Subspace sum(const Subspace& a, const Subspace& b) {
    return span(hstack(a.basis.cols() ? a.basis : Mat(a.ambient, 0), b.basis.cols() ? b.basis : Mat(b.ambient, 0)));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient != b.ambient) throw std::invalid_argument("intersect: ambient mismatch");
    if (a.dim() == 0 || b.dim() == 0) return Subspace(a.ambient);
    Mat m = hstack(a.basis, -b.basis);
    Subspace k = kernel(m);
    return span(Mat(a.basis * k.basis.topRows(a.dim())));
}

bool same_subspace(const Subspace& a, const Subspace& b) {
    return a.ambient == b.ambient && a.dim() == b.dim() && a.contains(b);
}

std::optional<Solution> solve(const Mat& a, const Vec& b) {
    if (a.rows() != b.size()) throw std::invalid_argument("solve: dimension mismatch");
    Mat aug(a.rows(), a.cols() + 1);
    aug << a, b;
    Rref rr = rref(aug);
    if (!rr.pivots.empty() && rr.pivots.back() == a.cols()) return std::nullopt;
    Vec x = Vec::Zero(a.cols());
    for (Index r = 0; r < rr.rank(); ++r) x(rr.pivots[static_cast<size_t>(r)]) = rr.r(r, a.cols());
    return Solution{x, kernel(a)};
}

std::optional<Vec> coordinates(const Subspace& s, const Vec& v) {
    auto sol = solve(s.basis.cols() ? s.basis : Mat(s.ambient, 0), v);
    if (!sol) return std::nullopt;
    return sol->particular;
}

ChainComplexQ::ChainComplexQ(int lo, std::vector<Index> dims, std::vector<Mat> diffs)
    : lo_(lo), dims_(std::move(dims)), diffs_(std::move(diffs)) {
    if (dims_.empty()) dims_.push_back(0);
    if (diffs_.size() + 1 != dims_.size())
        throw std::invalid_argument("ChainComplexQ: need one differential between consecutive degrees");
    for (size_t k = 0; k < diffs_.size(); ++k) {
        if (diffs_[k].rows() != dims_[k + 1] || diffs_[k].cols() != dims_[k])
            throw std::invalid_argument("ChainComplexQ: differential out of degree " +
                                        std::to_string(lo_ + static_cast<int>(k)) + " has wrong shape");
    }
    for (size_t k = 0; k + 1 < diffs_.size(); ++k) {
        if (!is_zero(Mat(diffs_[k + 1] * diffs_[k])))
            throw std::invalid_argument("ChainComplexQ: d^" + std::to_string(lo_ + static_cast<int>(k) + 1) +
                                        " d^" + std::to_string(lo_ + static_cast<int>(k)) + " != 0");
    }
}

Index ChainComplexQ::dim(int i) const {
    if (i < lo_ || i > hi()) return 0;
    return dims_[static_cast<size_t>(i - lo_)];
}

Mat ChainComplexQ::d(int i) const {
    if (i < lo_ || i >= hi()) return Mat::Zero(dim(i + 1), dim(i));
    return diffs_[static_cast<size_t>(i - lo_)];
}

Index ChainComplexQ::total_dim() const {
    Index n = 0;
    for (Index d : dims_) n += d;
    return n;
}

CohomologyResult cohomology(const ChainComplexQ& c, int i) {
    const Index n = c.dim(i);
    CohomologyResult out;
    out.reps = Mat(n, 0);
    if (n == 0) return out;
    Subspace z = kernel(c.d(i));
    Subspace b = image(c.d(i - 1));
    Mat acc = b.basis;
    Index r = b.dim();
    std::vector<Index> chosen;
    for (Index k = 0; k < z.dim(); ++k) {
        Mat trial = hstack(acc.cols() ? acc : Mat(n, 0), z.basis.col(k));
        if (rank(trial) > r) {
            acc = trial;
            ++r;
            chosen.push_back(k);
        }
    }
    out.dim = static_cast<Index>(chosen.size());
    out.reps = Mat(n, out.dim);
    for (Index k = 0; k < out.dim; ++k) out.reps.col(k) = z.basis.col(chosen[static_cast<size_t>(k)]);
    return out;
}

std::vector<Index> betti(const ChainComplexQ& c) {
    std::vector<Index> out;
    for (int i = c.lo(); i <= c.hi(); ++i) out.push_back(cohomology(c, i).dim);
    return out;
}

Mat ChainMapQ::at(int i) const {
    const Index r = target.dim(i), cc = source.dim(i);
    const int k = i - lo;
    if (k < 0 || k >= static_cast<int>(maps.size())) return Mat::Zero(r, cc);
    return maps[static_cast<size_t>(k)];
}

bool ChainMapQ::is_chain_map() const {
    const int a = std::min(source.lo(), target.lo()) - 1;
    const int b = std::max(source.hi(), target.hi());
    for (int i = a; i <= b; ++i) {
        Mat lhs = target.d(i) * at(i);
        Mat rhs = at(i + 1) * source.d(i);
        if (!is_zero(Mat(lhs - rhs))) return false;
    }
    return true;
}

ChainMapQ make_chain_map(const ChainComplexQ& src, const ChainComplexQ& tgt,
                         const std::vector<Mat>& maps_from_lo, int lo) {
    ChainMapQ f{src, tgt, maps_from_lo, lo};
    for (size_t k = 0; k < maps_from_lo.size(); ++k) {
        const int i = lo + static_cast<int>(k);
        if (maps_from_lo[k].rows() != tgt.dim(i) || maps_from_lo[k].cols() != src.dim(i))
            throw std::invalid_argument("make_chain_map: wrong shape in degree " + std::to_string(i));
    }
    return f;
}

ChainComplexQ cone(const ChainMapQ& f) {
    if (!f.is_chain_map()) throw std::invalid_argument("cone: f is not a chain map");
    const ChainComplexQ& c = f.source;
    const ChainComplexQ& d = f.target;
    const int lo = std::min(c.lo() - 1, d.lo());
    const int hi = std::max(c.hi() - 1, d.hi());
    std::vector<Index> dims;
    for (int i = lo; i <= hi; ++i) dims.push_back(c.dim(i + 1) + d.dim(i));
    std::vector<Mat> diffs;
    for (int i = lo; i < hi; ++i) {
        Mat m = Mat::Zero(c.dim(i + 2) + d.dim(i + 1), c.dim(i + 1) + d.dim(i));
        m.topLeftCorner(c.dim(i + 2), c.dim(i + 1)) = -c.d(i + 1);
        m.bottomLeftCorner(d.dim(i + 1), c.dim(i + 1)) = f.at(i + 1);
        m.bottomRightCorner(d.dim(i + 1), d.dim(i)) = d.d(i);
        diffs.push_back(m);
    }
    return ChainComplexQ(lo, dims, diffs);
}

bool is_acyclic(const ChainComplexQ& c) {
    for (int i = c.lo(); i <= c.hi(); ++i)
        if (rank(c.d(i)) + rank(c.d(i - 1)) != c.dim(i)) return false;
    return true;
}

bool is_quasi_iso(const ChainMapQ& f) { return is_acyclic(cone(f)); }

Vec cohomology_class(const ChainComplexQ& c, int i, const Vec& z) {
    CohomologyResult h = cohomology(c, i);
    Subspace b = image(c.d(i - 1));
    Mat m = hstack(h.reps, b.basis.cols() ? b.basis : Mat(c.dim(i), 0));
    auto sol = solve(m.cols() ? m : Mat(c.dim(i), 0), z);
    if (!sol) throw std::invalid_argument("cohomology_class: vector is not a cocycle");
    return sol->particular.head(h.dim);
}

Mat induced_map(const ChainMapQ& f, int i) {
    CohomologyResult hs = cohomology(f.source, i);
    CohomologyResult ht = cohomology(f.target, i);
    Subspace b = image(f.target.d(i - 1));
    Mat basis = hstack(ht.reps, b.basis.cols() ? b.basis : Mat(f.target.dim(i), 0));
    Mat out = Mat::Zero(ht.dim, hs.dim);
    Mat fi = f.at(i);
    for (Index k = 0; k < hs.dim; ++k) {
        Vec img = fi * hs.reps.col(k);
        auto sol = solve(basis.cols() ? basis : Mat(f.target.dim(i), 0), img);
        if (!sol) throw std::logic_error("induced_map: image of a cocycle is not a cocycle");
        out.col(k) = sol->particular.head(ht.dim);
    }
    return out;
}

}  // namespace defo
