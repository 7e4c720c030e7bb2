#include "defo/defpipe.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace defo {

namespace {

int parity(int e) { return (e % 2 == 0) ? 1 : -1; }

Mat kron(const Mat& a, const Mat& b) {
    Mat out = Mat::Zero(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Vec vec(const Mat& m) {
    Vec v(m.size());
    for (Index c = 0; c < m.cols(); ++c)
        for (Index r = 0; r < m.rows(); ++r) v(c * m.rows() + r) = m(r, c);
    return v;
}

Mat cols_or_empty(const Subspace& s) { return s.basis.cols() ? s.basis : Mat(s.ambient, 0); }

Subspace span_of(Index ambient, const Mat& m) { return m.cols() ? span(m) : Subspace(ambient); }

Subspace add(const Subspace& a, const Subspace& b) {
    if (a.dim() == 0) return b;
    if (b.dim() == 0) return a;
    return sum(a, b);
}

/// Rows whose kernel is exactly the column span of s.
Mat annihilator(const Subspace& s) {
    if (s.dim() == 0) return Mat::Identity(s.ambient, s.ambient);
    Subspace k = kernel(Mat(s.basis.transpose()));
    return k.dim() ? Mat(k.basis.transpose()) : Mat(0, s.ambient);
}

bool is_identity(const Mat& m) { return m.rows() == m.cols() && m == Mat::Identity(m.rows(), m.cols()); }

/// Columns of the algebra spanning A·e_v.
Mat proj_basis(const FinAlg& a, int v) {
    Mat r(a.dim(), a.dim());
    for (Index j = 0; j < a.dim(); ++j) r.col(j) = a.mul(a.basis_vec(j), a.idempotents[static_cast<size_t>(v)]);
    return span(r).basis;
}

/// X ∈ Hom_A(src, mid) with d∘X = rhs, d : mid → tgt.
std::optional<Mat> solve_hom(const FinMod& src, const FinMod& mid, const Mat& d, const Mat& rhs) {
    if (src.dim == 0 || mid.dim == 0) {
        if (!is_zero(rhs)) return std::nullopt;
        return Mat(Mat::Zero(mid.dim, src.dim));
    }
    Subspace h = hom_space(src, mid);
    if (h.dim() == 0) {
        if (!is_zero(rhs)) return std::nullopt;
        return Mat(Mat::Zero(mid.dim, src.dim));
    }
    Mat sys = kron(Mat::Identity(src.dim, src.dim), d) * h.basis;
    if (sys.rows() == 0) return unvec(Vec::Zero(mid.dim * src.dim), mid.dim, src.dim);
    auto sol = solve(sys, vec(rhs));
    if (!sol) return std::nullopt;
    return unvec(h.basis * sol->particular, mid.dim, src.dim);
}

ChainComplexQ sum_complex(const ChainComplexQ& a, const ChainComplexQ& b) {
    const int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
    std::vector<Index> dims;
    std::vector<Mat> diffs;
    for (int i = lo; i <= hi; ++i) dims.push_back(a.dim(i) + b.dim(i));
    for (int i = lo; i < hi; ++i) diffs.push_back(block_diag(a.d(i), b.d(i)));
    return ChainComplexQ(lo, dims, diffs);
}

ChainMapQ compose_linear(const ChainMapQ& f, const ChainMapQ& g) {
    const int lo = std::min({g.source.lo(), g.target.lo(), f.target.lo()});
    const int hi = std::max({g.source.hi(), g.target.hi(), f.target.hi()});
    std::vector<Mat> maps;
    for (int i = lo; i <= hi; ++i) maps.push_back(f.at(i) * g.at(i));
    return make_chain_map(g.source, f.target, maps, lo);
}

ChainMapQ linear_map(const ChainComplexQ& s, const ChainComplexQ& t, const std::function<Mat(int)>& block) {
    const int lo = std::min(s.lo(), t.lo()), hi = std::max(s.hi(), t.hi());
    std::vector<Mat> maps;
    for (int i = lo; i <= hi; ++i) {
        Mat m = Mat::Zero(t.dim(i), s.dim(i));
        if (m.size() > 0) m = block(i);
        maps.push_back(m);
    }
    return make_chain_map(s, t, maps, lo);
}

/// Degree-local block of a global matrix between two dgLas.
Mat degree_block(const Dgla& s, const Dgla& t, const Mat& global, int k) {
    Mat b = Mat::Zero(t.dim(k), s.dim(k));
    if (b.size() > 0) b = global.block(t.offset(k), s.offset(k), b.rows(), b.cols());
    return b;
}

Mat induced(const ChainMapQ& f, int i) {
    const Index hs = cohomology(f.source, i).dim, ht = cohomology(f.target, i).dim;
    if (hs == 0 || ht == 0) return Mat::Zero(ht, hs);
    return induced_map(f, i);
}

/// Selection of a block of positions: total of `whole` × total of `part`.
Mat selector(const BddComplex& whole, const BddComplex& part, const std::function<Index(int)>& shift) {
    Mat s = Mat::Zero(whole.total_dim(), part.total_dim());
    for (int k = part.lo; k <= 0; ++k)
        for (Index r = 0; r < part.dim(k); ++r) s(whole.offset(k) + shift(k) + r, part.offset(k) + r) = 1;
    return s;
}

KillCondition preserve_mats(const BddComplex& amb, const std::function<Mat(int)>& incl) {
    KillCondition kc;
    for (int k = amb.lo; k <= 0; ++k) {
        Mat r = incl(k);
        kc.right.push_back(r);
        kc.left.push_back(annihilator(span_of(amb.dim(k), r)));
    }
    return kc;
}

}  // namespace

// ---------------------------------------------------------------- algebras

Vec FinAlg::mul(const Vec& a, const Vec& b) const {
    Vec out = Vec::Zero(dim());
    for (Index i = 0; i < dim(); ++i)
        if (a(i) != 0) out += a(i) * (left[static_cast<size_t>(i)] * b);
    return out;
}

Vec FinAlg::basis_vec(Index i) const {
    Vec v = Vec::Zero(dim());
    v(i) = 1;
    return v;
}

ValidationReport validate_alg(const FinAlg& a) {
    ValidationReport r;
    const Index n = a.dim();
    if (static_cast<Index>(a.left.size()) != n || a.unit.size() != n) {
        r.add("FinAlg: structure constants have the wrong size");
        return r;
    }
    for (Index i = 0; i < n; ++i) {
        if (a.left[static_cast<size_t>(i)].rows() != n || a.left[static_cast<size_t>(i)].cols() != n) {
            r.add("FinAlg: left multiplication " + a.names[static_cast<size_t>(i)] + " is not square");
            return r;
        }
    }
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
            Vec ij = a.mul(a.basis_vec(i), a.basis_vec(j));
            Mat lij = Mat::Zero(n, n);
            for (Index k = 0; k < n; ++k)
                if (ij(k) != 0) lij += ij(k) * a.left[static_cast<size_t>(k)];
            if (lij != a.left[static_cast<size_t>(i)] * a.left[static_cast<size_t>(j)])
                r.add("FinAlg: (b_i b_j) b_k = b_i (b_j b_k) fails for i=" + a.names[static_cast<size_t>(i)] + ", j=" + a.names[static_cast<size_t>(j)]);
        }
    for (Index i = 0; i < n; ++i) {
        if (a.mul(a.unit, a.basis_vec(i)) != a.basis_vec(i)) r.add("FinAlg: 1·b = b fails for " + a.names[static_cast<size_t>(i)]);
        if (a.mul(a.basis_vec(i), a.unit) != a.basis_vec(i)) r.add("FinAlg: b·1 = b fails for " + a.names[static_cast<size_t>(i)]);
    }
    Vec total = Vec::Zero(n);
    for (size_t i = 0; i < a.idempotents.size(); ++i) {
        const Vec& e = a.idempotents[i];
        total += e;
        if (a.mul(e, e) != e) r.add("FinAlg: e_i² = e_i fails for i=" + std::to_string(i));
        for (size_t j = 0; j < a.idempotents.size(); ++j)
            if (i != j && !is_zero(a.mul(e, a.idempotents[j]))) r.add("FinAlg: e_i e_j = 0 fails");
    }
    if (!a.idempotents.empty() && total != a.unit) r.add("FinAlg: Σ e_i = 1 fails");
    // Radical: two-sided ideal, nilpotent.
    Subspace rad = span_of(n, a.radical);
    for (Index i = 0; i < n; ++i)
        for (Index c = 0; c < rad.dim(); ++c) {
            if (!rad.contains(Vec(a.mul(a.basis_vec(i), rad.basis.col(c))))) r.add("FinAlg: radical is not a left ideal");
            if (!rad.contains(Vec(a.mul(rad.basis.col(c), a.basis_vec(i))))) r.add("FinAlg: radical is not a right ideal");
        }
    Subspace pw = rad;
    for (Index k = 0; k <= n && pw.dim() > 0; ++k) {
        std::vector<Vec> next;
        for (Index c = 0; c < pw.dim(); ++c)
            for (Index d = 0; d < rad.dim(); ++d) next.push_back(a.mul(pw.basis.col(c), rad.basis.col(d)));
        pw = span(n, next);
    }
    if (pw.dim() > 0) r.add("FinAlg: radical is not nilpotent");
    return r;
}

AlgPtr path_algebra(int vertices, const std::vector<std::pair<int, int>>& arrows) {
    struct Path {
        int s, t;
        std::vector<int> arrows;
    };
    for (auto [t, h] : arrows)
        if (t < 0 || h < 0 || t >= vertices || h >= vertices) throw std::invalid_argument("path_algebra: arrow endpoint out of range");
    std::vector<Path> paths;
    for (int v = 0; v < vertices; ++v) paths.push_back({v, v, {}});
    for (size_t i = 0; i < paths.size(); ++i) {
        if (paths[i].arrows.size() > arrows.size()) throw std::invalid_argument("path_algebra: quiver has an oriented cycle");
        for (size_t a = 0; a < arrows.size(); ++a)
            if (arrows[a].first == paths[i].t) {
                Path p = paths[i];
                p.t = arrows[a].second;
                p.arrows.push_back(static_cast<int>(a));
                paths.push_back(p);
            }
    }
    std::map<std::pair<int, std::vector<int>>, Index> index;
    for (size_t i = 0; i < paths.size(); ++i) index[{paths[i].s, paths[i].arrows}] = static_cast<Index>(i);
    auto out = std::make_shared<FinAlg>();
    const Index n = static_cast<Index>(paths.size());
    out->vertices = vertices;
    out->arrows = arrows;
    for (const Path& p : paths) {
        if (p.arrows.empty()) {
            out->names.push_back("e" + std::to_string(p.s));
            continue;
        }
        std::string nm;
        for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it) nm += (nm.empty() ? "" : "*") + ("a" + std::to_string(*it));
        out->names.push_back(nm);
    }
    // q·p : p first, then q.
    auto product = [&](const Path& q, const Path& p) -> Index {
        if (q.s != p.t) return -1;
        std::vector<int> arr = p.arrows;
        arr.insert(arr.end(), q.arrows.begin(), q.arrows.end());
        return index.at({p.s, arr});
    };
    for (Index i = 0; i < n; ++i) {
        Mat l = Mat::Zero(n, n);
        for (Index j = 0; j < n; ++j) {
            const Index k = product(paths[static_cast<size_t>(i)], paths[static_cast<size_t>(j)]);
            if (k >= 0) l(k, j) = 1;
        }
        out->left.push_back(l);
    }
    out->unit = Vec::Zero(n);
    for (int v = 0; v < vertices; ++v) {
        out->unit(v) = 1;
        Vec e = Vec::Zero(n);
        e(v) = 1;
        out->idempotents.push_back(e);
    }
    out->radical = Mat::Zero(n, n - vertices);
    for (Index i = vertices; i < n; ++i) out->radical(i, i - vertices) = 1;
    return out;
}

AlgPtr a2_algebra() { return path_algebra(2, {{0, 1}}); }

// ---------------------------------------------------------------- modules

Mat FinMod::action(const Vec& a) const {
    Mat m = Mat::Zero(dim, dim);
    for (Index i = 0; i < a.size(); ++i)
        if (a(i) != 0) m += a(i) * act[static_cast<size_t>(i)];
    return m;
}

ValidationReport validate_mod(const FinMod& m) {
    ValidationReport r;
    if (!m.alg) {
        r.add("FinMod: no algebra");
        return r;
    }
    const FinAlg& a = *m.alg;
    if (static_cast<Index>(m.act.size()) != a.dim()) {
        r.add("FinMod: expected one action matrix per algebra basis element");
        return r;
    }
    for (const Mat& x : m.act)
        if (x.rows() != m.dim || x.cols() != m.dim) {
            r.add("FinMod: action matrix has the wrong size");
            return r;
        }
    if (m.action(a.unit) != Mat::Identity(m.dim, m.dim)) r.add("FinMod: 1·m = m fails");
    for (Index i = 0; i < a.dim(); ++i)
        for (Index j = 0; j < a.dim(); ++j)
            if (m.action(a.mul(a.basis_vec(i), a.basis_vec(j))) != m.act[static_cast<size_t>(i)] * m.act[static_cast<size_t>(j)])
                r.add("FinMod: (b_i b_j)·m = b_i·(b_j·m) fails for i=" + a.names[static_cast<size_t>(i)] + ", j=" + a.names[static_cast<size_t>(j)]);
    return r;
}

bool same_module(const FinMod& a, const FinMod& b) { return a.alg == b.alg && a.dim == b.dim && a.act == b.act; }

FinMod zero_module(const AlgPtr& a) {
    FinMod m{a, 0, {}};
    for (Index i = 0; i < a->dim(); ++i) m.act.push_back(Mat(0, 0));
    return m;
}

FinMod representation(const AlgPtr& a, const std::vector<Index>& dims, const std::vector<Mat>& arrow_maps) {
    if (a->vertices == 0) throw std::invalid_argument("representation: algebra is not a path algebra");
    if (static_cast<int>(dims.size()) != a->vertices) throw std::invalid_argument("representation: expected one space per vertex");
    if (arrow_maps.size() != a->arrows.size()) throw std::invalid_argument("representation: expected one matrix per arrow");
    std::vector<Index> off(dims.size() + 1, 0);
    for (size_t v = 0; v < dims.size(); ++v) off[v + 1] = off[v] + dims[v];
    const Index n = off.back();
    std::vector<Mat> arrow_act;
    for (size_t k = 0; k < arrow_maps.size(); ++k) {
        auto [t, h] = a->arrows[k];
        const Mat& m = arrow_maps[k];
        if (m.rows() != dims[static_cast<size_t>(h)] || m.cols() != dims[static_cast<size_t>(t)])
            throw std::invalid_argument("representation: arrow " + std::to_string(k) + " has the wrong shape");
        Mat x = Mat::Zero(n, n);
        x.block(off[static_cast<size_t>(h)], off[static_cast<size_t>(t)], m.rows(), m.cols()) = m;
        arrow_act.push_back(x);
    }
    FinMod out{a, n, {}};
    for (Index i = 0; i < a->dim(); ++i) {
        const std::string& nm = a->names[static_cast<size_t>(i)];
        Mat x = Mat::Zero(n, n);
        if (i < a->vertices) {
            for (Index r = 0; r < dims[static_cast<size_t>(i)]; ++r) x(off[static_cast<size_t>(i)] + r, off[static_cast<size_t>(i)] + r) = 1;
        } else {
            // Names list arrows last-first separated by '*'.
            x = Mat::Identity(n, n);
            size_t pos = 0;
            std::vector<int> seq;
            while (pos < nm.size()) {
                size_t e = nm.find('*', pos);
                if (e == std::string::npos) e = nm.size();
                seq.push_back(std::stoi(nm.substr(pos + 1, e - pos - 1)));
                pos = e + 1;
            }
            for (int k : seq) x = x * arrow_act[static_cast<size_t>(k)];
        }
        out.act.push_back(x);
    }
    return out;
}

FinMod proj_module(const AlgPtr& a, int vertex) {
    if (vertex < 0 || vertex >= static_cast<int>(a->idempotents.size())) throw std::invalid_argument("proj_module: no such idempotent");
    Mat b = proj_basis(*a, vertex);
    Mat li = left_inverse(b);
    FinMod m{a, b.cols(), {}};
    for (Index i = 0; i < a->dim(); ++i) m.act.push_back(li * a->left[static_cast<size_t>(i)] * b);
    return m;
}

namespace {

std::pair<FinMod, Mat> quotient(const FinMod& m, const Subspace& s) {
    Mat q = annihilator(s);
    Mat qr = q.rows() ? Mat(left_inverse(Mat(q.transpose())).transpose()) : Mat(m.dim, 0);
    FinMod out{m.alg, q.rows(), {}};
    for (const Mat& x : m.act) out.act.push_back(q * x * qr);
    return {out, q};
}

}  // namespace

FinMod simple_module(const AlgPtr& a, int vertex) {
    FinMod p = proj_module(a, vertex);
    Mat b = proj_basis(*a, vertex);
    Mat li = left_inverse(b);
    Mat jp = Mat::Zero(p.dim, 0);
    for (Index c = 0; c < a->radical.cols(); ++c)
        jp = hstack(jp, Mat(li * a->mul(a->radical.col(c), a->idempotents[static_cast<size_t>(vertex)])));
    return quotient(p, generated_submodule(p, jp)).first;
}

FinMod direct_sum(const FinMod& a, const FinMod& b) {
    if (a.alg != b.alg) throw std::invalid_argument("direct_sum: modules over different algebras");
    FinMod m{a.alg, a.dim + b.dim, {}};
    for (size_t i = 0; i < a.act.size(); ++i) m.act.push_back(block_diag(a.act[i], b.act[i]));
    return m;
}

FinMod submodule(const FinMod& m, const Mat& s) {
    FinMod out{m.alg, s.cols(), {}};
    if (s.cols() == 0) return zero_module(m.alg);
    Mat li = left_inverse(s);
    for (const Mat& x : m.act) {
        Mat y = li * x * s;
        if (s * y != x * s) throw std::invalid_argument("submodule: span is not closed under the action");
        out.act.push_back(y);
    }
    return out;
}

Subspace generated_submodule(const FinMod& m, const Mat& v) {
    Subspace s = span_of(m.dim, v);
    while (true) {
        Mat all = cols_or_empty(s);
        for (const Mat& x : m.act)
            if (s.dim()) all = hstack(all, Mat(x * s.basis));
        Subspace t = span_of(m.dim, all);
        if (t.dim() == s.dim()) return s;
        s = t;
    }
}

bool is_module_map(const FinMod& src, const FinMod& tgt, const Mat& f) {
    if (f.rows() != tgt.dim || f.cols() != src.dim) return false;
    for (size_t i = 0; i < src.act.size(); ++i)
        if (tgt.act[i] * f != f * src.act[i]) return false;
    return true;
}

Subspace hom_space(const FinMod& src, const FinMod& tgt) {
    const Index n = src.dim * tgt.dim;
    if (n == 0) return Subspace(0);
    Mat sys(0, n);
    const Mat is = Mat::Identity(src.dim, src.dim), it = Mat::Identity(tgt.dim, tgt.dim);
    for (size_t i = 0; i < src.act.size(); ++i)
        sys = vstack(sys, Mat(kron(is, tgt.act[i]) - kron(Mat(src.act[i].transpose()), it)));
    return kernel(sys);
}

Mat unvec(const Vec& v, Index rows, Index cols) {
    Mat m(rows, cols);
    for (Index c = 0; c < cols; ++c)
        for (Index r = 0; r < rows; ++r) m(r, c) = v(c * rows + r);
    return m;
}

FinMod proj_sum(const AlgPtr& a, const std::vector<int>& types) {
    FinMod m = zero_module(a);
    for (int t : types) m = direct_sum(m, proj_module(a, t));
    return m;
}

Mat map_from_generators(const FinMod& m, const std::vector<int>& types, const Mat& gens) {
    const FinAlg& a = *m.alg;
    Mat out(m.dim, 0);
    for (size_t j = 0; j < types.size(); ++j) {
        Mat b = proj_basis(a, types[j]);
        Mat block(m.dim, b.cols());
        for (Index k = 0; k < b.cols(); ++k) block.col(k) = m.action(b.col(k)) * gens.col(static_cast<Index>(j));
        out = hstack(out, block);
    }
    if (out.cols() == 0) out = Mat(m.dim, 0);
    return out;
}

ProjMap cover_modulo(const FinMod& m, const Subspace& z, const Subspace& b) {
    const FinAlg& a = *m.alg;
    Mat jz(m.dim, 0);
    for (Index c = 0; c < a.radical.cols(); ++c)
        if (z.dim()) jz = hstack(jz, Mat(m.action(a.radical.col(c)) * z.basis));
    Subspace cur = add(b, span_of(m.dim, jz));
    std::vector<int> types;
    Mat gens(m.dim, 0);
    for (size_t v = 0; v < a.idempotents.size(); ++v) {
        if (z.dim() == 0) break;
        Subspace ez = span_of(m.dim, Mat(m.action(a.idempotents[v]) * z.basis));
        for (Index c = 0; c < ez.dim(); ++c) {
            Vec g = ez.basis.col(c);
            if (cur.contains(g)) continue;
            types.push_back(static_cast<int>(v));
            gens = hstack(gens, Mat(g));
            cur = add(cur, span_of(m.dim, Mat(g)));
        }
    }
    ProjMap out{proj_sum(m.alg, types), types, map_from_generators(m, types, gens)};
    if (!same_subspace(add(span_of(m.dim, out.map), b), add(z, b)))
        throw std::logic_error("cover_modulo: generators do not span the quotient");
    return out;
}

ProjMap projective_cover(const FinMod& m) { return cover_modulo(m, Subspace(m.dim, Mat::Identity(m.dim, m.dim)), Subspace(m.dim)); }

namespace {

bool is_projective(const FinMod& m) { return projective_cover(m).source.dim == m.dim; }

}  // namespace

// ---------------------------------------------------------------- complexes

FinMod BddComplex::at(int deg) const {
    if (deg < lo || deg > 0) return zero_module(alg);
    return terms[static_cast<size_t>(deg - lo)];
}

Mat BddComplex::diff(int deg) const {
    if (deg < lo || deg >= 0) return Mat::Zero(dim(deg + 1), dim(deg));
    return d[static_cast<size_t>(deg - lo)];
}

Index BddComplex::dim(int deg) const {
    if (deg < lo || deg > 0) return 0;
    return terms[static_cast<size_t>(deg - lo)].dim;
}

Index BddComplex::total_dim() const {
    Index n = 0;
    for (const FinMod& t : terms) n += t.dim;
    return n;
}

Index BddComplex::offset(int deg) const {
    Index n = 0;
    for (int k = lo; k < deg && k <= 0; ++k) n += dim(k);
    return n;
}

ChainComplexQ BddComplex::complex() const {
    std::vector<Index> dims;
    for (const FinMod& t : terms) dims.push_back(t.dim);
    return ChainComplexQ(lo, dims, d);
}

Mat BddComplex::total_action(Index basis) const {
    Mat m(0, 0);
    for (const FinMod& t : terms) m = block_diag(m, t.act[static_cast<size_t>(basis)]);
    return m;
}

ValidationReport validate_complex(const BddComplex& c) {
    ValidationReport r;
    if (c.lo > 0) r.add("BddComplex: range must end in degree 0");
    if (c.terms.size() != static_cast<size_t>(1 - c.lo) || c.d.size() != static_cast<size_t>(-c.lo)) {
        r.add("BddComplex: expected one term per degree in [lo, 0] and one differential between consecutive terms");
        return r;
    }
    for (int k = c.lo; k <= 0; ++k) {
        FinMod t = c.at(k);
        if (t.alg != c.alg) r.add("BddComplex: term " + std::to_string(k) + " lives over another algebra");
        r.merge(validate_mod(t), "term " + std::to_string(k) + ": ");
    }
    if (!r.ok()) return r;
    for (int k = c.lo; k < 0; ++k) {
        if (!is_module_map(c.at(k), c.at(k + 1), c.diff(k))) r.add("BddComplex: d^" + std::to_string(k) + " is not a module map");
        if (k + 1 < 0 && !is_zero(Mat(c.diff(k + 1) * c.diff(k)))) r.add("BddComplex: d∘d = 0 fails in degree " + std::to_string(k));
    }
    if (c.projective) {
        if (c.proj.size() != c.terms.size()) r.add("BddComplex: projective flag without summand data");
        else
            for (int k = c.lo; k <= 0; ++k)
                if (!same_module(c.at(k), proj_sum(c.alg, c.proj[static_cast<size_t>(k - c.lo)])))
                    r.add("BddComplex: term " + std::to_string(k) + " is not the declared sum of projectives");
    }
    return r;
}

BddComplex single_term(const FinMod& m, int deg) {
    if (deg > 0) throw std::invalid_argument("single_term: degree must be ≤ 0");
    BddComplex c;
    c.alg = m.alg;
    c.lo = deg;
    for (int k = deg; k <= 0; ++k) c.terms.push_back(k == deg ? m : zero_module(m.alg));
    for (int k = deg; k < 0; ++k) c.d.push_back(Mat::Zero(c.terms[static_cast<size_t>(k + 1 - deg)].dim, c.terms[static_cast<size_t>(k - deg)].dim));
    return c;
}

BddComplex zero_complex(const AlgPtr& a) {
    BddComplex c = single_term(zero_module(a), 0);
    c.projective = true;
    c.proj = {{}};
    return c;
}

BddComplex direct_sum(const BddComplex& e, const BddComplex& f) {
    BddComplex c;
    c.alg = e.alg;
    c.lo = std::min(e.lo, f.lo);
    for (int k = c.lo; k <= 0; ++k) c.terms.push_back(direct_sum(e.at(k), f.at(k)));
    for (int k = c.lo; k < 0; ++k) c.d.push_back(block_diag(e.diff(k), f.diff(k)));
    c.projective = e.projective && f.projective;
    if (c.projective)
        for (int k = c.lo; k <= 0; ++k) {
            std::vector<int> t;
            if (k >= e.lo) t = e.proj[static_cast<size_t>(k - e.lo)];
            if (k >= f.lo) t.insert(t.end(), f.proj[static_cast<size_t>(k - f.lo)].begin(), f.proj[static_cast<size_t>(k - f.lo)].end());
            c.proj.push_back(t);
        }
    return c;
}

Mat ModChainMap::at(int deg) const {
    const int k = deg - lo;
    if (k < 0 || k >= static_cast<int>(maps.size())) return Mat::Zero(target.dim(deg), source.dim(deg));
    return maps[static_cast<size_t>(k)];
}

Mat ModChainMap::total() const {
    Mat m = Mat::Zero(target.total_dim(), source.total_dim());
    for (int k = std::max(source.lo, target.lo); k <= 0; ++k) {
        Mat b = at(k);
        if (b.size()) m.block(target.offset(k), source.offset(k), b.rows(), b.cols()) = b;
    }
    return m;
}

ChainMapQ ModChainMap::linear() const {
    std::vector<Mat> ms;
    for (int k = lo; k <= 0; ++k) ms.push_back(at(k));
    return make_chain_map(source.complex(), target.complex(), ms, lo);
}

ValidationReport validate_chain_map(const ModChainMap& f) {
    ValidationReport r;
    for (int k = f.lo; k <= 0; ++k) {
        Mat m = f.at(k);
        if (m.rows() != f.target.dim(k) || m.cols() != f.source.dim(k)) {
            r.add("ChainMap: component in degree " + std::to_string(k) + " has the wrong shape");
            return r;
        }
        if (!is_module_map(f.source.at(k), f.target.at(k), m)) r.add("ChainMap: component in degree " + std::to_string(k) + " is not a module map");
        if (k < 0 && f.target.diff(k) * m != f.at(k + 1) * f.source.diff(k))
            r.add("ChainMap: d∘f = f∘d fails in degree " + std::to_string(k));
    }
    return r;
}

ModChainMap make_mod_map(const BddComplex& s, const BddComplex& t, const std::vector<Mat>& maps_from_lo, int lo) {
    ModChainMap f{s, t, {}, std::min(s.lo, t.lo)};
    for (int k = f.lo; k <= 0; ++k) {
        const int idx = k - lo;
        if (idx >= 0 && idx < static_cast<int>(maps_from_lo.size()) && maps_from_lo[static_cast<size_t>(idx)].size() > 0)
            f.maps.push_back(maps_from_lo[static_cast<size_t>(idx)]);
        else
            f.maps.push_back(Mat::Zero(t.dim(k), s.dim(k)));
        if (f.maps.back().rows() != t.dim(k) || f.maps.back().cols() != s.dim(k))
            throw std::invalid_argument("make_mod_map: wrong shape in degree " + std::to_string(k));
    }
    return f;
}

ModChainMap identity_chain_map(const BddComplex& c) {
    std::vector<Mat> ms;
    for (int k = c.lo; k <= 0; ++k) ms.push_back(Mat::Identity(c.dim(k), c.dim(k)));
    return make_mod_map(c, c, ms, c.lo);
}

ModChainMap zero_chain_map(const BddComplex& s, const BddComplex& t) { return make_mod_map(s, t, {}, std::min(s.lo, t.lo)); }

ModChainMap compose(const ModChainMap& f, const ModChainMap& g) {
    const int lo = std::min({g.source.lo, g.target.lo, f.target.lo});
    std::vector<Mat> ms;
    for (int k = lo; k <= 0; ++k) ms.push_back(f.at(k) * g.at(k));
    return make_mod_map(g.source, f.target, ms, lo);
}

BddComplex cone(const ModChainMap& f) {
    const BddComplex& s = f.source;
    const BddComplex& t = f.target;
    BddComplex c;
    c.alg = t.alg;
    c.lo = std::min(s.lo - 1, t.lo);
    for (int k = c.lo; k <= 0; ++k) c.terms.push_back(direct_sum(s.at(k + 1), t.at(k)));
    for (int k = c.lo; k < 0; ++k) {
        Mat m = Mat::Zero(s.dim(k + 2) + t.dim(k + 1), s.dim(k + 1) + t.dim(k));
        m.topLeftCorner(s.dim(k + 2), s.dim(k + 1)) = -s.diff(k + 1);
        m.bottomLeftCorner(t.dim(k + 1), s.dim(k + 1)) = f.at(k + 1);
        m.bottomRightCorner(t.dim(k + 1), t.dim(k)) = t.diff(k);
        c.d.push_back(m);
    }
    c.projective = s.projective && t.projective;
    if (c.projective)
        for (int k = c.lo; k <= 0; ++k) {
            std::vector<int> ty;
            if (k + 1 >= s.lo && k + 1 <= 0) ty = s.proj[static_cast<size_t>(k + 1 - s.lo)];
            if (k >= t.lo) ty.insert(ty.end(), t.proj[static_cast<size_t>(k - t.lo)].begin(), t.proj[static_cast<size_t>(k - t.lo)].end());
            c.proj.push_back(ty);
        }
    return c;
}

// ---------------------------------------------------------------- resolutions

ValidationReport validate_resolution(const Resolution& res) {
    ValidationReport r = validate_complex(res.cx);
    if (!res.cx.projective) r.add("Resolution: terms are not flagged projective");
    r.merge(validate_mod(res.target), "target: ");
    if (!r.ok()) return r;
    if (!is_module_map(res.cx.at(0), res.target, res.aug)) {
        r.add("Resolution: augmentation is not a module map");
        return r;
    }
    if (rank(res.aug) != res.target.dim) r.add("Resolution: augmentation is not surjective");
    if (!is_zero(Mat(res.aug * res.cx.diff(-1)))) r.add("Resolution: ε∘d = 0 fails");
    // E^lo → … → E^0 → M exact.
    std::vector<Index> dims;
    std::vector<Mat> diffs;
    for (int k = res.cx.lo; k <= 0; ++k) dims.push_back(res.cx.dim(k));
    dims.push_back(res.target.dim);
    for (int k = res.cx.lo; k < 0; ++k) diffs.push_back(res.cx.diff(k));
    diffs.push_back(res.aug);
    ChainComplexQ aug(res.cx.lo, dims, diffs);
    if (!is_acyclic(aug)) r.add("Resolution: augmented complex E → M → 0 is not exact");
    return r;
}

namespace {

/// Assembles a projective complex from terms listed top-down (degree 0 first).
BddComplex assemble(const AlgPtr& a, const std::vector<ProjMap>& top_down, const std::vector<Mat>& d_top_down) {
    BddComplex c;
    c.alg = a;
    c.lo = 1 - static_cast<int>(top_down.size());
    c.projective = true;
    for (auto it = top_down.rbegin(); it != top_down.rend(); ++it) {
        c.terms.push_back(it->source);
        c.proj.push_back(it->types);
    }
    for (auto it = d_top_down.rbegin(); it != d_top_down.rend(); ++it) c.d.push_back(*it);
    return c;
}

}  // namespace

Resolution projective_resolution(const FinMod& m, int n_max) {
    std::vector<ProjMap> terms{projective_cover(m)};
    std::vector<Mat> diffs;
    Subspace k = kernel(terms[0].map);
    if (terms[0].map.rows() == 0) k = Subspace(terms[0].source.dim, Mat::Identity(terms[0].source.dim, terms[0].source.dim));
    while (k.dim() > 0) {
        if (static_cast<int>(terms.size()) > n_max)
            throw std::runtime_error("projective_resolution: length exceeds n_max = " + std::to_string(n_max));
        ProjMap p = cover_modulo(terms.back().source, k, Subspace(terms.back().source.dim));
        diffs.push_back(p.map);
        k = kernel(p.map);
        terms.push_back(p);
    }
    Resolution r{assemble(m.alg, terms, diffs), m, terms[0].map};
    return r;
}

// ---------------------------------------------------------------- End-dgLas

Mat ModEnd::to_matrix(const Vec& v) const {
    const Mat& inc = sub.inclusion.m;
    Mat m = Mat::Zero(complex.total_dim(), complex.total_dim());
    for (Index j = 0; j < v.size(); ++j) {
        if (v(j) == 0) continue;
        for (Index k = 0; k < inc.rows(); ++k)
            if (inc(k, j) != 0) m(ambient->entry[static_cast<size_t>(k)].first, ambient->entry[static_cast<size_t>(k)].second) += v(j) * inc(k, j);
    }
    return m;
}

Vec ModEnd::from_matrix(const Mat& m) const {
    Vec g = ambient->from_matrix(m);
    Vec x = left_inv * g;
    if (sub.inclusion.m * x != g) throw std::invalid_argument("ModEnd::from_matrix: map is not in the sub-dgLa");
    return x;
}

ModEnd module_end(const BddComplex& c, const std::vector<KillCondition>& kill, std::shared_ptr<const EndDgla> ambient, const std::string& prefix) {
    ModEnd out;
    out.complex = c;
    out.ambient = ambient ? ambient : std::make_shared<const EndDgla>(defo::end_dgla(c.complex()));
    const Dgla& l = *out.ambient->dgla;
    std::map<std::pair<Index, Index>, int> where;
    for (size_t k = 0; k < out.ambient->entry.size(); ++k) where[out.ambient->entry[k]] = static_cast<int>(k);
    std::vector<Mat> spans;
    for (int p = l.lo(); p <= l.hi(); ++p) {
        std::vector<Vec> cols;
        for (int i = c.lo; i <= 0; ++i) {
            const int j = i + p;
            if (j < c.lo || j > 0 || c.dim(i) == 0 || c.dim(j) == 0) continue;
            Subspace h = hom_space(c.at(i), c.at(j));
            Mat basis = cols_or_empty(h);
            for (const KillCondition& kc : kill) {
                if (basis.cols() == 0) break;
                const Mat& lm = kc.left[static_cast<size_t>(j - c.lo)];
                const Mat& rm = kc.right[static_cast<size_t>(i - c.lo)];
                if (lm.rows() == 0 || rm.cols() == 0) continue;
                Mat cond = kron(Mat(rm.transpose()), lm) * basis;
                Subspace ker = kernel(cond);
                basis = ker.dim() ? Mat(basis * ker.basis) : Mat(basis.rows(), 0);
            }
            for (Index b = 0; b < basis.cols(); ++b) {
                Mat x = unvec(basis.col(b), c.dim(j), c.dim(i));
                Vec g = Vec::Zero(l.size());
                for (Index r = 0; r < x.rows(); ++r)
                    for (Index q = 0; q < x.cols(); ++q)
                        if (x(r, q) != 0) g(where.at({c.offset(j) + r, c.offset(i) + q})) = x(r, q);
                cols.push_back(g);
            }
        }
        Mat s(l.size(), static_cast<Index>(cols.size()));
        for (size_t k = 0; k < cols.size(); ++k) s.col(static_cast<Index>(k)) = cols[k];
        spans.push_back(s);
    }
    out.sub = sub_dgla(out.ambient->dgla, spans, prefix);
    out.left_inv = left_inverse(out.sub.inclusion.m);
    return out;
}

ModEnd end_dgla(const BddComplex& k) { return module_end(k); }

KillCondition preserve_condition(const ModChainMap& incl) {
    return preserve_mats(incl.target, [&](int k) { return incl.at(k); });
}

ModEnd sub_preserving_dgla(const ModChainMap& incl) {
    ValidationReport r = validate_chain_map(incl);
    if (!r.ok()) throw std::invalid_argument("sub_preserving_dgla: inclusion is not a chain map: " + r.violations.front());
    for (int k = incl.lo; k <= 0; ++k)
        if (rank(incl.at(k)) != incl.source.dim(k)) throw std::invalid_argument("sub_preserving_dgla: inclusion is not injective");
    return module_end(incl.target, {preserve_condition(incl)});
}

Graph graph_complex(const ModChainMap& f) {
    Graph g;
    g.graph = f.source;
    BddComplex sum = direct_sum(f.source, f.target);
    std::vector<Mat> ms;
    for (int k = sum.lo; k <= 0; ++k) ms.push_back(vstack(Mat::Identity(f.source.dim(k), f.source.dim(k)), f.at(k)));
    g.inclusion = make_mod_map(f.source, sum, ms, sum.lo);
    return g;
}

// ---------------------------------------------------------------- lifting

ValidationReport validate_lift(const MorphismLift& l, const Mat& alpha) {
    ValidationReport r;
    r.merge(validate_resolution(l.res_f), "res_F: ");
    r.merge(validate_resolution(l.res_g), "res_G: ");
    r.merge(validate_chain_map(l.lift), "lift: ");
    if (!r.ok()) return r;
    if (!is_module_map(l.res_f.target, l.res_g.target, alpha)) r.add("lift: α is not a module map F → G");
    else if (l.res_g.aug * l.lift.at(0) != alpha * l.res_f.aug) r.add("lift: ε_G∘α⁰ = α∘ε_F fails");
    return r;
}

MorphismLift lift_morphism(const FinMod& f, const Mat& alpha, const Resolution& res_g, int n_max) {
    const FinMod& g = res_g.target;
    if (!is_module_map(f, g, alpha)) throw std::invalid_argument("lift_morphism: α is not a module map");
    ValidationReport vr = validate_resolution(res_g);
    if (!vr.ok()) throw std::invalid_argument("lift_morphism: res_G is not a resolution: " + vr.violations.front());
    const BddComplex& eg = res_g.cx;
    if (same_module(f, g) && is_identity(alpha)) return MorphismLift{res_g, res_g, identity_chain_map(eg)};
    if (is_zero(alpha)) {
        Resolution rf = projective_resolution(f, n_max);
        return MorphismLift{rf, res_g, zero_chain_map(rf.cx, eg)};
    }
    // Degree 0: cover of E_G^0 ×_G F.
    FinMod x = direct_sum(eg.at(0), f);
    Subspace z = kernel(hstack(res_g.aug, Mat(-alpha)));
    ProjMap pc = cover_modulo(x, z, Subspace(x.dim));
    std::vector<ProjMap> terms{pc};
    std::vector<Mat> lifts{pc.map.topRows(eg.dim(0))};
    std::vector<Mat> diffs;
    const Mat aug = pc.map.bottomRows(f.dim);
    Subspace k = kernel(aug);
    if (aug.rows() == 0) k = Subspace(pc.source.dim, Mat::Identity(pc.source.dim, pc.source.dim));
    int r = 0;
    while (k.dim() > 0) {
        --r;
        if (-r > n_max) throw std::runtime_error("lift_morphism: resolution length exceeds n_max = " + std::to_string(n_max));
        const FinMod& cur = terms.back().source;
        const Mat& cur_lift = lifts.back();
        FinMod xr = direct_sum(eg.at(r), cur);
        // {(e, c) : d_G e = α^{r+1} c, c ∈ ker d}.
        Subspace fib = kernel(hstack(eg.diff(r), Mat(-cur_lift)));
        Subspace in_k(xr.dim, block_diag(Mat::Identity(eg.dim(r), eg.dim(r)), k.basis));
        Subspace zr = intersect(fib, in_k);
        ProjMap p = cover_modulo(xr, zr, Subspace(xr.dim));
        lifts.push_back(p.map.topRows(eg.dim(r)));
        diffs.push_back(p.map.bottomRows(cur.dim));
        k = kernel(diffs.back());
        terms.push_back(p);
    }
    Resolution rf{assemble(f.alg, terms, diffs), f, aug};
    std::vector<Mat> ms;
    const int lo = std::min(rf.cx.lo, eg.lo);
    for (int d = lo; d <= 0; ++d) {
        if (d < rf.cx.lo) ms.push_back(Mat::Zero(eg.dim(d), 0));
        else ms.push_back(lifts[static_cast<size_t>(-d)]);
    }
    return MorphismLift{rf, res_g, make_mod_map(rf.cx, eg, ms, lo)};
}

ModChainMap comparison_map(const Resolution& p, const Resolution& e, const Mat& phi) {
    if (!is_module_map(p.target, e.target, phi)) throw std::invalid_argument("comparison_map: φ is not a module map");
    std::vector<Mat> down;  // degree 0, −1, …
    auto c0 = solve_hom(p.cx.at(0), e.cx.at(0), e.aug, Mat(phi * p.aug));
    if (!c0) throw std::logic_error("comparison_map: no lift in degree 0");
    down.push_back(*c0);
    for (int k = -1; k >= p.cx.lo; --k) {
        auto ck = solve_hom(p.cx.at(k), e.cx.at(k), e.cx.diff(k), Mat(down.back() * p.cx.diff(k)));
        if (!ck) throw std::logic_error("comparison_map: no lift in degree " + std::to_string(k));
        down.push_back(*ck);
    }
    const int lo = std::min(p.cx.lo, e.cx.lo);
    std::vector<Mat> ms;
    for (int k = lo; k <= 0; ++k) ms.push_back(k >= p.cx.lo ? down[static_cast<size_t>(-k)] : Mat(Mat::Zero(e.cx.dim(k), 0)));
    return make_mod_map(p.cx, e.cx, ms, lo);
}

// ---------------------------------------------------------------- pairs

ValidationReport validate_pair(const PairResolution& p) {
    ValidationReport r;
    r.merge(validate_resolution(p.sub), "sub: ");
    r.merge(validate_resolution(p.amb), "amb: ");
    r.merge(validate_chain_map(p.incl), "incl: ");
    if (!r.ok()) return r;
    if (!is_module_map(p.sub.target, p.amb.target, p.j) || rank(p.j) != p.sub.target.dim) r.add("pair: j is not an injective module map");
    else if (p.amb.aug * p.incl.at(0) != p.j * p.sub.aug) r.add("pair: ε∘ι⁰ = j∘ε fails");
    for (int k = p.incl.lo; k <= 0; ++k) {
        const Mat m = p.incl.at(k);
        if (rank(m) != p.sub.cx.dim(k)) {
            r.add("pair: inclusion is not injective in degree " + std::to_string(k));
            continue;
        }
        if (!is_projective(quotient(p.amb.cx.at(k), span_of(p.amb.cx.dim(k), m)).first))
            r.add("pair: cokernel of the inclusion is not projective in degree " + std::to_string(k));
    }
    return r;
}

PairResolution graph_pair(const MorphismLift& l, const Mat& alpha) {
    Graph g = graph_complex(l.lift);
    Resolution amb{direct_sum(l.res_f.cx, l.res_g.cx), direct_sum(l.res_f.target, l.res_g.target), block_diag(l.res_f.aug, l.res_g.aug)};
    return PairResolution{l.res_f, amb, g.inclusion, vstack(Mat::Identity(alpha.cols(), alpha.cols()), alpha)};
}

PairResolution pad_pair(const PairResolution& p, int vertex, int deg, bool both) {
    if (deg > 0) throw std::invalid_argument("pad_pair: degree must be ≤ 0");
    const AlgPtr& a = p.amb.cx.alg;
    FinMod pv = proj_module(a, vertex);
    BddComplex t;
    t.alg = a;
    t.lo = deg - 1;
    t.projective = true;
    for (int k = t.lo; k <= 0; ++k) {
        const bool on = (k == deg || k == deg - 1);
        t.terms.push_back(on ? pv : zero_module(a));
        t.proj.push_back(on ? std::vector<int>{vertex} : std::vector<int>{});
    }
    for (int k = t.lo; k < 0; ++k)
        t.d.push_back(k == deg - 1 ? Mat(Mat::Identity(pv.dim, pv.dim)) : Mat(Mat::Zero(t.terms[static_cast<size_t>(k + 1 - t.lo)].dim, t.terms[static_cast<size_t>(k - t.lo)].dim)));
    PairResolution out = p;
    out.amb.cx = direct_sum(p.amb.cx, t);
    out.amb.aug = hstack(p.amb.aug, Mat(Mat::Zero(p.amb.target.dim, t.dim(0))));
    if (both) {
        out.sub.cx = direct_sum(p.sub.cx, t);
        out.sub.aug = hstack(p.sub.aug, Mat(Mat::Zero(p.sub.target.dim, t.dim(0))));
    }
    std::vector<Mat> ms;
    const int lo = std::min(out.sub.cx.lo, out.amb.cx.lo);
    for (int k = lo; k <= 0; ++k) {
        Mat m = both ? block_diag(p.incl.at(k), Mat(Mat::Identity(t.dim(k), t.dim(k)))) : vstack(p.incl.at(k), Mat(Mat::Zero(t.dim(k), p.sub.cx.dim(k))));
        ms.push_back(m);
    }
    out.incl = make_mod_map(out.sub.cx, out.amb.cx, ms, lo);
    return out;
}

CombinedResolution combined_resolution(const PairResolution& a, const PairResolution& b, int n_max) {
    for (const PairResolution* p : {&a, &b}) {
        ValidationReport r = validate_pair(*p);
        if (!r.ok()) throw std::invalid_argument("combined_resolution: input pair is invalid: " + r.violations.front());
    }
    if (!same_module(a.sub.target, b.sub.target) || !same_module(a.amb.target, b.amb.target) || a.j != b.j)
        throw std::invalid_argument("combined_resolution: pairs resolve different inclusions");
    const AlgPtr& alg = a.amb.cx.alg;
    const BddComplex oq = direct_sum(a.sub.cx, b.sub.cx);
    const BddComplex op = direct_sum(a.amb.cx, b.amb.cx);
    auto old_incl = [&](int k) { return block_diag(a.incl.at(k), b.incl.at(k)); };
    const int old_lo = std::min(oq.lo, op.lo);

    // Per degree, top-down: R^k and X^k generators, with Q^k = oq^k ⊕ R^k, P^k = op^k ⊕ R^k ⊕ X^k.
    struct Level {
        ProjMap r, x;
        FinMod q, p;
        Mat dq, dp;  // out of this degree (to the previous level or the target at degree 0)
        Mat incl;
    };
    std::vector<Level> lv;
    {
        Level l0;
        l0.r = ProjMap{zero_module(alg), {}, Mat()};
        l0.x = l0.r;
        l0.q = oq.at(0);
        l0.p = op.at(0);
        l0.dq = hstack(a.sub.aug, b.sub.aug);
        l0.dp = hstack(a.amb.aug, b.amb.aug);
        l0.incl = old_incl(0);
        lv.push_back(l0);
    }
    for (int k = 0;; --k) {
        const Level& cur = lv.back();
        if (-k > n_max - old_lo) throw std::runtime_error("combined_resolution: length exceeds n_max = " + std::to_string(n_max));
        // Old boundaries into degree k.
        auto embed = [](const Mat& m, Index rows) { return vstack(m, Mat(Mat::Zero(rows - m.rows(), m.cols()))); };
        Mat bq = embed(oq.diff(k - 1), cur.q.dim);
        Mat bp = embed(op.diff(k - 1), cur.p.dim);
        Subspace zq = cur.dq.rows() ? kernel(cur.dq) : Subspace(cur.q.dim, Mat::Identity(cur.q.dim, cur.q.dim));
        Subspace zp = cur.dp.rows() ? kernel(cur.dp) : Subspace(cur.p.dim, Mat::Identity(cur.p.dim, cur.p.dim));
        ProjMap rq = cover_modulo(cur.q, zq, span_of(cur.q.dim, bq));
        Mat r_in_p = cur.incl * rq.map;
        ProjMap xp = cover_modulo(cur.p, zp, add(span_of(cur.p.dim, bp), span_of(cur.p.dim, r_in_p)));
        if (rq.types.empty() && xp.types.empty() && k - 1 < old_lo) break;
        Level nx;
        nx.r = rq;
        nx.x = xp;
        nx.q = direct_sum(oq.at(k - 1), rq.source);
        nx.p = direct_sum(direct_sum(op.at(k - 1), rq.source), xp.source);
        nx.dq = hstack(bq, rq.map);
        if (nx.dq.cols() == 0) nx.dq = Mat(cur.q.dim, nx.q.dim);
        nx.dp = hstack(hstack(bp, r_in_p), xp.map);
        if (nx.dp.cols() == 0) nx.dp = Mat(cur.p.dim, nx.p.dim);
        nx.incl = Mat::Zero(nx.p.dim, nx.q.dim);
        {
            Mat oi = old_incl(k - 1);
            nx.incl.topLeftCorner(oi.rows(), oi.cols()) = oi;
            nx.incl.block(oi.rows(), oi.cols(), rq.source.dim, rq.source.dim) = Mat::Identity(rq.source.dim, rq.source.dim);
        }
        lv.push_back(nx);
    }
    // lv[i] sits in degree −i.
    const int lo = 1 - static_cast<int>(lv.size());
    BddComplex q, p, rc, nc;
    for (BddComplex* c : {&q, &p, &rc, &nc}) {
        c->alg = alg;
        c->lo = lo;
        c->projective = true;
    }
    for (int k = lo; k <= 0; ++k) {
        const Level& l = lv[static_cast<size_t>(-k)];
        std::vector<int> tq = k >= oq.lo ? oq.proj[static_cast<size_t>(k - oq.lo)] : std::vector<int>{};
        std::vector<int> tp = k >= op.lo ? op.proj[static_cast<size_t>(k - op.lo)] : std::vector<int>{};
        tq.insert(tq.end(), l.r.types.begin(), l.r.types.end());
        tp.insert(tp.end(), l.r.types.begin(), l.r.types.end());
        tp.insert(tp.end(), l.x.types.begin(), l.x.types.end());
        std::vector<int> tn = l.r.types;
        tn.insert(tn.end(), l.x.types.begin(), l.x.types.end());
        q.terms.push_back(l.q);
        q.proj.push_back(tq);
        p.terms.push_back(l.p);
        p.proj.push_back(tp);
        rc.terms.push_back(l.r.source);
        rc.proj.push_back(l.r.types);
        nc.terms.push_back(direct_sum(l.r.source, l.x.source));
        nc.proj.push_back(tn);
    }
    for (int k = lo; k < 0; ++k) {
        const Level& l = lv[static_cast<size_t>(-k)];
        const Level& up = lv[static_cast<size_t>(-k - 1)];
        q.d.push_back(l.dq);
        p.d.push_back(l.dp);
        // Induced differentials on the quotients: the new-generator rows and columns.
        const Index oq_k = oq.dim(k), oq_up = oq.dim(k + 1), op_k = op.dim(k), op_up = op.dim(k + 1);
        rc.d.push_back(l.dq.block(oq_up, oq_k, up.r.source.dim, l.r.source.dim));
        nc.d.push_back(l.dp.block(op_up, op_k, up.r.source.dim + up.x.source.dim, l.r.source.dim + l.x.source.dim));
    }
    CombinedResolution out;
    out.first = a;
    out.second = b;
    out.r = rc;
    out.n = nc;
    std::vector<Mat> inc;
    for (int k = lo; k <= 0; ++k) inc.push_back(lv[static_cast<size_t>(-k)].incl);
    out.combined = PairResolution{Resolution{q, a.sub.target, lv[0].dq}, Resolution{p, a.amb.target, lv[0].dp}, make_mod_map(q, p, inc, lo), a.j};

    // Inclusions of the given resolutions: first or second summand of the old part.
    auto summand = [&](const BddComplex& whole, const BddComplex& first_part, const BddComplex& second_part, const BddComplex& part, bool second) {
        std::vector<Mat> ms;
        const int l0 = std::min(part.lo, whole.lo);
        for (int k = l0; k <= 0; ++k) {
            Mat m = Mat::Zero(whole.dim(k), part.dim(k));
            if (part.dim(k)) m.block(second ? first_part.dim(k) : 0, 0, part.dim(k), part.dim(k)) = Mat::Identity(part.dim(k), part.dim(k));
            (void)second_part;
            ms.push_back(m);
        }
        return make_mod_map(part, whole, ms, l0);
    };
    out.i1 = summand(q, a.sub.cx, b.sub.cx, a.sub.cx, false);
    out.i2 = summand(q, a.sub.cx, b.sub.cx, b.sub.cx, true);
    out.j1 = summand(p, a.amb.cx, b.amb.cx, a.amb.cx, false);
    out.j2 = summand(p, a.amb.cx, b.amb.cx, b.amb.cx, true);

    // Verification.
    ValidationReport& chk = out.check;
    chk.merge(validate_pair(out.combined), "Q ⊂ P: ");
    chk.merge(validate_complex(rc), "R: ");
    chk.merge(validate_complex(nc), "N: ");
    out.quasi_isos = true;
    for (auto [name, m] : {std::pair{"i1", &out.i1}, {"i2", &out.i2}, {"j1", &out.j1}, {"j2", &out.j2}}) {
        ValidationReport r = validate_chain_map(*m);
        chk.merge(r, std::string(name) + ": ");
        if (!r.ok() || !is_quasi_iso(m->linear())) {
            out.quasi_isos = false;
            if (r.ok()) chk.add(std::string(name) + ": not a quasi-isomorphism");
        }
    }
    if (chk.ok()) {
        if (compose(out.combined.incl, out.i1).total() != compose(out.j1, a.incl).total()) chk.add("ι_Q∘i₁ = j₁∘ι fails");
        if (compose(out.combined.incl, out.i2).total() != compose(out.j2, b.incl).total()) chk.add("ι_Q∘i₂ = j₂∘ι' fails");
        if (out.combined.sub.aug * out.i1.at(0) != a.sub.aug) chk.add("ε_Q∘i₁ = ε_F fails");
        if (out.combined.amb.aug * out.j2.at(0) != b.amb.aug) chk.add("ε_P∘j₂ = ε_G' fails");
    }
    // Rows 0 → E ⊕ E' → Q → R → 0 and 0 → E_G ⊕ E_G' → P → N → 0.
    auto row = [&](const BddComplex& old, const BddComplex& whole, const BddComplex& quot, const std::string& name) {
        auto in = [&](int k) { return vstack(Mat::Identity(old.dim(k), old.dim(k)), Mat(Mat::Zero(whole.dim(k) - old.dim(k), old.dim(k)))); };
        auto pr = [&](int k) { return hstack(Mat(Mat::Zero(quot.dim(k), old.dim(k))), Mat(Mat::Identity(quot.dim(k), quot.dim(k)))); };
        for (int k = lo; k <= 0; ++k) {
            const Index o = old.dim(k), w = whole.dim(k), n = quot.dim(k);
            if (w != o + n) {
                chk.add(name + ": dimensions do not add up in degree " + std::to_string(k));
                continue;
            }
            const Mat i = in(k), p = pr(k);
            if (rank(i) != o || rank(p) != n || !is_zero(Mat(p * i)))
                chk.add(name + ": row is not short exact in degree " + std::to_string(k));
            if (!is_module_map(old.at(k), whole.at(k), i) || !is_module_map(whole.at(k), quot.at(k), p))
                chk.add(name + ": row maps are not module maps in degree " + std::to_string(k));
            if (k < 0 && whole.dim(k + 1) == old.dim(k + 1) + quot.dim(k + 1) &&
                (whole.diff(k) * i != in(k + 1) * old.diff(k) || pr(k + 1) * whole.diff(k) != quot.diff(k) * p))
                chk.add(name + ": row maps do not commute with d in degree " + std::to_string(k));
        }
    };
    const size_t before = chk.violations.size();
    row(oq, q, rc, "Q row");
    row(op, p, nc, "P row");
    out.rows_exact = chk.violations.size() == before;
    return out;
}

ConeComparison cone_comparison(const PairResolution& e, const PairResolution& p, const ModChainMap& j1) {
    ValidationReport r = validate_chain_map(j1);
    if (!r.ok()) throw std::invalid_argument("cone_comparison: j1 is not a chain map");
    if (!is_quasi_iso(j1.linear())) throw std::invalid_argument("cone_comparison: j1 is not a quasi-isomorphism");
    // Restriction E_sub → P_sub.
    std::vector<Mat> res;
    const int lo = std::min(e.sub.cx.lo, p.sub.cx.lo);
    for (int k = lo; k <= 0; ++k) {
        Mat img = j1.at(k) * e.incl.at(k);
        Mat pi = p.incl.at(k);
        Mat x = Mat::Zero(pi.cols(), img.cols());
        if (pi.cols() > 0) x = left_inverse(pi) * img;
        if (pi * x != img) throw std::invalid_argument("cone_comparison: j1 does not preserve the subcomplexes");
        res.push_back(x);
    }
    ModChainMap jsub = make_mod_map(e.sub.cx, p.sub.cx, res, lo);
    if (!is_quasi_iso(jsub.linear())) throw std::invalid_argument("cone_comparison: restriction of j1 is not a quasi-isomorphism");

    ConeComparison out;
    const BddComplex& eg = e.amb.cx;
    const BddComplex& pc = p.amb.cx;
    out.cone = cone(j1);
    const BddComplex& c = out.cone;
    // P ⊂ C and cone(E_sub → P_sub) ⊂ C.
    KillCondition keep_p = preserve_mats(c, [&](int k) { return vstack(Mat(Mat::Zero(eg.dim(k + 1), pc.dim(k))), Mat(Mat::Identity(pc.dim(k), pc.dim(k)))); });
    KillCondition keep_sub = preserve_mats(c, [&](int k) { return block_diag(e.incl.at(k + 1), p.incl.at(k)); });
    out.d = module_end(c, {keep_p, keep_sub}, nullptr, "D.");
    out.l = sub_preserving_dgla(e.incl);
    out.m = sub_preserving_dgla(p.incl);
    Mat se = selector(c, eg, [&](int) { return Index(0); });
    // E^{k+1} sits at the start of C^k: shift positions by one degree.
    se = Mat::Zero(c.total_dim(), eg.total_dim());
    for (int k = eg.lo; k <= 0; ++k)
        for (Index q = 0; q < eg.dim(k); ++q) se(c.offset(k - 1) + q, eg.offset(k) + q) = 1;
    Mat sp = selector(c, pc, [&](int k) { return eg.dim(k + 1); });
    const Dgla& dd = *out.d.dgla();
    Mat m1 = Mat::Zero(out.l.dgla()->size(), dd.size()), m2 = Mat::Zero(out.m.dgla()->size(), dd.size());
    for (int i = 0; i < dd.size(); ++i) {
        Vec v = Vec::Zero(dd.size());
        v(i) = 1;
        Mat phi = out.d.to_matrix(v);
        m1.col(i) = out.l.from_matrix(Mat(Rat(parity(dd.degree(i))) * se.transpose() * phi * se));
        m2.col(i) = out.m.from_matrix(Mat(sp.transpose() * phi * sp));
    }
    out.pi1 = DglaMap{out.d.dgla(), out.l.dgla(), m1};
    out.pi2 = DglaMap{out.d.dgla(), out.m.dgla(), m2};
    out.check.merge(validate_map(out.pi1), "π₁: ");
    out.check.merge(validate_map(out.pi2), "π₂: ");
    out.pi1_surjective = rank(m1) == out.l.dgla()->size();
    out.pi2_surjective = rank(m2) == out.m.dgla()->size();
    out.pi1_quasi_iso = is_quasi_iso(chain_map(out.pi1));
    out.pi2_quasi_iso = is_quasi_iso(chain_map(out.pi2));
    return out;
}

// ---------------------------------------------------------------- H(V)

HData build_H(const MorphismLift& lift, const Mat& alpha) {
    ValidationReport vr = validate_lift(lift, alpha);
    if (!vr.ok()) throw std::invalid_argument("build_H: incompatible data: " + vr.violations.front());
    HData hd;
    hd.lift = lift;
    hd.alpha = alpha;
    const BddComplex& ef = lift.res_f.cx;
    const BddComplex& eg = lift.res_g.cx;
    hd.sum = direct_sum(ef, eg);
    hd.graph = graph_complex(lift.lift);
    auto amb = std::make_shared<const EndDgla>(defo::end_dgla(hd.sum.complex()));
    hd.end_f = module_end(ef, {}, nullptr, "F.");
    hd.end_g = module_end(eg, {}, nullptr, "G.");
    hd.end_sum = module_end(hd.sum, {}, amb, "S.");
    hd.l = module_end(hd.sum, {preserve_condition(hd.graph.inclusion)}, amb, "L.");
    KillCondition rows_f, cols_g;
    for (int k = hd.sum.lo; k <= 0; ++k) {
        const Index f = ef.dim(k), g = eg.dim(k);
        rows_f.left.push_back(hstack(Mat(Mat::Identity(f, f)), Mat(Mat::Zero(f, g))));
        rows_f.right.push_back(Mat::Identity(f + g, f + g));
        cols_g.left.push_back(Mat::Identity(f + g, f + g));
        cols_g.right.push_back(vstack(Mat(Mat::Zero(f, g)), Mat(Mat::Identity(g, g))));
    }
    hd.hom_fg = module_end(hd.sum, {rows_f, cols_g}, amb, "H.");
    hd.level0 = direct_sum_of({hd.end_f.dgla(), hd.end_g.dgla(), hd.l.dgla()}, {"F", "G", "L"});

    const Mat sf = selector(hd.sum, ef, [](int) { return Index(0); });
    const Mat sg = selector(hd.sum, eg, [&](int k) { return ef.dim(k); });
    const Dgla& l0 = *hd.level0.sum;
    const Index ns = hd.end_sum.dgla()->size();
    Mat f0 = Mat::Zero(ns, l0.size()), f1 = Mat::Zero(ns, l0.size());
    for (size_t part = 0; part < 3; ++part)
        for (size_t j = 0; j < hd.level0.pos[part].size(); ++j) {
            const int col = hd.level0.pos[part][j];
            Vec v = Vec::Zero(hd.level0.parts[part]->size());
            v(static_cast<Index>(j)) = 1;
            if (part == 0) f0.col(col) = hd.end_sum.from_matrix(Mat(sf * hd.end_f.to_matrix(v) * sf.transpose()));
            if (part == 1) f0.col(col) = hd.end_sum.from_matrix(Mat(sg * hd.end_g.to_matrix(v) * sg.transpose()));
            if (part == 2) f1.col(col) = hd.end_sum.from_matrix(hd.l.to_matrix(v));
        }
    hd.h.levels = {hd.level0.sum, hd.end_sum.dgla()};
    hd.h.faces = {{}, {DglaMap{hd.level0.sum, hd.end_sum.dgla(), f0}, DglaMap{hd.level0.sum, hd.end_sum.dgla(), f1}}};
    return hd;
}

Index HCohomology::at(int i) const {
    if (i < lo || i >= lo + static_cast<int>(dims.size())) return 0;
    return dims[static_cast<size_t>(i - lo)];
}

HCohomology h_cohomology(const ScDgla& h) {
    if (h.top() != 1) throw std::invalid_argument("h_cohomology: expected two levels");
    DglaMap diff{h.levels[0], h.levels[1], Mat(h.face(0, 1).m - h.face(1, 1).m)};
    ChainComplexQ c = cone(chain_map(diff));
    HCohomology out;
    out.lo = c.lo() + 1;
    for (int i = c.lo(); i <= c.hi(); ++i) out.dims.push_back(cohomology(c, i).dim);
    return out;
}

HCohomology h_cohomology_cover(const ScDgla& h, int opens) {
    if (opens < 1) throw std::invalid_argument("h_cohomology_cover: need at least one open");
    ChainComplexQ t = total_complex(h).complex;
    // Alternating Čech cochains of the constant presheaf t: C^n = ⊕_p ⊕_{|J|=p+1} t^{n−p}.
    std::vector<std::vector<std::vector<int>>> idx;
    for (int p = 0; p < opens; ++p) idx.push_back(multi_indices(opens, p));
    const int lo = t.lo(), hi = t.hi() + opens - 1;
    auto block_off = [&](int n, int p) {
        Index o = 0;
        for (int q = 0; q < p; ++q) o += static_cast<Index>(idx[static_cast<size_t>(q)].size()) * t.dim(n - q);
        return o;
    };
    std::vector<Index> dims;
    for (int n = lo; n <= hi; ++n) dims.push_back(block_off(n, opens));
    std::vector<Mat> diffs;
    for (int n = lo; n < hi; ++n) {
        Mat m = Mat::Zero(dims[static_cast<size_t>(n + 1 - lo)], dims[static_cast<size_t>(n - lo)]);
        for (int p = 0; p < opens; ++p) {
            const int q = n - p;
            const Index dq = t.dim(q);
            if (dq == 0) continue;
            const auto& js = idx[static_cast<size_t>(p)];
            for (size_t a = 0; a < js.size(); ++a) {
                const Index col = block_off(n, p) + static_cast<Index>(a) * dq;
                if (t.dim(q + 1)) m.block(block_off(n + 1, p) + static_cast<Index>(a) * t.dim(q + 1), col, t.dim(q + 1), dq) = t.d(q);
                if (p + 1 >= opens) continue;
                const auto& ks = idx[static_cast<size_t>(p + 1)];
                for (size_t b = 0; b < ks.size(); ++b)
                    for (size_t drop = 0; drop < ks[b].size(); ++drop) {
                        std::vector<int> face = ks[b];
                        face.erase(face.begin() + static_cast<long>(drop));
                        if (face != js[a]) continue;
                        const Index row = block_off(n + 1, p + 1) + static_cast<Index>(b) * dq;
                        m.block(row, col, dq, dq) += Rat(parity(q) * parity(static_cast<int>(drop))) * Mat::Identity(dq, dq);
                    }
            }
        }
        diffs.push_back(m);
    }
    ChainComplexQ c(lo, dims, diffs);
    HCohomology out;
    out.lo = lo;
    for (int i = lo; i <= hi; ++i) out.dims.push_back(cohomology(c, i).dim);
    return out;
}

// ---------------------------------------------------------------- Ext oracle

HomComplex hom_complex(const Resolution& p, const FinMod& n) {
    HomComplex out;
    out.res = p;
    out.target = n;
    const int len = p.length();
    std::vector<Index> dims;
    for (int i = 0; i <= len; ++i) {
        Subspace h = hom_space(p.cx.at(-i), n);
        Mat b = h.dim() ? h.basis : Mat(p.cx.dim(-i) * n.dim, 0);
        out.basis.push_back(b);
        out.left_inv.push_back(b.cols() ? left_inverse(b) : Mat(0, b.rows()));
        dims.push_back(b.cols());
    }
    std::vector<Mat> diffs;
    for (int i = 0; i < len; ++i) {
        Mat m = Mat::Zero(dims[static_cast<size_t>(i + 1)], dims[static_cast<size_t>(i)]);
        const Mat dp = p.cx.diff(-i - 1);
        for (Index c = 0; c < dims[static_cast<size_t>(i)]; ++c) {
            Mat x = unvec(out.basis[static_cast<size_t>(i)].col(c), n.dim, p.cx.dim(-i));
            Vec y = vec(Mat(Rat(-parity(i)) * x * dp));
            Vec co = out.left_inv[static_cast<size_t>(i + 1)] * y;
            if (out.basis[static_cast<size_t>(i + 1)] * co != y) throw std::logic_error("hom_complex: differential leaves Hom_A");
            m.col(c) = co;
        }
        diffs.push_back(m);
    }
    out.complex = ChainComplexQ(0, dims, diffs);
    return out;
}

std::vector<Index> ext_bruteforce(const FinMod& f, const FinMod& g, int n_max) {
    HomComplex h = hom_complex(projective_resolution(f, n_max), g);
    std::vector<Index> out;
    for (int i = 0; i <= n_max; ++i) out.push_back(cohomology(h.complex, i).dim);
    return out;
}

// ---------------------------------------------------------------- long exact sequence

bool LesReport::exact() const {
    if (!negative_vanish || !comparison_iso || !comparison_commutes || !quasi_iso_cone || !h0_is_kernel) return false;
    for (const Junction& j : junctions)
        if (!j.exact) return false;
    return !junctions.empty();
}

namespace {

/// Chain map from a sub-dgLa of End(E_X ⊕ E_Y)-type data to Hom_A(P_X, Y): φ ↦ ε∘φ_{0←−i}∘c^{−i}.
ChainMapQ oracle_map(const Dgla& src, const std::function<Mat(int)>& block_matrix, const HomComplex& o, const BddComplex& ex,
                     const FinMod& y, const Mat& eps, const ModChainMap& c) {
    const ChainComplexQ s = src.complex();
    return linear_map(s, o.complex, [&](int i) {
        Mat m = Mat::Zero(o.complex.dim(i), s.dim(i));
        for (Index b = 0; b < s.dim(i); ++b) {
            Mat phi = block_matrix(src.offset(i) + static_cast<int>(b));
            Mat blk = phi.block(0, ex.offset(-i), phi.rows(), ex.dim(-i));
            Mat psi = eps * blk * c.at(-i);
            Vec v = vec(psi);
            Vec co = o.left_inv[static_cast<size_t>(i)] * v;
            if (o.basis[static_cast<size_t>(i)] * co != v) throw std::logic_error("les_check: comparison leaves Hom_A");
            m.col(b) = co;
        }
        (void)y;
        return m;
    });
}

Junction junction(const std::string& at, int deg, const Mat& in, const Mat& out, Index middle) {
    Junction j;
    j.at = at;
    j.degree = deg;
    j.dim_middle = middle;
    j.rank_in = in.size() ? rank(in) : 0;
    j.rank_out = out.size() ? rank(out) : 0;
    j.composite_zero = (in.cols() == 0 || out.rows() == 0) ? true : is_zero(Mat(out * in));
    j.exact = j.composite_zero && j.rank_in + j.rank_out == middle;
    return j;
}

}  // namespace

LesReport les_check(const HData& hd, int max_degree) {
    LesReport rep;
    rep.max_degree = max_degree;
    const BddComplex& ef = hd.lift.res_f.cx;
    const BddComplex& eg = hd.lift.res_g.cx;
    const FinMod& f = hd.lift.res_f.target;
    const FinMod& g = hd.lift.res_g.target;
    const Mat at = hd.lift.lift.total();  // α^· on total spaces
    const Mat sf = selector(hd.sum, ef, [](int) { return Index(0); });
    const Mat sg = selector(hd.sum, eg, [&](int k) { return ef.dim(k); });

    TotalComplex tot = total_complex(hd.h);
    const ChainComplexQ& t = tot.complex;
    DirectSum asum = direct_sum_of({hd.end_f.dgla(), hd.end_g.dgla()}, {"F", "G"});
    const Dgla& ad = *asum.sum;
    const Dgla& bd = *hd.hom_fg.dgla();
    const ChainComplexQ ac = ad.complex(), bc = bd.complex();

    // ū(f, g) = g∘α − α∘f.
    Mat ubar = Mat::Zero(bd.size(), ad.size());
    for (size_t part = 0; part < 2; ++part)
        for (size_t j = 0; j < asum.pos[part].size(); ++j) {
            Vec v = Vec::Zero(asum.parts[part]->size());
            v(static_cast<Index>(j)) = 1;
            Mat h = part == 0 ? Mat(-at * hd.end_f.to_matrix(v)) : Mat(hd.end_g.to_matrix(v) * at);
            ubar.col(asum.pos[part][j]) = hd.hom_fg.from_matrix(Mat(sg * h * sf.transpose()));
        }
    // K^i = A^i ⊕ B^{i−1}, d = (d a, (−1)^{i+1} ū a + d b).
    const int klo = std::min(ac.lo(), bc.lo() + 1), khi = std::max(ac.hi(), bc.hi() + 1);
    std::vector<Index> kd;
    std::vector<Mat> kdiff;
    for (int i = klo; i <= khi; ++i) kd.push_back(ac.dim(i) + bc.dim(i - 1));
    for (int i = klo; i < khi; ++i) {
        Mat m = Mat::Zero(ac.dim(i + 1) + bc.dim(i), ac.dim(i) + bc.dim(i - 1));
        m.topLeftCorner(ac.dim(i + 1), ac.dim(i)) = ac.d(i);
        m.bottomLeftCorner(bc.dim(i), ac.dim(i)) = Rat(parity(i + 1)) * degree_block(ad, bd, ubar, i);
        m.bottomRightCorner(bc.dim(i), bc.dim(i - 1)) = bc.d(i - 1);
        kdiff.push_back(m);
    }
    const ChainComplexQ k(klo, kd, kdiff);

    // Tot H → A (projection) and Tot H → K.
    const Dgla& l0 = *hd.level0.sum;
    const Dgla& l1 = *hd.end_sum.dgla();
    Mat pr0 = Mat::Zero(ad.size(), l0.size());
    for (size_t part = 0; part < 2; ++part)
        for (size_t j = 0; j < hd.level0.pos[part].size(); ++j) pr0(asum.pos[part][j], hd.level0.pos[part][j]) = 1;
    // q(φ) = p∘φ∘ι with ι = (1, α) and p = (−α, 1).
    const Mat iota = sf + sg * at;
    const Mat proj = sg.transpose() - at * sf.transpose();
    Mat qm = Mat::Zero(bd.size(), l1.size());
    for (int j = 0; j < l1.size(); ++j) {
        Vec v = Vec::Zero(l1.size());
        v(j) = 1;
        Mat h = proj * hd.end_sum.to_matrix(v) * iota;
        qm.col(j) = hd.hom_fg.from_matrix(Mat(sg * h * sf.transpose()));
    }
    ChainMapQ psi = linear_map(t, k, [&](int i) {
        Mat m = Mat::Zero(k.dim(i), t.dim(i));
        Mat a = degree_block(l0, ad, pr0, i);
        if (a.size()) m.block(0, tot.block_offset(i, 0), a.rows(), a.cols()) = a;
        Mat b = degree_block(l1, bd, qm, i - 1);
        if (b.size()) m.block(ac.dim(i), tot.block_offset(i, 1), b.rows(), b.cols()) = b;
        return m;
    });
    ChainMapQ pr = linear_map(t, ac, [&](int i) {
        Mat m = Mat::Zero(ac.dim(i), t.dim(i));
        Mat a = degree_block(l0, ad, pr0, i);
        if (a.size()) m.block(0, tot.block_offset(i, 0), a.rows(), a.cols()) = a;
        return m;
    });
    // δ : B[−1] → K, b ↦ (0, b).
    std::vector<Index> bsd;
    std::vector<Mat> bsdiff;
    for (int i = bc.lo(); i <= bc.hi(); ++i) bsd.push_back(bc.dim(i));
    for (int i = bc.lo(); i < bc.hi(); ++i) bsdiff.push_back(bc.d(i));
    const ChainComplexQ bshift(bc.lo() + 1, bsd, bsdiff);
    ChainMapQ delta = linear_map(bshift, k, [&](int i) {
        Mat m = Mat::Zero(k.dim(i), bshift.dim(i));
        m.bottomRows(bshift.dim(i)) = Mat::Identity(bshift.dim(i), bshift.dim(i));
        return m;
    });
    DglaMap ubar_map{asum.sum, hd.hom_fg.dgla(), ubar};
    const ChainMapQ ub = chain_map(ubar_map);
    rep.quasi_iso_cone = psi.is_chain_map() && pr.is_chain_map() && ub.is_chain_map() && is_quasi_iso(psi);

    // Oracle side.
    const Resolution pf = projective_resolution(f), pg = projective_resolution(g);
    const HomComplex off = hom_complex(pf, f), ogg = hom_complex(pg, g), ofg = hom_complex(pf, g);
    const ModChainMap cf = comparison_map(pf, hd.lift.res_f, Mat::Identity(f.dim, f.dim));
    const ModChainMap cg = comparison_map(pg, hd.lift.res_g, Mat::Identity(g.dim, g.dim));
    const ModChainMap ca = comparison_map(pf, pg, hd.alpha);
    const Mat eps_f = hd.lift.res_f.aug, eps_g = hd.lift.res_g.aug;
    auto row0 = [](const Mat& phi, const BddComplex& e) { return Mat(phi.topRows(e.dim(0))); };
    // Rows of degree 0 in a total matrix: E^0 is the last block.
    auto top_block = [](const Mat& phi, const BddComplex& e) { return Mat(phi.bottomRows(e.dim(0))); };
    (void)row0;
    const ChainComplexQ oa = sum_complex(off.complex, ogg.complex);
    ChainMapQ rho_ff = oracle_map(*hd.end_f.dgla(), [&](int b) {
        Vec v = Vec::Zero(hd.end_f.dgla()->size());
        v(b) = 1;
        return top_block(hd.end_f.to_matrix(v), ef);
    }, off, ef, f, eps_f, cf);
    ChainMapQ rho_gg = oracle_map(*hd.end_g.dgla(), [&](int b) {
        Vec v = Vec::Zero(hd.end_g.dgla()->size());
        v(b) = 1;
        return top_block(hd.end_g.to_matrix(v), eg);
    }, ogg, eg, g, eps_g, cg);
    ChainMapQ rho_fg = oracle_map(bd, [&](int b) {
        Vec v = Vec::Zero(bd.size());
        v(b) = 1;
        return top_block(Mat(sg.transpose() * hd.hom_fg.to_matrix(v) * sf), eg);
    }, ofg, ef, g, eps_g, cf);
    // ρ_A on A = End(E_F) ⊕ End(E_G), through the direct-sum positions.
    ChainMapQ rho_a = linear_map(ac, oa, [&](int i) {
        Mat m = Mat::Zero(oa.dim(i), ac.dim(i));
        const Dgla& pf_d = *hd.end_f.dgla();
        const Dgla& pg_d = *hd.end_g.dgla();
        Mat mf = rho_ff.at(i), mg = rho_gg.at(i);
        for (Index b = 0; b < pf_d.dim(i); ++b) {
            const int glob = asum.pos[0][static_cast<size_t>(pf_d.offset(i) + b)];
            m.block(0, glob - ad.offset(i), mf.rows(), 1) = mf.col(b);
        }
        for (Index b = 0; b < pg_d.dim(i); ++b) {
            const int glob = asum.pos[1][static_cast<size_t>(pg_d.offset(i) + b)];
            m.block(mf.rows(), glob - ad.offset(i), mg.rows(), 1) = mg.col(b);
        }
        return m;
    });
    // Oracle-native (−α_*, α^*).
    ChainMapQ bprime = linear_map(oa, ofg.complex, [&](int i) {
        Mat m = Mat::Zero(ofg.complex.dim(i), oa.dim(i));
        const Index nf = off.complex.dim(i);
        for (Index c = 0; c < nf; ++c) {
            Mat x = unvec(off.basis[static_cast<size_t>(i)].col(c), f.dim, pf.cx.dim(-i));
            m.col(c) = ofg.left_inv[static_cast<size_t>(i)] * vec(Mat(-hd.alpha * x));
        }
        for (Index c = 0; c < ogg.complex.dim(i); ++c) {
            Mat x = unvec(ogg.basis[static_cast<size_t>(i)].col(c), g.dim, pg.cx.dim(-i));
            m.col(nf + c) = ofg.left_inv[static_cast<size_t>(i)] * vec(Mat(x * ca.at(-i)));
        }
        return m;
    });

    const int top = max_degree + 1;
    rep.comparison_iso = rho_ff.is_chain_map() && rho_gg.is_chain_map() && rho_fg.is_chain_map() && bprime.is_chain_map() &&
                         is_quasi_iso(rho_ff) && is_quasi_iso(rho_gg) && is_quasi_iso(rho_fg);
    rep.negative_vanish = true;
    for (int i = t.lo(); i < 0; ++i)
        if (cohomology(t, i).dim != 0) rep.negative_vanish = false;
    for (int i = 0; i <= top; ++i) rep.h.push_back(cohomology(t, i).dim);
    for (int i = 0; i <= max_degree; ++i) {
        rep.ext_ff.push_back(cohomology(off.complex, i).dim);
        rep.ext_gg.push_back(cohomology(ogg.complex, i).dim);
        rep.ext_fg.push_back(cohomology(ofg.complex, i).dim);
    }
    // Module-level kernel of (f, g) ↦ g∘α − α∘f.
    {
        Subspace hf = hom_space(f, f), hg = hom_space(g, g);
        Mat sys = Mat::Zero(g.dim * f.dim, hf.dim() + hg.dim());
        for (Index c = 0; c < hf.dim(); ++c) sys.col(c) = vec(Mat(-hd.alpha * unvec(hf.basis.col(c), f.dim, f.dim)));
        for (Index c = 0; c < hg.dim(); ++c) sys.col(hf.dim() + c) = vec(Mat(unvec(hg.basis.col(c), g.dim, g.dim) * hd.alpha));
        rep.h0_kernel_dim = sys.cols() - (sys.size() ? rank(sys) : 0);
    }
    if (!rep.comparison_iso || !rep.quasi_iso_cone) return rep;

    rep.comparison_commutes = true;
    for (int i = 0; i <= top; ++i) {
        Mat lhs = induced(rho_fg, i) * induced(ub, i);
        Mat rhs = induced(bprime, i) * induced(rho_a, i);
        if (lhs != rhs) rep.comparison_commutes = false;
    }
    const ChainMapQ a_map = compose_linear(rho_a, pr);
    std::vector<Mat> as, bs, cs;
    for (int i = 0; i <= top; ++i) {
        as.push_back(induced(a_map, i));
        bs.push_back(induced(bprime, i));
        Mat rho_inv = invert(induced(rho_fg, i));
        Mat psi_inv = invert(induced(psi, i + 1));
        cs.push_back(psi_inv * induced(delta, i + 1) * rho_inv);
    }
    for (int i = 0; i <= max_degree; ++i) {
        const size_t u = static_cast<size_t>(i);
        Mat c_in = i == 0 ? Mat(rep.h[0], 0) : cs[u - 1];
        rep.junctions.push_back(junction("H^i(Tot H)", i, c_in, as[u], rep.h[u]));
        rep.junctions.push_back(junction("Ext^i(F,F)+Ext^i(G,G)", i, as[u], bs[u], rep.ext_ff[u] + rep.ext_gg[u]));
        rep.junctions.push_back(junction("Ext^i(F,G)", i, bs[u], cs[u], rep.ext_fg[u]));
    }
    rep.h0_is_kernel = rep.h[0] == rep.h0_kernel_dim && rep.junctions[0].exact && rep.junctions[1].exact;
    return rep;
}

PipelineReport run_pipeline(const FinMod& f, const FinMod& g, const Mat& alpha, int max_degree, int n_max) {
    PipelineReport rep;
    Resolution rg = projective_resolution(g, n_max);
    MorphismLift lift = lift_morphism(f, alpha, rg, n_max);
    rep.check.merge(validate_lift(lift, alpha), "lift_morphism: ");
    HData hd = build_H(lift, alpha);
    rep.check.merge(validate_sc(hd.h), "build_H: ");
    rep.h = h_cohomology(hd.h);
    rep.les = les_check(hd, max_degree);
    for (int i = 0; i <= max_degree + 1; ++i)
        if (rep.h.at(i) != rep.les.h[static_cast<size_t>(i)]) rep.check.add("h_cohomology: cone and total complex disagree in degree " + std::to_string(i));
    rep.tangent = rep.h.at(1);
    rep.obstruction = rep.h.at(2);
    return rep;
}

FinMod random_a2_module(const AlgPtr& a, Rng& rng, Index max_dim) {
    const Index d0 = rng.uniform(0, static_cast<int>(max_dim)), d1 = rng.uniform(0, static_cast<int>(max_dim));
    Mat m(d1, d0);
    for (Index r = 0; r < d1; ++r)
        for (Index c = 0; c < d0; ++c) m(r, c) = rng.uniform(-2, 2);
    return representation(a, {d0, d1}, {m});
}

Mat random_hom(const FinMod& f, const FinMod& g, Rng& rng) {
    Subspace h = hom_space(f, g);
    Vec v = Vec::Zero(f.dim * g.dim);
    for (Index c = 0; c < h.dim(); ++c) v += Rat(rng.uniform(-2, 2)) * h.basis.col(c);
    return unvec(v, g.dim, f.dim);
}

}  // namespace defo
