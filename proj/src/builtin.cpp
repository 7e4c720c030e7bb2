#include "defo/builtin.hpp"

#include <stdexcept>

namespace defo {

namespace {

std::string pos_name(const ChainComplexQ& c, Index pos) {
    Index p = pos;
    for (int i = c.lo(); i <= c.hi(); ++i) {
        if (p < c.dim(i)) return std::to_string(i) + ":" + std::to_string(p);
        p -= c.dim(i);
    }
    throw std::out_of_range("end_dgla: position out of range");
}

}  // namespace

int EndDgla::position_degree(Index pos) const {
    Index p = pos;
    for (int i = complex.lo(); i <= complex.hi(); ++i) {
        if (p < complex.dim(i)) return i;
        p -= complex.dim(i);
    }
    throw std::out_of_range("EndDgla: position out of range");
}

Mat EndDgla::to_matrix(const Vec& v) const {
    const Index n = complex.total_dim();
    Mat m = Mat::Zero(n, n);
    for (Index k = 0; k < v.size(); ++k)
        if (v(k) != 0) m(entry[static_cast<size_t>(k)].first, entry[static_cast<size_t>(k)].second) += v(k);
    return m;
}

Vec EndDgla::from_matrix(const Mat& m) const {
    Vec v = Vec::Zero(static_cast<Index>(entry.size()));
    Mat rest = m;
    for (size_t k = 0; k < entry.size(); ++k) {
        v(static_cast<Index>(k)) = m(entry[k].first, entry[k].second);
        rest(entry[k].first, entry[k].second) = 0;
    }
    if (!is_zero(rest)) throw std::invalid_argument("EndDgla::from_matrix: matrix is not homogeneous");
    return v;
}

EndDgla end_dgla(const ChainComplexQ& c) {
    const Index n = c.total_dim();
    std::vector<int> deg(static_cast<size_t>(n));
    std::vector<Index> off;
    {
        Index p = 0;
        for (int i = c.lo(); i <= c.hi(); ++i) {
            off.push_back(p);
            for (Index k = 0; k < c.dim(i); ++k) deg[static_cast<size_t>(p + k)] = i;
            p += c.dim(i);
        }
    }
    // Total differential as an n×n matrix.
    Mat dtot = Mat::Zero(n, n);
    for (int i = c.lo(); i < c.hi(); ++i) {
        Mat di = c.d(i);
        const Index r0 = off[static_cast<size_t>(i + 1 - c.lo())], c0 = off[static_cast<size_t>(i - c.lo())];
        for (Index r = 0; r < di.rows(); ++r)
            for (Index q = 0; q < di.cols(); ++q) dtot(r0 + r, c0 + q) = di(r, q);
    }
    EndDgla out;
    out.complex = c;
    std::vector<Dgla::Basis> basis;
    const int span = c.hi() - c.lo();
    std::map<std::pair<Index, Index>, int> where;
    for (int p = -span; p <= span; ++p)
        for (Index a = 0; a < n; ++a)
            for (Index b = 0; b < n; ++b)
                if (deg[static_cast<size_t>(a)] - deg[static_cast<size_t>(b)] == p) {
                    where[{a, b}] = static_cast<int>(basis.size());
                    out.entry.push_back({a, b});
                    basis.push_back({"E(" + pos_name(c, a) + "<-" + pos_name(c, b) + ")", p});
                }
    const size_t nb = basis.size();
    std::vector<SparseVec> diff(nb);
    for (size_t k = 0; k < nb; ++k) {
        auto [a, b] = out.entry[k];
        const int p = basis[k].degree;
        std::map<int, Rat> acc;
        for (Index x = 0; x < n; ++x)
            if (dtot(x, a) != 0) acc[where.at({x, b})] += dtot(x, a);
        const int sg = (p % 2 == 0) ? 1 : -1;
        for (Index y = 0; y < n; ++y)
            if (dtot(b, y) != 0) acc[where.at({a, y})] -= sg * dtot(b, y);
        for (const auto& [i, v] : acc)
            if (v != 0) diff[k].emplace_back(i, v);
    }
    std::vector<SparseVec> br(nb * nb);
    for (size_t k = 0; k < nb; ++k)
        for (size_t l = 0; l < nb; ++l) {
            auto [a, b] = out.entry[k];
            auto [cc, d] = out.entry[l];
            const int pq = basis[k].degree * basis[l].degree;
            std::map<int, Rat> acc;
            if (b == cc) acc[where.at({a, d})] += 1;
            if (d == a) acc[where.at({cc, b})] -= (pq % 2 == 0) ? 1 : -1;
            for (const auto& [i, v] : acc)
                if (v != 0) br[k * nb + l].emplace_back(i, v);
        }
    out.dgla = std::make_shared<const Dgla>(std::move(basis), std::move(diff), std::move(br));
    return out;
}

DglaPtr abelian_dgla() {
    DglaBuilder b;
    b.add("u", -1);
    b.add("a0", 0);
    b.add("a1", 0);
    b.add("x0", 1);
    b.add("x1", 1);
    b.add("w", 2);
    b.set_d("u", "a0", 1);
    b.set_d("a1", "x0", 1);
    b.set_d("x1", "w", 1);
    return b.build();
}

DglaPtr sl2_dgla() {
    DglaBuilder b;
    b.add("e", 0);
    b.add("f", 0);
    b.add("h", 0);
    b.set_bracket("e", "f", "h", 1);
    b.set_bracket("h", "e", "e", 2);
    b.set_bracket("h", "f", "f", -2);
    return b.build();
}

DglaPtr sl2_dg_dgla() {
    // Generators of K with degrees and products; e·v = w, v·e = −w.
    const std::vector<std::pair<std::string, int>> k = {{"1", 0}, {"e", -1}, {"v", 1}, {"w", 0}};
    auto kprod = [](int i, int j) -> std::pair<int, int> {  // (index, sign) or (-1, 0)
        if (i == 0) return {j, 1};
        if (j == 0) return {i, 1};
        if (i == 1 && j == 2) return {3, 1};
        if (i == 2 && j == 1) return {3, -1};
        return {-1, 0};
    };
    const std::vector<std::string> g = {"e", "f", "h"};
    // sl2 structure constants: [g_i, g_j] = c * g_k.
    auto gbr = [](int i, int j) -> std::pair<int, int> {
        if (i == 0 && j == 1) return {2, 1};
        if (i == 1 && j == 0) return {2, -1};
        if (i == 2 && j == 0) return {0, 2};
        if (i == 0 && j == 2) return {0, -2};
        if (i == 2 && j == 1) return {1, -2};
        if (i == 1 && j == 2) return {1, 2};
        return {-1, 0};
    };
    DglaBuilder b;
    auto nm = [&](int gi, int ki) { return g[static_cast<size_t>(gi)] + "." + k[static_cast<size_t>(ki)].first; };
    for (int ki = 0; ki < 4; ++ki)
        for (int gi = 0; gi < 3; ++gi) b.add(nm(gi, ki), k[static_cast<size_t>(ki)].second);
    for (int gi = 0; gi < 3; ++gi) b.set_d(nm(gi, 1), nm(gi, 3), 1);
    for (int k1 = 0; k1 < 4; ++k1)
        for (int k2 = 0; k2 < 4; ++k2) {
            auto [kp, ks] = kprod(k1, k2);
            if (kp < 0) continue;
            for (int g1 = 0; g1 < 3; ++g1)
                for (int g2 = 0; g2 < 3; ++g2) {
                    auto [gp, gs] = gbr(g1, g2);
                    if (gp < 0) continue;
                    b.set_bracket(nm(g1, k1), nm(g2, k2), nm(gp, kp), Rat(ks * gs));
                }
        }
    return b.build();
}

EndDgla end_pair_dgla() {
    Mat d(2, 1);
    d << 1, 0;
    return end_dgla(ChainComplexQ(-1, {1, 2}, {d}));
}

DglaPtr builtin_dgla(const std::string& name) {
    if (name == "abelian") return abelian_dgla();
    if (name == "sl2") return sl2_dgla();
    if (name == "sl2_dg") return sl2_dg_dgla();
    if (name == "end_pair") return end_pair_dgla().dgla;
    throw std::invalid_argument("unknown built-in dgLa '" + name + "'");
}

std::vector<std::string> builtin_dgla_names() { return {"abelian", "sl2", "sl2_dg", "end_pair"}; }

}  // namespace defo
