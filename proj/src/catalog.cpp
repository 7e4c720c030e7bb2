#include "defo/catalog.hpp"

#include <cstdlib>
#include <stdexcept>

namespace defo {

DglaMap sl2_scaling(const DglaPtr& l, int power) {
    Mat m = Mat::Zero(l->size(), l->size());
    for (int i = 0; i < l->size(); ++i) {
        Rat c = 1;
        const char g = l->name(i)[0];
        for (int k = 0; k < std::abs(power); ++k) c *= (g == 'e') == (power > 0) ? Rat(2) : (g == 'h' ? Rat(1) : Rat(1, 2));
        m(i, i) = c;
    }
    return DglaMap{l, l, m};
}

CoverModel scaled_cover(int opens, int top, const DglaPtr& l) {
    CoverModel c = uniform_cover(opens, top, l);
    for (auto& [key, f] : c.restrictions) f = sl2_scaling(l, key.first.front() - key.second.front());
    return c;
}

DglaPtr line_dgla(int degree) {
    DglaBuilder b;
    b.add("x", degree);
    return b.build();
}

ScDgla circle_sc(int sign) {
    auto l = line_dgla(0);
    DglaBuilder b2;
    b2.add("c0", 0);
    b2.add("c1", 0);
    auto overlap = b2.build();
    CoverModel c;
    c.opens = 2;
    c.top = 1;
    c.sections[{0}] = l;
    c.sections[{1}] = l;
    c.sections[{0, 1}] = overlap;
    Mat same(2, 1), tw(2, 1);
    same << 1, 1;
    tw << 1, sign;
    c.restrictions.emplace(std::make_pair(std::vector<int>{0}, std::vector<int>{0, 1}), DglaMap{l, overlap, same});
    c.restrictions.emplace(std::make_pair(std::vector<int>{1}, std::vector<int>{0, 1}), DglaMap{l, overlap, tw});
    return cech_from_cover(c);
}

ScDgla builtin_sc(const std::string& name) {
    if (name == "constant_sl2_dg") return constant_sc(sl2_dg_dgla(), 3);
    if (name == "uniform_end_pair") return cech_from_cover(uniform_cover(3, 2, end_pair_dgla().dgla));
    if (name == "scaled_sl2") return cech_from_cover(scaled_cover(3, 3, sl2_dgla()));
    if (name == "scaled_sl2_dg") return cech_from_cover(scaled_cover(2, 2, sl2_dg_dgla()));
    if (name == "scaled_sl2_dg_3") return cech_from_cover(scaled_cover(3, 2, sl2_dg_dgla()));
    if (name == "uniform_abelian") return cech_from_cover(uniform_cover(3, 2, abelian_dgla()));
    if (name == "circle") return circle_sc(1);
    if (name == "twisted_circle") return circle_sc(-1);
    if (name == "counterexample") return negative_counterexample();
    throw std::invalid_argument("unknown built-in semicosimplicial dgLa '" + name + "'");
}

std::vector<std::string> builtin_sc_names() {
    return {"constant_sl2_dg", "uniform_end_pair", "scaled_sl2", "scaled_sl2_dg", "scaled_sl2_dg_3", "uniform_abelian", "circle", "twisted_circle",
            "counterexample"};
}

std::vector<std::string> strong_sc_names() { return {"constant_sl2_dg", "uniform_end_pair", "scaled_sl2_dg", "scaled_sl2_dg_3", "uniform_abelian"}; }

FinMod a2_module(const AlgPtr& a, const std::string& name) {
    if (name == "S1") return simple_module(a, 0);
    if (name == "S2") return simple_module(a, 1);
    if (name == "P1") return proj_module(a, 0);
    if (name == "P2") return proj_module(a, 1);
    if (name == "0") return zero_module(a);
    throw std::invalid_argument("unknown A2 module '" + name + "' (expected S1, S2, P1, P2, 0)");
}

std::vector<A2Case> a2_canonical_cases(const AlgPtr& a) {
    const FinMod s1 = a2_module(a, "S1"), s2 = a2_module(a, "S2"), p1 = a2_module(a, "P1");
    Subspace h = hom_space(s2, p1);
    return {
        {"zero", s1, s2, Mat::Zero(1, 1)},
        {"identity", s1, s1, Mat::Identity(1, 1)},
        {"simple_to_projective", s2, p1, unvec(h.basis.col(0), p1.dim, s2.dim)},
    };
}

}  // namespace defo
