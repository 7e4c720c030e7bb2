#pragma once

#include "defo/catalog.hpp"

namespace defo::testing {

inline ScDgla circle(int sign) { return circle_sc(sign); }

struct Fixture {
    std::string name;
    ScDgla g;
};

inline std::vector<Fixture> fixtures() {
    return {
        {"constant sl2_dg", builtin_sc("constant_sl2_dg")},
        {"uniform end_pair x3", builtin_sc("uniform_end_pair")},
        {"scaled sl2 x3", builtin_sc("scaled_sl2")},
        {"scaled sl2_dg x2", builtin_sc("scaled_sl2_dg")},
        {"uniform abelian x3", builtin_sc("uniform_abelian")},
    };
}

}  // namespace defo::testing
