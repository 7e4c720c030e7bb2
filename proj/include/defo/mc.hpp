#pragma once

#include "defo/element.hpp"

#include <concepts>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace defo {

/// Elements of a nilpotent dgLa: graded bracket, differential and linear structure.
template <typename E>
concept LieElement = requires(const E& a, const E& b, const Rat& c) {
    { a + b } -> std::convertible_to<E>;
    { a - b } -> std::convertible_to<E>;
    { -a } -> std::convertible_to<E>;
    { c * a } -> std::convertible_to<E>;
    { bracket(a, b) } -> std::convertible_to<E>;
    { differential(a) } -> std::convertible_to<E>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { nilpotency(a) } -> std::convertible_to<int>;
};

/// Elements that additionally carry polynomial path variables.
template <typename E>
concept PathElement = LieElement<E> && requires(const E& a, int k, const Rat& c) {
    { path_vars(a) } -> std::convertible_to<int>;
    { add_path_vars(a, k) } -> std::convertible_to<E>;
    { mul_path_var(a, k) } -> std::convertible_to<E>;
    { subst_path_var(a, k, c) } -> std::convertible_to<E>;
};

inline int path_vars(const Elem& x) { return x.nvars(); }
inline Elem add_path_vars(const Elem& x, int k) {
    std::vector<int> map;
    for (int j = 0; j < x.nvars(); ++j) map.push_back(j);
    return extend_vars(x, x.nvars() + k, map);
}
inline Elem mul_path_var(const Elem& x, int k) { return mul_var(x, k); }
inline Elem subst_path_var(const Elem& x, int k, const Rat& c) { return substitute(x, k, c); }

/// Words in two letters: bit i of `bits` is letter i (0 = a, 1 = b).
struct BchWord {
    int len;
    unsigned bits;
};

/// Coefficients c_w/|w| such that a•b = Σ (c_w/|w|) [w_1,[w_2,…,w_n]] up to length `order`,
/// where c_w are the coefficients of log(e^a e^b) in the free associative algebra.
const std::vector<std::pair<BchWord, Rat>>& bch_coefficients(int order);

template <LieElement E>
E mc_residual(const E& x) {
    return differential(x) + Rat(1, 2) * bracket(x, x);
}

template <LieElement E>
bool is_mc(const E& x) {
    return mc_residual(x).is_zero();
}

namespace detail {
inline int series_cap(int nu) {
    if (nu <= 0) throw std::invalid_argument("series requires nilpotent coefficients");
    return nu + 1;
}
}  // namespace detail

/// e^a * x = x + Σ_{n≥0} ad_a^n/(n+1)! ([a,x] − da).
template <LieElement E>
E gauge(const E& a, const E& x) {
    E term = bracket(a, x) - differential(a);
    E sum = x;
    Rat fact = 1;
    const int cap = detail::series_cap(nilpotency(x)) + 1;
    for (int n = 0; !term.is_zero(); ++n) {
        if (n > cap) throw std::logic_error("gauge: series did not terminate");
        fact *= (n + 1);
        sum = sum + (Rat(1) / fact) * term;
        term = bracket(a, term);
    }
    return sum;
}

/// e^{ad a} y.
template <LieElement E>
E exp_ad(const E& a, const E& y) {
    E term = y;
    E sum = y;
    Rat fact = 1;
    const int cap = detail::series_cap(nilpotency(y)) + 1;
    for (int n = 1;; ++n) {
        term = bracket(a, term);
        if (term.is_zero()) break;
        if (n > cap) throw std::logic_error("exp_ad: series did not terminate");
        fact *= n;
        sum = sum + (Rat(1) / fact) * term;
    }
    return sum;
}

/// Baker–Campbell–Hausdorff product a•b, truncated at the nilpotency index.
template <LieElement E>
E bch(const E& a, const E& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const int nu = nilpotency(a);
    if (nu <= 0) throw std::invalid_argument("bch: requires nilpotent coefficients");
    const auto& coeffs = bch_coefficients(nu - 1);
    std::map<std::pair<int, unsigned>, E> suffix;  // (start, bits>>start) of a word of given length
    E result = a + b;
    for (const auto& [w, c] : coeffs) {
        if (w.len < 2) continue;
        // Right-nested value built from the innermost letters outward.
        auto letter = [&](int i) -> const E& { return ((w.bits >> i) & 1u) ? b : a; };
        E val = letter(w.len - 1);
        for (int i = w.len - 2; i >= 0; --i) {
            const unsigned key = w.bits >> i;
            auto it = suffix.find({w.len - i, key});
            if (it != suffix.end()) {
                val = it->second;
                continue;
            }
            val = bracket(letter(i), val);
            suffix.emplace(std::make_pair(w.len - i, key), val);
        }
        if (!val.is_zero()) result = result + c * val;
    }
    return result;
}

struct FixedCheck {
    bool fixed;      // e^a * x == x
    bool criterion;  // da + [x,a] == 0
};

template <LieElement E>
FixedCheck is_fixed(const E& a, const E& x) {
    return FixedCheck{gauge(a, x) == x, (differential(a) + bracket(x, a)).is_zero()};
}

/// R = e^{(a•(d(s u)+[x, s u])) t} * x as its logarithm r, in path variables (t, s)
/// appended to those of the inputs. Witnesses that e^{at}*x and e^{(a•(du+[x,u]))t}*x are 2-homotopic.
template <PathElement E>
E two_homotopy_forward(const E& a, const E& u, const E& x) {
    const int base = path_vars(a);
    E a2 = add_path_vars(a, 2), u2 = add_path_vars(u, 2), x2 = add_path_vars(x, 2);
    E su = mul_path_var(u2, base + 1);
    E omega = differential(su) + bracket(x2, su);
    return mul_path_var(bch(a2, omega), base);
}

/// Constant elements y⊗m spanning L^deg ⊗ m_A, in `nvars` variables.
std::vector<Elem> degree_basis(const NilpPtr& ctx, int deg, int nvars = 0);

/// Some u of degree −1 with b = du + [x,u], or nothing. x, b constant.
std::optional<Elem> stabilizer_membership(const Elem& b, const Elem& x);

struct GaugeWitness {
    Elem a;
    Elem source;
    Elem target;
};

/// Checks e^a * source = target.
bool gauge_witness_valid(const GaugeWitness& w);

/// Two gauges x → y agree in the Deligne groupoid: du+[x,u] = (−a)•b is solvable.
bool morphism_equal(const Elem& a, const Elem& b, const Elem& x);

/// Path e^{p(t)} * x with p(0) = 0, p in one variable t.
struct Homotopy {
    Elem p;
    Elem x;
};

/// Surface e^{r(t,s,ds)} * x with r in L⁰[t,s]·(t,s) + L^{-1}[t,s]·t ds, variables (t, s).
struct TwoHomotopy {
    Elem r;
    Elem x;
};

Elem homotopy_path(const Homotopy& h);
Elem two_homotopy_surface(const TwoHomotopy& r);
Homotopy homotopy_from_gauge(const Elem& a, const Elem& x);
GaugeWitness gauge_from_homotopy(const Homotopy& h);

/// Writes an MC element of L[t,dt]⊗m_A as e^{p(t)} * x.
Homotopy decompose_1var(const Elem& xi);
/// Writes an MC element of L[t,s,dt,ds]⊗m_A as e^{r(t,s,ds)} * x.
TwoHomotopy decompose_2var(const Elem& xi);

/// Checks that r has the 2-homotopy shape.
bool two_homotopy_shape_ok(const Elem& r);

/// The four boundary identities; violations are named.
ValidationReport two_homotopy_verify(const TwoHomotopy& r, const Homotopy& p, const Homotopy& q, const Elem& x,
                                     const Elem& y);

/// R(t,s) = P(t): a 2-homotopy from P to itself.
TwoHomotopy two_homotopy_reflexive(const Homotopy& p);
/// e^{p(1)ts + p(t)(1−s)} * x: a 2-homotopy from P to e^{p(1)t} * x.
TwoHomotopy two_homotopy_standardize(const Homotopy& p);
/// From R: P ∼ Q to Q ∼ P, namely q(t) • −r • p(t).
TwoHomotopy two_homotopy_invert(const TwoHomotopy& r, const Homotopy& p, const Homotopy& q);
/// From R: P ∼ Q and R′: Q ∼ S to P ∼ S, namely r′ • −q(t) • r.
TwoHomotopy two_homotopy_compose(const TwoHomotopy& r, const TwoHomotopy& r2, const Homotopy& q);
/// From R: P ∼ Q at x and R′: P′ ∼ Q′ at y = P(1) to the product surface r′ • r at x.
TwoHomotopy two_homotopy_product(const TwoHomotopy& r2, const TwoHomotopy& r);

/// Given a path p(t,dt) with p(0)=0 fixing the path x(t,dt), some u with p(1) = du + [x(1),u].
Elem extract_irrelevant(const Elem& p, const Elem& xpath);

/// Backward direction of the groupoid dictionary: from a 2-homotopy between e^{at}*x and e^{bt}*x,
/// some u with (−a)•b = du + [x,u].
Elem irrelevant_from_two_homotopy(const TwoHomotopy& r, const Elem& a);

/// Over square-zero m_A: some a with e^a*x = x − da = y, or nothing.
std::optional<Elem> orbit_decide_square_zero(const Elem& x, const Elem& y);

}  // namespace defo
