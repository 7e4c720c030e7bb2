#pragma once

#include "defo/linalg.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace defo {

/// Packed monomial t^a dt_I in at most kMaxVars variables: 8 bits per exponent,
/// then a bitmask of the dt's present.
class FormKey {
public:
    static constexpr int kMaxVars = 6;

    FormKey() = default;
    static FormKey from(const std::vector<int>& exps, unsigned dmask);

    int exp(int i) const { return static_cast<int>((bits_ >> (8 * i)) & 0xffu); }
    unsigned dmask() const { return static_cast<unsigned>(bits_ >> 48) & 0x3fu; }
    int form_degree() const;
    int poly_degree() const;
    std::uint64_t raw() const { return bits_; }
    bool has_d(int i) const { return (dmask() >> i) & 1u; }

    FormKey with_exp(int i, int e) const;
    FormKey with_dmask(unsigned m) const;

    friend bool operator<(FormKey a, FormKey b) { return a.bits_ < b.bits_; }
    friend bool operator==(FormKey a, FormKey b) { return a.bits_ == b.bits_; }

private:
    std::uint64_t bits_ = 0;
};

/// Sign and key of the wedge product of two form monomials (sign 0 if it vanishes).
std::pair<int, FormKey> wedge_keys(FormKey a, FormKey b, int nvars);

/// Affine substitution t_j := c_j + sum_k a(j,k) u_k (and dt_j := sum_k a(j,k) du_k).
struct AffineSub {
    int new_vars = 0;
    std::vector<Rat> constant;           // per old variable
    std::vector<std::vector<Rat>> lin;   // per old variable, per new variable

    static AffineSub identity(int n);
    /// Sets old variable `var` to the constant c and drops it, renumbering the rest.
    static AffineSub evaluate(int n, int var, const Rat& c);
    /// Pullback along the k-th coface Δ^{n-1} -> Δ^n, followed by `extra` untouched variables.
    static AffineSub face(int k, int n, int extra = 0);
};

/// Polynomial differential forms in n variables with rational coefficients.
class Form {
public:
    explicit Form(int nvars = 0) : n_(nvars) {}
    static Form constant(int nvars, const Rat& c);
    static Form var(int nvars, int i);     // t_i
    static Form dvar(int nvars, int i);    // dt_i
    static Form monomial(int nvars, FormKey k, const Rat& c);

    int nvars() const { return n_; }
    const std::map<FormKey, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add(FormKey k, const Rat& c);

    Form operator+(const Form& o) const;
    Form operator-(const Form& o) const;
    Form operator-() const;
    friend Form operator*(const Rat& c, const Form& f);
    bool operator==(const Form& o) const { return n_ == o.n_ && terms_ == o.terms_; }

    std::string str(const std::vector<std::string>& names = {}) const;

private:
    int n_;
    std::map<FormKey, Rat> terms_;
};

Form d_form(const Form& w);
Form wedge(const Form& a, const Form& b);
Form pullback(const Form& w, const AffineSub& s);
/// Pullback along the k-th face of Δ^n (coordinates t_0..t_{n-1}, t_n = 1 - sum t_i).
Form face_map(int k, int n, const Form& w);
/// Integral over Δ^n of the dt_0∧…∧dt_{n-1} part; throws on forms of other degree.
Rat integrate_simplex(const Form& w);
/// Integral of a single top monomial.
Rat simplex_monomial_integral(FormKey k, int n);
/// k! Σ_j (-1)^j t_{i_j} dt_{i_0}∧…∧(dt_{i_j} omitted)∧…∧dt_{i_k} on Δ^n.
Form whitney_form(const std::vector<int>& subset, int n);
/// Barycentric coordinate t_i (i = n gives 1 - sum) and its differential.
Form barycentric(int i, int n);
Form d_barycentric(int i, int n);

}  // namespace defo
