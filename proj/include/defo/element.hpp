#pragma once

#include "defo/artin.hpp"
#include "defo/dgla.hpp"
#include "defo/forms.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>

namespace defo {

/// L ⊗ m_A, or L ⊗ Q when no Artin algebra is given (then coefficients are scalars
/// and only linear operations are meaningful).
class NilpDgla {
public:
    NilpDgla(DglaPtr l, ArtinPtr a) : l_(std::move(l)), a_(std::move(a)) {}

    const Dgla& dgla() const { return *l_; }
    const DglaPtr& dgla_ptr() const { return l_; }
    const ArtinPtr& artin() const { return a_; }
    bool scalar() const { return !a_; }
    int coeff_dim() const { return a_ ? static_cast<int>(a_->dim()) : 1; }
    int coeff_product(int i, int j) const { return a_ ? a_->product(i, j) : 0; }
    /// Nilpotency index ν of m_A; 0 for scalar coefficients.
    int nilpotency() const { return a_ ? a_->nilpotency() : 0; }
    std::string coeff_name(int i) const;

private:
    DglaPtr l_;
    ArtinPtr a_;
};

using NilpPtr = std::shared_ptr<const NilpDgla>;

NilpPtr tensor_artin(const DglaPtr& l, const ArtinPtr& a);
NilpPtr tensor_scalar(const DglaPtr& l);

struct TermKey {
    int basis = 0;
    int coeff = 0;
    FormKey form;
    friend bool operator<(const TermKey& a, const TermKey& b) {
        if (a.form.raw() != b.form.raw()) return a.form.raw() < b.form.raw();
        if (a.basis != b.basis) return a.basis < b.basis;
        return a.coeff < b.coeff;
    }
    friend bool operator==(const TermKey& a, const TermKey& b) {
        return a.basis == b.basis && a.coeff == b.coeff && a.form == b.form;
    }
};

/// Element of L ⊗ Ω ⊗ m_A where Ω is the algebra of polynomial forms in `nvars`
/// variables. Terms are written L-part first: y ⊗ c ⊗ ω.
class Elem {
public:
    Elem() = default;
    Elem(NilpPtr ctx, int nvars) : ctx_(std::move(ctx)), n_(nvars) {}

    static Elem term(const NilpPtr& ctx, int nvars, int basis, int coeff, FormKey f, const Rat& c);
    static Elem term(const NilpPtr& ctx, int nvars, int basis, int coeff, const Form& f);
    /// Constant element from global coordinates indexed basis * coeff_dim + coeff.
    static Elem from_vec(const NilpPtr& ctx, const Vec& v, int nvars = 0);

    const NilpPtr& ctx() const { return ctx_; }
    int nvars() const { return n_; }
    const std::map<TermKey, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add(const TermKey& k, const Rat& c);

    /// Total degree (dgLa degree + form degree) if homogeneous; absent for 0 or mixed.
    std::optional<int> degree() const;
    bool homogeneous_of(int deg) const;
    int poly_degree() const;
    Vec to_vec() const;  // requires no variables in use

    Elem operator+(const Elem& o) const;
    Elem operator-(const Elem& o) const;
    Elem operator-() const;
    Elem& operator+=(const Elem& o);
    friend Elem operator*(const Rat& c, const Elem& x);
    bool operator==(const Elem& o) const { return n_ == o.n_ && terms_ == o.terms_; }
    bool operator!=(const Elem& o) const { return !(*this == o); }

    std::string str(const std::vector<std::string>& var_names = {}) const;

private:
    void check_compatible(const Elem& o) const;
    NilpPtr ctx_;
    int n_ = 0;
    std::map<TermKey, Rat> terms_;
};

Elem bracket(const Elem& x, const Elem& y);
Elem differential(const Elem& x);
/// ω · x with the Koszul sign of moving ω past the dgLa part.
Elem form_mul(const Form& w, const Elem& x);
Elem mul_var(const Elem& x, int var);
Elem pullback(const Elem& x, const AffineSub& s);
/// Sets variable `var` to c (its differential to 0) and drops it.
Elem substitute(const Elem& x, int var, const Rat& c);
/// Views x as an element in `nvars` variables, old variable j becoming new variable map[j].
Elem extend_vars(const Elem& x, int nvars, const std::vector<int>& map);
/// Part of x whose differential monomial is exactly `dmask`, with the differentials stripped.
Elem dpart(const Elem& x, unsigned dmask);
/// Re-attaches the differentials in `dmask` on the right of every term.
Elem attach_d(const Elem& x, unsigned dmask);
/// ∫_0^{t_var} x dt_var for a function-valued (in t_var) element.
Elem integrate_var(const Elem& x, int var);
/// Applies a dgLa map to the dgLa part.
Elem apply_map(const DglaMap& f, const Elem& x, const NilpPtr& target);
Elem base_change(const ArtinMorphism& f, const Elem& x, const NilpPtr& target);
/// Same data reinterpreted over another context with an identical dgLa and coefficient layout.
Elem rebase(const Elem& x, const NilpPtr& target);

inline int nilpotency(const Elem& x) { return x.ctx()->nilpotency(); }

}  // namespace defo
