#include "defo/random.hpp"

#include "defo/mc.hpp"

#include <bit>

namespace defo {

Rat Rng::small_rat() {
    int num = uniform(1, 3) * (coin() ? 1 : -1);
    int den = uniform(1, 2);
    return Rat(num, den);
}

Elem random_elem_in_power(const NilpPtr& ctx, int deg, int k, Rng& rng, int density) {
    Elem e(ctx, 0);
    const Dgla& L = ctx->dgla();
    for (int b = L.offset(deg); b < L.offset(deg) + L.dim(deg); ++b)
        for (int c = 0; c < ctx->coeff_dim(); ++c) {
            if (ctx->artin() && ctx->artin()->degree(c) < k) continue;
            if (rng.coin(density)) e.add({b, c, FormKey{}}, rng.small_rat());
        }
    return e;
}

Elem random_elem(const NilpPtr& ctx, int deg, Rng& rng, int density) {
    return random_elem_in_power(ctx, deg, 1, rng, density);
}

Elem random_mc(const NilpPtr& ctx, Rng& rng) {
    const Dgla& L = ctx->dgla();
    Subspace z = kernel(L.d_matrix(1));
    Elem base(ctx, 0);
    const int top = ctx->nilpotency() - 1;
    for (int c = 0; c < ctx->coeff_dim(); ++c) {
        if (ctx->artin()->degree(c) != top) continue;
        for (Index j = 0; j < z.dim(); ++j) {
            if (!rng.coin()) continue;
            const Rat w = rng.small_rat();
            for (Index i = 0; i < z.basis.rows(); ++i)
                if (z.basis(i, j) != 0) base.add({L.offset(1) + static_cast<int>(i), c, FormKey{}}, w * z.basis(i, j));
        }
    }
    return gauge(random_elem(ctx, 0, rng), base);
}

Elem random_path_log(const NilpPtr& ctx, Rng& rng, int maxdeg) {
    Elem p(ctx, 1);
    for (int k = 1; k <= maxdeg; ++k) {
        Elem a = random_elem(ctx, 0, rng, 40);
        for (const auto& [key, c] : a.terms()) p.add({key.basis, key.coeff, FormKey::from({k}, 0)}, c);
    }
    return p;
}

Elem random_surface_log(const NilpPtr& ctx, Rng& rng, int maxdeg) {
    Elem r(ctx, 2);
    for (int i = 0; i <= maxdeg; ++i)
        for (int j = 0; i + j <= maxdeg; ++j) {
            if (i + j >= 1) {
                Elem a = random_elem(ctx, 0, rng, 25);
                for (const auto& [key, c] : a.terms()) r.add({key.basis, key.coeff, FormKey::from({i, j}, 0)}, c);
            }
            if (i >= 1 && i + j <= maxdeg - 1) {
                Elem u = random_elem(ctx, -1, rng, 25);
                for (const auto& [key, c] : u.terms()) r.add({key.basis, key.coeff, FormKey::from({i, j}, 2u)}, c);
            }
        }
    return r;
}

Elem random_poly_elem(const NilpPtr& ctx, int deg, int nvars, int maxdeg, Rng& rng, int density) {
    Elem e(ctx, nvars);
    const Dgla& L = ctx->dgla();
    for (unsigned mask = 0; mask < (1u << nvars); ++mask) {
        const int fd = std::popcount(mask);
        const int ldeg = deg - fd;
        if (L.dim(ldeg) == 0) continue;
        std::vector<int> ex(static_cast<size_t>(nvars), 0);
        // Enumerate exponent vectors with total degree ≤ maxdeg.
        while (true) {
            int tot = 0;
            for (int v : ex) tot += v;
            if (tot <= maxdeg) {
                for (int b = L.offset(ldeg); b < L.offset(ldeg) + L.dim(ldeg); ++b)
                    for (int c = 0; c < ctx->coeff_dim(); ++c)
                        if (rng.coin(density)) e.add({b, c, FormKey::from(ex, mask)}, rng.small_rat());
            }
            int i = 0;
            while (i < nvars && ex[static_cast<size_t>(i)] == maxdeg) ex[static_cast<size_t>(i++)] = 0;
            if (i == nvars) break;
            ++ex[static_cast<size_t>(i)];
        }
    }
    return e;
}

}  // namespace defo
