#include "pseries/weierstrass.hpp"

#include <algorithm>

#include "pseries/errors.hpp"

namespace pseries {

void WeierstrassState::init_degree0() {
    for (auto& bi : b)
        bi.node()->append_part(HomogeneousPart::zero(0));
    for (int j = 0; j <= m; ++j) {
        a[static_cast<size_t>(d + j)].update_to(0);
        c[static_cast<size_t>(j)].node()->append_part(
            HomogeneousPart(a[static_cast<size_t>(d + j)].part(0)));
    }
    if (c0_const.is_zero())
        throw Error("internal: alpha constant term vanished");
    pair_precision = 0;
}

void WeierstrassState::phase1_step(int k) {
    for (int i = 0; i < d; ++i) {
        PowerSeries& Fi = F[static_cast<size_t>(i)];
        Fi.update_to(k);
        const HomogeneousPart& fk = Fi.part(k);

        // (b_i)_(k) = (F_i_(k) - sum_{j=1..k-1} (b_i)_(k-j) (c_0)_(j)) / (c_0)_(0)
        const detail::SeriesNode& bi = *b[static_cast<size_t>(i)].node();
        const detail::SeriesNode& c0 = *c[0].node();
        PartAccumulator acc(ctx->n_vars, static_cast<unsigned>(k));
        for (int j = 1; j <= k - 1; ++j)
            acc.add_product(bi.part(k - j), c0.part(j));
        HomogeneousPart s = acc.take();
        HomogeneousPart num = s.is_zero() ? fk : hp_sub(fk, s);
        b[static_cast<size_t>(i)].node()->append_part(hp_div_scalar(num, c0_const));
    }
}

void WeierstrassState::phase2_step(int k) {
    // last equation: (c_m)_(k) = (a_{d+m})_(k)
    c_rhs[static_cast<size_t>(m)].update_to(k);
    c[static_cast<size_t>(m)].node()->append_part(
        HomogeneousPart(c_rhs[static_cast<size_t>(m)].part(k)));
    for (int i = 1; i <= m; ++i) {
        PowerSeries& rhs = c_rhs[static_cast<size_t>(m - i)];
        rhs.update_to(k);
        c[static_cast<size_t>(m - i)].node()->append_part(HomogeneousPart(rhs.part(k)));
    }
}

void WeierstrassState::ensure(int k) {
    if (k < 0 || k <= pair_precision)
        return;
    if (pair_precision < 0)
        init_degree0();
    for (int kk = pair_precision + 1; kk <= k; ++kk) {
        phase1_step(kk);
        phase2_step(kk);
        pair_precision = kk;
    }
}

void WeierstrassState::ensure_parallel(int k, int threads, WorkerPool& pool) {
    weierstrass_ensure_parallel(*this, k, threads, pool);
}

UPoPS WeierstrassPair::p() const {
    std::vector<PowerSeries> coeffs = st_->b;
    coeffs.push_back(st_->one);
    return UPoPS(std::move(coeffs));
}

UPoPS WeierstrassPair::alpha() const { return UPoPS(st_->c); }

WeierstrassPair weierstrass_prepare(const UPoPS& f) {
    const int deg = f.degree();
    int d = -1;
    for (int i = 0; i <= deg; ++i) {
        f.coeff(i).update_to(0);
        if (!f.coeff(i).part(0).is_zero()) {
            d = i;
            break;
        }
    }
    if (d < 0)
        throw NotGeneralError();
    const int m = deg - d;

    auto st = std::make_shared<WeierstrassState>();
    st->ctx = f.context();
    st->a = f.coeffs();
    st->d = d;
    st->m = m;
    st->c0_const = f.coeff(d).part(0).terms().front().second;
    st->one = ps_constant(st->ctx, Rational(1));

    f.coeff(deg).update_to(0);
    st->monic_hint = f.coeff(deg).part(0) == HomogeneousPart::constant(st->ctx->n_vars, Rational(1));

    for (int i = 0; i < d; ++i)
        st->b.push_back(detail::make_coupled(st->ctx, Rule::WeierstrassP, i));
    for (int j = 0; j <= m; ++j)
        st->c.push_back(detail::make_coupled(st->ctx, Rule::WeierstrassAlpha, j));

    // F_i = a_i - sum_u b_u c_{i-u}, the u = i term left for the lemma solve
    for (int i = 0; i < d; ++i) {
        PowerSeries chain = st->a[static_cast<size_t>(i)];
        for (int u = std::max(0, i - m); u <= i - 1; ++u)
            chain = ps_sub(chain, ps_mul(st->b[static_cast<size_t>(u)],
                                         st->c[static_cast<size_t>(i - u)]));
        st->F.push_back(std::move(chain));
    }

    // right-hand side of each remaining equation, solved for c_{m-i}
    st->c_rhs.resize(static_cast<size_t>(m) + 1);
    st->c_rhs[static_cast<size_t>(m)] = st->a[static_cast<size_t>(d + m)];
    for (int i = 1; i <= m; ++i) {
        PowerSeries chain = st->a[static_cast<size_t>(d + m - i)];
        for (int j = 1; j <= std::min(i, d); ++j)
            chain = ps_sub(chain, ps_mul(st->b[static_cast<size_t>(d - j)],
                                         st->c[static_cast<size_t>(m - i + j)]));
        st->c_rhs[static_cast<size_t>(m - i)] = std::move(chain);
    }

    for (auto& s : st->b)
        detail::attach_coupled(s, st);
    for (auto& s : st->c)
        detail::attach_coupled(s, st);
    return WeierstrassPair(std::move(st));
}

} // namespace pseries
