#ifndef PSERIES_WEIERSTRASS_HPP
#define PSERIES_WEIERSTRASS_HPP

#include <memory>
#include <vector>

#include "pseries/upops.hpp"

namespace pseries {

/// Shared state of one Weierstrass preparation f = p * alpha.
///
/// The source f = sum a_i Y^i splits at d, the smallest index whose
/// coefficient has a nonzero constant term; p = Y^d + sum b_i Y^i is monic
/// with every b_i of order >= 1, and alpha = sum c_j Y^j is a unit.
///
/// Each b_i carries the chain F_i = a_i - sum b_u c_{i-u} (u < i over valid
/// indices), and each c_{m-i} carries the analogous right-hand side
/// a_{d+m-i} - sum_{j=1..min(i,d)} b_{d-j} c_{m-i+j}. A degree-k step first
/// solves for every (b_i)_(k) through F_i (phase 1), then fills every
/// (c_j)_(k) from its chain (phase 2). Because the b's have zero constant
/// terms, those chains never need the alpha coefficients beyond degree k-1,
/// which keeps the phase-2 loop iterations independent.
struct WeierstrassState : CoupledUpdater {
    std::shared_ptr<SeriesContext> ctx;
    std::vector<PowerSeries> a; // source coefficients, degree d+m
    int d = 0;
    int m = 0;
    bool monic_hint = false; // constant term of the leading coefficient is 1

    std::vector<PowerSeries> b;     // d coefficients of p below Y^d
    std::vector<PowerSeries> c;     // m+1 coefficients of alpha
    std::vector<PowerSeries> F;     // phase-1 chains, one per b
    std::vector<PowerSeries> c_rhs; // phase-2 chains, one per c (c_rhs[m] = a[d+m])
    PowerSeries one;                // the constant leading coefficient of p
    Rational c0_const;              // (c_0)_(0) = (a_d)_(0), a unit
    int pair_precision = -1;        // p and alpha always share this

    void ensure(int k) override;
    void ensure_parallel(int k, int threads, WorkerPool& pool) override;

    void init_degree0();
    void phase1_step(int k);
    void phase2_step(int k);
};

/// Handle to a prepared pair. p() and alpha() stay usable while this object
/// (or the owning Hensel factorization) is alive.
class WeierstrassPair {
public:
    explicit WeierstrassPair(std::shared_ptr<WeierstrassState> st) : st_(std::move(st)) {}

    int d() const { return st_->d; }
    int m() const { return st_->m; }
    int precision() const { return st_->pair_precision; }

    UPoPS p() const;
    UPoPS alpha() const;

    const PowerSeries& b(int i) const { return st_->b[static_cast<size_t>(i)]; }
    const PowerSeries& c(int i) const { return st_->c[static_cast<size_t>(i)]; }
    const PowerSeries& F(int i) const { return st_->F[static_cast<size_t>(i)]; }

    /// Advance p and alpha together to precision k (serial).
    void update_to(int k) { st_->ensure(k); }

    const std::shared_ptr<WeierstrassState>& state() const { return st_; }

private:
    std::shared_ptr<WeierstrassState> st_;
};

/// Lazily prepare f = p * alpha. Only constant terms of the coefficients are
/// forced, to locate d; no parts of p or alpha are computed. Throws
/// NotGeneralError when every coefficient vanishes at the origin.
WeierstrassPair weierstrass_prepare(const UPoPS& f);

/// Parallel pair update; defined with the parallel runtime.
void weierstrass_ensure_parallel(WeierstrassState& st, int k, int threads, WorkerPool& pool);

} // namespace pseries

#endif
