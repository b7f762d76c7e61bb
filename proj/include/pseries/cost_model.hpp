#ifndef PSERIES_COST_MODEL_HPP
#define PSERIES_COST_MODEL_HPP

#include <cstdint>

namespace pseries {

/// Abstract work in field-operation units; schedulers only compare ratios.
struct WorkEstimate {
    std::uint64_t units = 0;
    friend WorkEstimate operator+(WorkEstimate a, WorkEstimate b) {
        return {a.units + b.units};
    }
    friend bool operator==(WorkEstimate, WorkEstimate) = default;
};

/// Relative cost of advancing alpha's coefficient c_{m-i} by one degree
/// (the common 2k factor dropped): i products when i <= d, else d, minus
/// one when the source is monic and the saved product would involve c_m.
inline WorkEstimate phase2_term_work(int i, int d, bool monic) {
    if (i <= d)
        return {static_cast<std::uint64_t>(i - (monic ? 1 : 0))};
    return {static_cast<std::uint64_t>(d)};
}

/// Work driving one pipeline stage: degree of its factor times the combined
/// degree of everything after it. Zero for the last stage.
inline WorkEstimate hensel_stage_work(int d_i, int dhat_next) {
    return {static_cast<std::uint64_t>(d_i) * static_cast<std::uint64_t>(dhat_next)};
}

/// Field operations to bring a prepared pair (deg p = d, deg alpha = m) to
/// precision k over a univariate coefficient ring: d m k^2 + d k^2 + d m k,
/// dropping the d k^2 term when the source is monic.
inline WorkEstimate weierstrass_total_cost(int d, int m, int k, bool monic) {
    std::uint64_t dd = static_cast<std::uint64_t>(d);
    std::uint64_t mm = static_cast<std::uint64_t>(m);
    std::uint64_t kk = static_cast<std::uint64_t>(k);
    std::uint64_t units = dd * mm * kk * kk + dd * mm * kk;
    if (!monic)
        units += dd * kk * kk;
    return {units};
}

/// Field operations to bring factor `index` (0-based of r) of a Hensel
/// factorization to precision k over a univariate coefficient ring.
/// d is the degree of the full input, d_i the factor degree, dhat_i the
/// residual degree at this stage and dhat_next = dhat_i - d_i.
inline WorkEstimate hensel_factor_cost(int index, int r, int d, int d_i, int dhat_i, int k) {
    std::uint64_t di = static_cast<std::uint64_t>(d_i);
    std::uint64_t dh = static_cast<std::uint64_t>(dhat_i);
    std::uint64_t dn = dh - di;
    std::uint64_t dd = static_cast<std::uint64_t>(d);
    std::uint64_t kk = static_cast<std::uint64_t>(k);
    if (index == r - 1)
        return {di * di * kk + 2 * di * kk + kk};
    if (index == 0)
        return {di * dn * kk * kk + dd * dd * kk + di * dd * kk + 2 * di * kk + 2 * dd * kk +
                2 * kk};
    return {di * dn * kk * kk + 2 * dh * dh * kk + di * dh * kk + 2 * di * kk + 4 * dh * kk +
            3 * kk};
}

} // namespace pseries

#endif
