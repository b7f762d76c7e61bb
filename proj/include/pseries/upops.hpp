#ifndef PSERIES_UPOPS_HPP
#define PSERIES_UPOPS_HPP

#include <span>
#include <vector>

#include "pseries/series.hpp"

namespace pseries {

/// Univariate polynomial in the main variable Y with power series
/// coefficients, dense in Y.
class UPoPS {
public:
    UPoPS() = default;
    /// coeffs[i] is the coefficient of Y^i; provably-zero trailing
    /// coefficients (zero constants, zero explicit series) are stripped.
    explicit UPoPS(std::vector<PowerSeries> coeffs);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const PowerSeries& coeff(int i) const { return coeffs_[static_cast<size_t>(i)]; }
    const std::vector<PowerSeries>& coeffs() const { return coeffs_; }
    const std::shared_ptr<SeriesContext>& context() const { return coeffs_.front().context(); }

    /// Minimum precision over the coefficients; complete coefficients
    /// (constants, explicit polynomials) do not bound it.
    int precision() const;

    void update_to(int k) const;

    /// Truncation of coefficient i to total degree k, as an eager polynomial.
    Polynomial coeff_truncated(int i, int k) const;

private:
    std::vector<PowerSeries> coeffs_;
};

/// Binomial-expansion table of (Y+c)^j for j = 0..d: entry(j, i) is the
/// coefficient of Y^i, i.e. C(j,i) * c^(j-i). Row j has j+1 entries and
/// entry(j, j) = 1.
class ShiftTable {
public:
    ShiftTable(int d, Rational c);

    const Rational& entry(int j, int i) const { return rows_[j][i]; }
    const Rational& shift_point() const { return c_; }
    int size() const { return static_cast<int>(rows_.size()); }

private:
    Rational c_;
    std::vector<std::vector<Rational>> rows_;
};

/// Lazy Taylor shift g = f(Y + c). Each coefficient of g is a fixed linear
/// combination of the coefficients of f, so its degree-k part only needs the
/// degree-k parts of the sources. The table is computed once here and
/// captured by the coefficient update rules.
UPoPS taylor_shift(const UPoPS& f, const Rational& c);

/// f(0,...,0,Y): the univariate polynomial over the field whose coefficient
/// of Y^i is the constant term of a_i. Forces only degree-0 parts.
std::vector<Rational> upops_eval_origin(const UPoPS& f);

/// Eager product of the factors with every coefficient truncated past total
/// degree k. Factors are updated to precision k as needed. Index = Y-degree.
std::vector<Polynomial> upops_truncated_product(std::span<const UPoPS> factors, int k);

/// Truncation of every coefficient of f to total degree k. Index = Y-degree.
std::vector<Polynomial> upops_truncated(const UPoPS& f, int k);

/// True when the series is the constant 1. Exact for complete series
/// (constants and explicit polynomials); otherwise probes parts 0..probe.
bool series_is_one(const PowerSeries& s, int probe);

} // namespace pseries

#endif
