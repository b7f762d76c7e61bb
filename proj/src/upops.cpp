#include "pseries/upops.hpp"

#include <algorithm>
#include <climits>

#include "pseries/errors.hpp"

namespace pseries {

namespace {

bool provably_zero(const PowerSeries& s) {
    if (s.rule() == Rule::Constant)
        return s.node()->const_value.is_zero();
    if (s.rule() == Rule::Explicit) {
        for (const auto& p : s.node()->explicit_parts)
            if (!p.is_zero())
                return false;
        return true;
    }
    return false;
}

} // namespace

UPoPS::UPoPS(std::vector<PowerSeries> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty())
        throw Error("UPoPS needs at least one coefficient");
    for (const auto& c : coeffs_)
        if (c.context() != coeffs_.front().context())
            throw ContextMismatchError();
    while (coeffs_.size() > 1 && provably_zero(coeffs_.back()))
        coeffs_.pop_back();
}

int UPoPS::precision() const {
    int p = INT_MAX;
    for (const auto& c : coeffs_)
        if (!c.complete())
            p = std::min(p, c.precision());
    return p;
}

void UPoPS::update_to(int k) const {
    for (const auto& c : coeffs_)
        c.update_to(k);
}

Polynomial UPoPS::coeff_truncated(int i, int k) const {
    const PowerSeries& s = coeffs_[static_cast<size_t>(i)];
    s.update_to(k);
    Polynomial out(context()->n_vars);
    for (int d = 0; d <= k; ++d)
        if (!s.part(d).is_zero())
            out.set_part(s.part(d));
    return out;
}

ShiftTable::ShiftTable(int d, Rational c) : c_(std::move(c)) {
    rows_.resize(static_cast<size_t>(d) + 1);
    rows_[0] = {Rational(1)};
    for (int j = 1; j <= d; ++j) {
        // (Y+c)^j = (Y+c) * (Y+c)^(j-1)
        rows_[j].resize(static_cast<size_t>(j) + 1);
        const auto& prev = rows_[j - 1];
        rows_[j][0] = field_mul(prev[0], c_);
        for (int i = 1; i < j; ++i)
            rows_[j][i] = field_add(prev[i - 1], field_mul(prev[i], c_));
        rows_[j][j] = Rational(1);
    }
}

UPoPS taylor_shift(const UPoPS& f, const Rational& c) {
    const int d = f.degree();
    auto table = std::make_shared<ShiftTable>(d, c);
    std::vector<PowerSeries> shifted;
    shifted.reserve(static_cast<size_t>(d) + 1);
    for (int i = 0; i <= d; ++i) {
        // b_i(k) = sum_{l=i..d} C(l,i) c^(l-i) a_l(k)
        std::vector<PowerSeries> sources;
        std::vector<Rational> weights;
        sources.reserve(static_cast<size_t>(d - i) + 1);
        for (int l = i; l <= d; ++l) {
            sources.push_back(f.coeff(l));
            weights.push_back(table->entry(l, i));
        }
        shifted.push_back(detail::make_lincomb(f.context(), std::move(sources), std::move(weights)));
    }
    return UPoPS(std::move(shifted));
}

std::vector<Rational> upops_eval_origin(const UPoPS& f) {
    std::vector<Rational> out;
    out.reserve(static_cast<size_t>(f.degree()) + 1);
    for (int i = 0; i <= f.degree(); ++i) {
        const PowerSeries& a = f.coeff(i);
        a.update_to(0);
        const HomogeneousPart& p0 = a.part(0);
        out.push_back(p0.is_zero() ? Rational(0) : p0.terms().front().second);
    }
    while (out.size() > 1 && out.back().is_zero())
        out.pop_back();
    return out;
}

std::vector<Polynomial> upops_truncated(const UPoPS& f, int k) {
    std::vector<Polynomial> out;
    out.reserve(static_cast<size_t>(f.degree()) + 1);
    for (int i = 0; i <= f.degree(); ++i)
        out.push_back(f.coeff_truncated(i, k));
    return out;
}

std::vector<Polynomial> upops_truncated_product(std::span<const UPoPS> factors, int k) {
    if (factors.empty())
        throw Error("truncated product of no factors");
    unsigned n = factors.front().context()->n_vars;
    std::vector<Polynomial> acc = {Polynomial::constant(n, Rational(1))};
    for (const UPoPS& f : factors) {
        std::vector<Polynomial> rhs = upops_truncated(f, k);
        std::vector<Polynomial> next(acc.size() + rhs.size() - 1, Polynomial(n));
        for (size_t i = 0; i < acc.size(); ++i) {
            if (acc[i].is_zero())
                continue;
            for (size_t j = 0; j < rhs.size(); ++j) {
                if (rhs[j].is_zero())
                    continue;
                next[i + j] = next[i + j] + mul_truncated(acc[i], rhs[j], k);
            }
        }
        acc = std::move(next);
    }
    while (acc.size() > 1 && acc.back().is_zero())
        acc.pop_back();
    return acc;
}

bool series_is_one(const PowerSeries& s, int probe) {
    if (s.rule() == Rule::Constant)
        return s.node()->const_value.is_one();
    if (s.rule() == Rule::Explicit) {
        const auto& parts = s.node()->explicit_parts;
        if (parts.empty() || parts[0].is_zero())
            return false;
        if (!(parts[0] == HomogeneousPart::constant(s.context()->n_vars, Rational(1))))
            return false;
        for (size_t i = 1; i < parts.size(); ++i)
            if (!parts[i].is_zero())
                return false;
        return true;
    }
    s.update_to(probe);
    if (!(s.part(0) == HomogeneousPart::constant(s.context()->n_vars, Rational(1))))
        return false;
    for (int d = 1; d <= probe; ++d)
        if (!s.part(d).is_zero())
            return false;
    return true;
}

} // namespace pseries
