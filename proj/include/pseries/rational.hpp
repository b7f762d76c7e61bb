#ifndef PSERIES_RATIONAL_HPP
#define PSERIES_RATIONAL_HPP

#include <gmp.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "pseries/errors.hpp"
#include "pseries/ops_counter.hpp"

namespace pseries {

/// Exact rational number, always in lowest terms with positive denominator.
/// Immutable value semantics; arithmetic goes through the free functions
/// below, which feed the operation counter when counting is enabled.
class Rational {
public:
    Rational() { mpq_init(v_); }
    Rational(long n) {
        mpq_init(v_);
        mpq_set_si(v_, n, 1);
    }
    Rational(long num, long den) {
        if (den == 0)
            throw DivisionByZeroError();
        mpq_init(v_);
        mpz_set_si(mpq_numref(v_), num);
        mpz_set_si(mpq_denref(v_), den);
        mpq_canonicalize(v_);
    }
    Rational(const Rational& o) {
        mpq_init(v_);
        mpq_set(v_, o.v_);
    }
    Rational(Rational&& o) noexcept {
        mpq_init(v_);
        mpq_swap(v_, o.v_);
    }
    Rational& operator=(const Rational& o) {
        if (this != &o)
            mpq_set(v_, o.v_);
        return *this;
    }
    Rational& operator=(Rational&& o) noexcept {
        mpq_swap(v_, o.v_);
        return *this;
    }
    ~Rational() { mpq_clear(v_); }

    /// Accepts "n" or "n/d" with optional leading sign; nullopt on bad input.
    static std::optional<Rational> parse(std::string_view text);

    bool is_zero() const { return mpq_sgn(v_) == 0; }
    bool is_one() const { return mpq_cmp_si(v_, 1, 1) == 0; }
    int sign() const { return mpq_sgn(v_); }

    std::string str() const;
    double to_double() const { return mpq_get_d(v_); }

    bool is_integer() const { return mpz_cmp_ui(mpq_denref(v_), 1) == 0; }
    void get_num(mpz_t out) const { mpz_set(out, mpq_numref(v_)); }
    void get_den(mpz_t out) const { mpz_set(out, mpq_denref(v_)); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return mpq_equal(a.v_, b.v_) != 0;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return mpq_cmp(a.v_, b.v_) < 0;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    friend Rational field_add(const Rational& a, const Rational& b);
    friend Rational field_sub(const Rational& a, const Rational& b);
    friend Rational field_mul(const Rational& a, const Rational& b);
    friend Rational field_div(const Rational& a, const Rational& b);
    friend Rational negate(const Rational& a);
    friend void field_mul_to(Rational& out, const Rational& a, const Rational& b);
    friend void field_add_to(Rational& acc, const Rational& x);

private:
    mpq_t v_;
};

inline Rational field_add(const Rational& a, const Rational& b) {
    ops::count_add();
    Rational r;
    mpq_add(r.v_, a.v_, b.v_);
    return r;
}

inline Rational field_sub(const Rational& a, const Rational& b) {
    ops::count_add();
    Rational r;
    mpq_sub(r.v_, a.v_, b.v_);
    return r;
}

inline Rational field_mul(const Rational& a, const Rational& b) {
    ops::count_mul();
    Rational r;
    mpq_mul(r.v_, a.v_, b.v_);
    return r;
}

inline Rational field_div(const Rational& a, const Rational& b) {
    if (b.is_zero())
        throw DivisionByZeroError();
    ops::count_div();
    Rational r;
    mpq_div(r.v_, a.v_, b.v_);
    return r;
}

/// Sign flip is not a counted field operation.
inline Rational negate(const Rational& a) {
    Rational r;
    mpq_neg(r.v_, a.v_);
    return r;
}

/// In-place kernels for the accumulation hot paths; counting as above.
inline void field_mul_to(Rational& out, const Rational& a, const Rational& b) {
    ops::count_mul();
    mpq_mul(out.v_, a.v_, b.v_);
}

inline void field_add_to(Rational& acc, const Rational& x) {
    ops::count_add();
    mpq_add(acc.v_, acc.v_, x.v_);
}

} // namespace pseries

#endif
