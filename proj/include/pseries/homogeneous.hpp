#ifndef PSERIES_HOMOGENEOUS_HPP
#define PSERIES_HOMOGENEOUS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pseries/rational.hpp"

namespace pseries {

/// Power product X1^e1 ... Xn^en. The exponent vector length is the number
/// of variables of the owning context; it is a runtime property.
struct Monomial {
    std::vector<std::uint32_t> exp;

    unsigned total_degree() const {
        unsigned d = 0;
        for (auto e : exp)
            d += e;
        return d;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Term order used everywhere: within equal total degree, lexicographic with
/// X1 highest, larger exponent vectors first. Parts only ever hold monomials
/// of one total degree, so this is the graded-lex order restricted to a slice.
bool monomial_less(const Monomial& a, const Monomial& b);

/// A sparse multivariate polynomial whose terms all share one total degree.
/// The zero part keeps its degree and has an empty term list. Terms are
/// sorted (monomial_less on the *reversed* sense: stored descending) and
/// coefficients are nonzero; this canonical form makes equality bitwise.
class HomogeneousPart {
public:
    using Term = std::pair<Monomial, Rational>;

    HomogeneousPart() : degree_(0) {}
    explicit HomogeneousPart(unsigned degree) : degree_(degree) {}

    /// Build from an arbitrary term list: merges duplicates (counted as
    /// additions), drops zeros, sorts. Every monomial must have total degree
    /// equal to `degree`.
    static HomogeneousPart from_terms(unsigned degree, std::vector<Term> terms);

    static HomogeneousPart zero(unsigned degree) { return HomogeneousPart(degree); }

    /// Single-term part; the coefficient may not be zero unless the part is
    /// meant to be zero (then prefer zero()).
    static HomogeneousPart monomial_term(Monomial m, Rational c);

    /// Constant part of degree 0 in n variables (empty if c == 0).
    static HomogeneousPart constant(unsigned n_vars, const Rational& c);

    unsigned degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }

    /// Adopt a term list that is already sorted, duplicate-free and
    /// zero-free. Internal fast path for the arithmetic kernels.
    static HomogeneousPart from_raw_sorted(unsigned degree, std::vector<Term> terms) {
        HomogeneousPart out(degree);
        out.terms_ = std::move(terms);
        return out;
    }

    friend bool operator==(const HomogeneousPart&, const HomogeneousPart&) = default;

private:
    unsigned degree_;
    std::vector<Term> terms_;

    friend HomogeneousPart hp_add(const HomogeneousPart&, const HomogeneousPart&);
    friend HomogeneousPart hp_sub(const HomogeneousPart&, const HomogeneousPart&);
    friend HomogeneousPart hp_mul(const HomogeneousPart&, const HomogeneousPart&);
    friend HomogeneousPart hp_scale(const HomogeneousPart&, const Rational&);
    friend HomogeneousPart hp_div_scalar(const HomogeneousPart&, const Rational&);
    friend HomogeneousPart hp_neg(const HomogeneousPart&);
};

/// a + b, a - b. Degrees must match; merging equal monomials costs one field
/// operation each, unmatched terms are copied for free.
HomogeneousPart hp_add(const HomogeneousPart& a, const HomogeneousPart& b);
HomogeneousPart hp_sub(const HomogeneousPart& a, const HomogeneousPart& b);

/// Exact sparse product; result degree is the sum of degrees.
HomogeneousPart hp_mul(const HomogeneousPart& a, const HomogeneousPart& b);

/// c * a (degree unchanged). Scaling by zero yields the zero part.
HomogeneousPart hp_scale(const HomogeneousPart& a, const Rational& c);

/// a / c termwise; c must be nonzero. Counted as divisions.
HomogeneousPart hp_div_scalar(const HomogeneousPart& a, const Rational& c);

/// -a, uncounted.
HomogeneousPart hp_neg(const HomogeneousPart& a);

/// Canonical text: terms joined by " + ", coefficients as "num/den",
/// monomials as "X1^2*X2". The zero part renders as "0".
std::string hp_to_string(const HomogeneousPart& p);

/// Accumulates term-by-term products (and scaled parts) of one target
/// degree without materializing intermediate parts. The counted operations
/// match the part kernels: one multiplication per term pair, one addition
/// per slot collision, so sums computed through an accumulator cost the
/// same as the hp_mul/hp_add sequence they replace.
class PartAccumulator {
public:
    PartAccumulator(unsigned n_vars, unsigned degree);

    /// += a * b; degrees must sum to the target degree.
    void add_product(const HomogeneousPart& a, const HomogeneousPart& b);

    /// += c * a; a must have the target degree. No work when c == 0.
    void add_scaled(const HomogeneousPart& a, const Rational& c);

    bool empty() const { return touched_ == 0; }

    /// Canonical result; the accumulator is left empty.
    HomogeneousPart take();

private:
    unsigned n_;
    unsigned degree_;
    size_t touched_ = 0;
    std::vector<Rational> slots_; // n <= 2: indexed by the X1 exponent
    std::vector<char> used_;
    std::map<std::vector<std::uint32_t>, Rational, std::greater<std::vector<std::uint32_t>>> map_;
    Rational tmp_;

    void deposit_product(const Monomial& ma, const Monomial& mb, const Rational& ca,
                         const Rational& cb);
};

/// Eager multivariate polynomial stored as its homogeneous slices, indexed
/// by total degree. Used by the input parser, the benchmark families and the
/// truncated-product oracles; not part of the lazy evaluation path.
class Polynomial {
public:
    Polynomial() : n_(0) {}
    explicit Polynomial(unsigned n_vars) : n_(n_vars) {}

    static Polynomial constant(unsigned n_vars, const Rational& c);
    static Polynomial variable(unsigned n_vars, unsigned index_1_based);

    unsigned n_vars() const { return n_; }
    bool is_zero() const;
    /// Degree of the highest nonzero slice; -1 for the zero polynomial.
    int degree() const;

    /// Slice of total degree k; a zero part of that degree when absent.
    HomogeneousPart part(unsigned k) const;
    void set_part(HomogeneousPart p);

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b);

    /// Product with every slice of degree > bound skipped (not computed).
    friend Polynomial mul_truncated(const Polynomial& a, const Polynomial& b, int bound);

    Polynomial scaled(const Rational& c) const;
    Polynomial negated() const;
    Polynomial pow(unsigned e) const;

    /// Drop every slice of degree > k.
    Polynomial truncated(int k) const;

private:
    unsigned n_;
    std::vector<HomogeneousPart> parts_; // parts_[i].degree() == i, may be zero parts
    Polynomial mul_impl(const Polynomial& b, size_t degree_limit) const;
    void trim();
};

} // namespace pseries

#endif
