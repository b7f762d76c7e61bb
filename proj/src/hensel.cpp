#include "pseries/hensel.hpp"

#include <algorithm>
#include <climits>
#include <numeric>

#include "pseries/errors.hpp"

namespace pseries {

namespace {

constexpr unsigned long kDivisorSearchBound = 1000000;

// positive divisors of |v| up to the search bound, ascending
std::vector<unsigned long> small_divisors(const mpz_t v, unsigned long bound) {
    std::vector<unsigned long> out;
    if (mpz_sgn(v) == 0)
        return out;
    mpz_t abs_v;
    mpz_init(abs_v);
    mpz_abs(abs_v, v);
    unsigned long lim = bound;
    if (mpz_fits_ulong_p(abs_v))
        lim = std::min(bound, mpz_get_ui(abs_v));
    for (unsigned long u = 1; u <= lim; ++u)
        if (mpz_divisible_ui_p(abs_v, u))
            out.push_back(u);
    mpz_clear(abs_v);
    return out;
}

Rational horner(const std::vector<Rational>& poly, const Rational& x) {
    Rational acc = poly.back();
    for (int i = static_cast<int>(poly.size()) - 2; i >= 0; --i)
        acc = field_add(field_mul(acc, x), poly[static_cast<size_t>(i)]);
    return acc;
}

// divide by (Y - r); returns quotient, requires zero remainder
std::vector<Rational> deflate(const std::vector<Rational>& poly, const Rational& r) {
    std::vector<Rational> q(poly.size() - 1);
    Rational carry = poly.back();
    for (int i = static_cast<int>(poly.size()) - 2; i >= 0; --i) {
        q[static_cast<size_t>(i)] = carry;
        carry = field_add(poly[static_cast<size_t>(i)], field_mul(carry, r));
    }
    if (!carry.is_zero())
        throw Error("internal: deflation by a non-root");
    return q;
}

// first rational root of the (zero-constant-free) polynomial, if any
std::optional<Rational> find_one_root(const std::vector<Rational>& poly) {
    // primitive integer form: scale by the denominator lcm, strip content
    size_t n = poly.size();
    std::vector<mpz_t> z(n);
    mpz_t lcm, tmp, content;
    mpz_init_set_ui(lcm, 1);
    mpz_init(tmp);
    mpz_init(content);
    for (size_t i = 0; i < n; ++i) {
        mpz_init(z[i]);
        poly[i].get_den(tmp);
        mpz_lcm(lcm, lcm, tmp);
    }
    for (size_t i = 0; i < n; ++i) {
        poly[i].get_num(z[i]);
        poly[i].get_den(tmp);
        mpz_divexact(tmp, lcm, tmp);
        mpz_mul(z[i], z[i], tmp);
    }
    mpz_set_ui(content, 0);
    for (size_t i = 0; i < n; ++i)
        mpz_gcd(content, content, z[i]);
    if (mpz_cmp_ui(content, 1) > 0)
        for (size_t i = 0; i < n; ++i)
            mpz_divexact(z[i], z[i], content);

    std::vector<unsigned long> nums = small_divisors(z[0], kDivisorSearchBound);
    std::vector<unsigned long> dens = small_divisors(z[n - 1], kDivisorSearchBound);

    std::optional<Rational> found;
    for (unsigned long den : dens) {
        for (unsigned long num : nums) {
            if (std::gcd(num, den) != 1)
                continue;
            for (int sign : {+1, -1}) {
                Rational cand(sign * static_cast<long>(num), static_cast<long>(den));
                if (horner(poly, cand).is_zero()) {
                    found = cand;
                    break;
                }
            }
            if (found)
                break;
        }
        if (found)
            break;
    }

    for (size_t i = 0; i < n; ++i)
        mpz_clear(z[i]);
    mpz_clear(lcm);
    mpz_clear(tmp);
    mpz_clear(content);
    return found;
}

} // namespace

RootList find_rational_roots(const std::vector<Rational>& q) {
    if (q.size() < 2)
        throw Error("root finding needs degree >= 1");
    if (!q.back().is_one())
        throw Error("root finding expects a monic polynomial");

    std::vector<Rational> poly = q;
    RootList roots;

    // Y^e factor
    size_t zero_mult = 0;
    while (zero_mult + 1 < poly.size() && poly[zero_mult].is_zero())
        ++zero_mult;
    if (zero_mult > 0) {
        roots.push_back({Rational(0), static_cast<int>(zero_mult)});
        poly.erase(poly.begin(), poly.begin() + static_cast<long>(zero_mult));
    }

    while (poly.size() > 1) {
        std::optional<Rational> r = find_one_root(poly);
        if (!r)
            throw NonSplittingError("no rational linear factor for residual of degree " +
                                    std::to_string(poly.size() - 1) +
                                    " (search bound " + std::to_string(kDivisorSearchBound) + ")");
        int mult = 0;
        for (;;) {
            poly = deflate(poly, *r);
            ++mult;
            if (poly.size() == 1 || !horner(poly, *r).is_zero())
                break;
        }
        roots.push_back({*r, mult});
    }

    std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) {
        if (a.multiplicity != b.multiplicity)
            return a.multiplicity < b.multiplicity;
        return a.value < b.value;
    });
    return roots;
}

std::vector<int> HenselFactorization::factor_degrees() const {
    std::vector<int> out;
    out.reserve(stages_.size());
    for (const auto& s : stages_)
        out.push_back(s.degree);
    return out;
}

void HenselFactorization::update_to(int k) {
    for (auto& s : stages_)
        s.factor.update_to(k);
}

int HenselFactorization::precision() const {
    int p = INT_MAX;
    for (const auto& s : stages_)
        p = std::min(p, s.factor.precision());
    return p;
}

HenselFactorization hensel_factorize(const UPoPS& f) {
    if (f.degree() < 1)
        throw Error("Hensel factorization needs degree >= 1");
    int probe = std::max(4, 2 * std::max(0, f.coeff(f.degree()).precision()));
    if (!series_is_one(f.coeff(f.degree()), probe))
        throw NotMonicError();

    std::vector<Rational> fbar = upops_eval_origin(f);
    RootList roots = find_rational_roots(fbar);
    const int r = static_cast<int>(roots.size());

    std::vector<HenselStage> stages;
    stages.reserve(static_cast<size_t>(r));
    UPoPS fhat = f;
    int residual = f.degree();
    for (int i = 0; i + 1 < r; ++i) {
        HenselStage st;
        st.root = roots[static_cast<size_t>(i)].value;
        st.degree = roots[static_cast<size_t>(i)].multiplicity;
        st.residual = residual;
        st.fhat = fhat;
        st.shifted = taylor_shift(fhat, st.root);
        st.pair = weierstrass_prepare(st.shifted);
        if (st.pair->d() != st.degree)
            throw Error("internal: preparation split disagrees with root multiplicity");
        Rational back = negate(st.root);
        st.factor = taylor_shift(st.pair->p(), back);
        fhat = taylor_shift(st.pair->alpha(), back);
        residual -= st.degree;
        stages.push_back(std::move(st));
    }
    {
        HenselStage last;
        last.root = roots.back().value;
        last.degree = roots.back().multiplicity;
        last.residual = residual;
        last.fhat = fhat;
        last.factor = fhat;
        stages.push_back(std::move(last));
    }
    return HenselFactorization(f, std::move(roots), std::move(stages));
}

} // namespace pseries
