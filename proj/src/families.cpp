#include "pseries/families.hpp"

#include "pseries/errors.hpp"

namespace pseries {

Family family_from_name(const std::string& name) {
    if (name == "u")
        return Family::U;
    if (name == "v")
        return Family::V;
    if (name == "x")
        return Family::X;
    if (name == "y")
        return Family::Y;
    if (name == "z")
        return Family::Z;
    throw Error("unknown family '" + name + "' (expected u, v, x, y or z)");
}

std::string family_name(Family f) {
    switch (f) {
    case Family::U: return "u";
    case Family::V: return "v";
    case Family::X: return "x";
    case Family::Y: return "y";
    case Family::Z: return "z";
    }
    return "?";
}

namespace {

// Y-polynomial with eager multivariate coefficients
using YPoly = std::vector<Polynomial>;

YPoly ymul(const YPoly& a, const YPoly& b, unsigned n) {
    YPoly out(a.size() + b.size() - 1, Polynomial(n));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            if (!a[i].is_zero() && !b[j].is_zero())
                out[i + j] = out[i + j] + a[i] * b[j];
    return out;
}

UPoPS to_upops(const YPoly& p, const std::shared_ptr<SeriesContext>& ctx) {
    std::vector<PowerSeries> coeffs;
    coeffs.reserve(p.size());
    for (const auto& c : p)
        coeffs.push_back(ps_from_polynomial(ctx, c));
    return UPoPS(std::move(coeffs));
}

UPoPS weierstrass_family(int r, bool v_shape) {
    if (r < 2)
        throw Error("family needs r >= 2");
    auto ctx = make_context(2);
    Polynomial x1 = Polynomial::variable(2, 1);
    Polynomial x2 = Polynomial::variable(2, 2);
    Polynomial upper = x1 * x1 + x2;                     // X1^2 + X2
    Polynomial tail = x1 * x1 + x1 * x2 + x2 * x2;       // X1^2 + X1*X2 + X2^2
    int split = v_shape ? (r + 1) / 2 : 2;               // first index with a unit coefficient

    YPoly coeffs(static_cast<size_t>(r) + 1, Polynomial(2));
    coeffs[0] = tail;
    for (int i = 1; i < split; ++i)
        coeffs[static_cast<size_t>(i)] = upper;
    for (int i = split; i <= r; ++i)
        coeffs[static_cast<size_t>(i)] = upper + Polynomial::constant(2, Rational(i));
    return to_upops(coeffs, ctx);
}

UPoPS hensel_family(int r, bool distinct_multiplicities, bool multivariate) {
    if (r < 4)
        throw Error("family needs r >= 4 so the perturbation misses the leading term");
    unsigned n = multivariate ? 2 : 1;
    auto ctx = make_context(n);

    YPoly prod = {Polynomial::constant(n, Rational(1))};
    for (int i = 1; i <= r; ++i) {
        Polynomial low = Polynomial::constant(n, Rational(-i));
        if (multivariate)
            low = low + Polynomial::variable(n, 1) + Polynomial::variable(n, 2);
        YPoly lin = {low, Polynomial::constant(n, Rational(1))}; // Y + (...) - i
        int power = distinct_multiplicities ? i : 1;
        for (int e = 0; e < power; ++e)
            prod = ymul(prod, lin, n);
    }

    Polynomial perturb = multivariate
                             ? Polynomial::variable(n, 1) * Polynomial::variable(n, 2)
                             : Polynomial::variable(n, 1);
    prod[1] = prod[1] + perturb; // X... * (Y^3 + Y)
    prod[3] = prod[3] + perturb;
    return to_upops(prod, ctx);
}

} // namespace

UPoPS gen_family(Family f, int r) {
    switch (f) {
    case Family::U: return weierstrass_family(r, false);
    case Family::V: return weierstrass_family(r, true);
    case Family::X: return hensel_family(r, false, false);
    case Family::Y: return hensel_family(r, true, false);
    case Family::Z: return hensel_family(r, false, true);
    }
    throw Error("unreachable family");
}

UPoPS gen_counts_input(int d, int m) {
    if (d < 1 || m < 0)
        throw Error("counts input needs d >= 1, m >= 0");
    auto ctx = make_context(1);
    Polynomial x1 = Polynomial::variable(1, 1);
    Polynomial low = x1 + x1 * x1;

    YPoly coeffs(static_cast<size_t>(d + m) + 1, Polynomial(1));
    for (int i = 0; i < d; ++i)
        coeffs[static_cast<size_t>(i)] = low;
    for (int j = 0; j < m; ++j)
        coeffs[static_cast<size_t>(d + j)] = x1 + Polynomial::constant(1, Rational(j + 1));
    coeffs[static_cast<size_t>(d + m)] = Polynomial::constant(1, Rational(1));
    return to_upops(coeffs, ctx);
}

} // namespace pseries
