#include "pseries/homogeneous.hpp"

#include <algorithm>
#include <map>

#include "pseries/errors.hpp"

namespace pseries {

bool monomial_less(const Monomial& a, const Monomial& b) {
    unsigned da = a.total_degree(), db = b.total_degree();
    if (da != db)
        return da < db;
    // equal degree: lexicographic, X1 most significant
    return std::lexicographical_compare(a.exp.begin(), a.exp.end(), b.exp.begin(), b.exp.end());
}

namespace {

// stored order: descending, so X1^2 comes before X1*X2 before X2^2
bool term_before(const Monomial& a, const Monomial& b) { return monomial_less(b, a); }

} // namespace

HomogeneousPart HomogeneousPart::from_terms(unsigned degree, std::vector<Term> terms) {
    for (const Term& t : terms)
        if (t.first.total_degree() != degree)
            throw DegreeMismatchError("term degree does not match part degree");
    std::sort(terms.begin(), terms.end(),
              [](const Term& x, const Term& y) { return term_before(x.first, y.first); });
    HomogeneousPart out(degree);
    for (Term& t : terms) {
        if (t.second.is_zero())
            continue;
        if (!out.terms_.empty() && out.terms_.back().first == t.first) {
            Rational sum = field_add(out.terms_.back().second, t.second);
            if (sum.is_zero())
                out.terms_.pop_back();
            else
                out.terms_.back().second = std::move(sum);
        } else {
            out.terms_.push_back(std::move(t));
        }
    }
    return out;
}

HomogeneousPart HomogeneousPart::monomial_term(Monomial m, Rational c) {
    HomogeneousPart out(m.total_degree());
    if (!c.is_zero())
        out.terms_.emplace_back(std::move(m), std::move(c));
    return out;
}

HomogeneousPart HomogeneousPart::constant(unsigned n_vars, const Rational& c) {
    Monomial one;
    one.exp.assign(n_vars, 0);
    return monomial_term(std::move(one), c);
}

namespace {

HomogeneousPart merge(const HomogeneousPart& a, const HomogeneousPart& b, bool subtract) {
    if (a.degree() != b.degree())
        throw DegreeMismatchError("cannot combine homogeneous parts of degrees " +
                                  std::to_string(a.degree()) + " and " +
                                  std::to_string(b.degree()));
    HomogeneousPart out(a.degree());
    std::vector<HomogeneousPart::Term> terms;
    terms.reserve(a.terms().size() + b.terms().size());
    auto ia = a.terms().begin(), ea = a.terms().end();
    auto ib = b.terms().begin(), eb = b.terms().end();
    while (ia != ea && ib != eb) {
        if (ia->first == ib->first) {
            Rational c = subtract ? field_sub(ia->second, ib->second)
                                  : field_add(ia->second, ib->second);
            if (!c.is_zero())
                terms.emplace_back(ia->first, std::move(c));
            ++ia;
            ++ib;
        } else if (term_before(ia->first, ib->first)) {
            terms.emplace_back(*ia);
            ++ia;
        } else {
            terms.emplace_back(ib->first, subtract ? negate(ib->second) : ib->second);
            ++ib;
        }
    }
    for (; ia != ea; ++ia)
        terms.emplace_back(*ia);
    for (; ib != eb; ++ib)
        terms.emplace_back(ib->first, subtract ? negate(ib->second) : ib->second);
    return HomogeneousPart::from_raw_sorted(a.degree(), std::move(terms));
}

} // namespace

HomogeneousPart hp_add(const HomogeneousPart& a, const HomogeneousPart& b) {
    return merge(a, b, false);
}

HomogeneousPart hp_sub(const HomogeneousPart& a, const HomogeneousPart& b) {
    return merge(a, b, true);
}

HomogeneousPart hp_mul(const HomogeneousPart& a, const HomogeneousPart& b) {
    unsigned degree = a.degree() + b.degree();
    if (a.is_zero() || b.is_zero())
        return HomogeneousPart::zero(degree);
    const size_t n = a.terms().front().first.exp.size();

    if (n <= 1) {
        // one monomial per degree: a and b are single terms
        Monomial m;
        m.exp.assign(n, 0);
        if (n == 1)
            m.exp[0] = degree;
        return HomogeneousPart::monomial_term(
            std::move(m), field_mul(a.terms().front().second, b.terms().front().second));
    }

    if (n == 2) {
        // the X1 exponent pins the monomial within a fixed total degree
        std::vector<Rational> slot(degree + 1);
        std::vector<bool> used(degree + 1, false);
        for (const auto& [ma, ca] : a.terms()) {
            for (const auto& [mb, cb] : b.terms()) {
                unsigned e1 = ma.exp[0] + mb.exp[0];
                Rational prod = field_mul(ca, cb);
                if (used[e1])
                    slot[e1] = field_add(slot[e1], prod);
                else {
                    slot[e1] = std::move(prod);
                    used[e1] = true;
                }
            }
        }
        std::vector<HomogeneousPart::Term> terms;
        for (unsigned e1 = degree + 1; e1-- > 0;) {
            if (!used[e1] || slot[e1].is_zero())
                continue;
            Monomial m;
            m.exp = {e1, degree - e1};
            terms.emplace_back(std::move(m), std::move(slot[e1]));
        }
        return HomogeneousPart::from_raw_sorted(degree, std::move(terms));
    }

    // accumulate products; a slot collision costs one addition
    std::map<std::vector<std::uint32_t>, Rational, std::greater<>> acc;
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            std::vector<std::uint32_t> e(ma.exp.size());
            for (size_t i = 0; i < e.size(); ++i)
                e[i] = ma.exp[i] + mb.exp[i];
            Rational prod = field_mul(ca, cb);
            auto it = acc.find(e);
            if (it == acc.end())
                acc.emplace(std::move(e), std::move(prod));
            else
                it->second = field_add(it->second, prod);
        }
    }
    std::vector<HomogeneousPart::Term> terms;
    terms.reserve(acc.size());
    for (auto& [e, c] : acc) {
        if (!c.is_zero())
            terms.emplace_back(Monomial{e}, std::move(c));
    }
    return HomogeneousPart::from_raw_sorted(degree, std::move(terms));
}

HomogeneousPart hp_scale(const HomogeneousPart& a, const Rational& c) {
    if (c.is_zero() || a.is_zero())
        return HomogeneousPart::zero(a.degree());
    std::vector<HomogeneousPart::Term> terms;
    terms.reserve(a.terms().size());
    for (const auto& [m, q] : a.terms())
        terms.emplace_back(m, field_mul(q, c));
    return HomogeneousPart::from_raw_sorted(a.degree(), std::move(terms));
}

HomogeneousPart hp_div_scalar(const HomogeneousPart& a, const Rational& c) {
    if (c.is_zero())
        throw DivisionByZeroError();
    if (a.is_zero())
        return HomogeneousPart::zero(a.degree());
    std::vector<HomogeneousPart::Term> terms;
    terms.reserve(a.terms().size());
    for (const auto& [m, q] : a.terms())
        terms.emplace_back(m, field_div(q, c));
    return HomogeneousPart::from_raw_sorted(a.degree(), std::move(terms));
}

HomogeneousPart hp_neg(const HomogeneousPart& a) {
    std::vector<HomogeneousPart::Term> terms;
    terms.reserve(a.terms().size());
    for (const auto& [m, q] : a.terms())
        terms.emplace_back(m, negate(q));
    return HomogeneousPart::from_raw_sorted(a.degree(), std::move(terms));
}

std::string hp_to_string(const HomogeneousPart& p) {
    if (p.is_zero())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        if (!first)
            out += " + ";
        first = false;
        std::string mono;
        for (size_t i = 0; i < m.exp.size(); ++i) {
            if (m.exp[i] == 0)
                continue;
            if (!mono.empty())
                mono += "*";
            mono += "X" + std::to_string(i + 1);
            if (m.exp[i] > 1)
                mono += "^" + std::to_string(m.exp[i]);
        }
        if (mono.empty()) {
            out += c.str();
        } else if (c.is_one()) {
            out += mono;
        } else {
            out += c.str() + "*" + mono;
        }
    }
    return out;
}

// ----------------------------------------------------------- PartAccumulator

PartAccumulator::PartAccumulator(unsigned n_vars, unsigned degree)
    : n_(n_vars), degree_(degree) {
    if (n_ <= 2) {
        size_t width = n_ == 2 ? degree_ + 1 : 1;
        slots_.resize(width);
        used_.assign(width, 0);
    }
}

void PartAccumulator::deposit_product(const Monomial& ma, const Monomial& mb, const Rational& ca,
                                      const Rational& cb) {
    // mb may be the empty unit monomial (scaled deposits)
    field_mul_to(tmp_, ca, cb);
    if (n_ <= 2) {
        size_t e1 = 0;
        if (n_ == 2)
            e1 = ma.exp[0] + (mb.exp.empty() ? 0 : mb.exp[0]);
        if (used_[e1]) {
            field_add_to(slots_[e1], tmp_);
        } else {
            slots_[e1] = tmp_;
            used_[e1] = 1;
            ++touched_;
        }
        return;
    }
    std::vector<std::uint32_t> e = ma.exp;
    if (!mb.exp.empty())
        for (size_t i = 0; i < e.size(); ++i)
            e[i] += mb.exp[i];
    auto it = map_.find(e);
    if (it == map_.end()) {
        map_.emplace(std::move(e), tmp_);
        ++touched_;
    } else {
        field_add_to(it->second, tmp_);
    }
}

void PartAccumulator::add_product(const HomogeneousPart& a, const HomogeneousPart& b) {
    if (a.is_zero() || b.is_zero())
        return;
    if (a.degree() + b.degree() != degree_)
        throw DegreeMismatchError("accumulated product degree mismatch");
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms())
            deposit_product(ma, mb, ca, cb);
}

void PartAccumulator::add_scaled(const HomogeneousPart& a, const Rational& c) {
    if (a.is_zero() || c.is_zero())
        return;
    if (a.degree() != degree_)
        throw DegreeMismatchError("accumulated part degree mismatch");
    static const Monomial unit{};
    for (const auto& [ma, ca] : a.terms())
        deposit_product(ma, unit, ca, c);
}

HomogeneousPart PartAccumulator::take() {
    std::vector<HomogeneousPart::Term> terms;
    if (n_ <= 2) {
        for (size_t e1 = slots_.size(); e1-- > 0;) {
            if (!used_[e1] || slots_[e1].is_zero())
                continue;
            Monomial m;
            m.exp.assign(n_, 0);
            if (n_ == 2) {
                m.exp[0] = static_cast<std::uint32_t>(e1);
                m.exp[1] = degree_ - static_cast<std::uint32_t>(e1);
            } else if (n_ == 1) {
                m.exp[0] = degree_;
            }
            terms.emplace_back(std::move(m), std::move(slots_[e1]));
        }
        std::fill(used_.begin(), used_.end(), 0);
    } else {
        for (auto& [e, c] : map_) {
            if (!c.is_zero())
                terms.emplace_back(Monomial{e}, std::move(c));
        }
        map_.clear();
    }
    touched_ = 0;
    return HomogeneousPart::from_raw_sorted(degree_, std::move(terms));
}

// ---------------------------------------------------------------- Polynomial

Polynomial Polynomial::constant(unsigned n_vars, const Rational& c) {
    Polynomial p(n_vars);
    p.set_part(HomogeneousPart::constant(n_vars, c));
    return p;
}

Polynomial Polynomial::variable(unsigned n_vars, unsigned index_1_based) {
    if (index_1_based < 1 || index_1_based > n_vars)
        throw BadIndexError("variable index " + std::to_string(index_1_based) +
                            " out of range for " + std::to_string(n_vars) + " variables");
    Monomial m;
    m.exp.assign(n_vars, 0);
    m.exp[index_1_based - 1] = 1;
    Polynomial p(n_vars);
    p.set_part(HomogeneousPart::monomial_term(std::move(m), Rational(1)));
    return p;
}

bool Polynomial::is_zero() const {
    for (const auto& p : parts_)
        if (!p.is_zero())
            return false;
    return true;
}

int Polynomial::degree() const {
    for (int i = static_cast<int>(parts_.size()) - 1; i >= 0; --i)
        if (!parts_[i].is_zero())
            return i;
    return -1;
}

HomogeneousPart Polynomial::part(unsigned k) const {
    if (k < parts_.size())
        return parts_[k];
    return HomogeneousPart::zero(k);
}

void Polynomial::set_part(HomogeneousPart p) {
    unsigned k = p.degree();
    if (parts_.size() <= k)
        for (unsigned i = parts_.size(); i <= k; ++i)
            parts_.push_back(HomogeneousPart::zero(i));
    parts_[k] = std::move(p);
}

void Polynomial::trim() {
    while (!parts_.empty() && parts_.back().is_zero())
        parts_.pop_back();
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Polynomial out(a.n_);
    size_t hi = std::max(a.parts_.size(), b.parts_.size());
    for (size_t k = 0; k < hi; ++k) {
        if (k >= a.parts_.size())
            out.set_part(b.parts_[k]);
        else if (k >= b.parts_.size())
            out.set_part(a.parts_[k]);
        else
            out.set_part(hp_add(a.parts_[k], b.parts_[k]));
    }
    out.trim();
    return out;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    Polynomial out(a.n_);
    size_t hi = std::max(a.parts_.size(), b.parts_.size());
    for (size_t k = 0; k < hi; ++k) {
        if (k >= a.parts_.size())
            out.set_part(hp_neg(b.parts_[k]));
        else if (k >= b.parts_.size())
            out.set_part(a.parts_[k]);
        else
            out.set_part(hp_sub(a.parts_[k], b.parts_[k]));
    }
    out.trim();
    return out;
}

Polynomial Polynomial::mul_impl(const Polynomial& b, size_t degree_limit) const {
    Polynomial out(n_);
    if (is_zero() || b.is_zero())
        return out;
    size_t da = parts_.size() - 1, db = b.parts_.size() - 1;
    size_t hi = std::min(da + db, degree_limit);
    for (size_t k = 0; k <= hi; ++k) {
        PartAccumulator acc(n_, static_cast<unsigned>(k));
        for (size_t i = 0; i <= da && i <= k; ++i) {
            size_t j = k - i;
            if (j > db)
                continue;
            acc.add_product(parts_[i], b.parts_[j]);
        }
        out.set_part(acc.take());
    }
    out.trim();
    return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    return a.mul_impl(b, static_cast<size_t>(-1));
}

Polynomial mul_truncated(const Polynomial& a, const Polynomial& b, int bound) {
    if (bound < 0)
        return Polynomial(a.n_vars());
    return a.mul_impl(b, static_cast<size_t>(bound));
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    size_t hi = std::max(a.parts_.size(), b.parts_.size());
    for (size_t k = 0; k < hi; ++k) {
        bool za = k >= a.parts_.size() || a.parts_[k].is_zero();
        bool zb = k >= b.parts_.size() || b.parts_[k].is_zero();
        if (za != zb)
            return false;
        if (!za && !(a.parts_[k] == b.parts_[k]))
            return false;
    }
    return true;
}

Polynomial Polynomial::scaled(const Rational& c) const {
    Polynomial out(n_);
    for (const auto& p : parts_)
        out.set_part(hp_scale(p, c));
    out.trim();
    return out;
}

Polynomial Polynomial::negated() const {
    Polynomial out(n_);
    for (const auto& p : parts_)
        out.set_part(hp_neg(p));
    out.trim();
    return out;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial out = Polynomial::constant(n_, Rational(1));
    for (unsigned i = 0; i < e; ++i)
        out = out * *this;
    return out;
}

Polynomial Polynomial::truncated(int k) const {
    Polynomial out(n_);
    for (const auto& p : parts_) {
        if (static_cast<int>(p.degree()) > k)
            break;
        out.set_part(p);
    }
    out.trim();
    return out;
}

} // namespace pseries
