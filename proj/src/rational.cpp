#include "pseries/rational.hpp"

namespace pseries {

std::optional<Rational> Rational::parse(std::string_view text) {
    if (text.empty())
        return std::nullopt;
    std::string num, den = "1";
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        num = std::string(text);
    } else {
        num = std::string(text.substr(0, slash));
        den = std::string(text.substr(slash + 1));
        if (num.empty() || den.empty())
            return std::nullopt;
    }
    Rational r;
    mpz_t n, d;
    mpz_init(n);
    mpz_init(d);
    bool ok = mpz_set_str(n, num.c_str(), 10) == 0 && mpz_set_str(d, den.c_str(), 10) == 0 &&
              mpz_sgn(d) != 0;
    if (ok) {
        mpq_set_num(r.v_, n);
        mpq_set_den(r.v_, d);
        mpq_canonicalize(r.v_);
    }
    mpz_clear(n);
    mpz_clear(d);
    if (!ok)
        return std::nullopt;
    return r;
}

std::string Rational::str() const {
    char* s = mpq_get_str(nullptr, 10, v_);
    std::string out(s);
    void (*freefunc)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefunc);
    freefunc(s, out.size() + 1);
    return out;
}

} // namespace pseries
