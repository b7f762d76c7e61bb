#include "pseries/parser.hpp"

#include <cctype>
#include <sstream>
#include <vector>

#include "pseries/errors.hpp"

namespace pseries {

namespace {

constexpr unsigned kMaxExponent = 64;

enum class Tok { Int, Var, Y, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text; // Int: digits, Var: index digits
    int line;
    int col;
};

class Lexer {
public:
    Lexer(const std::string& src, int line) : src_(src), line_(line) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            int col = static_cast<int>(pos_) + 1;
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                size_t start = pos_;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    ++pos_;
                out.push_back({Tok::Int, src_.substr(start, pos_ - start), line_, col});
                continue;
            }
            if (c == 'X' || c == 'x') {
                ++pos_;
                size_t start = pos_;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    ++pos_;
                if (start == pos_)
                    throw ParseError(line_, col, "variable name needs an index, e.g. X1");
                out.push_back({Tok::Var, src_.substr(start, pos_ - start), line_, col});
                continue;
            }
            if (c == 'Y' || c == 'y') {
                ++pos_;
                out.push_back({Tok::Y, "Y", line_, col});
                continue;
            }
            ++pos_;
            switch (c) {
            case '+': out.push_back({Tok::Plus, "+", line_, col}); break;
            case '-': out.push_back({Tok::Minus, "-", line_, col}); break;
            case '*': out.push_back({Tok::Star, "*", line_, col}); break;
            case '/': out.push_back({Tok::Slash, "/", line_, col}); break;
            case '^': out.push_back({Tok::Caret, "^", line_, col}); break;
            case '(': out.push_back({Tok::LParen, "(", line_, col}); break;
            case ')': out.push_back({Tok::RParen, ")", line_, col}); break;
            default:
                throw ParseError(line_, col, std::string("unexpected character '") + c + "'");
            }
        }
        out.push_back({Tok::End, "", line_, static_cast<int>(src_.size()) + 1});
        return out;
    }

private:
    const std::string& src_;
    int line_;
    size_t pos_ = 0;
};

// polynomial in Y with eager multivariate coefficients
struct Value {
    std::map<int, Polynomial> coeffs; // Y-degree -> coefficient

    bool is_constant() const {
        for (const auto& [deg, poly] : coeffs)
            if (!poly.is_zero() && (deg > 0 || poly.degree() > 0))
                return false;
        return true;
    }
    bool is_zero() const {
        for (const auto& [deg, poly] : coeffs)
            if (!poly.is_zero())
                return false;
        return true;
    }
};

class ExprParser {
public:
    ExprParser(std::vector<Token> toks, unsigned n) : toks_(std::move(toks)), n_(n) {}

    Value parse() {
        Value v = expr();
        expect(Tok::End, "end of expression");
        return v;
    }

private:
    std::vector<Token> toks_;
    unsigned n_;
    size_t i_ = 0;

    const Token& peek() const { return toks_[i_]; }
    Token next() { return toks_[i_++]; }
    void expect(Tok k, const std::string& what) {
        if (peek().kind != k)
            throw ParseError(peek().line, peek().col, "expected " + what);
        ++i_;
    }

    Value make_const(const Rational& q) const {
        Value v;
        v.coeffs[0] = Polynomial::constant(n_, q);
        return v;
    }

    static Value add(const Value& a, const Value& b, bool sub) {
        Value out = a;
        for (const auto& [deg, poly] : b.coeffs) {
            auto it = out.coeffs.find(deg);
            Polynomial rhs = sub ? poly.negated() : poly;
            if (it == out.coeffs.end())
                out.coeffs[deg] = std::move(rhs);
            else
                it->second = it->second + rhs;
        }
        return out;
    }

    static Value mul(const Value& a, const Value& b) {
        Value out;
        for (const auto& [da, pa] : a.coeffs) {
            if (pa.is_zero())
                continue;
            for (const auto& [db, pb] : b.coeffs) {
                if (pb.is_zero())
                    continue;
                Polynomial prod = pa * pb;
                auto it = out.coeffs.find(da + db);
                if (it == out.coeffs.end())
                    out.coeffs[da + db] = std::move(prod);
                else
                    it->second = it->second + prod;
            }
        }
        return out;
    }

    Value expr() {
        Value v = term();
        for (;;) {
            if (peek().kind == Tok::Plus) {
                next();
                v = add(v, term(), false);
            } else if (peek().kind == Tok::Minus) {
                next();
                v = add(v, term(), true);
            } else {
                return v;
            }
        }
    }

    Value term() {
        Value v = unary();
        for (;;) {
            if (peek().kind == Tok::Star) {
                next();
                v = mul(v, unary());
            } else if (peek().kind == Tok::Slash) {
                Token op = next();
                Value rhs = unary();
                if (!rhs.is_constant())
                    throw ParseError(op.line, op.col,
                                     "division is only allowed by nonzero constants");
                if (rhs.is_zero())
                    throw ParseError(op.line, op.col, "division by zero");
                const HomogeneousPart c0 = rhs.coeffs.begin()->second.part(0);
                Rational inv = field_div(Rational(1), c0.terms().front().second);
                Value out;
                for (const auto& [deg, poly] : v.coeffs)
                    out.coeffs[deg] = poly.scaled(inv);
                v = std::move(out);
            } else {
                return v;
            }
        }
    }

    Value unary() {
        if (peek().kind == Tok::Minus) {
            Token op = next();
            (void)op;
            Value v = unary();
            Value out;
            for (const auto& [deg, poly] : v.coeffs)
                out.coeffs[deg] = poly.negated();
            return out;
        }
        if (peek().kind == Tok::Plus) {
            next();
            return unary();
        }
        return power();
    }

    Value power() {
        Value base = atom();
        if (peek().kind != Tok::Caret)
            return base;
        Token op = next();
        if (peek().kind != Tok::Int)
            throw ParseError(peek().line, peek().col, "exponent must be a non-negative integer");
        unsigned long e = std::stoul(next().text);
        if (e > kMaxExponent)
            throw ParseError(op.line, op.col,
                             "exponent larger than " + std::to_string(kMaxExponent));
        Value out = make_const(Rational(1));
        for (unsigned long j = 0; j < e; ++j)
            out = mul(out, base);
        return out;
    }

    Value atom() {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Int: {
            auto q = Rational::parse(next().text);
            if (!q)
                throw ParseError(t.line, t.col, "bad integer literal");
            return make_const(*q);
        }
        case Tok::Var: {
            Token v = next();
            unsigned long idx = std::stoul(v.text);
            if (idx < 1 || idx > n_)
                throw ParseError(v.line, v.col,
                                 "unknown variable X" + v.text + " (declared " +
                                     std::to_string(n_) + " variables)");
            Value out;
            out.coeffs[0] = Polynomial::variable(n_, static_cast<unsigned>(idx));
            return out;
        }
        case Tok::Y: {
            next();
            Value out;
            out.coeffs[1] = Polynomial::constant(n_, Rational(1));
            return out;
        }
        case Tok::LParen: {
            next();
            Value v = expr();
            expect(Tok::RParen, "')'");
            return v;
        }
        default:
            throw ParseError(t.line, t.col, "expected a number, variable, Y or '('");
        }
    }
};

UPoPS value_to_upops(const Value& v, unsigned n) {
    auto ctx = make_context(n);
    int deg = 0;
    for (const auto& [d, poly] : v.coeffs)
        if (!poly.is_zero())
            deg = std::max(deg, d);
    std::vector<PowerSeries> coeffs;
    for (int i = 0; i <= deg; ++i) {
        auto it = v.coeffs.find(i);
        coeffs.push_back(it == v.coeffs.end() ? ps_constant(ctx, Rational(0))
                                              : ps_from_polynomial(ctx, it->second));
    }
    return UPoPS(std::move(coeffs));
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

UPoPS parse_upops_expr(const std::string& expr, unsigned n_vars) {
    Lexer lex(expr, 1);
    ExprParser p(lex.run(), n_vars);
    return value_to_upops(p.parse(), n_vars);
}

ParsedInput parse_upops_file(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    std::optional<unsigned> n_vars;
    std::optional<std::pair<int, std::string>> expr_line;
    std::optional<OpsRequest> ops;

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        if (word == "vars") {
            long n = -1;
            ls >> n;
            if (n < 0 || n > 16)
                throw ParseError(lineno, 1, "vars needs a count between 0 and 16");
            n_vars = static_cast<unsigned>(n);
        } else if (word == "upops") {
            std::string rest;
            std::getline(ls, rest);
            expr_line = {lineno, trim(rest)};
        } else if (word == "ops") {
            OpsRequest req;
            ls >> req.command;
            if (req.command.empty())
                throw ParseError(lineno, 1, "ops needs a command name");
            std::string kv;
            while (ls >> kv) {
                auto eq = kv.find('=');
                if (eq == std::string::npos)
                    throw ParseError(lineno, 1, "ops options look like key=value");
                req.params[kv.substr(0, eq)] = std::stol(kv.substr(eq + 1));
            }
            ops = std::move(req);
        } else {
            throw ParseError(lineno, 1, "unknown directive '" + word + "'");
        }
    }
    if (!n_vars)
        throw ParseError(lineno, 1, "missing 'vars <n>' declaration");
    if (!expr_line || expr_line->second.empty())
        throw ParseError(lineno, 1, "missing 'upops <expression>' line");

    Lexer lex(expr_line->second, expr_line->first);
    ExprParser p(lex.run(), *n_vars);
    ParsedInput out;
    out.n_vars = *n_vars;
    out.upops = value_to_upops(p.parse(), *n_vars);
    out.ops = std::move(ops);
    return out;
}

std::string render_series(const PowerSeries& f, int k) {
    f.update_to(k);
    std::string out;
    for (int d = 0; d <= k; ++d) {
        const HomogeneousPart& p = f.part(d);
        if (p.is_zero())
            continue;
        if (!out.empty())
            out += " + ";
        out += hp_to_string(p);
    }
    return out.empty() ? "0" : out;
}

std::string render_parts(const UPoPS& f, int k) {
    f.update_to(k);
    const Polynomial one = Polynomial::constant(f.context()->n_vars, Rational(1));
    std::string out;
    for (int i = f.degree(); i >= 0; --i) {
        Polynomial c = f.coeff_truncated(i, k);
        if (c.is_zero())
            continue;
        if (!out.empty())
            out += " + ";
        std::string ytext;
        if (i >= 1) {
            ytext = "Y";
            if (i > 1)
                ytext += "^" + std::to_string(i);
        }
        if (ytext.empty()) {
            out += "(" + render_series(f.coeff(i), k) + ")";
        } else if (c == one) {
            out += ytext;
        } else {
            out += "(" + render_series(f.coeff(i), k) + ")*" + ytext;
        }
    }
    return out.empty() ? "0" : out;
}

} // namespace pseries
