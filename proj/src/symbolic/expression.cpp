#include "sle/symbolic/expression.hpp"

#include <cctype>
#include <string>

#include "sle/errors.hpp"

namespace sle::symbolic {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

std::string trim(std::string_view s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string monomial_string(const Monomial& m, std::size_t nvars)
{
    std::string out;
    for (std::size_t i = 0; i < nvars; ++i) {
        if (m.exp[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += 'x' + std::to_string(i + 1);
        if (m.exp[i] > 1) out += '^' + std::to_string(m.exp[i]);
    }
    return out;
}

// Polynomial with rational coefficients scale * p.
std::string scaled_poly_string(const Poly& p, const Rational& scale)
{
    if (p.is_zero() || scale == 0) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : p.terms()) {
        Rational c = scale * t.coeff;
        const bool negative = c < 0;
        if (negative) c = -c;
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        const std::string mono = monomial_string(t.mono, p.nvars());
        if (mono.empty()) {
            out += c.get_den() == 1 ? c.get_num().get_str() : "(" + to_string(c) + ")";
        } else if (c == 1) {
            out += mono;
        } else {
            out += c.get_den() == 1 ? c.get_num().get_str() : "(" + to_string(c) + ")";
            out += '*' + mono;
        }
    }
    return out;
}

bool is_single_power(const Poly& p)
{
    if (p.size() != 1 || p.leading().coeff != 1) return false;
    int used = 0;
    for (std::size_t i = 0; i < p.nvars(); ++i) used += p.leading().mono.exp[i] != 0;
    return used == 1;
}

class Parser {
public:
    Parser(std::string_view text, std::size_t nvars) : s_(text), n_(nvars) {}

    MultiRat parse()
    {
        MultiRat r = expression();
        skip();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw MalformedInput("expression parse error at offset " + std::to_string(pos_) + ": " + what);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string digits()
    {
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected digits");
        return std::string(s_.substr(start, pos_ - start));
    }

    MultiRat expression()
    {
        MultiRat r = term();
        while (true) {
            if (accept('+'))
                r += term();
            else if (accept('-'))
                r -= term();
            else
                return r;
        }
    }

    MultiRat term()
    {
        MultiRat r = unary();
        while (true) {
            if (accept('*'))
                r *= unary();
            else if (accept('/'))
                r /= unary();
            else
                return r;
        }
    }

    MultiRat unary()
    {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    MultiRat power()
    {
        MultiRat base = primary();
        if (accept('^')) {
            bool negative = accept('-');
            const std::string e = digits();
            if (e.size() > 6) fail("exponent too large");
            const int k = std::stoi(e);
            base = base.pow(negative ? -k : k);
        }
        return base;
    }

    MultiRat primary()
    {
        skip();
        if (accept('(')) {
            MultiRat r = expression();
            if (!accept(')')) fail("expected ')'");
            return r;
        }
        if (pos_ < s_.size() && s_[pos_] == 'x') {
            ++pos_;
            const std::string idx = digits();
            const unsigned long k = std::stoul(idx);
            if (k == 0 || k > n_) fail("variable x" + idx + " out of range");
            return MultiRat::variable(n_, k - 1);
        }
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            return MultiRat::constant(n_, Rational(Integer(digits())));
        fail("expected a number, variable or '('");
    }

    std::string_view s_;
    std::size_t n_;
    std::size_t pos_ = 0;
};

}  // namespace

Rational parse_rational(std::string_view text)
{
    const std::string s = trim(text);
    std::string_view body = s;
    bool negative = false;
    if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
        negative = body[0] == '-';
        body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    const std::string_view p = body.substr(0, slash);
    const std::string_view q = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(p) || !all_digits(q)) throw MalformedInput("not a rational literal: '" + s + "'");
    const Integer den(std::string{q});
    if (den == 0) throw MalformedInput("zero denominator in rational literal");
    Rational r(Integer(std::string{p}), den);
    r.canonicalize();
    return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& q)
{
    return q.get_str();
}

std::string to_string(const Poly& p)
{
    return scaled_poly_string(p, 1);
}

std::string to_string(const MultiRat& f)
{
    if (f.is_zero()) return "0";
    const Poly& n = f.numerator();
    const Poly& d = f.denominator();
    std::string num;
    if (n.is_constant()) {
        const Rational& c = f.scalar();
        num = c.get_den() == 1 ? to_string(c) : "(" + to_string(c) + ")";
    } else {
        num = scaled_poly_string(n, f.scalar());
        const bool bare = n.size() == 1 && abs(f.scalar()) == 1;
        if (!bare) num = "(" + num + ")";
    }
    if (d.is_one()) return num;
    const std::string den = to_string(d);
    return num + "/" + (is_single_power(d) ? den : "(" + den + ")");
}

MultiRat parse_multirat(std::string_view text, std::size_t nvars)
{
    return Parser(text, nvars).parse();
}

}  // namespace sle::symbolic
