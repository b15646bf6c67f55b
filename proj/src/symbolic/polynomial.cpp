#include "sle/symbolic/polynomial.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace sle::symbolic {

unsigned Monomial::degree() const
{
    unsigned d = 0;
    for (auto e : exp) d += e;
    return d;
}

bool Monomial::divides(const Monomial& other) const
{
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (exp[i] > other.exp[i]) return false;
    return true;
}

Monomial operator*(const Monomial& a, const Monomial& b)
{
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i)
        r.exp[i] = static_cast<std::uint16_t>(a.exp[i] + b.exp[i]);
    return r;
}

Monomial operator/(const Monomial& a, const Monomial& b)
{
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i)
        r.exp[i] = static_cast<std::uint16_t>(a.exp[i] - b.exp[i]);
    return r;
}

bool grlex_greater(const Monomial& a, const Monomial& b)
{
    const unsigned da = a.degree(), db = b.degree();
    if (da != db) return da > db;
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i];
    return false;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (auto e : m.exp) {
        h ^= e;
        h *= 0x100000001b3ull;
    }
    return static_cast<std::size_t>(h);
}

namespace {

void check_same_arity(const Poly& a, const Poly& b)
{
    if (a.nvars() != b.nvars())
        throw std::invalid_argument("polynomial arity mismatch");
}

Integer abs_int(const Integer& v)
{
    Integer r = v;
    if (r < 0) r = -r;
    return r;
}

Integer isqrt(const Integer& v)
{
    Integer r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r;
}

}  // namespace

Poly Poly::constant(std::size_t nvars, const Integer& c)
{
    Poly p(nvars);
    if (c != 0) p.terms_.push_back({Monomial{}, c});
    return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t var)
{
    if (var >= nvars) throw std::out_of_range("variable index out of range");
    Monomial m;
    m.exp[var] = 1;
    return monomial(nvars, m, 1);
}

Poly Poly::monomial(std::size_t nvars, const Monomial& m, const Integer& c)
{
    Poly p(nvars);
    if (c != 0) p.terms_.push_back({m, c});
    return p;
}

Poly Poly::from_terms(std::size_t nvars, std::vector<Term> terms)
{
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return grlex_greater(a.mono, b.mono); });
    Poly p(nvars);
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono)
            p.terms_.back().coeff += t.coeff;
        else {
            if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
            p.terms_.push_back(std::move(t));
        }
    }
    if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
    return p;
}

bool Poly::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.degree() == 0);
}

bool Poly::is_one() const
{
    return terms_.size() == 1 && terms_[0].mono.degree() == 0 && terms_[0].coeff == 1;
}

unsigned Poly::degree_in(std::size_t var) const
{
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max<unsigned>(d, t.mono.exp[var]);
    return d;
}

unsigned Poly::min_degree_in(std::size_t var) const
{
    if (terms_.empty()) return 0;
    unsigned d = terms_[0].mono.exp[var];
    for (const auto& t : terms_) d = std::min<unsigned>(d, t.mono.exp[var]);
    return d;
}

unsigned Poly::total_degree() const
{
    return terms_.empty() ? 0 : terms_.front().mono.degree();
}

bool Poly::uses_variable(std::size_t var) const
{
    return std::any_of(terms_.begin(), terms_.end(),
                       [var](const Term& t) { return t.mono.exp[var] != 0; });
}

bool Poly::is_homogeneous() const
{
    if (terms_.empty()) return true;
    const unsigned d = terms_.front().mono.degree();
    return std::all_of(terms_.begin(), terms_.end(),
                       [d](const Term& t) { return t.mono.degree() == d; });
}

Integer Poly::content() const
{
    Integer g = 0;
    for (const auto& t : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

Integer Poly::max_norm() const
{
    Integer m = 0;
    for (const auto& t : terms_) {
        if (mpz_cmpabs(t.coeff.get_mpz_t(), m.get_mpz_t()) > 0) m = abs_int(t.coeff);
    }
    return m;
}

Poly Poly::operator-() const
{
    Poly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

namespace {

template <bool Subtract>
std::vector<Poly::Term> merge_terms(const std::vector<Poly::Term>& a, const std::vector<Poly::Term>& b)
{
    std::vector<Poly::Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].mono == b[j].mono) {
            Integer c = Subtract ? Integer(a[i].coeff - b[j].coeff) : Integer(a[i].coeff + b[j].coeff);
            if (c != 0) out.push_back({a[i].mono, std::move(c)});
            ++i;
            ++j;
        } else if (grlex_greater(a[i].mono, b[j].mono)) {
            out.push_back(a[i++]);
        } else {
            out.push_back(Subtract ? Poly::Term{b[j].mono, -b[j].coeff} : b[j]);
            ++j;
        }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < b.size(); ++j) out.push_back(Subtract ? Poly::Term{b[j].mono, -b[j].coeff} : b[j]);
    return out;
}

}  // namespace

Poly& Poly::operator+=(const Poly& o)
{
    check_same_arity(*this, o);
    terms_ = merge_terms<false>(terms_, o.terms_);
    return *this;
}

Poly& Poly::operator-=(const Poly& o)
{
    check_same_arity(*this, o);
    terms_ = merge_terms<true>(terms_, o.terms_);
    return *this;
}

Poly& Poly::operator*=(const Poly& o)
{
    *this = *this * o;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b)
{
    check_same_arity(a, b);
    if (a.is_zero() || b.is_zero()) return Poly(a.nvars());
    if (b.terms_.size() == 1) return a.times_monomial(b.terms_[0].mono).scaled(b.terms_[0].coeff);
    if (a.terms_.size() == 1) return b.times_monomial(a.terms_[0].mono).scaled(a.terms_[0].coeff);
    std::unordered_map<Monomial, Integer, MonomialHash> acc;
    acc.reserve(a.terms_.size() * b.terms_.size());
    Integer prod;
    for (const auto& s : a.terms_) {
        for (const auto& t : b.terms_) {
            mpz_mul(prod.get_mpz_t(), s.coeff.get_mpz_t(), t.coeff.get_mpz_t());
            acc[s.mono * t.mono] += prod;
        }
    }
    std::vector<Poly::Term> terms;
    terms.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c != 0) terms.push_back({m, std::move(c)});
    return Poly::from_terms(a.nvars(), std::move(terms));
}

bool operator==(const Poly& a, const Poly& b)
{
    if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
}

Poly Poly::scaled(const Integer& c) const
{
    if (c == 0) return Poly(nvars_);
    Poly r = *this;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
}

Poly Poly::divided_by(const Integer& c) const
{
    Poly r = *this;
    for (auto& t : r.terms_) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), c.get_mpz_t());
    return r;
}

Poly Poly::times_monomial(const Monomial& m) const
{
    Poly r = *this;
    for (auto& t : r.terms_) t.mono = t.mono * m;
    return r;  // multiplication by a monomial preserves grlex order
}

Poly Poly::pow(unsigned e) const
{
    Poly result = Poly::constant(nvars_, 1);
    Poly base = *this;
    while (e) {
        if (e & 1u) result = result * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return result;
}

Poly Poly::coefficient_in(std::size_t var, unsigned k) const
{
    std::vector<Term> out;
    for (const auto& t : terms_) {
        if (t.mono.exp[var] == k) {
            Term s = t;
            s.mono.exp[var] = 0;
            out.push_back(std::move(s));
        }
    }
    return from_terms(nvars_, std::move(out));
}

Poly Poly::evaluated_at(std::size_t var, const Integer& value) const
{
    const unsigned d = degree_in(var);
    std::vector<Integer> powers(d + 1);
    powers[0] = 1;
    for (unsigned i = 1; i <= d; ++i) powers[i] = powers[i - 1] * value;
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Term s{t.mono, t.coeff * powers[t.mono.exp[var]]};
        s.mono.exp[var] = 0;
        out.push_back(std::move(s));
    }
    return from_terms(nvars_, std::move(out));
}

Poly Poly::remapped(std::size_t new_nvars, std::span<const std::size_t> map) const
{
    if (map.size() != nvars_) throw std::invalid_argument("remap size mismatch");
    if (new_nvars > kMaxVars) throw std::invalid_argument("too many variables");
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Monomial m;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (t.mono.exp[i] == 0) continue;
            if (map[i] >= new_nvars) throw std::out_of_range("remap target out of range");
            m.exp[map[i]] = static_cast<std::uint16_t>(m.exp[map[i]] + t.mono.exp[i]);
        }
        out.push_back({m, t.coeff});
    }
    return from_terms(new_nvars, std::move(out));
}

Rational Poly::evaluate(std::span<const Rational> point) const
{
    if (point.size() != nvars_) throw std::invalid_argument("evaluation point has wrong length");
    std::vector<std::vector<Rational>> powers(nvars_);
    for (std::size_t v = 0; v < nvars_; ++v) {
        const unsigned d = degree_in(v);
        powers[v].resize(d + 1);
        powers[v][0] = 1;
        for (unsigned i = 1; i <= d; ++i) powers[v][i] = powers[v][i - 1] * point[v];
    }
    Rational sum = 0;
    for (const auto& t : terms_) {
        Rational term = t.coeff;
        for (std::size_t v = 0; v < nvars_; ++v)
            if (t.mono.exp[v]) term *= powers[v][t.mono.exp[v]];
        sum += term;
    }
    return sum;
}

Poly derivative(const Poly& p, std::size_t var)
{
    if (var >= p.nvars()) throw std::out_of_range("variable index out of range");
    std::vector<Poly::Term> out;
    for (const auto& t : p.terms()) {
        const auto e = t.mono.exp[var];
        if (e == 0) continue;
        Poly::Term s{t.mono, t.coeff * e};
        s.mono.exp[var] = static_cast<std::uint16_t>(e - 1);
        out.push_back(std::move(s));
    }
    return Poly::from_terms(p.nvars(), std::move(out));
}

std::optional<Poly> divide_exact(const Poly& a, const Poly& b)
{
    check_same_arity(a, b);
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.is_zero()) return Poly(a.nvars());
    for (std::size_t v = 0; v < a.nvars(); ++v)
        if (b.degree_in(v) > a.degree_in(v)) return std::nullopt;
    if (b.size() == 1) {
        const auto& lt = b.leading();
        std::vector<Poly::Term> out;
        out.reserve(a.size());
        for (const auto& t : a.terms()) {
            if (!lt.mono.divides(t.mono) || !mpz_divisible_p(t.coeff.get_mpz_t(), lt.coeff.get_mpz_t()))
                return std::nullopt;
            Integer q;
            mpz_divexact(q.get_mpz_t(), t.coeff.get_mpz_t(), lt.coeff.get_mpz_t());
            out.push_back({t.mono / lt.mono, std::move(q)});
        }
        return Poly::from_terms(a.nvars(), std::move(out));
    }
    const auto& lb = b.leading();
    std::vector<Poly::Term> quotient;
    Poly rem = a;
    while (!rem.is_zero()) {
        const auto& lr = rem.leading();
        if (!lb.mono.divides(lr.mono) || !mpz_divisible_p(lr.coeff.get_mpz_t(), lb.coeff.get_mpz_t()))
            return std::nullopt;
        Integer q;
        mpz_divexact(q.get_mpz_t(), lr.coeff.get_mpz_t(), lb.coeff.get_mpz_t());
        const Monomial m = lr.mono / lb.mono;
        rem -= b.times_monomial(m).scaled(q);
        quotient.push_back({m, std::move(q)});
    }
    return Poly::from_terms(a.nvars(), std::move(quotient));
}

Poly primitive_normalized(const Poly& p)
{
    if (p.is_zero()) return p;
    Integer c = p.content();
    if (p.leading().coeff < 0) c = -c;
    return p.divided_by(c);
}

namespace {

Poly gcd_primitive(const Poly& f, const Poly& g);

// Smallest exponent of each variable over all terms.
Monomial min_exponents(const Poly& p)
{
    Monomial m = p.leading().mono;
    for (const auto& t : p.terms())
        for (std::size_t i = 0; i < kMaxVars; ++i) m.exp[i] = std::min(m.exp[i], t.mono.exp[i]);
    return m;
}

Monomial min_monomial(const Monomial& a, const Monomial& b)
{
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.exp[i] = std::min(a.exp[i], b.exp[i]);
    return m;
}

Poly divide_monomial(const Poly& p, const Monomial& m)
{
    std::vector<Poly::Term> out;
    out.reserve(p.size());
    for (const auto& t : p.terms()) out.push_back({t.mono / m, t.coeff});
    return Poly::from_terms(p.nvars(), std::move(out));
}

// Lifts an evaluation image back to a polynomial in var using balanced
// xi-adic digits.
Poly interpolate(const Poly& image, std::size_t var, const Integer& xi)
{
    std::vector<Poly::Term> out;
    const Integer half = xi / 2;
    for (const auto& t : image.terms()) {
        Integer c = t.coeff;
        std::uint16_t k = 0;
        while (c != 0) {
            Integer d;
            mpz_fdiv_r(d.get_mpz_t(), c.get_mpz_t(), xi.get_mpz_t());
            if (d > half) d -= xi;
            if (d != 0) {
                Poly::Term s{t.mono, d};
                s.mono.exp[var] = k;
                out.push_back(std::move(s));
            }
            c -= d;
            mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), xi.get_mpz_t());
            ++k;
        }
    }
    return Poly::from_terms(image.nvars(), std::move(out));
}

std::optional<std::size_t> main_variable(const Poly& f, const Poly& g)
{
    for (std::size_t v = f.nvars(); v-- > 0;)
        if (f.uses_variable(v) || g.uses_variable(v)) return v;
    return std::nullopt;
}

Integer int_gcd(const Integer& a, const Integer& b)
{
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// Heuristic gcd by evaluation at a large integer and balanced-digit
// reconstruction; the result includes the integer content. Returns nullopt
// when no evaluation point certified a divisor.
std::optional<Poly> heuristic_gcd(const Poly& f, const Poly& g)
{
    const std::size_t n = f.nvars();
    if (f.is_constant() && g.is_constant())
        return Poly::constant(n, int_gcd(f.leading().coeff, g.leading().coeff));
    const Integer gc = int_gcd(f.content(), g.content());
    const Poly F = f.divided_by(gc);
    const Poly G = g.divided_by(gc);
    if (F.is_constant()) return Poly::constant(n, gc * int_gcd(F.leading().coeff, G.content()));
    if (G.is_constant()) return Poly::constant(n, gc * int_gcd(G.leading().coeff, F.content()));

    const std::size_t v = *main_variable(F, G);
    const Integer fn = F.max_norm(), gn = G.max_norm();
    const Integer b = 2 * std::min(fn, gn) + 29;
    Integer xi = std::max<Integer>(std::min<Integer>(b, 99 * isqrt(b)),
                                   2 * std::min<Integer>(fn / abs_int(F.leading().coeff),
                                                         gn / abs_int(G.leading().coeff)) + 2);
    for (int attempt = 0; attempt < 6; ++attempt) {
        const Poly ff = F.evaluated_at(v, xi);
        const Poly gg = G.evaluated_at(v, xi);
        if (!ff.is_zero() && !gg.is_zero()) {
            if (auto image = heuristic_gcd(ff, gg)) {
                Poly h = interpolate(*image, v, xi);
                if (!h.is_zero()) {
                    h = h.divided_by(h.content());
                    if (divide_exact(F, h) && divide_exact(G, h)) return h.scaled(gc);
                }
                for (const Poly* src : {&ff, &gg}) {
                    const Poly& whole = (src == &ff) ? F : G;
                    const Poly& other = (src == &ff) ? G : F;
                    auto cof_image = divide_exact(*src, *image);
                    if (!cof_image) continue;
                    const Poly cof = interpolate(*cof_image, v, xi);
                    if (cof.is_zero()) continue;
                    auto h2 = divide_exact(whole, cof);
                    if (h2 && !h2->is_zero() && divide_exact(other, *h2)) return h2->scaled(gc);
                }
            }
        }
        xi = 73794 * xi * isqrt(isqrt(xi)) / 27011;
    }
    return std::nullopt;
}

// gcd of the coefficients of p viewed as a polynomial in var.
Poly content_in(const Poly& p, std::size_t var)
{
    Poly c(p.nvars());
    const unsigned d = p.degree_in(var);
    for (unsigned k = 0; k <= d; ++k) {
        Poly ck = p.coefficient_in(var, k);
        if (ck.is_zero()) continue;
        c = c.is_zero() ? primitive_normalized(ck) : gcd(c, ck);
        if (c.is_one()) break;
    }
    return c;
}

Poly primitive_in(const Poly& p, std::size_t var)
{
    if (p.is_zero()) return p;
    return primitive_normalized(*divide_exact(p, content_in(p, var)));
}

Poly pseudo_remainder(const Poly& a, const Poly& b, std::size_t var)
{
    const unsigned db = b.degree_in(var);
    const Poly lb = b.coefficient_in(var, db);
    Poly r = a;
    int delta = static_cast<int>(a.degree_in(var)) - static_cast<int>(db) + 1;
    while (!r.is_zero() && r.degree_in(var) >= db) {
        const unsigned dr = r.degree_in(var);
        Monomial shift;
        shift.exp[var] = static_cast<std::uint16_t>(dr - db);
        const Poly lr = r.coefficient_in(var, dr);
        r = lb * r - (lr * b).times_monomial(shift);
        --delta;
    }
    if (delta > 0) r = r * lb.pow(static_cast<unsigned>(delta));
    return r;
}

// Primitive polynomial remainder sequence; slow but always terminates.
Poly prs_gcd(const Poly& f, const Poly& g, std::size_t var)
{
    const Poly cf = content_in(f, var), cg = content_in(g, var);
    const Poly c = gcd(cf, cg);
    Poly a = *divide_exact(f, cf);
    Poly b = *divide_exact(g, cg);
    if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);
    while (!b.is_zero()) {
        if (b.degree_in(var) == 0) return c;
        Poly r = pseudo_remainder(a, b, var);
        a = std::move(b);
        b = primitive_in(r, var);
    }
    return primitive_normalized(c * primitive_in(a, var));
}

Poly gcd_primitive(const Poly& f, const Poly& g)
{
    const std::size_t n = f.nvars();
    if (f.is_constant() || g.is_constant()) return Poly::constant(n, 1);
    const Monomial mf = min_exponents(f), mg = min_exponents(g);
    const Monomial common = min_monomial(mf, mg);
    const Poly f1 = divide_monomial(f, mf), g1 = divide_monomial(g, mg);
    const Poly one_monomial = Poly::monomial(n, common, 1);
    if (f1.is_constant() || g1.is_constant()) return one_monomial;
    if (f1 == g1) return primitive_normalized(f1.times_monomial(common));
    if (auto h = heuristic_gcd(f1, g1)) return primitive_normalized(h->times_monomial(common));
    const std::size_t v = *main_variable(f1, g1);
    return primitive_normalized(prs_gcd(f1, g1, v).times_monomial(common));
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b)
{
    check_same_arity(a, b);
    if (a.is_zero()) return primitive_normalized(b);
    if (b.is_zero()) return primitive_normalized(a);
    return gcd_primitive(primitive_normalized(a), primitive_normalized(b));
}

}  // namespace sle::symbolic
