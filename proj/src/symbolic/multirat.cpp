#include "sle/symbolic/multirat.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "sle/errors.hpp"

namespace sle::symbolic {

namespace {

void check_arity(const MultiRat& a, const MultiRat& b)
{
    if (a.nvars() != b.nvars()) throw MalformedInput("rational function arity mismatch");
}

// Signed content making the polynomial primitive with positive leading
// coefficient.
Integer signed_content(const Poly& p)
{
    Integer c = p.content();
    if (p.leading().coeff < 0) c = -c;
    return c;
}

Integer lcm_int(const Integer& a, const Integer& b)
{
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

}  // namespace

MultiRat::MultiRat(std::size_t nvars)
    : scalar_(0), num_(Poly::constant(nvars, 1)), den_(Poly::constant(nvars, 1))
{
}

MultiRat MultiRat::constant(std::size_t nvars, const Rational& c)
{
    MultiRat r(nvars);
    r.scalar_ = c;
    r.scalar_.canonicalize();
    return r;
}

MultiRat MultiRat::variable(std::size_t nvars, std::size_t var)
{
    MultiRat r(nvars);
    r.scalar_ = 1;
    r.num_ = Poly::variable(nvars, var);
    return r;
}

MultiRat MultiRat::from_polys(const Poly& num, const Poly& den, const Rational& scale)
{
    if (num.nvars() != den.nvars()) throw MalformedInput("numerator and denominator arity differ");
    if (den.is_zero()) throw MalformedInput("zero denominator");
    if (num.is_zero() || scale == 0) return MultiRat(num.nvars());
    const Poly g = gcd(num, den);
    if (g.is_constant()) return assemble(scale, num, den);
    return assemble(scale, *divide_exact(num, g), *divide_exact(den, g));
}

MultiRat MultiRat::assemble(Rational scale, Poly n, Poly d)
{
    if (n.is_zero() || scale == 0) return MultiRat(n.nvars());
    const Integer cn = signed_content(n), cd = signed_content(d);
    if (cn != 1) n = n.divided_by(cn);
    if (cd != 1) d = d.divided_by(cd);
    scale.canonicalize();
    Rational ratio(cn, cd);
    ratio.canonicalize();
    MultiRat r(n.nvars());
    r.scalar_ = scale * ratio;
    r.num_ = std::move(n);
    r.den_ = std::move(d);
    return r;
}

MultiRat MultiRat::operator-() const
{
    MultiRat r = *this;
    r.scalar_ = -r.scalar_;
    return r;
}

MultiRat& MultiRat::operator+=(const MultiRat& o)
{
    check_arity(*this, o);
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    const std::size_t n = nvars();

    Poly d1 = den_, d2 = o.den_, g = Poly::constant(n, 1);
    if (den_ == o.den_) {
        g = den_;
        d1 = d2 = Poly::constant(n, 1);
    } else {
        g = gcd(den_, o.den_);
        if (!g.is_one()) {
            d1 = *divide_exact(den_, g);
            d2 = *divide_exact(o.den_, g);
        }
    }
    const Integer q1 = scalar_.get_den(), q2 = o.scalar_.get_den();
    const Integer l = lcm_int(q1, q2);
    const Integer a1 = scalar_.get_num() * (l / q1);
    const Integer a2 = o.scalar_.get_num() * (l / q2);
    Poly t = (num_ * d2).scaled(a1) + (o.num_ * d1).scaled(a2);
    if (t.is_zero()) return *this = MultiRat(n);

    // Henrici: only the common factor g of the denominators can cancel.
    while (!g.is_constant()) {
        const Poly h = gcd(t, g);
        if (h.is_constant()) break;
        t = *divide_exact(t, h);
        g = *divide_exact(g, h);
    }
    Poly den = d1 * d2 * g;
    const Integer ct = signed_content(t), cd = signed_content(den);
    scalar_ = Rational(ct, l * cd);
    scalar_.canonicalize();  // cd may be negative
    num_ = t.divided_by(ct);
    den_ = den.divided_by(cd);
    return *this;
}

MultiRat& MultiRat::operator-=(const MultiRat& o)
{
    return *this += -o;
}

MultiRat& MultiRat::operator*=(const MultiRat& o)
{
    check_arity(*this, o);
    if (is_zero()) return *this;
    if (o.is_zero()) return *this = o;
    Poly n1 = num_, d2 = o.den_, n2 = o.num_, d1 = den_;
    if (!n1.is_constant() && !d2.is_constant()) {
        const Poly g = gcd(n1, d2);
        if (!g.is_constant()) {
            n1 = *divide_exact(n1, g);
            d2 = *divide_exact(d2, g);
        }
    }
    if (!n2.is_constant() && !d1.is_constant()) {
        const Poly g = gcd(n2, d1);
        if (!g.is_constant()) {
            n2 = *divide_exact(n2, g);
            d1 = *divide_exact(d1, g);
        }
    }
    // Products of primitive polynomials with positive leading coefficients
    // are again primitive with positive leading coefficients.
    scalar_ *= o.scalar_;
    num_ = n1 * n2;
    den_ = d1 * d2;
    return *this;
}

MultiRat& MultiRat::operator/=(const MultiRat& o)
{
    check_arity(*this, o);
    if (o.is_zero()) throw PoleError("division by the zero rational function");
    MultiRat inv = o;
    std::swap(inv.num_, inv.den_);
    inv.scalar_ = 1 / o.scalar_;
    return *this *= inv;
}

bool operator==(const MultiRat& a, const MultiRat& b)
{
    return a.scalar_ == b.scalar_ && a.num_ == b.num_ && a.den_ == b.den_;
}

MultiRat MultiRat::scaled(const Rational& c) const
{
    if (c == 0) return MultiRat(nvars());
    MultiRat r = *this;
    r.scalar_ *= c;
    return r;
}

MultiRat MultiRat::pow(int e) const
{
    if (e < 0) {
        if (is_zero()) throw PoleError("negative power of zero");
        return MultiRat::constant(nvars(), 1) / pow(-e);
    }
    MultiRat r = *this;
    if (e == 0) return MultiRat::constant(nvars(), 1);
    if (is_zero()) return r;
    const auto ue = static_cast<unsigned>(e);
    mpz_pow_ui(r.scalar_.get_num_mpz_t(), scalar_.get_num_mpz_t(), ue);
    mpz_pow_ui(r.scalar_.get_den_mpz_t(), scalar_.get_den_mpz_t(), ue);
    r.scalar_.canonicalize();
    r.num_ = num_.pow(ue);
    r.den_ = den_.pow(ue);
    return r;
}

Rational MultiRat::evaluate(std::span<const Rational> point) const
{
    if (point.size() != nvars()) throw MalformedInput("evaluation point has wrong length");
    const Rational d = den_.evaluate(point);
    if (d == 0) throw PoleError("denominator vanishes at evaluation point");
    if (is_zero()) return 0;
    Rational v = scalar_ * num_.evaluate(point) / d;
    v.canonicalize();
    return v;
}

MultiRat MultiRat::remapped(std::size_t new_nvars, std::span<const std::size_t> map) const
{
    if (map.size() != nvars()) throw MalformedInput("remap size mismatch");
    if (is_zero()) return MultiRat(new_nvars);
    std::vector<std::size_t> sorted(map.begin(), map.end());
    std::sort(sorted.begin(), sorted.end());
    const bool injective = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    Poly n = num_.remapped(new_nvars, map), d = den_.remapped(new_nvars, map);
    if (injective) return assemble(scalar_, std::move(n), std::move(d));
    return from_polys(n, d, scalar_);
}

MultiRat MultiRat::with_variable_inserted(std::size_t pos) const
{
    if (pos > nvars()) throw std::out_of_range("insert position out of range");
    std::vector<std::size_t> map(nvars());
    for (std::size_t i = 0; i < nvars(); ++i) map[i] = i < pos ? i : i + 1;
    return remapped(nvars() + 1, map);
}

namespace {

// p(s x) times q^deg(p) where s = num/q; returns the integer polynomial.
Poly scale_arguments(const Poly& p, const Integer& num, const Integer& q)
{
    const unsigned top = p.total_degree();
    std::vector<Poly::Term> out;
    out.reserve(p.size());
    for (const auto& t : p.terms()) {
        const unsigned d = t.mono.degree();
        Integer a, b;
        mpz_pow_ui(a.get_mpz_t(), num.get_mpz_t(), d);
        mpz_pow_ui(b.get_mpz_t(), q.get_mpz_t(), top - d);
        out.push_back({t.mono, t.coeff * a * b});
    }
    return Poly::from_terms(p.nvars(), std::move(out));
}

}  // namespace

MultiRat MultiRat::with_scaled_arguments(const Rational& s) const
{
    if (s == 0) throw MalformedInput("argument scale must be nonzero");
    if (is_zero()) return *this;
    const Integer p = s.get_num(), q = s.get_den();
    Poly n = scale_arguments(num_, p, q), d = scale_arguments(den_, p, q);
    Integer qn, qd;
    mpz_pow_ui(qn.get_mpz_t(), q.get_mpz_t(), num_.total_degree());
    mpz_pow_ui(qd.get_mpz_t(), q.get_mpz_t(), den_.total_degree());
    Rational ratio(qd, qn);
    ratio.canonicalize();
    return assemble(scalar_ * ratio, std::move(n), std::move(d));
}

std::optional<int> MultiRat::homogeneous_degree() const
{
    if (is_zero() || !num_.is_homogeneous() || !den_.is_homogeneous()) return std::nullopt;
    return static_cast<int>(num_.total_degree()) - static_cast<int>(den_.total_degree());
}

MultiRat partial_derivative(const MultiRat& f, std::size_t var)
{
    if (var >= f.nvars()) throw std::out_of_range("variable index out of range");
    const Poly& n = f.numerator();
    const Poly& d = f.denominator();
    if (f.is_zero() || (!n.uses_variable(var) && !d.uses_variable(var))) return MultiRat(f.nvars());
    const Poly dn = derivative(n, var);
    const Poly dd = derivative(d, var);
    if (dd.is_zero()) return MultiRat::from_polys(dn, d, f.scalar());
    const Poly g = gcd(d, dd);
    const Poly dg = *divide_exact(d, g);
    const Poly num = dn * dg - n * *divide_exact(dd, g);
    return MultiRat::from_polys(num, d * dg, f.scalar());
}

}  // namespace sle::symbolic
