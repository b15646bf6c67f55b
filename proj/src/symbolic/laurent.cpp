#include "sle/symbolic/laurent.hpp"

#include <algorithm>
#include <stdexcept>

#include "sle/errors.hpp"

namespace sle::symbolic {

LaurentPoly LaurentPoly::monomial(int k, const Rational& c)
{
    LaurentPoly p;
    p.set(k, c);
    return p;
}

Rational LaurentPoly::coefficient(int k) const
{
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

void LaurentPoly::set(int k, const Rational& c)
{
    Rational v = c;
    v.canonicalize();
    if (v == 0)
        coeffs_.erase(k);
    else
        coeffs_[k] = std::move(v);
}

LaurentPoly LaurentPoly::operator-() const
{
    return scaled(-1);
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o)
{
    for (const auto& [k, c] : o.coeffs_) set(k, coefficient(k) + c);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b)
{
    LaurentPoly r;
    for (const auto& [i, ci] : a.coeffs_)
        for (const auto& [j, cj] : b.coeffs_) r.set(i + j, r.coefficient(i + j) + ci * cj);
    return r;
}

LaurentPoly LaurentPoly::scaled(const Rational& c) const
{
    LaurentPoly r;
    if (c == 0) return r;
    for (const auto& [k, v] : coeffs_) r.coeffs_[k] = v * c;
    return r;
}

LaurentPoly derivative(const LaurentPoly& p)
{
    LaurentPoly r;
    for (const auto& [k, c] : p.coefficients())
        if (k != 0) r.set(k - 1, c * k);
    return r;
}

Rational residue(const LaurentPoly& p)
{
    return p.coefficient(-1);
}

namespace {

Poly without_slot(const Poly& p, std::size_t var)
{
    std::vector<Poly::Term> out;
    out.reserve(p.size());
    for (const auto& t : p.terms()) {
        Poly::Term s{Monomial{}, t.coeff};
        for (std::size_t i = 0, j = 0; i < p.nvars(); ++i)
            if (i != var) s.mono.exp[j++] = t.mono.exp[i];
        out.push_back(std::move(s));
    }
    return Poly::from_terms(p.nvars() - 1, std::move(out));
}

}  // namespace

MultiRat remove_variable(const MultiRat& f, std::size_t var)
{
    if (var >= f.nvars()) throw std::out_of_range("variable index out of range");
    if (f.numerator().uses_variable(var) || f.denominator().uses_variable(var))
        throw MalformedInput("cannot remove a variable the function depends on");
    if (f.is_zero()) return MultiRat(f.nvars() - 1);
    // Dropping an unused slot keeps term order, coprimality and content.
    return MultiRat::from_polys(without_slot(f.numerator(), var), without_slot(f.denominator(), var),
                                f.scalar());
}

namespace {

Poly drop_var_power(const Poly& p, std::size_t var, unsigned k)
{
    if (k == 0) return p;
    std::vector<Poly::Term> out;
    out.reserve(p.size());
    for (auto t : p.terms()) {
        t.mono.exp[var] = static_cast<std::uint16_t>(t.mono.exp[var] - k);
        out.push_back(std::move(t));
    }
    return Poly::from_terms(p.nvars(), std::move(out));
}

}  // namespace

std::vector<MultiRat> laurent_coefficients(const MultiRat& f, std::size_t var, int k_min, int k_max)
{
    if (var >= f.nvars()) throw std::out_of_range("variable index out of range");
    if (k_max < k_min) return {};
    const std::size_t n = f.nvars();
    std::vector<MultiRat> out(static_cast<std::size_t>(k_max - k_min + 1), MultiRat(n));
    if (f.is_zero()) {
        for (auto& c : out) c = remove_variable(c, var);
        return out;
    }

    // f = c var^(r-m) N~/q with N~(0), q(0) not identically zero.
    const unsigned r = f.numerator().min_degree_in(var);
    const unsigned m = f.denominator().min_degree_in(var);
    const Poly nt = drop_var_power(f.numerator(), var, r);
    const Poly q = drop_var_power(f.denominator(), var, m);
    const Poly q0 = q.coefficient_in(var, 0);
    if (q0.is_zero()) throw ExpansionError("denominator has no finite expansion at zero");
    const int shift = static_cast<int>(r) - static_cast<int>(m);
    if (k_max < shift) {
        for (auto& c : out) c = remove_variable(c, var);
        return out;
    }
    const int jmax = k_max - shift;

    const unsigned qdeg = q.degree_in(var), ndeg = nt.degree_in(var);
    std::vector<Poly> qi(qdeg + 1, Poly(n)), ni(ndeg + 1, Poly(n));
    for (unsigned i = 0; i <= qdeg; ++i) qi[i] = q.coefficient_in(var, i);
    for (unsigned i = 0; i <= ndeg; ++i) ni[i] = nt.coefficient_in(var, i);

    // 1/q = sum_j T_j var^j / q0^(j+1).
    std::vector<Poly> q0pow(static_cast<std::size_t>(jmax) + 2, Poly::constant(n, 1));
    for (std::size_t i = 1; i < q0pow.size(); ++i) q0pow[i] = q0pow[i - 1] * q0;
    std::vector<Poly> tj(static_cast<std::size_t>(jmax) + 1, Poly(n));
    tj[0] = Poly::constant(n, 1);
    for (int j = 1; j <= jmax; ++j) {
        Poly acc(n);
        for (int i = 1; i <= j && i <= static_cast<int>(qdeg); ++i)
            acc -= qi[i] * tj[j - i] * q0pow[i - 1];
        tj[j] = std::move(acc);
    }

    for (int k = std::max(k_min, shift); k <= k_max; ++k) {
        const int j = k - shift;
        Poly s(n);
        for (int i = 0; i <= j && i <= static_cast<int>(ndeg); ++i)
            if (!ni[i].is_zero()) s += ni[i] * tj[j - i] * q0pow[i];
        out[static_cast<std::size_t>(k - k_min)] = MultiRat::from_polys(s, q0pow[j + 1], f.scalar());
    }
    for (auto& c : out) c = remove_variable(c, var);
    return out;
}

MultiRat laurent_coefficient(const MultiRat& f, std::size_t var, int k)
{
    return laurent_coefficients(f, var, k, k).front();
}

}  // namespace sle::symbolic
