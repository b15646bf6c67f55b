#include "sle/ward/correlators.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "sle/errors.hpp"
#include "sle/symbolic/laurent.hpp"

namespace sle::ward {

using symbolic::Poly;
using symbolic::partial_derivative;

MultiRat b1(const Rational& alpha)
{
    return MultiRat::variable(1, 0).pow(-2).scaled(alpha);
}

MultiRat ward_extend(const MultiRat& bn, const Rational& alpha, std::size_t n)
{
    if (bn.nvars() != n) throw MalformedInput("ward_extend: B_n must have arity n");
    const std::size_t m = n + 1;
    const MultiRat bs = bn.with_variable_inserted(0);
    const MultiRat x = MultiRat::variable(m, 0);
    const MultiRat inv_x = x.pow(-1);
    MultiRat result = (inv_x * inv_x * bs).scaled(alpha);
    for (std::size_t j = 1; j <= n; ++j) {
        const MultiRat d = (MultiRat::variable(m, j) - x).pow(-1);
        result -= (d + inv_x) * partial_derivative(bs, j) - (d * d * bs).scaled(2);
    }
    return result;
}

BVector build_B(const Rational& alpha, std::size_t nmax)
{
    BVector b{alpha, {MultiRat::constant(0, 1)}};
    b.components.reserve(nmax + 1);
    for (std::size_t n = 0; n < nmax; ++n) b.components.push_back(ward_extend(b.components[n], alpha, n));
    return b;
}

MultiRat script_L(int N, const MultiRat& f)
{
    const std::size_t n = f.nvars();
    MultiRat result(n);
    for (std::size_t j = 0; j < n; ++j) {
        const MultiRat xj = MultiRat::variable(n, j);
        result -= xj.pow(1 + N) * partial_derivative(f, j) + (xj.pow(N) * f).scaled(2 * (N + 1));
    }
    return result;
}

MultiRat witt_L(int N, const MultiRat& f)
{
    const std::size_t n = f.nvars();
    MultiRat result(n);
    for (std::size_t j = 0; j < n; ++j) result -= MultiRat::variable(n, j).pow(1 + N) * partial_derivative(f, j);
    return result;
}

MultiRat l_extract(int N, const Sequence& w, std::size_t n)
{
    if (w.size() <= n + 1) throw MalformedInput("l_extract: component n+1 missing");
    if (w[n + 1].nvars() != n + 1) throw MalformedInput("l_extract: component has wrong arity");
    return symbolic::laurent_coefficient(w[n + 1], 0, -N - 2);
}

MultiRat l_extract(int N, const BVector& b, std::size_t n)
{
    return l_extract(N, b.components, n);
}

Sequence l_apply(int N, const Sequence& w)
{
    Sequence out;
    for (std::size_t k = 0; k + 1 < w.size(); ++k) out.push_back(l_extract(N, w, k));
    return out;
}

Rational permutation_oracle_alpha1(std::span<const Rational> points)
{
    const std::size_t n = points.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (points[i] == 0) throw PoleError("permutation oracle: point at the origin");
        for (std::size_t j = i + 1; j < n; ++j)
            if (points[i] == points[j]) throw PoleError("permutation oracle: coincident points");
    }
    std::vector<std::size_t> s(n);
    std::iota(s.begin(), s.end(), 0);
    Rational total = 0;
    do {
        Rational prev = 0, prod = 1;
        for (std::size_t k : s) {
            const Rational d = points[k] - prev;
            prod /= d * d;
            prev = points[k];
        }
        total += prod;
    } while (std::next_permutation(s.begin(), s.end()));
    return total;
}

namespace {

// f with its variables placed at the given slots of an arity-n function.
MultiRat place(const MultiRat& f, std::size_t n, const std::vector<std::size_t>& slots)
{
    return f.remapped(n, slots);
}

void split_mask(unsigned mask, std::size_t n, std::vector<std::size_t>& in, std::vector<std::size_t>& out)
{
    in.clear();
    out.clear();
    for (std::size_t i = 0; i < n; ++i) (mask >> i & 1u ? in : out).push_back(i);
}

}  // namespace

MultiRat semigroup_compose(const BVector& b1, const BVector& b2, std::size_t n)
{
    if (b1.components.size() <= n || b2.components.size() <= n)
        throw MalformedInput("semigroup_compose: components missing");
    MultiRat total(n);
    std::vector<std::size_t> first, second;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        split_mask(mask, n, first, second);
        total += place(b1[first.size()], n, first) * place(b2[second.size()], n, second);
    }
    return total;
}

BubbleWeight bubble_T(std::size_t p)
{
    if (p == 0) return {0, MultiRat(0)};
    std::vector<std::size_t> s(p);
    std::iota(s.begin(), s.end(), 0);
    MultiRat total(p);
    const Poly one = Poly::constant(p, 1);
    do {
        Poly den = Poly::variable(p, s.front()).pow(2) * Poly::variable(p, s.back()).pow(2);
        for (std::size_t j = 1; j < p; ++j) den *= (Poly::variable(p, s[j]) - Poly::variable(p, s[j - 1])).pow(2);
        total += MultiRat::from_polys(one, den);
    } while (std::next_permutation(s.begin(), s.end()));
    return {p, total};
}

MultiRat U_apply(const Sequence& w, std::size_t n)
{
    if (w.size() <= n) throw MalformedInput("U_apply: components missing");
    MultiRat total(n);
    std::vector<std::size_t> in, out;
    for (std::size_t p = 1; p <= n; ++p) {
        const MultiRat t = bubble_T(p).value;
        const MultiRat& rest = w[n - p];
        if (rest.is_zero()) continue;
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) != p) continue;
            split_mask(mask, n, in, out);
            total += place(t, n, in) * place(rest, n, out);
        }
    }
    return total;
}

MultiRat U_apply(const BVector& b, std::size_t n)
{
    return U_apply(b.components, n);
}

Sequence U_sequence(const Sequence& w)
{
    Sequence out;
    for (std::size_t n = 0; n < w.size(); ++n) out.push_back(U_apply(w, n));
    return out;
}

MultiRat degeneracy_residual(const BVector& b, const Rational& kappa, std::size_t n)
{
    const MultiRat& bn = b[n];
    return script_L(-1, script_L(-1, bn)).scaled(kappa / 2) - script_L(-2, bn).scaled(2);
}

MultiRat fw9_residual(const BVector& b, const Rational& kappa, const Rational& lambda, std::size_t n)
{
    return degeneracy_residual(b, kappa, n) + U_apply(b, n).scaled(lambda);
}

MultiRat fw9_residual_laurent(const BVector& b, const Rational& kappa, const Rational& lambda, std::size_t n)
{
    if (b.components.size() <= n + 2) throw MalformedInput("fw9_residual_laurent: needs components up to n+2");
    const Sequence head(b.components.begin(), b.components.begin() + static_cast<std::ptrdiff_t>(n + 3));
    const Sequence once = l_apply(-1, head);
    const MultiRat twice = l_extract(-1, once, n);
    return twice.scaled(kappa / 2) - l_extract(-2, head, n).scaled(2) + U_apply(b, n).scaled(lambda);
}

}  // namespace sle::ward
