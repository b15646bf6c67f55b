#include "sle/virasoro/verma.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "sle/errors.hpp"

namespace sle::virasoro {

int level(const Partition& p)
{
    return std::accumulate(p.begin(), p.end(), 0);
}

VermaState VermaState::highest_weight(const Rational& c, const Rational& h)
{
    return monomial(c, h, {});
}

VermaState VermaState::monomial(const Rational& c, const Rational& h, Partition parts, const Rational& coeff)
{
    for (int k : parts)
        if (k < 1) throw MalformedInput("partition parts must be positive");
    std::sort(parts.begin(), parts.end());
    VermaState s(c, h);
    s.add(parts, coeff);
    return s;
}

Rational VermaState::coefficient(const Partition& p) const
{
    auto it = coeffs_.find(p);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

void VermaState::add(const Partition& p, const Rational& coeff)
{
    Rational v = coeff;
    v.canonicalize();
    if (v == 0) return;
    auto [it, inserted] = coeffs_.try_emplace(p, v);
    if (!inserted) {
        it->second += v;
        if (it->second == 0) coeffs_.erase(it);
    }
}

VermaState& VermaState::operator+=(const VermaState& o)
{
    if (c_ != o.c_ || h_ != o.h_) throw MalformedInput("states live in different Verma modules");
    for (const auto& [p, v] : o.coeffs_) add(p, v);
    return *this;
}

VermaState& VermaState::operator-=(const VermaState& o)
{
    return *this += o.scaled(-1);
}

VermaState VermaState::scaled(const Rational& s) const
{
    VermaState r(c_, h_);
    if (s == 0) return r;
    for (const auto& [p, v] : coeffs_) r.coeffs_.emplace(p, v * s);
    return r;
}

namespace {

// L_n applied to coeff * L_{-p[from]} ... L_{-p.back()}|h>, accumulated into out.
void apply_monomial(int n, const Partition& p, std::size_t from, const Rational& coeff, VermaState& out)
{
    const Rational& c = out.central_charge();
    const Rational& h = out.highest_weight();
    if (from == p.size()) {
        if (n > 0) return;
        if (n == 0) {
            out.add({}, coeff * h);
            return;
        }
        out.add({-n}, coeff);
        return;
    }
    const int k1 = p[from];
    if (n < 0 && -n <= k1) {
        Partition q;
        q.reserve(p.size() - from + 1);
        q.push_back(-n);
        q.insert(q.end(), p.begin() + static_cast<std::ptrdiff_t>(from), p.end());
        out.add(q, coeff);
        return;
    }
    // L_n L_{-k1} R = L_{-k1} (L_n R) + (n + k1) L_{n-k1} R + delta_{n,k1} (n^3 - n)/12 c R
    VermaState inner(c, h);
    apply_monomial(n, p, from + 1, 1, inner);
    for (const auto& [q, v] : inner.coefficients()) apply_monomial(-k1, q, 0, coeff * v, out);
    if (n + k1 != 0) apply_monomial(n - k1, p, from + 1, coeff * (n + k1), out);
    if (n == k1) {
        Rational central(n * n * n - n, 12);
        central.canonicalize();
        central *= c;
        if (central != 0) {
            Partition rest(p.begin() + static_cast<std::ptrdiff_t>(from + 1), p.end());
            out.add(rest, coeff * central);
        }
    }
}

}  // namespace

VermaState apply_L(int n, const VermaState& state)
{
    VermaState out(state.central_charge(), state.highest_weight());
    for (const auto& [p, v] : state.coefficients()) apply_monomial(n, p, 0, v, out);
    return out;
}

VermaState null_vector(const Rational& kappa, const Rational& c, const Rational& h)
{
    return VermaState::monomial(c, h, {1, 1}, kappa / 2) + VermaState::monomial(c, h, {2}, -2);
}

NullVectorCoefficients null_vector_coefficients(const Rational& kappa, const Rational& h, const Rational& c)
{
    const VermaState chi = null_vector(kappa, c, h);
    const VermaState s1 = apply_L(1, chi);
    const VermaState s2 = apply_L(2, chi);
    // Level bookkeeping guarantees these are the only possible monomials.
    if (s1.coefficients().size() > 1 || s2.coefficients().size() > 1)
        throw std::logic_error("null vector image has unexpected monomials");
    return {s1.coefficient({1}), s2.coefficient({})};
}

VirParams params_of_kappa(const Rational& kappa)
{
    if (kappa == 0) throw std::domain_error("params_of_kappa: kappa must be nonzero");
    VirParams p;
    p.kappa = kappa;
    p.h = (6 - kappa) / (2 * kappa);
    p.c = (3 * kappa - 8) * (6 - kappa) / (2 * kappa);
    p.lambda = (8 - 3 * kappa) * p.h;
    p.alpha = p.h;
    check_params(p);
    return p;
}

void check_params(const VirParams& p)
{
    if (p.kappa == 0) throw MalformedInput("kappa must be nonzero");
    const Rational h = (6 - p.kappa) / (2 * p.kappa);
    const Rational c = (3 * p.kappa - 8) * (6 - p.kappa) / (2 * p.kappa);
    if (p.h != h || p.alpha != h || p.c != c || p.lambda != -c || p.lambda != (8 - 3 * p.kappa) * h)
        throw MalformedInput("Virasoro parameters violate the kappa relations");
}

Rational witt_cocycle(const LaurentPoly& f, const LaurentPoly& g)
{
    return symbolic::residue(symbolic::derivative(symbolic::derivative(f)) * symbolic::derivative(g)) / 6;
}

}  // namespace sle::virasoro
