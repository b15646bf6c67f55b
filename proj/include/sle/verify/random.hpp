#ifndef SLE_VERIFY_RANDOM_HPP
#define SLE_VERIFY_RANDOM_HPP

#include <random>
#include <vector>

#include "sle/symbolic/multirat.hpp"
#include "sle/virasoro/verma.hpp"

namespace sle::verify {

using symbolic::Monomial;
using symbolic::MultiRat;
using symbolic::Poly;
using symbolic::Rational;

inline Poly random_poly(std::mt19937_64& rng, std::size_t nvars, int max_terms, int max_deg)
{
    std::uniform_int_distribution<int> nterms(1, max_terms), coeff(-5, 5), deg(0, max_deg);
    std::vector<Poly::Term> terms;
    const int k = nterms(rng);
    for (int i = 0; i < k; ++i) {
        Monomial m;
        for (std::size_t v = 0; v < nvars; ++v) m.exp[v] = static_cast<std::uint16_t>(deg(rng));
        int c = coeff(rng);
        if (c == 0) c = 1;
        terms.push_back({m, c});
    }
    return Poly::from_terms(nvars, std::move(terms));
}

inline MultiRat random_multirat(std::mt19937_64& rng, std::size_t nvars)
{
    Poly d = random_poly(rng, nvars, 3, 2);
    while (d.is_zero()) d = random_poly(rng, nvars, 3, 2);
    std::uniform_int_distribution<int> q(1, 7);
    Rational scale(q(rng), q(rng));
    scale.canonicalize();
    return MultiRat::from_polys(random_poly(rng, nvars, 3, 2), d, scale);
}

inline std::vector<Rational> random_point(std::mt19937_64& rng, std::size_t n)
{
    std::uniform_int_distribution<int> num(-40, 40), den(1, 13);
    std::vector<Rational> p(n);
    for (auto& v : p) {
        v = Rational(num(rng), den(rng));
        v.canonicalize();
    }
    return p;
}

/// Random combination of PBW monomials of level <= max_level (at most 4).
inline virasoro::VermaState random_state(std::mt19937_64& rng, const Rational& c, const Rational& h, int max_level)
{
    static const std::vector<virasoro::Partition> pool = {{},     {1},    {2},    {1, 1},    {3},      {1, 2},
                                                          {1, 1, 1}, {4}, {1, 3}, {2, 2}, {1, 1, 2}, {1, 1, 1, 1}};
    std::uniform_int_distribution<int> coeff(-6, 6);
    virasoro::VermaState s(c, h);
    for (const auto& p : pool) {
        if (virasoro::level(p) > max_level) continue;
        Rational r(coeff(rng), 1 + static_cast<long>(p.size()));
        r.canonicalize();
        s.add(p, r);
    }
    return s;
}

}  // namespace sle::verify

#endif
