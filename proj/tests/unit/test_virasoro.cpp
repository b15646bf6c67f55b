#include <doctest.h>

#include <random>

#include "sle/errors.hpp"
#include "sle/virasoro/verma.hpp"

using namespace sle::virasoro;

namespace {

Rational R(long p, long q = 1)
{
    Rational r(p, q);
    r.canonicalize();
    return r;
}

// Random combination of PBW monomials of level <= max_level.
VermaState random_state(std::mt19937_64& rng, const Rational& c, const Rational& h, int max_level)
{
    static const std::vector<Partition> pool = {{},     {1},    {2},       {1, 1},    {3},   {1, 2},
                                                {1, 1, 1}, {4}, {1, 3}, {2, 2}, {1, 1, 2}, {1, 1, 1, 1}};
    std::uniform_int_distribution<int> coeff(-6, 6);
    VermaState s(c, h);
    for (const auto& p : pool)
        if (level(p) <= max_level) s.add(p, R(coeff(rng), 1 + static_cast<long>(p.size())));
    return s;
}

LaurentPoly vector_field(int n)
{
    return LaurentPoly::monomial(n + 1, -1);
}

}  // namespace

TEST_CASE("apply_L examples")
{
    const Rational c = R(7, 3), h = R(2, 5);
    const VermaState hw = VermaState::highest_weight(c, h);
    CHECK(apply_L(2, VermaState::monomial(c, h, {2})) == hw.scaled(4 * h + c / 2));
    const VermaState s11 = VermaState::monomial(c, h, {1, 1});
    CHECK(apply_L(0, s11) == s11.scaled(h + 2));
    CHECK(apply_L(1, VermaState::monomial(c, h, {1})) == hw.scaled(2 * h));
    CHECK(apply_L(3, hw).is_zero());
    CHECK(apply_L(-2, VermaState::monomial(c, h, {1})) ==
          VermaState::monomial(c, h, {1, 2}) - VermaState::monomial(c, h, {3}));
}

TEST_CASE("null vector coefficients")
{
    for (const auto& [k, h, c] : std::vector<std::tuple<Rational, Rational, Rational>>{
             {R(8, 3), R(5, 8), R(0)}, {R(2), R(1), R(-2)}, {R(6), R(0), R(0)}}) {
        const auto nv = null_vector_coefficients(k, h, c);
        CHECK(nv.l1 == 0);
        CHECK(nv.l2 == 0);
    }
    // Closed forms at a generic point.
    const Rational k = R(7, 2), h = R(-3, 11), c = R(5, 9);
    const auto nv = null_vector_coefficients(k, h, c);
    CHECK(nv.l1 == k + 2 * k * h - 6);
    CHECK(nv.l2 == 3 * k * h - 8 * h - c);
}

TEST_CASE("params_of_kappa")
{
    const VirParams p = params_of_kappa(R(8, 3));
    CHECK(p.c == 0);
    CHECK(p.h == R(5, 8));
    CHECK(p.lambda == 0);
    const VirParams q = params_of_kappa(2);
    CHECK(q.c == -2);
    CHECK(q.h == 1);
    CHECK(q.lambda == 2);
    const VirParams r = params_of_kappa(6);
    CHECK(r.c == 0);
    CHECK(r.h == 0);
    CHECK(r.lambda == 0);
    CHECK_THROWS_AS(params_of_kappa(0), std::domain_error);
    VirParams bad = q;
    bad.lambda = 3;
    CHECK_THROWS_AS(check_params(bad), sle::MalformedInput);
}

TEST_CASE("witt cocycle examples")
{
    CHECK(witt_cocycle(vector_field(2), vector_field(-2)) == -1);
    CHECK(witt_cocycle(vector_field(0), vector_field(0)) == 0);
    CHECK(witt_cocycle(vector_field(3), vector_field(-2)) == 0);
}

TEST_CASE("property: commutator law on random states")
{
    std::mt19937_64 rng(41);
    const Rational c = R(-22, 5), h = R(3, 7);
    for (int trial = 0; trial < 3; ++trial) {
        const VermaState s = random_state(rng, c, h, 3);
        for (int n = -3; n <= 3; ++n) {
            for (int m = -3; m <= 3; ++m) {
                const VermaState lhs = apply_L(n, apply_L(m, s)) - apply_L(m, apply_L(n, s));
                VermaState rhs = apply_L(n + m, s).scaled(n - m);
                if (n == -m) rhs += s.scaled(R(n * n * n - n, 12) * c);
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("property: Jacobi identity")
{
    std::mt19937_64 rng(42);
    const Rational c = R(1, 2), h = R(-1, 3);
    const VermaState s = random_state(rng, c, h, 4);
    auto bracket = [](int a, int b, const VermaState& x) { return apply_L(a, apply_L(b, x)) - apply_L(b, apply_L(a, x)); };
    for (int a = -3; a <= 3; ++a)
        for (int b = -3; b <= 3; ++b)
            for (int cc = -3; cc <= 3; ++cc) {
                // [L_a,[L_b,L_c]] s expanded into compositions.
                auto nested = [&](int p, int q, int r) {
                    return apply_L(p, bracket(q, r, s)) - bracket(q, r, apply_L(p, s));
                };
                CHECK((nested(a, b, cc) + nested(b, cc, a) + nested(cc, a, b)).is_zero());
            }
}

TEST_CASE("property: null vector annihilated at the kappa parameters")
{
    for (const Rational& k : {R(2), R(8, 3), R(3), R(4), R(6)}) {
        const VirParams p = params_of_kappa(k);
        const VermaState chi = null_vector(k, p.c, p.h);
        for (int n = 1; n <= 4; ++n) CHECK(apply_L(n, chi).is_zero());
        CHECK(apply_L(0, chi) == chi.scaled(p.h + 2));
        CHECK_FALSE(apply_L(2, null_vector(k, p.c + 1, p.h)).is_zero());
        CHECK_FALSE(apply_L(1, null_vector(k, p.c, p.h + 1)).is_zero());
    }
}

TEST_CASE("property: cocycle grid, bilinearity, antisymmetry")
{
    for (int n = -4; n <= 4; ++n) {
        for (int m = -4; m <= 4; ++m) {
            const Rational expect = n == -m ? -R(n * n * n - n, 6) : R(0);
            CHECK(witt_cocycle(vector_field(n), vector_field(m)) == expect);
            CHECK(witt_cocycle(vector_field(n), vector_field(m)) == -witt_cocycle(vector_field(m), vector_field(n)));
            // Factor -2 relative to (n^3 - n)/12.
            CHECK(witt_cocycle(vector_field(n), vector_field(m)) == (n == -m ? R(-2) * R(n * n * n - n, 12) : R(0)));
        }
    }
    const LaurentPoly f = vector_field(2).scaled(R(3, 4)) + vector_field(-1);
    const LaurentPoly g = vector_field(-2) + vector_field(1).scaled(5);
    const LaurentPoly k = vector_field(3).scaled(-2);
    CHECK(witt_cocycle(f + k, g) == witt_cocycle(f, g) + witt_cocycle(k, g));
    CHECK(witt_cocycle(f.scaled(R(7, 3)), g) == R(7, 3) * witt_cocycle(f, g));
    CHECK(witt_cocycle(f, g) == -witt_cocycle(g, f));
}
