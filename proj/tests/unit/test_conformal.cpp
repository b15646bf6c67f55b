#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sle/conformal/maps.hpp"
#include "sle/errors.hpp"

using namespace sle::conformal;

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
const Complex I(0.0, 1.0);

double rel(Complex a, Complex b)
{
    return std::abs(a - b) / std::max(1.0, std::abs(b));
}

// Fourth-order central differences of f at z along the real direction.
Jet finite_difference_jet(const HalfPlaneMap& m, Complex z, double h)
{
    auto f = [&](double k) { return m.apply(z + k * h); };
    const Complex f2 = f(2), f1 = f(1), f0 = f(0), fm1 = f(-1), fm2 = f(-2);
    const Complex f3 = f(3), fm3 = f(-3);
    Jet j;
    j.f = f0;
    j.d1 = (-f2 + 8.0 * f1 - 8.0 * fm1 + fm2) / (12.0 * h);
    j.d2 = (-f2 + 16.0 * f1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h);
    j.d3 = (-f3 + 8.0 * f2 - 13.0 * f1 + 13.0 * fm1 - 8.0 * fm2 + fm3) / (8.0 * h * h * h);
    return j;
}

std::vector<HalfPlaneMap> sample_maps()
{
    return {HalfPlaneMap::vertical_slit(1.0, kInvSqrt2),
            HalfPlaneMap::vertical_slit(-0.3, 0.4, Normalization::hydrodynamic),
            HalfPlaneMap::vertical_slit(0.5, 0.7).inverse(),
            HalfPlaneMap::tilted_slit(0.3, 1.2),
            HalfPlaneMap::tilted_slit(0.7, 0.5).inverse(),
            HalfPlaneMap::shift(0.25),
            HalfPlaneMap::scale(1.5),
            HalfPlaneMap::compose(HalfPlaneMap::tilted_slit(0.4, 0.8), HalfPlaneMap::vertical_slit(0.2, 0.3))};
}

}  // namespace

TEST_CASE("vertical slit examples")
{
    const HalfPlaneMap phi = HalfPlaneMap::vertical_slit(1.0, kInvSqrt2);
    CHECK(std::abs(phi.apply(0.0)) < 1e-15);
    for (double x : {1.0, -0.5, 2.0}) {
        const double eps = 0.6;
        const HalfPlaneMap m = HalfPlaneMap::vertical_slit(x, eps);
        CHECK(std::abs(m.apply(0.0)) < 1e-15);
        CHECK(rel(derivative(m, 0.0, 1), std::abs(x) / std::sqrt(x * x + 2 * eps * eps)) < 1e-14);
    }
    CHECK_THROWS_AS(HalfPlaneMap::vertical_slit(0.0, 0.5), sle::MalformedInput);
    // The tip goes to a real point, points on the slit are rejected.
    const Complex tip = phi.apply(Complex(1.0, 1.0));
    CHECK(std::abs(tip.imag()) < 1e-7);
    CHECK_THROWS_AS(phi.apply(Complex(1.0, 0.5)), sle::DomainError);
    CHECK_THROWS_AS(phi.apply(Complex(0.3, -0.1)), sle::DomainError);
    CHECK_THROWS_AS(derivative(HalfPlaneMap::tilted_slit(0.4, 1.0).inverse(), -1.0, 1), sle::SingularityError);
    // Negative on the real axis left of the slit (before the constant shift).
    const HalfPlaneMap h = HalfPlaneMap::vertical_slit(1.0, kInvSqrt2, Normalization::hydrodynamic);
    CHECK(h.apply(Complex(0.0, 0.0)).real() < 1.0);
    CHECK(h.apply(Complex(2.0, 0.0)).real() > 1.0);
}

TEST_CASE("loewner step is sqrt((z - w)^2 + 4 dt) + w")
{
    const HalfPlaneMap g = HalfPlaneMap::loewner_step(0.3, 0.25);
    for (Complex z : {Complex(1.0, 2.0), Complex(-3.0, 0.1), Complex(0.3, 5.0)}) {
        Complex root = std::sqrt((z - 0.3) * (z - 0.3) + 1.0);
        if (root.imag() < 0) root = -root;
        const Complex expect = 0.3 + root;
        CHECK(rel(g.apply(z), expect) < 1e-14);
    }
}

TEST_CASE("tilted slit examples")
{
    const HalfPlaneMap F = HalfPlaneMap::tilted_slit(0.5, 1.0).inverse();
    CHECK(rel(F.apply(0.0), I) < 1e-14);
    for (double alpha : {0.2, 0.5, 0.8}) {
        const double t = 1.3;
        const HalfPlaneMap Fa = HalfPlaneMap::tilted_slit(alpha, t).inverse();
        CHECK(std::abs(Fa.apply(-t)) < 1e-15);
        CHECK(std::abs(Fa.apply(alpha * t / (1 - alpha))) < 1e-15);
        // Tip sits at t alpha^alpha/(1-alpha)^alpha e^{i pi alpha}.
        const double len = t * std::pow(alpha, alpha) / std::pow(1 - alpha, alpha);
        CHECK(rel(Fa.apply(0.0), std::polar(len, std::numbers::pi * alpha)) < 1e-13);
        const HalfPlaneMap G = HalfPlaneMap::tilted_slit_with_length(alpha, 2.0);
        CHECK(rel(G.inverse().apply(0.0), std::polar(2.0, std::numbers::pi * alpha)) < 1e-13);
        // Forward image of the tip is the real point 0.
        CHECK(std::abs(G.apply(std::polar(2.0, std::numbers::pi * alpha))) < 1e-6);
    }
    CHECK_THROWS_AS(HalfPlaneMap::tilted_slit(1.0, 1.0), sle::MalformedInput);
}

TEST_CASE("shift, scale and composition derivatives")
{
    CHECK(derivative(HalfPlaneMap::shift(3.5), Complex(2, 1), 1) == Complex(1.0));
    for (Complex z : {Complex(0.2, 0.4), Complex(-3, 2)}) {
        CHECK(std::abs(schwarzian(HalfPlaneMap::shift(-1.0), z)) == 0.0);
        CHECK(std::abs(schwarzian(HalfPlaneMap::scale(2.0), z)) == 0.0);
        CHECK(std::abs(schwarzian(HalfPlaneMap::compose(HalfPlaneMap::shift(1), HalfPlaneMap::shift(2)), z)) == 0.0);
    }
    const HalfPlaneMap f = HalfPlaneMap::vertical_slit(0.4, 0.5), g = HalfPlaneMap::tilted_slit(0.35, 0.9);
    const HalfPlaneMap fg = HalfPlaneMap::compose(f, g);
    const Complex z(0.7, 0.8);
    CHECK(rel(derivative(fg, z, 1), derivative(f, g.apply(z), 1) * derivative(g, z, 1)) < 1e-12);
    const Jet fd = finite_difference_jet(fg, z, 1e-3);
    CHECK(rel(derivative(fg, z, 1), fd.d1) < 1e-8);
}

TEST_CASE("schwarzian of the vertical slit against finite differences")
{
    const HalfPlaneMap phi = HalfPlaneMap::vertical_slit(1.0, kInvSqrt2);
    const Complex z(-1.0, 0.0);
    const Jet fd = finite_difference_jet(phi, z, 1e-2);
    const Complex s_fd = fd.d3 / fd.d1 - 1.5 * (fd.d2 / fd.d1) * (fd.d2 / fd.d1);
    CHECK(std::abs(schwarzian(phi, z) - s_fd) / std::abs(s_fd) < 1e-6);
}

TEST_CASE("hcap examples")
{
    CHECK(hcap_from_expansion(HalfPlaneMap::loewner_step(0.0, 0.25)) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(hcap_from_expansion(HalfPlaneMap::identity()) == 0.0);
    CHECK(hcap_from_expansion(HalfPlaneMap::vertical_slit(1.0, kInvSqrt2)) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(hcap_from_expansion(HalfPlaneMap::loewner_step(0.7, 0.01)) == doctest::Approx(0.02).epsilon(1e-10));
    CHECK_THROWS_AS(hcap_from_expansion(HalfPlaneMap::scale(2.0)), sle::MalformedInput);
    // Capacity is additive under composition.
    const HalfPlaneMap two = HalfPlaneMap::compose(HalfPlaneMap::loewner_step(0.1, 0.3), HalfPlaneMap::loewner_step(-0.2, 0.2));
    CHECK(hcap_from_expansion(two) == doctest::Approx(1.0).epsilon(1e-10));
    // A map and its inverse have opposite capacities.
    const HalfPlaneMap g = HalfPlaneMap::tilted_slit(0.3, 1.0);
    CHECK(hcap_from_expansion(g) == doctest::Approx(-hcap_from_expansion(g.inverse())).epsilon(1e-9));
}

TEST_CASE("zipper examples")
{
    SUBCASE("vertical segment")
    {
        const double x = 0.4, len = 1.3;
        const HalfPlaneMap z = zipper_map({Complex(x, 0), Complex(x, len / 3), Complex(x, 2 * len / 3), Complex(x, len)});
        const HalfPlaneMap ref = HalfPlaneMap::vertical_slit(x, len / std::numbers::sqrt2, Normalization::hydrodynamic);
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> re(-3, 3), im(0.05, 3);
        for (int k = 0; k < 10; ++k) {
            Complex p(re(rng), im(rng));
            if (std::abs(p.real() - x) < 0.05) p += 0.2;
            CHECK(std::abs(z.apply(p) - ref.apply(p)) < 1e-4);
        }
        CHECK(hcap_from_expansion(z) == doctest::Approx(len * len / 2).epsilon(1e-8));
    }
    SUBCASE("tilted segment")
    {
        const double alpha = 0.3, len = 0.8;
        const Complex tip = std::polar(len, std::numbers::pi * alpha);
        const HalfPlaneMap z = zipper_map({0.0, tip});
        const HalfPlaneMap g = HalfPlaneMap::tilted_slit_with_length(alpha, len);
        const double c0 = std::get<TiltedSlit>(g.kind()).t * (1 - 2 * alpha) / (1 - alpha);
        const HalfPlaneMap ref = HalfPlaneMap::compose(HalfPlaneMap::shift(c0), g);
        for (Complex p : {Complex(1, 1), Complex(-2, 0.5), Complex(0.1, 2), Complex(3, 0.01), Complex(-0.5, 0.2)})
            CHECK(std::abs(z.apply(p) - ref.apply(p)) < 1e-3);
    }
    SUBCASE("degenerate and invalid")
    {
        const HalfPlaneMap id = zipper_map({Complex(0.5, 0)});
        CHECK(id.apply(Complex(1, 2)) == Complex(1, 2));
        const HalfPlaneMap id2 = zipper_map({Complex(0.5, 0), Complex(0.5, 0)});
        CHECK(std::abs(id2.apply(Complex(1, 2)) - Complex(1, 2)) < 1e-15);
        CHECK_THROWS_AS(zipper_map({Complex(0, 0), Complex(0, 1), Complex(0, 0.5)}), sle::MalformedInput);
        CHECK_THROWS_AS(zipper_map({Complex(0, 0), Complex(1, 0)}), sle::MalformedInput);
        CHECK_THROWS_AS(zipper_map({}), sle::MalformedInput);
    }
}

TEST_CASE("json description")
{
    const HalfPlaneMap m = HalfPlaneMap::compose(HalfPlaneMap::shift(0.5), HalfPlaneMap::tilted_slit(0.25, 1.0));
    CHECK(to_json(m) ==
          R"({"kind":"composition","maps":[{"kind":"shift","delta":0.5},{"kind":"tilted_slit","alpha":0.25,"t":1.0,"orientation":"forward"}]})");
}

TEST_CASE("property: branch coherence along the real axis")
{
    const double x = 0.3, eps = 0.5;
    const HalfPlaneMap m = HalfPlaneMap::vertical_slit(x, eps);
    Complex prev = m.apply(Complex(-4.0, 0.0));
    for (int k = 1; k <= 800; ++k) {
        const double r = -4.0 + k * 0.01;
        if (std::abs(r - x) < 1e-9) continue;
        const Complex cur = m.apply(Complex(r, 0.0));
        CHECK(std::abs(cur.imag()) < 1e-14);
        // Jump only across the foot, where the slit's two sides separate.
        if (std::abs(r - 0.01 - x) > 0.015 && std::abs(r - x) > 0.015) CHECK(std::abs(cur - prev) < 0.2);
        prev = cur;
    }
    // Approaching from above the real axis agrees with the boundary values.
    for (double r : {-1.0, 0.0, 1.0, 2.5})
        CHECK(std::abs(m.apply(Complex(r, 1e-12)) - m.apply(Complex(r, 0.0))) < 1e-6);
}

TEST_CASE("property: normalization at infinity")
{
    for (const HalfPlaneMap& m : {HalfPlaneMap::vertical_slit(1.0, 0.3), HalfPlaneMap::tilted_slit(0.6, 2.0),
                                  HalfPlaneMap::loewner_step(-0.4, 0.1)}) {
        const Complex z(0.0, 1e5);
        CHECK(std::abs(m.apply(z) / z - 1.0) < 1e-4);
    }
}

TEST_CASE("property: inverse consistency")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> re(-3, 3), im(0.01, 3);
    const HalfPlaneMap v = HalfPlaneMap::vertical_slit(0.2, 0.6);
    const HalfPlaneMap t = HalfPlaneMap::tilted_slit(0.35, 1.1);
    for (int k = 0; k < 100; ++k) {
        const Complex z(re(rng), im(rng));
        CHECK(std::abs(v.inverse().apply(v.apply(z)) - z) < 1e-10);
        CHECK(std::abs(v.apply(v.inverse().apply(z)) - z) < 1e-10);
        CHECK(std::abs(t.inverse().apply(t.apply(z)) - z) < 1e-10);
    }
}

TEST_CASE("property: schwarzian chain rule")
{
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> re(-2, 2), im(0.2, 2);
    const auto maps = sample_maps();
    for (int k = 0; k < 60; ++k) {
        const HalfPlaneMap& f = maps[rng() % maps.size()];
        const HalfPlaneMap& g = maps[rng() % maps.size()];
        const Complex z(re(rng), im(rng));
        const Complex direct = schwarzian(HalfPlaneMap::compose(f, g), z);
        const Complex chained = schwarzian_by_chain(f, g, z);
        CHECK(std::abs(direct - chained) <= 1e-8 * std::max(1.0, std::abs(chained)));
    }
}

TEST_CASE("property: derivatives match finite differences")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> re(-2, 2), im(0.5, 2.5);
    for (const HalfPlaneMap& m : sample_maps()) {
        for (int k = 0; k < 10; ++k) {
            const Complex z(re(rng), im(rng));
            const Jet j = m.jet(z);
            const Jet fd1 = finite_difference_jet(m, z, 1e-3);
            const Jet fd3 = finite_difference_jet(m, z, 2e-3);
            CHECK(rel(j.d1, fd1.d1) < 1e-6);
            CHECK(rel(j.d2, fd1.d2) < 1e-6);
            CHECK(rel(j.d3, fd3.d3) < 1e-6);
        }
    }
}
