#include <doctest.h>

#include <cmath>

#include "sle/errors.hpp"
#include "sle/loewner/loewner.hpp"
#include "sle/loewner/rng.hpp"

using namespace sle::loewner;
using sle::conformal::HalfPlaneMap;

namespace {

bool segments_cross(Complex a, Complex b, Complex c, Complex d)
{
    auto orient = [](Complex p, Complex q, Complex r) {
        const double v = (q.real() - p.real()) * (r.imag() - p.imag()) - (q.imag() - p.imag()) * (r.real() - p.real());
        return (v > 0) - (v < 0);
    };
    return orient(a, b, c) * orient(a, b, d) < 0 && orient(c, d, a) * orient(c, d, b) < 0;
}

bool is_simple(const std::vector<Complex>& pts, std::size_t gap = 2)
{
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        for (std::size_t j = i + gap; j + 1 < pts.size(); ++j)
            if (segments_cross(pts[i], pts[i + 1], pts[j], pts[j + 1])) return false;
    return true;
}

}  // namespace

TEST_CASE("sample_driving")
{
    const DrivingSample zero = sample_driving(0.0, 2.0, 50, 9);
    for (double v : zero.values) CHECK(v == 0.0);
    CHECK(zero.times.back() == 2.0);

    const DrivingSample a = sample_driving(8.0 / 3.0, 1.0, 200, 42);
    const DrivingSample b = sample_driving(8.0 / 3.0, 1.0, 200, 42);
    CHECK(a.values == b.values);
    CHECK(sample_driving(8.0 / 3.0, 1.0, 200, 43).values != a.values);
    // Doubling the horizon at fixed dt keeps the prefix.
    const DrivingSample longer = sample_driving(8.0 / 3.0, 2.0, 400, 42);
    for (std::size_t k = 0; k <= 200; ++k) CHECK(longer.values[k] == a.values[k]);

    CHECK_THROWS_AS(sample_driving(1.0, 1.0, 0, 1), sle::MalformedInput);
    CHECK_THROWS_AS(sample_driving(1.0, -1.0, 10, 1), sle::MalformedInput);
}

TEST_CASE("property: driving variance")
{
    const double kappa = 8.0 / 3.0, T = 0.5;
    const int n = 10000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = sample_driving(kappa, T, 4, replica_seed(7, i)).values.back() / std::sqrt(T);
        sum += v;
        sum2 += v * v;
    }
    const double var = (sum2 - sum * sum / n) / (n - 1);
    CHECK(std::abs(var - kappa) < 3.0 * kappa * std::sqrt(2.0 / n));
}

TEST_CASE("evolve_point examples")
{
    const DrivingSample d2 = sample_driving(0.0, 2.0, 1000, 1);
    const PointEvolution one = evolve_point(1.0, d2);
    CHECK_FALSE(one.escape_time.has_value());
    CHECK(std::abs(one.final - 3.0) < 1e-12);
    const PointEvolution minus = evolve_point(-1.0, d2);
    CHECK(std::abs(minus.final + 3.0) < 1e-12);

    const DrivingSample d1 = sample_driving(0.0, 1.0, 1000, 1);
    const PointEvolution tip = evolve_point(Complex(0, 2), d1);
    REQUIRE(tip.escape_time.has_value());
    CHECK(*tip.escape_time == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(evolve_point(Complex(0, 2.01), d1).escape_time.has_value());
    CHECK_THROWS_AS(evolve_point(Complex(0, -1), d1), sle::DomainError);
}

TEST_CASE("deterministic trace")
{
    const DrivingSample d = sample_driving(0.0, 1.0, 1000, 3);
    const TracePath path = trace_from_driving(d);
    CHECK(path.points.front() == Complex(0.0));
    CHECK(std::abs(path.points.back() - Complex(0, 2)) < 1e-9);
    for (std::size_t k = 0; k < path.points.size(); k += 100)
        CHECK(std::abs(path.points[k] - Complex(0, 2 * std::sqrt(d.times[k]))) < 1e-9);
}

TEST_CASE("property: capacity bookkeeping")
{
    const DrivingSample d = sample_driving(8.0 / 3.0, 0.5, 60, 5);
    for (std::size_t k : {1u, 10u, 37u, 60u}) {
        const double a1 = sle::conformal::hcap_from_expansion(forward_map(d, k));
        CHECK(std::abs(a1 - 2.0 * d.times[k]) <= 1e-6 * 2.0 * d.times[k]);
    }
}

TEST_CASE("property: forward and backward schemes agree")
{
    const DrivingSample d = sample_driving(8.0 / 3.0, 1.0, 400, 11);
    for (std::size_t k : {50u, 200u, 400u}) {
        const Complex g = trace_point(d, k);
        const PointEvolution e = evolve_point(g, d, k);
        CHECK(std::abs(e.final - d.values[k]) < 1e-6);
    }
}

TEST_CASE("property: reflection and scaling")
{
    const DrivingSample d = sample_driving(8.0 / 3.0, 1.0, 300, 21);
    const TracePath p = trace_from_driving(d);
    const TracePath q = trace_from_driving(negated(d));
    for (std::size_t k = 0; k < p.points.size(); ++k) {
        CHECK(q.points[k].real() == -p.points[k].real());
        CHECK(q.points[k].imag() == p.points[k].imag());
    }
    const double s = 4.0;
    const TracePath big = trace_from_driving(sample_driving(8.0 / 3.0, s, 300, 21));
    for (std::size_t k = 0; k < p.points.size(); k += 30)
        CHECK(std::abs(big.points[k] - std::sqrt(s) * p.points[k]) <= 1e-3 * std::max(1.0, std::abs(big.points[k])));
}

TEST_CASE("property: trace stays in H and is simple for kappa = 8/3")
{
    // Chords i and i + 2 can cross at the step scale, because each step slit
    // starts on the hull boundary next to the previous tip. Crossings between
    // chords further apart would mean a self-intersecting trace.
    for (int steps : {100, 300, 1000}) {
        int simple = 0, simple_beyond_step = 0;
        for (int seed = 0; seed < 100; ++seed) {
            const TracePath p = trace_from_driving(sample_driving(8.0 / 3.0, 1.0, steps, replica_seed(99, seed)));
            bool in_h = true;
            for (Complex z : p.points) in_h = in_h && z.imag() >= -1e-12;
            CHECK(in_h);
            simple += is_simple(p.points);
            simple_beyond_step += is_simple(p.points, 3);
        }
        CHECK(simple_beyond_step == 100);
        if (steps == 100) CHECK(simple >= 99);
        MESSAGE("steps " << steps << ": " << simple << "/100 simple at sampled resolution");
    }
}

TEST_CASE("property: bridge refinement self-convergence")
{
    // Mean tip displacement between successive refinements shrinks.
    double first = 0.0, last = 0.0;
    for (int seed = 0; seed < 20; ++seed) {
        DrivingSample d = sample_driving(8.0 / 3.0, 1.0, 64, replica_seed(5, seed));
        std::vector<Complex> tips{trace_point(d, d.steps())};
        for (int level = 0; level < 4; ++level) {
            d = refine_driving(d);
            tips.push_back(trace_point(d, d.steps()));
        }
        first += std::abs(tips[1] - tips[0]);
        last += std::abs(tips[4] - tips[3]);
    }
    CHECK(last < 0.75 * first);
    // Refinement keeps the coarse values.
    const DrivingSample d = sample_driving(2.0, 1.0, 10, 1);
    const DrivingSample r = refine_driving(d);
    CHECK(r.steps() == 20);
    for (std::size_t k = 0; k <= 10; ++k) CHECK(r.values[2 * k] == d.values[k]);
}

TEST_CASE("avoids_hull")
{
    const DrivingSample d = sample_driving(0.0, 5.0, 500, 1);
    CHECK(avoids_hull(d, 1.0, 1.0 / std::sqrt(2.0)));
    CHECK(avoids_hull(d, -0.2, 3.0));
    CHECK_THROWS_AS(avoids_hull(d, 0.0, 0.5), sle::MalformedInput);

    SlitTracker tracker(1.0, 0.5);
    CHECK(tracker.probe_images().size() == 10);
    CHECK(tracker.probe_images().front() == Complex(1.0, 0.0));
    // A driving path that runs into the slit foot region hits it.
    DrivingSample toward = sample_driving(0.0, 1.0, 1000, 1);
    for (std::size_t k = 0; k < toward.values.size(); ++k) toward.values[k] = 3.0 * toward.times[k];
    CHECK_FALSE(avoids_hull(toward, 0.5, 1.0 / std::sqrt(2.0)));
}
