#include <doctest.h>

#include <cmath>

#include "sle/errors.hpp"
#include "sle/mc/experiments.hpp"

using namespace sle::mc;

namespace {

const double k83 = 8.0 / 3.0;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

TEST_CASE("avoidance examples")
{
    const EstimateResult det = estimate_avoidance(0.0, 1.0, kInvSqrt2, 200, 50, 1);
    CHECK(det.mean == 1.0);
    CHECK(det.std_error == 0.0);
    CHECK_FALSE(det.theory.has_value());

    const EstimateResult far = estimate_avoidance(k83, 50.0, 0.5, 400, 300, 2);
    REQUIRE(far.theory.has_value());
    CHECK(*far.theory > 0.999);
    CHECK(far.mean >= 0.99);

    const EstimateResult near = estimate_avoidance(k83, 1.0, kInvSqrt2, 1000, 400, 3);
    CHECK(*near.theory == doctest::Approx(std::pow(2.0, -5.0 / 16.0)).epsilon(1e-14));
    CHECK(std::abs(near.mean - *near.theory) < 4.0 * near.std_error);

    CHECK_THROWS_AS(estimate_avoidance(k83, -1.0, 0.5, 100, 10, 1), sle::MalformedInput);
    CHECK_THROWS_AS(estimate_avoidance(k83, 1.0, 0.0, 100, 10, 1), sle::MalformedInput);
    CHECK_THROWS_AS(estimate_avoidance(k83, 1.0, 0.5, 100, 1, 1), sle::MalformedInput);
}

TEST_CASE("hitting examples")
{
    const EstimateResult none = estimate_hitting(k83, {}, 100, 10, 1);
    CHECK(none.mean == 1.0);
    const EstimateResult one = estimate_hitting(k83, {{2.0, 0.5}}, 500, 400, 4);
    CHECK(*one.theory == doctest::Approx(1.0 - std::pow(2.0 / std::sqrt(4.5), 0.625)).epsilon(1e-14));
    CHECK(std::abs(one.mean - *one.theory) < 0.03);
    const EstimateResult two = estimate_hitting(k83, {{1.0, 0.7}, {2.0, 0.7}}, 300, 200, 5);
    CHECK_FALSE(two.theory.has_value());
    CHECK(two.mean <= estimate_hitting(k83, {{2.0, 0.7}}, 300, 200, 5).mean);
    CHECK_THROWS_AS(estimate_hitting(k83, {{1.0, 0.5}, {1.0, 0.2}}, 100, 10, 1), sle::MalformedInput);
}

TEST_CASE("property: determinism across thread counts")
{
    RunOptions one, three;
    three.threads = 3;
    const EstimateResult a = estimate_avoidance(k83, 1.0, 0.5, 300, 60, 17, one);
    const EstimateResult b = estimate_avoidance(k83, 1.0, 0.5, 300, 60, 17, three);
    CHECK(to_json(a) == to_json(b));
    const MartingaleReport m1 = martingale_check_Yt(k83, 1.0, 0.5, {0.05, 0.1}, 100, 20, 3, one);
    const MartingaleReport m3 = martingale_check_Yt(k83, 1.0, 0.5, {0.05, 0.1}, 100, 20, 3, three);
    for (std::size_t i = 0; i < 2; ++i) CHECK(to_json(m1.estimates[i]) == to_json(m3.estimates[i]));
}

TEST_CASE("property: standard error scales like 1/sqrt(n)")
{
    const EstimateResult small = estimate_avoidance(k83, 1.0, kInvSqrt2, 300, 400, 8);
    const EstimateResult large = estimate_avoidance(k83, 1.0, kInvSqrt2, 300, 1600, 8);
    CHECK(small.std_error / large.std_error == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("property: avoidance and hitting are complementary")
{
    const EstimateResult a = estimate_avoidance(k83, 1.5, 0.5, 300, 300, 9);
    const EstimateResult h = estimate_hitting(k83, {{1.5, 0.5}}, 300, 300, 9);
    CHECK(std::abs(a.mean + h.mean - 1.0) <= 2.0 * std::hypot(a.std_error, h.std_error) + 1e-12);
}

TEST_CASE("martingale check")
{
    const MartingaleReport rep = martingale_check_Yt(k83, 1.0, kInvSqrt2, {0.0, 0.1, 0.25}, 250, 300, 10);
    CHECK(rep.initial_value == doctest::Approx(std::pow(2.0, -5.0 / 16.0)).epsilon(1e-14));
    CHECK(rep.estimates[0].mean == rep.initial_value);
    CHECK(rep.estimates[0].std_error == 0.0);
    for (std::size_t i = 1; i < rep.estimates.size(); ++i)
        CHECK(std::abs(rep.estimates[i].mean - rep.initial_value) < 3.0 * rep.estimates[i].std_error);
    CHECK(rep.max_value <= 1.0 + 1e-6);
    CHECK(rep.discarded * 100 < rep.n_replicas);
    CHECK_THROWS_AS(martingale_check_Yt(5.0, 1.0, 0.5, {0.1}, 10, 10, 1), sle::MalformedInput);
    CHECK_THROWS_AS(martingale_check_Yt(k83, 1.0, 0.5, {0.2, 0.1}, 10, 10, 1), sle::MalformedInput);
}

TEST_CASE("martingale with the Schwarzian term at kappa 2")
{
    const MartingaleReport rep = martingale_check_Yt(2.0, 1.0, kInvSqrt2, {0.1, 0.25}, 200, 200, 12);
    CHECK(rep.initial_value == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-14));
    for (const EstimateResult& e : rep.estimates) CHECK(std::abs(e.mean - rep.initial_value) < 3.0 * e.std_error);
    CHECK(rep.discarded * 50 < rep.n_replicas);
}

TEST_CASE("drift check examples")
{
    for (auto [x, eps] : {std::pair{1.0, kInvSqrt2}, std::pair{2.0, 0.5}}) {
        const DriftResult a = drift_check_t0(x, eps, 1e-4);
        CHECK(std::abs(a.lhs - a.rhs) < 0.05 * std::abs(a.rhs));
        // First-order scheme: the error halves with dt.
        const DriftResult b = drift_check_t0(x, eps, 5e-5);
        const double ratio = std::abs(b.lhs - b.rhs) / std::abs(a.lhs - a.rhs);
        CHECK(ratio == doctest::Approx(0.5).epsilon(0.2));
    }
    const DriftResult closed = drift_check_t0(1.0, kInvSqrt2, 1e-4);
    CHECK(closed.rhs == doctest::Approx(1.5 / std::pow(2.0, 1.5) * 2.0).epsilon(1e-12));
}

TEST_CASE("dimension estimate")
{
    std::vector<std::complex<double>> line;
    for (int i = 0; i <= 100; ++i) line.emplace_back(0.0, i / 100.0);
    CHECK(box_count_slope(line) == doctest::Approx(1.0).epsilon(0.02));
    const EstimateResult smooth = estimate_dimension(0.1, 800, 3, 1);
    CHECK(*smooth.theory == doctest::Approx(1.0125));
    CHECK(smooth.mean > 0.9);
    CHECK(smooth.mean < 1.2);
    CHECK_THROWS_AS(estimate_dimension(8.0, 100, 3, 1), sle::MalformedInput);
}

TEST_CASE("json and digest")
{
    EstimateResult r;
    r.mean = 0.5;
    r.std_error = 0.25;
    r.n_samples = 4;
    r.seed = 7;
    r.config_digest = digest("abc");
    CHECK(r.config_digest == "e71fa2190541574b");
    CHECK(to_json(r) ==
          R"({"mean":0.5,"stderr":0.25,"theory":null,"n":4,"seed":7,"config_digest":"e71fa2190541574b","horizon":0.0,"discarded":0})");
}
