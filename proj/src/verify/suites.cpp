#include "sle/verify/suites.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "sle/errors.hpp"
#include "sle/symbolic/expression.hpp"
#include "sle/symbolic/laurent.hpp"
#include "sle/verify/random.hpp"
#include "sle/virasoro/verma.hpp"
#include "sle/ward/correlators.hpp"

namespace sle::verify {

using symbolic::LaurentPoly;
using symbolic::to_string;
using virasoro::VermaState;
using ward::BVector;

namespace {

Rational R(long p, long q = 1)
{
    Rational r(p, q);
    r.canonicalize();
    return r;
}

// Counts cases and keeps the first failure.
class Tally {
public:
    explicit Tally(std::string name) { r_.name = std::move(name); }

    void expect(bool ok, const std::function<std::string()>& what)
    {
        ++r_.cases;
        if (!ok && r_.ok) {
            r_.ok = false;
            r_.detail = what();
        }
    }
    void expect_zero(const MultiRat& residual, const std::string& where)
    {
        expect(residual.is_zero(), [&] { return where + ": " + to_string(residual); });
    }
    void expect_equal(const MultiRat& lhs, const MultiRat& rhs, const std::string& where)
    {
        expect_zero(lhs - rhs, where);
    }
    CheckResult result() const { return r_; }

private:
    CheckResult r_;
};

std::string state_text(const VermaState& s)
{
    if (s.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [p, v] : s.coefficients()) {
        if (!first) out << " + ";
        first = false;
        out << "(" << to_string(v) << ")";
        for (int k : p) out << "L_{-" << k << "}";
        out << "|h>";
    }
    return out.str();
}

std::string tag(const std::string& what, long a)
{
    return what + " " + std::to_string(a);
}

}  // namespace

bool SuiteReport::ok() const
{
    return first_failure() == nullptr;
}

const CheckResult* SuiteReport::first_failure() const
{
    for (const CheckResult& c : checks)
        if (!c.ok) return &c;
    return nullptr;
}

// symbolic

CheckResult check_normalize_idempotent()
{
    Tally t("normalize is idempotent");
    std::mt19937_64 rng(21);
    for (int i = 0; i < 60; ++i) {
        const MultiRat f = random_multirat(rng, 1 + static_cast<std::size_t>(i % 3));
        t.expect_equal(normalize(normalize(f)), normalize(f), "normalize(normalize(f)) - normalize(f)");
    }
    return t.result();
}

CheckResult check_derivation_laws()
{
    Tally t("derivation laws");
    std::mt19937_64 rng(22);
    for (int i = 0; i < 40; ++i) {
        const std::size_t n = 1 + static_cast<std::size_t>(i % 3);
        const MultiRat f = random_multirat(rng, n), g = random_multirat(rng, n);
        for (std::size_t j = 0; j < n; ++j) {
            using symbolic::partial_derivative;
            t.expect_equal(partial_derivative(f * g, j),
                           partial_derivative(f, j) * g + f * partial_derivative(g, j), "product rule");
            t.expect_equal(partial_derivative(f + g, j), partial_derivative(f, j) + partial_derivative(g, j),
                           "sum rule");
        }
    }
    return t.result();
}

CheckResult check_laurent_consistency()
{
    Tally t("laurent consistency");
    std::mt19937_64 rng(24);
    const MultiRat x = MultiRat::variable(3, 0);
    const MultiRat poles = symbolic::parse_multirat("1/((x2-x1)^2*x1^2)", 3);
    const MultiRat tail = symbolic::parse_multirat("x1/(x3-x1)", 3);
    for (int i = 0; i < 15; ++i) {
        MultiRat f = random_multirat(rng, 3);
        if (f.denominator().coefficient_in(0, f.denominator().min_degree_in(0)).is_zero()) continue;
        f = f * poles + tail;
        const int kmin = -6, kmax = 3;
        const auto coeffs = symbolic::laurent_coefficients(f, 0, kmin, kmax);
        MultiRat partial(3);
        for (int k = kmin; k <= kmax; ++k)
            partial += coeffs[static_cast<std::size_t>(k - kmin)].with_variable_inserted(0) * x.pow(k);
        const auto rest = symbolic::laurent_coefficients(f - partial, 0, kmin, kmax);
        for (std::size_t k = 0; k < rest.size(); ++k)
            t.expect_zero(rest[k], tag("remainder coefficient of x1^", kmin + static_cast<long>(k)));
    }
    return t.result();
}

CheckResult check_residue_of_derivative()
{
    Tally t("residue of a derivative vanishes");
    std::mt19937_64 rng(25);
    std::uniform_int_distribution<int> k(-6, 6), c(-9, 9);
    for (int i = 0; i < 50; ++i) {
        LaurentPoly p;
        for (int j = 0; j < 5; ++j) p.set(k(rng), R(c(rng), 1 + (j % 3)));
        const Rational r = symbolic::residue(symbolic::derivative(p));
        t.expect(r == 0, [&] { return "Res p' = " + to_string(r); });
    }
    return t.result();
}

// ward

CheckResult check_highest_weight(std::size_t nmax)
{
    Tally t("highest-weight structure");
    for (const Rational& alpha : {R(5, 8), R(1), R(-3, 2)}) {
        const BVector b = ward::build_B(alpha, nmax + 1);
        for (std::size_t n = 0; n <= nmax; ++n) {
            const std::string at = "alpha " + to_string(alpha) + ", n " + std::to_string(n) + ", N ";
            for (int N = 1; N <= 3; ++N) t.expect_zero(ward::l_extract(N, b, n), at + std::to_string(N));
            t.expect_equal(ward::l_extract(0, b, n), b[n].scaled(alpha), at + "0");
            for (int N = -1; N >= -3; --N)
                t.expect_equal(ward::l_extract(N, b, n), ward::script_L(N, b[n]), at + std::to_string(N));
        }
    }
    return t.result();
}

CheckResult check_witt_commutation()
{
    Tally t("witt commutation");
    std::mt19937_64 rng(31);
    for (std::size_t arity = 1; arity <= 3; ++arity) {
        const MultiRat f = random_multirat(rng, arity);
        for (int N = -3; N <= 3; ++N) {
            for (int M = -3; M <= 3; ++M) {
                const std::string at = "N " + std::to_string(N) + ", M " + std::to_string(M);
                using ward::script_L;
                using ward::witt_L;
                t.expect_equal(script_L(N, script_L(M, f)) - script_L(M, script_L(N, f)),
                               script_L(N + M, f).scaled(N - M), "script L, " + at);
                t.expect_equal(witt_L(N, witt_L(M, f)) - witt_L(M, witt_L(N, f)), witt_L(N + M, f).scaled(N - M),
                               "witt L, " + at);
            }
        }
    }
    return t.result();
}

CheckResult check_scaling_covariance(std::size_t nmax)
{
    Tally t("scaling covariance");
    const Rational s = R(3, 2);
    for (const Rational& alpha : {R(5, 8), R(1)}) {
        const BVector b = ward::build_B(alpha, nmax);
        Rational factor = 1;
        for (std::size_t n = 0; n <= nmax; ++n) {
            t.expect_equal(b[n].with_scaled_arguments(s), b[n].scaled(factor), "n " + std::to_string(n));
            factor *= R(4, 9);
        }
    }
    return t.result();
}

CheckResult check_permutation_symmetry(std::size_t nmax)
{
    // Adjacent transpositions generate the symmetric group.
    Tally t("permutation symmetry");
    for (const Rational& alpha : {R(5, 8), R(1)}) {
        const BVector b = ward::build_B(alpha, nmax);
        for (std::size_t n = 2; n <= nmax; ++n) {
            for (std::size_t i = 0; i + 1 < n; ++i) {
                std::vector<std::size_t> swap(n);
                for (std::size_t k = 0; k < n; ++k) swap[k] = k;
                std::swap(swap[i], swap[i + 1]);
                t.expect_equal(b[n].remapped(n, swap), b[n], "n " + std::to_string(n) + ", swap " + std::to_string(i));
            }
        }
    }
    return t.result();
}

CheckResult check_oracle(std::size_t nmax, std::size_t points)
{
    Tally t("permutation oracle");
    const BVector b = ward::build_B(1, nmax);
    std::mt19937_64 rng(51);
    for (std::size_t n = 1; n <= nmax; ++n) {
        std::size_t done = 0;
        while (done < points) {
            std::vector<Rational> p = random_point(rng, n);
            std::vector<Rational> sorted = p;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
                std::find(p.begin(), p.end(), Rational(0)) != p.end())
                continue;
            const Rational lhs = b[n].evaluate(p), rhs = ward::permutation_oracle_alpha1(p);
            t.expect(lhs == rhs, [&] {
                return "n " + std::to_string(n) + ": B_n - oracle = " + to_string(Rational(lhs - rhs));
            });
            ++done;
        }
    }
    return t.result();
}

CheckResult check_semigroup(std::size_t nmax)
{
    Tally t("semigroup");
    const BVector one = ward::build_B(1, nmax);
    const BVector two = ward::build_B(2, nmax);
    for (std::size_t n = 0; n <= nmax; ++n)
        t.expect_equal(ward::semigroup_compose(one, one, n), two[n], "n " + std::to_string(n));
    return t.result();
}

CheckResult check_bubble_commutators(std::size_t nmax)
{
    // (l_K U - U l_K) B on components n <= nmax, with l_K by Laurent
    // extraction: identity for K = 2, 2U for K = 0, zero for K = 1, 3.
    Tally t("bubble commutators");
    for (const Rational& alpha : {R(5, 8), R(1)}) {
        const BVector b = ward::build_B(alpha, nmax + 1);
        const ward::Sequence ub = ward::U_sequence(b.components);
        for (int K = 0; K <= 3; ++K) {
            const ward::Sequence lu = ward::l_apply(K, ub);
            const ward::Sequence ul = ward::U_sequence(ward::l_apply(K, b.components));
            for (std::size_t n = 0; n <= nmax; ++n) {
                MultiRat expect(n);
                if (K == 2) expect = b[n];
                if (K == 0) expect = ub[n].scaled(2);
                t.expect_equal(lu[n] - ul[n], expect,
                               "alpha " + to_string(alpha) + ", K " + std::to_string(K) + ", n " + std::to_string(n));
            }
        }
    }
    return t.result();
}

CheckResult check_fw9(std::size_t nmax)
{
    Tally t("bubble identity");
    for (const Rational& kappa : {R(2), R(8, 3), R(3)}) {
        const Rational h = (6 - kappa) / (2 * kappa);
        const Rational lambda = (8 - 3 * kappa) * h;
        const BVector b = ward::build_B(h, nmax + 2);
        for (std::size_t n = 0; n <= nmax; ++n) {
            const std::string at = "kappa " + to_string(kappa) + ", n " + std::to_string(n);
            t.expect_zero(ward::fw9_residual(b, kappa, lambda, n), at);
            t.expect_zero(ward::fw9_residual_laurent(b, kappa, lambda, n), at + " (Laurent form)");
        }
    }
    return t.result();
}

CheckResult check_degeneracy_exact()
{
    Tally t("degeneracy at (8/3, 5/8)");
    const BVector b = ward::build_B(R(5, 8), 3);
    for (std::size_t n = 1; n <= 3; ++n)
        t.expect_zero(ward::degeneracy_residual(b, R(8, 3), n), "n " + std::to_string(n));
    const MultiRat off = ward::degeneracy_residual(b, 2, 1);
    t.expect(!off.is_zero(), [] { return std::string("kappa 2, alpha 5/8, n 1: residual vanishes"); });
    return t.result();
}

std::vector<std::pair<Rational, Rational>> degeneracy_zeros(std::size_t n)
{
    std::vector<std::pair<Rational, Rational>> zeros;
    for (int a = 1; a <= 16; ++a) {
        const Rational alpha = R(a, 8);
        const BVector b = ward::build_B(alpha, n);
        for (int k = 1; k <= 36; ++k) {
            const Rational kappa = R(k, 6);
            if (ward::degeneracy_residual(b, kappa, n).is_zero()) zeros.emplace_back(kappa, alpha);
        }
    }
    return zeros;
}

CheckResult check_degeneracy_uniqueness(std::size_t n)
{
    Tally t("degeneracy uniqueness at n " + std::to_string(n));
    const auto zeros = degeneracy_zeros(n);
    const bool ok = zeros.size() == 1 && zeros[0].first == R(8, 3) && zeros[0].second == R(5, 8);
    t.expect(ok, [&] {
        std::string s = std::to_string(zeros.size()) + " zeros:";
        for (const auto& [k, a] : zeros) s += " (" + to_string(k) + ", " + to_string(a) + ")";
        return s;
    });
    return t.result();
}

// virasoro

CheckResult check_commutator_law()
{
    Tally t("virasoro commutator law");
    std::mt19937_64 rng(41);
    const Rational c = R(-22, 5), h = R(3, 7);
    for (int trial = 0; trial < 3; ++trial) {
        const VermaState s = random_state(rng, c, h, 3);
        for (int n = -3; n <= 3; ++n) {
            for (int m = -3; m <= 3; ++m) {
                using virasoro::apply_L;
                const VermaState lhs = apply_L(n, apply_L(m, s)) - apply_L(m, apply_L(n, s));
                VermaState rhs = apply_L(n + m, s).scaled(n - m);
                if (n == -m) rhs += s.scaled(R(n * n * n - n, 12) * c);
                t.expect(lhs == rhs, [&] {
                    return "n " + std::to_string(n) + ", m " + std::to_string(m) + ": " + state_text(lhs - rhs);
                });
            }
        }
    }
    return t.result();
}

CheckResult check_jacobi()
{
    Tally t("jacobi identity");
    std::mt19937_64 rng(42);
    const Rational c = R(1, 2), h = R(-1, 3);
    const VermaState s = random_state(rng, c, h, 4);
    using virasoro::apply_L;
    auto bracket = [](int a, int b, const VermaState& x) { return apply_L(a, apply_L(b, x)) - apply_L(b, apply_L(a, x)); };
    auto nested = [&](int p, int q, int r) { return apply_L(p, bracket(q, r, s)) - bracket(q, r, apply_L(p, s)); };
    for (int a = -3; a <= 3; ++a)
        for (int b = -3; b <= 3; ++b)
            for (int cc = -3; cc <= 3; ++cc) {
                const VermaState sum = nested(a, b, cc) + nested(b, cc, a) + nested(cc, a, b);
                t.expect(sum.is_zero(), [&] {
                    return "(" + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(cc) +
                           "): " + state_text(sum);
                });
            }
    return t.result();
}

CheckResult check_null_vectors()
{
    // The coefficients vanish iff (c, h) are the kappa parameters; they also
    // match the closed forms, and L_3, L_4 annihilate chi.
    Tally t("null vectors");
    for (const Rational& kappa : {R(2), R(8, 3), R(3), R(4), R(6)}) {
        const virasoro::VirParams p = virasoro::params_of_kappa(kappa);
        const std::string at = "kappa " + to_string(kappa);
        for (const Rational& dh : {R(0), R(1), R(-1, 2)}) {
            for (const Rational& dc : {R(0), R(1), R(-7, 3)}) {
                const Rational h = p.h + dh, c = p.c + dc;
                const auto co = virasoro::null_vector_coefficients(kappa, h, c);
                t.expect(co.l1 == kappa + 2 * kappa * h - 6 && co.l2 == 3 * kappa * h - 8 * h - c,
                         [&] { return at + ": coefficients differ from the closed forms"; });
                const bool vanish = co.l1 == 0 && co.l2 == 0;
                t.expect(vanish == (dh == 0 && dc == 0), [&] {
                    return at + ", h " + to_string(h) + ", c " + to_string(c) + ": (" + to_string(co.l1) + ", " +
                           to_string(co.l2) + ")";
                });
            }
        }
        const VermaState chi = virasoro::null_vector(kappa, p.c, p.h);
        for (int n = 1; n <= 4; ++n) {
            const VermaState r = virasoro::apply_L(n, chi);
            t.expect(r.is_zero(), [&] { return at + ", L_" + std::to_string(n) + " chi = " + state_text(r); });
        }
    }
    return t.result();
}

CheckResult check_l2_lminus2()
{
    Tally t("[L_2, L_-2]|h>");
    for (const Rational& c : {R(0), R(-2), R(1, 2), R(25)}) {
        for (const Rational& h : {R(5, 8), R(1), R(-1, 3)}) {
            const VermaState v = VermaState::highest_weight(c, h);
            const VermaState r = virasoro::apply_L(2, virasoro::apply_L(-2, v)) - virasoro::apply_L(-2, virasoro::apply_L(2, v));
            const VermaState expect = v.scaled(4 * h + c / 2);
            t.expect(r == expect, [&] { return "c " + to_string(c) + ", h " + to_string(h) + ": " + state_text(r - expect); });
        }
    }
    return t.result();
}

CheckResult check_cocycle()
{
    Tally t("witt cocycle");
    auto field = [](int n) { return LaurentPoly::monomial(n + 1, -1); };
    for (int n = -4; n <= 4; ++n) {
        for (int m = -4; m <= 4; ++m) {
            const Rational v = virasoro::witt_cocycle(field(n), field(m));
            const Rational expect = n == -m ? -R(n * n * n - n, 6) : R(0);
            const std::string at = "n " + std::to_string(n) + ", m " + std::to_string(m);
            t.expect(v == expect, [&] { return at + ": " + to_string(v); });
            t.expect(v == -virasoro::witt_cocycle(field(m), field(n)), [&] { return at + ": not antisymmetric"; });
        }
    }
    const LaurentPoly f = field(2).scaled(R(3, 4)) + field(-1);
    const LaurentPoly g = field(-2) + field(1).scaled(5);
    const LaurentPoly k = field(3).scaled(-2);
    using virasoro::witt_cocycle;
    t.expect(witt_cocycle(f + k, g) == witt_cocycle(f, g) + witt_cocycle(k, g), [] { return std::string("additivity"); });
    t.expect(witt_cocycle(f.scaled(R(7, 3)), g) == R(7, 3) * witt_cocycle(f, g), [] { return std::string("homogeneity"); });
    return t.result();
}

CheckResult check_cross_module()
{
    Tally t("degeneracy zero matches the kappa parameters");
    const virasoro::VirParams p = virasoro::params_of_kappa(R(8, 3));
    const auto zeros = degeneracy_zeros(2);
    t.expect(zeros.size() == 1 && zeros[0].first == p.kappa && zeros[0].second == p.h,
             [&] { return std::to_string(zeros.size()) + " zeros at n 2"; });
    return t.result();
}

std::vector<std::string> suite_names()
{
    return {"symbolic", "ward", "virasoro", "all"};
}

SuiteReport run_suite(std::string_view name)
{
    using Check = CheckResult (*)();
    static const std::vector<Check> symbolic_checks = {check_normalize_idempotent, check_derivation_laws,
                                                       check_laurent_consistency, check_residue_of_derivative};
    static const std::vector<Check> ward_checks = {
        [] { return check_highest_weight(); },     check_witt_commutation,
        [] { return check_scaling_covariance(); }, [] { return check_permutation_symmetry(); },
        [] { return check_oracle(); },             [] { return check_semigroup(); },
        [] { return check_bubble_commutators(); }, [] { return check_fw9(); },
        check_degeneracy_exact,                    [] { return check_degeneracy_uniqueness(2); }};
    static const std::vector<Check> virasoro_checks = {check_commutator_law, check_jacobi, check_null_vectors,
                                                       check_l2_lminus2,     check_cocycle, check_cross_module};
    std::vector<Check> chosen;
    if (name == "symbolic" || name == "all") chosen.insert(chosen.end(), symbolic_checks.begin(), symbolic_checks.end());
    if (name == "ward" || name == "all") chosen.insert(chosen.end(), ward_checks.begin(), ward_checks.end());
    if (name == "virasoro" || name == "all") chosen.insert(chosen.end(), virasoro_checks.begin(), virasoro_checks.end());
    if (chosen.empty()) throw MalformedInput("unknown suite: " + std::string(name));
    SuiteReport report;
    report.suite = std::string(name);
    for (Check c : chosen) report.checks.push_back(c());
    return report;
}

}  // namespace sle::verify
