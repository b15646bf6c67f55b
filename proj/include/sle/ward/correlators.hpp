#ifndef SLE_WARD_CORRELATORS_HPP
#define SLE_WARD_CORRELATORS_HPP

#include <span>
#include <vector>

#include "sle/symbolic/multirat.hpp"

namespace sle::ward {

using symbolic::MultiRat;
using symbolic::Rational;

/// A graded sequence (w_0, w_1, ...) with w_k of arity k.
using Sequence = std::vector<MultiRat>;

/// Restriction correlators B_0 = 1, B_1, ..., B_nmax for exponent alpha.
struct BVector {
    Rational alpha;
    Sequence components;

    std::size_t nmax() const { return components.size() - 1; }
    const MultiRat& operator[](std::size_t n) const { return components.at(n); }
};

struct BubbleWeight {
    std::size_t p;
    MultiRat value;
};

/// alpha / x1^2
MultiRat b1(const Rational& alpha);

/// One step of the Ward recursion. The new variable x is inserted first:
/// B_{n+1}(x, x1..xn) = (alpha/x^2) B_n
///     - sum_j [ (1/(x_j - x) + 1/x) d_j - 2/(x_j - x)^2 ] B_n.
MultiRat ward_extend(const MultiRat& bn, const Rational& alpha, std::size_t n);

BVector build_B(const Rational& alpha, std::size_t nmax);

/// sum_j [ -x_j^(1+N) d_j - 2(N+1) x_j^N ] f
MultiRat script_L(int N, const MultiRat& f);

/// -sum_j x_j^(1+N) d_j f
MultiRat witt_L(int N, const MultiRat& f);

/// Coefficient of x^(-N-2) in w_{n+1}(x, x1..xn).
MultiRat l_extract(int N, const Sequence& w, std::size_t n);
MultiRat l_extract(int N, const BVector& b, std::size_t n);
/// The whole sequence l_N(w), one component shorter than w.
Sequence l_apply(int N, const Sequence& w);

/// Sum over orderings s of prod_j (x_s(j) - x_s(j-1))^-2 with x_s(0) = 0,
/// evaluated exactly. This is B_n for alpha = 1. Throws PoleError for zero
/// or repeated points.
Rational permutation_oracle_alpha1(std::span<const Rational> points);

/// Sum over maps R: {1..n} -> {1,2} of B1_|R^-1(1)| * B2_|R^-1(2)|.
MultiRat semigroup_compose(const BVector& b1, const BVector& b2, std::size_t n);

/// Bubble weight T_p; T_0 = 0.
BubbleWeight bubble_T(std::size_t p);

/// (U w)_n = sum over subsets J of {1..n} of T_|J|(x_J) w_{n-|J|}(x_rest).
MultiRat U_apply(const Sequence& w, std::size_t n);
MultiRat U_apply(const BVector& b, std::size_t n);
/// Components 0..nmax of U w.
Sequence U_sequence(const Sequence& w);

/// (kappa/2) L_{-1}^2 B_n - 2 L_{-2} B_n with the script-L operators.
MultiRat degeneracy_residual(const BVector& b, const Rational& kappa, std::size_t n);

/// Component n of {(kappa/2) l_{-1}^2 - 2 l_{-2} + lambda U} B, realizing the
/// negative l's by script-L operators on B_n.
MultiRat fw9_residual(const BVector& b, const Rational& kappa, const Rational& lambda, std::size_t n);

/// Same quantity with l_{-1}, l_{-2} taken as Laurent coefficients; needs
/// components up to n+2.
MultiRat fw9_residual_laurent(const BVector& b, const Rational& kappa, const Rational& lambda, std::size_t n);

}  // namespace sle::ward

#endif
