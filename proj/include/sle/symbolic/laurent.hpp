#ifndef SLE_SYMBOLIC_LAURENT_HPP
#define SLE_SYMBOLIC_LAURENT_HPP

#include <map>
#include <vector>

#include "sle/symbolic/multirat.hpp"

namespace sle::symbolic {

/// Finitely supported Laurent polynomial in one variable z.
class LaurentPoly {
public:
    LaurentPoly() = default;
    /// c * z^k
    static LaurentPoly monomial(int k, const Rational& c);

    const std::map<int, Rational>& coefficients() const { return coeffs_; }
    Rational coefficient(int k) const;
    bool is_zero() const { return coeffs_.empty(); }
    void set(int k, const Rational& c);

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a += -b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;
    LaurentPoly scaled(const Rational& c) const;

private:
    std::map<int, Rational> coeffs_;
};

LaurentPoly derivative(const LaurentPoly& p);

/// Coefficient of z^-1.
Rational residue(const LaurentPoly& p);

/// Coefficients of var^k, k_min <= k <= k_max, in the expansion of f about
/// var = 0 (valid for |var| below the nearest other pole). Each coefficient
/// is a rational function of the remaining variables, which keep their order
/// with var removed. Throws ExpansionError if the denominator vanishes
/// identically at var = 0 after removing its var-power.
std::vector<MultiRat> laurent_coefficients(const MultiRat& f, std::size_t var, int k_min, int k_max);

/// Single coefficient shorthand.
MultiRat laurent_coefficient(const MultiRat& f, std::size_t var, int k);

/// Drops a variable that f does not depend on.
MultiRat remove_variable(const MultiRat& f, std::size_t var);

}  // namespace sle::symbolic

#endif
