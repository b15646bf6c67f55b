#ifndef SLE_SYMBOLIC_MULTIRAT_HPP
#define SLE_SYMBOLIC_MULTIRAT_HPP

#include <optional>
#include <span>

#include "sle/symbolic/polynomial.hpp"

namespace sle::symbolic {

/// Rational function c * N / D in variables x_1..x_n (indexed from 0).
///
/// Canonical form: N and D are primitive integer polynomials with positive
/// grlex-leading coefficients and gcd(N, D) = 1, and the rational scalar c
/// carries sign and content. Zero is c = 0, N = D = 1. Because the form is
/// unique, equality is structural.
class MultiRat {
public:
    MultiRat() : MultiRat(0) {}
    explicit MultiRat(std::size_t nvars);

    static MultiRat constant(std::size_t nvars, const Rational& c);
    static MultiRat variable(std::size_t nvars, std::size_t var);
    /// scale * num / den brought to canonical form; throws MalformedInput if
    /// den is zero.
    static MultiRat from_polys(const Poly& num, const Poly& den, const Rational& scale = 1);

    std::size_t nvars() const { return num_.nvars(); }
    bool is_zero() const { return scalar_ == 0; }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    const Rational& scalar() const { return scalar_; }
    const Poly& numerator() const { return num_; }
    const Poly& denominator() const { return den_; }

    MultiRat operator-() const;
    MultiRat& operator+=(const MultiRat& o);
    MultiRat& operator-=(const MultiRat& o);
    MultiRat& operator*=(const MultiRat& o);
    MultiRat& operator/=(const MultiRat& o);
    friend MultiRat operator+(MultiRat a, const MultiRat& b) { return a += b; }
    friend MultiRat operator-(MultiRat a, const MultiRat& b) { return a -= b; }
    friend MultiRat operator*(MultiRat a, const MultiRat& b) { return a *= b; }
    friend MultiRat operator/(MultiRat a, const MultiRat& b) { return a /= b; }
    friend bool operator==(const MultiRat& a, const MultiRat& b);

    MultiRat scaled(const Rational& c) const;
    MultiRat pow(int e) const;

    /// Exact value; throws PoleError if the denominator vanishes.
    Rational evaluate(std::span<const Rational> point) const;
    /// Moves variable i to slot map[i].
    MultiRat remapped(std::size_t new_nvars, std::span<const std::size_t> map) const;
    /// Adds a fresh variable at index pos, shifting later ones up.
    MultiRat with_variable_inserted(std::size_t pos) const;
    /// f(s x_1, ..., s x_n).
    MultiRat with_scaled_arguments(const Rational& s) const;
    /// Degree d with f(s x) = s^d f(x), if f is homogeneous.
    std::optional<int> homogeneous_degree() const;

private:
    // Requires gcd(n, d) = 1; moves content and sign into the scalar.
    static MultiRat assemble(Rational scale, Poly n, Poly d);

    Rational scalar_;
    Poly num_;
    Poly den_;
};

/// Canonical form of scale * num / den.
inline MultiRat normalize(const Poly& num, const Poly& den, const Rational& scale = 1)
{
    return MultiRat::from_polys(num, den, scale);
}

/// Values are always stored canonically, so this is the identity; it exists
/// so idempotence can be stated as a test.
inline MultiRat normalize(const MultiRat& f)
{
    return MultiRat::from_polys(f.numerator(), f.denominator(), f.scalar());
}

/// d f / d x_var; throws std::out_of_range for a bad index.
MultiRat partial_derivative(const MultiRat& f, std::size_t var);

}  // namespace sle::symbolic

#endif
