#ifndef SLE_SYMBOLIC_POLYNOMIAL_HPP
#define SLE_SYMBOLIC_POLYNOMIAL_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace sle::symbolic {

using Integer = mpz_class;
using Rational = mpq_class;

/// Largest number of variables a polynomial may carry.
inline constexpr std::size_t kMaxVars = 8;

/// Exponent vector of a monomial x_1^e_1 ... x_n^e_n (unused slots are zero).
struct Monomial {
    std::array<std::uint16_t, kMaxVars> exp{};

    unsigned degree() const;
    bool divides(const Monomial& other) const;

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend Monomial operator*(const Monomial& a, const Monomial& b);
    // Caller guarantees b divides a.
    friend Monomial operator/(const Monomial& a, const Monomial& b);
};

/// Graded-lexicographic order with x_1 > x_2 > ... ; true if a precedes b.
bool grlex_greater(const Monomial& a, const Monomial& b);

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept;
};

/// Sparse multivariate polynomial with integer coefficients. Terms are kept
/// sorted in decreasing grlex order with no zero coefficients, so two equal
/// polynomials have identical term vectors.
class Poly {
public:
    struct Term {
        Monomial mono;
        Integer coeff;
    };

    explicit Poly(std::size_t nvars = 0) : nvars_(nvars) {}

    static Poly constant(std::size_t nvars, const Integer& c);
    static Poly variable(std::size_t nvars, std::size_t var);
    static Poly monomial(std::size_t nvars, const Monomial& m, const Integer& c);
    /// Sorts, merges equal monomials and drops zeros.
    static Poly from_terms(std::size_t nvars, std::vector<Term> terms);

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_one() const;
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    /// Leading term in grlex order; polynomial must be nonzero.
    const Term& leading() const { return terms_.front(); }

    unsigned degree_in(std::size_t var) const;
    unsigned min_degree_in(std::size_t var) const;
    unsigned total_degree() const;
    bool uses_variable(std::size_t var) const;
    bool is_homogeneous() const;

    Integer content() const;
    Integer max_norm() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b);

    Poly scaled(const Integer& c) const;
    /// Divides every coefficient by c; c must divide the content.
    Poly divided_by(const Integer& c) const;
    Poly times_monomial(const Monomial& m) const;
    Poly pow(unsigned e) const;

    /// Coefficient of var^k, as a polynomial with var absent.
    Poly coefficient_in(std::size_t var, unsigned k) const;
    /// Substitutes var := value.
    Poly evaluated_at(std::size_t var, const Integer& value) const;
    /// Moves variable i to slot map[i]; result has new_nvars variables.
    Poly remapped(std::size_t new_nvars, std::span<const std::size_t> map) const;

    Rational evaluate(std::span<const Rational> point) const;

private:
    std::size_t nvars_;
    std::vector<Term> terms_;
};

Poly derivative(const Poly& p, std::size_t var);

/// Exact quotient a / b, or nullopt when b does not divide a.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

/// Primitive part with positive leading coefficient (zero stays zero).
Poly primitive_normalized(const Poly& p);

/// Greatest common divisor over Q[x], returned primitive with positive
/// leading coefficient. gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

}  // namespace sle::symbolic

#endif
