#ifndef SLE_VIRASORO_VERMA_HPP
#define SLE_VIRASORO_VERMA_HPP

#include <map>
#include <utility>
#include <vector>

#include "sle/symbolic/laurent.hpp"

namespace sle::virasoro {

using symbolic::LaurentPoly;
using symbolic::Rational;

/// Ordered lowering monomial L_{-k1} L_{-k2} ... |h> with k1 <= k2 <= ...
/// The empty partition is |h> itself.
using Partition = std::vector<int>;

int level(const Partition& p);

/// Finite linear combination of PBW monomials in the Verma module M(c, h).
class VermaState {
public:
    VermaState(Rational c, Rational h) : c_(std::move(c)), h_(std::move(h)) {}

    static VermaState highest_weight(const Rational& c, const Rational& h);
    /// L_{-k1} ... L_{-kj}|h>; the parts are sorted on construction.
    static VermaState monomial(const Rational& c, const Rational& h, Partition parts, const Rational& coeff = 1);

    const Rational& central_charge() const { return c_; }
    const Rational& highest_weight() const { return h_; }
    const std::map<Partition, Rational>& coefficients() const { return coeffs_; }
    Rational coefficient(const Partition& p) const;
    bool is_zero() const { return coeffs_.empty(); }

    void add(const Partition& p, const Rational& coeff);
    VermaState& operator+=(const VermaState& o);
    VermaState& operator-=(const VermaState& o);
    friend VermaState operator+(VermaState a, const VermaState& b) { return a += b; }
    friend VermaState operator-(VermaState a, const VermaState& b) { return a -= b; }
    VermaState scaled(const Rational& s) const;
    friend bool operator==(const VermaState&, const VermaState&) = default;

private:
    Rational c_, h_;
    std::map<Partition, Rational> coeffs_;
};

/// Normal-ordered action of L_n, using
/// [L_n, L_m] = (n - m) L_{n+m} + delta_{n,-m} (n^3 - n)/12 c.
VermaState apply_L(int n, const VermaState& state);

struct NullVectorCoefficients {
    Rational l1;  // L_1 chi = l1 * L_{-1}|h>
    Rational l2;  // L_2 chi = l2 * |h>
};

/// chi = ((kappa/2) L_{-1}^2 - 2 L_{-2})|h>, acted on by L_1 and L_2.
VermaState null_vector(const Rational& kappa, const Rational& c, const Rational& h);
NullVectorCoefficients null_vector_coefficients(const Rational& kappa, const Rational& h, const Rational& c);

struct VirParams {
    Rational kappa, c, h, lambda, alpha;
};

/// c = (3k - 8)(6 - k)/(2k), h = alpha = (6 - k)/(2k), lambda = -c.
/// Throws std::domain_error for kappa = 0.
VirParams params_of_kappa(const Rational& kappa);

/// Throws MalformedInput unless the three parameter relations hold.
void check_params(const VirParams& p);

/// (1/6) Res f'' g'. Equals -2 times the Virasoro cocycle (n^3 - n)/12 on
/// f = -z^(n+1), g = -z^(m+1).
Rational witt_cocycle(const LaurentPoly& f, const LaurentPoly& g);

}  // namespace sle::virasoro

#endif
