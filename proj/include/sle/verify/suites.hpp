#ifndef SLE_VERIFY_SUITES_HPP
#define SLE_VERIFY_SUITES_HPP

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sle/symbolic/multirat.hpp"

namespace sle::verify {

using symbolic::Rational;

struct CheckResult {
    std::string name;
    bool ok = true;
    std::size_t cases = 0;
    std::string detail;  // first failing identity, as canonical text
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool ok() const;
    const CheckResult* first_failure() const;
};

/// Exact invariant suites: "symbolic", "ward", "virasoro", or "all".
/// Throws MalformedInput for an unknown name.
SuiteReport run_suite(std::string_view name);
std::vector<std::string> suite_names();

// symbolic
CheckResult check_normalize_idempotent();
CheckResult check_derivation_laws();
CheckResult check_laurent_consistency();
CheckResult check_residue_of_derivative();

// ward
CheckResult check_highest_weight(std::size_t nmax = 3);
CheckResult check_witt_commutation();
CheckResult check_scaling_covariance(std::size_t nmax = 4);
CheckResult check_permutation_symmetry(std::size_t nmax = 4);
CheckResult check_oracle(std::size_t nmax = 4, std::size_t points = 20);
CheckResult check_semigroup(std::size_t nmax = 3);
CheckResult check_bubble_commutators(std::size_t nmax = 2);
CheckResult check_fw9(std::size_t nmax = 2);
CheckResult check_degeneracy_exact();
/// Pairs (kappa, alpha) on kappa = k/6 (1..36), alpha = a/8 (1..16) where
/// the component-n degeneracy residual vanishes identically.
std::vector<std::pair<Rational, Rational>> degeneracy_zeros(std::size_t n);
/// Passes iff the only zero at component n is (8/3, 5/8).
CheckResult check_degeneracy_uniqueness(std::size_t n);

// virasoro
CheckResult check_commutator_law();
CheckResult check_jacobi();
CheckResult check_null_vectors();
CheckResult check_l2_lminus2();
CheckResult check_cocycle();
CheckResult check_cross_module();

}  // namespace sle::verify

#endif
