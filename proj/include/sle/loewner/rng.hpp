#ifndef SLE_LOEWNER_RNG_HPP
#define SLE_LOEWNER_RNG_HPP

#include <cstdint>

namespace sle::loewner {

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Stateless standard normal keyed by (key, counter).
double counter_normal(std::uint64_t key, std::uint64_t counter);

/// Seed of replica i in the family of `seed`.
std::uint64_t replica_seed(std::uint64_t seed, std::uint64_t replica);

}  // namespace sle::loewner

#endif
