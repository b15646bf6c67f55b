#include "sle/loewner/rng.hpp"

#include <cmath>
#include <numbers>

namespace sle::loewner {

std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace {

// Uniform on (0, 1) from the top 53 bits.
double to_open_unit(std::uint64_t bits)
{
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

double counter_normal(std::uint64_t key, std::uint64_t counter)
{
    const std::uint64_t base = mix64(key ^ mix64(counter));
    const double u1 = to_open_unit(mix64(base));
    const double u2 = to_open_unit(mix64(base ^ 0xd1b54a32d192ed03ULL));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t replica_seed(std::uint64_t seed, std::uint64_t replica)
{
    return seed ^ mix64(replica + 0x632be59bd9b4e019ULL);
}

}  // namespace sle::loewner
