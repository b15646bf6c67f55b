#ifndef SLE_LOEWNER_LOEWNER_HPP
#define SLE_LOEWNER_LOEWNER_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sle/conformal/maps.hpp"

namespace sle::loewner {

using conformal::Complex;

/// Driving function on a uniform grid. Step k covers [t_k, t_{k+1}] and uses
/// the constant value W_{k+1}.
struct DrivingSample {
    double kappa = 0.0;
    std::vector<double> times;
    std::vector<double> values;
    std::uint64_t seed = 0;
    int level = 0;  // number of bridge refinements

    std::size_t steps() const { return times.empty() ? 0 : times.size() - 1; }
    double dt(std::size_t k) const { return times[k + 1] - times[k]; }
    double horizon() const { return times.back(); }
};

/// W_k = sqrt(kappa) B_{t_k}. Increment k is keyed by (seed, k), so grids
/// with equal dt share their common prefix.
DrivingSample sample_driving(double kappa, double T, int steps, std::uint64_t seed);
/// Halves every step, inserting Brownian bridge midpoints.
DrivingSample refine_driving(const DrivingSample& d);
/// W -> -W.
DrivingSample negated(const DrivingSample& d);

struct PointEvolution {
    std::optional<double> escape_time;
    Complex final;
};

/// Forward Loewner flow of z over steps [0, upto) (all steps by default).
/// An interior point escapes when it reaches the step slit.
PointEvolution evolve_point(Complex z, const DrivingSample& d, std::size_t upto = SIZE_MAX);

/// sqrt(w^2 + c) with Im >= 0 on H and sign(w) on the real line.
Complex loewner_sqrt(Complex w, double c);
/// sqrt(z^2 - c) with Im >= 0 on H and sign(z) on the real line off [-sqrt c, sqrt c].
Complex loewner_sqrt_inverse(Complex z, double c);

struct TracePath {
    std::vector<Complex> points;
    std::string scheme;
};

/// gamma_k = E_1 o ... o E_k (0) with E_j(z) = sqrt(z^2 - 4 dt) + W_j - W_{j-1}.
TracePath trace_from_driving(const DrivingSample& d);
Complex trace_point(const DrivingSample& d, std::size_t k);

/// g_{t_k} as a composition of k Loewner steps.
conformal::HalfPlaneMap forward_map(const DrivingSample& d, std::size_t k);

/// Tracks the image of the vertical slit [x, x + i eps sqrt2] under the
/// discrete flow and detects when the trace reaches it. The slit image is a
/// polyline from the foot through `probes` points, refined by bisection near
/// the driving point.
class SlitTracker {
public:
    SlitTracker(double x, double eps, int probes = 10);

    /// Applies step k. Returns true once the step slit meets the slit image.
    bool advance(const DrivingSample& d, std::size_t k);
    bool hit() const { return hit_; }
    std::size_t steps_done() const { return steps_; }

    /// Images of the fixed probes, foot first.
    std::vector<Complex> probe_images() const;
    /// All tracked points, foot first.
    const std::vector<Complex>& polyline() const { return images_; }

private:
    void refine(const DrivingSample& d, std::size_t k);

    double x_, height_;
    std::vector<double> params_;  // fraction of the height
    std::vector<Complex> images_;
    std::vector<char> is_probe_;
    std::size_t steps_ = 0;
    bool hit_ = false;
};

/// True iff the trace up to the horizon of d does not reach the slit.
bool avoids_hull(const DrivingSample& d, double slit_x, double slit_eps);

}  // namespace sle::loewner

#endif
