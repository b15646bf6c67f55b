#ifndef SLE_MC_EXPERIMENTS_HPP
#define SLE_MC_EXPERIMENTS_HPP

#include <cstddef>
#include <cstdint>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace sle::mc {

struct EstimateResult {
    double mean = 0.0;
    double std_error = 0.0;  // sample standard deviation / sqrt(n_samples)
    std::size_t n_samples = 0;
    std::optional<double> theory;
    std::string config_digest;
    std::uint64_t seed = 0;
    double horizon = 0.0;        // simulated time actually used
    std::size_t discarded = 0;   // replicas dropped after a zipper failure
};

/// Single-line JSON with keys mean, stderr, theory, n, seed, config_digest,
/// followed by horizon and discarded.
std::string to_json(const EstimateResult& r);

struct Slit {
    double x;
    double eps;
};

struct RunOptions {
    int threads = 1;
    int max_doublings = 4;
};

/// Fraction of traces avoiding [x, x + i eps sqrt2]. The horizon starts at
/// T = 4 max(1, x)^2 with dt = T/steps and doubles at fixed dt until the
/// estimate moves by less than one standard error.
EstimateResult estimate_avoidance(double kappa, double x, double eps, int steps, std::size_t n_samples,
                                  std::uint64_t seed, const RunOptions& opt = {});

/// Fraction of traces hitting every slit, with the same horizon rule.
EstimateResult estimate_hitting(double kappa, const std::vector<Slit>& slits, int steps, std::size_t n_samples,
                                std::uint64_t seed, const RunOptions& opt = {});

struct MartingaleReport {
    std::vector<double> times;
    std::vector<EstimateResult> estimates;
    double initial_value = 0.0;
    double max_value = 0.0;
    std::size_t discarded = 0;
    std::size_t n_replicas = 0;
};

/// E[Y_{t ^ tau_A}] with Y_t = h_t'(W_t)^alpha exp((lambda/6) int_0^t S h_s(W_s) ds),
/// h_t the zipper map of the image of 10 slit probes. The horizon is the
/// largest check time, split into `steps` steps.
MartingaleReport martingale_check_Yt(double kappa, double x, double eps, const std::vector<double>& check_times,
                                     int steps, std::size_t n_samples, std::uint64_t seed, const RunOptions& opt = {});

struct DriftResult {
    double lhs;
    double rhs;
};

/// lhs = (h_dt(0) - h_0(0))/dt for W = 0, both maps zippered through
/// `vertices` slit points; rhs = -3 phi_A''(0).
DriftResult drift_check_t0(double x, double eps, double dt, int vertices = 256);

/// Box-counting dimension over box sizes 2^-3 .. 2^-8 of traces scaled into
/// the unit half-disc, averaged over replicas. Theory min(2, 1 + kappa/8).
EstimateResult estimate_dimension(double kappa, int steps, std::size_t n_samples, std::uint64_t seed,
                                  const RunOptions& opt = {});

/// Box-counting slope of one polyline, already scaled into the unit half-disc.
double box_count_slope(const std::vector<std::complex<double>>& pts, int min_level = 3, int max_level = 8);

/// 16 hex digits of the FNV-1a hash of text.
std::string digest(const std::string& text);

}  // namespace sle::mc

#endif
