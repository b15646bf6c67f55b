#include "sle/loewner/loewner.hpp"

#include <algorithm>
#include <cmath>

#include "sle/errors.hpp"
#include "sle/loewner/rng.hpp"

namespace sle::loewner {

namespace {

constexpr std::size_t kMaxTrackedPoints = 1024;
constexpr double kRefineRatio = 0.5;

// Square root with Im >= 0.
Complex upper_sqrt(Complex u)
{
    const double r = std::sqrt(u.real() * u.real() + u.imag() * u.imag());
    if (u.real() >= 0.0) {
        const double a = std::sqrt(0.5 * (r + u.real()));
        if (a == 0.0) return {0.0, 0.0};
        const double b = u.imag() / (2.0 * a);
        return b < 0.0 ? Complex(-a, -b) : Complex(a, b);
    }
    const double b = std::sqrt(0.5 * (r - u.real()));
    return {u.imag() / (2.0 * b), b};
}

std::uint64_t level_key(std::uint64_t seed, int level)
{
    return level == 0 ? seed : mix64(seed ^ (0xa0761d6478bd642fULL * static_cast<std::uint64_t>(level)));
}

double distance_to_segment(Complex a, Complex b, Complex p)
{
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    const double s = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
    return std::abs(p - (a + s * ab));
}

// Does the segment [a, b] meet the vertical segment [w, w + i h]?
bool meets_vertical(Complex a, Complex b, double w, double h)
{
    const double da = a.real() - w, db = b.real() - w;
    if ((da > 0.0 && db > 0.0) || (da < 0.0 && db < 0.0)) return false;
    if (da == db) return std::min(a.imag(), b.imag()) <= h;
    const double s = da / (da - db);
    return a.imag() + s * (b.imag() - a.imag()) <= h;
}

}  // namespace

Complex loewner_sqrt(Complex w, double c)
{
    if (w.imag() == 0.0) return {std::copysign(std::sqrt(w.real() * w.real() + c), w.real()), 0.0};
    return upper_sqrt(w * w + c);
}

Complex loewner_sqrt_inverse(Complex z, double c)
{
    if (z.imag() == 0.0) {
        const double u = z.real() * z.real() - c;
        if (u >= 0.0) return {std::copysign(std::sqrt(u), z.real()), 0.0};
        return {0.0, std::sqrt(-u)};
    }
    return upper_sqrt(z * z - c);
}

DrivingSample sample_driving(double kappa, double T, int steps, std::uint64_t seed)
{
    if (steps < 1 || !(T > 0.0) || !(kappa >= 0.0)) throw MalformedInput("sample_driving needs steps >= 1, T > 0, kappa >= 0");
    DrivingSample d;
    d.kappa = kappa;
    d.seed = seed;
    d.times.resize(static_cast<std::size_t>(steps) + 1);
    d.values.resize(d.times.size());
    const double dt = T / steps;
    const double sigma = std::sqrt(kappa * dt);
    d.times[0] = 0.0;
    d.values[0] = 0.0;
    for (std::size_t k = 1; k < d.times.size(); ++k) {
        d.times[k] = dt * static_cast<double>(k);
        d.values[k] = d.values[k - 1] + (kappa == 0.0 ? 0.0 : sigma * counter_normal(seed, k - 1));
    }
    return d;
}

DrivingSample refine_driving(const DrivingSample& d)
{
    DrivingSample r;
    r.kappa = d.kappa;
    r.seed = d.seed;
    r.level = d.level + 1;
    const std::uint64_t key = level_key(d.seed, r.level);
    const std::size_t n = d.steps();
    r.times.resize(2 * n + 1);
    r.values.resize(2 * n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        r.times[2 * k] = d.times[k];
        r.values[2 * k] = d.values[k];
    }
    for (std::size_t k = 0; k < n; ++k) {
        const double dt = d.dt(k);
        r.times[2 * k + 1] = 0.5 * (d.times[k] + d.times[k + 1]);
        const double mid = 0.5 * (d.values[k] + d.values[k + 1]);
        r.values[2 * k + 1] = mid + (d.kappa == 0.0 ? 0.0 : std::sqrt(d.kappa * dt / 4.0) * counter_normal(key, k));
    }
    return r;
}

DrivingSample negated(const DrivingSample& d)
{
    DrivingSample r = d;
    for (double& v : r.values) v = -v;
    return r;
}

PointEvolution evolve_point(Complex z, const DrivingSample& d, std::size_t upto)
{
    if (z.imag() < 0.0) throw DomainError("evolve_point: z must lie in the closed upper half-plane");
    const std::size_t n = std::min(upto, d.steps());
    Complex g = z;
    for (std::size_t k = 0; k < n; ++k) {
        const double w = d.values[k + 1];
        const double dt = d.dt(k);
        const Complex rel = g - w;
        const bool on_step_slit = g.imag() > 0.0 && std::abs(rel.real()) <= 1e-9 &&
                                  rel.imag() <= 2.0 * std::sqrt(dt) * (1.0 + 1e-9);
        if (on_step_slit || std::abs(rel) < 1e-9) return {d.times[k + 1], Complex(w, 0.0)};
        g = w + loewner_sqrt(rel, 4.0 * dt);
        if (std::abs(g - w) < 1e-9) return {d.times[k + 1], g};
    }
    return {std::nullopt, g};
}

Complex trace_point(const DrivingSample& d, std::size_t k)
{
    if (k > d.steps()) throw MalformedInput("trace_point: index beyond the grid");
    Complex z = 0.0;
    for (std::size_t j = k; j >= 1; --j) z = loewner_sqrt_inverse(z, 4.0 * d.dt(j - 1)) + (d.values[j] - d.values[j - 1]);
    return z;
}

TracePath trace_from_driving(const DrivingSample& d)
{
    TracePath path;
    path.scheme = "backward-composition";
    path.points.reserve(d.times.size());
    for (std::size_t k = 0; k < d.times.size(); ++k) path.points.push_back(trace_point(d, k));
    return path;
}

conformal::HalfPlaneMap forward_map(const DrivingSample& d, std::size_t k)
{
    if (k > d.steps()) throw MalformedInput("forward_map: index beyond the grid");
    std::vector<conformal::HalfPlaneMap> maps;
    maps.reserve(k);
    for (std::size_t j = k; j >= 1; --j) maps.push_back(conformal::HalfPlaneMap::loewner_step(d.values[j], d.dt(j - 1)));
    return conformal::HalfPlaneMap::compose(std::move(maps));
}

SlitTracker::SlitTracker(double x, double eps, int probes) : x_(x), height_(eps * std::sqrt(2.0))
{
    if (!(eps > 0.0) || probes < 2) throw MalformedInput("slit tracker needs eps > 0 and at least 2 probes");
    for (int i = 0; i < probes; ++i) {
        const double s = static_cast<double>(i) / (probes - 1);
        params_.push_back(s);
        images_.push_back(Complex(x_, s * height_));
        is_probe_.push_back(1);
    }
}

std::vector<Complex> SlitTracker::probe_images() const
{
    std::vector<Complex> out;
    for (std::size_t i = 0; i < images_.size(); ++i)
        if (is_probe_[i]) out.push_back(images_[i]);
    return out;
}

void SlitTracker::refine(const DrivingSample& d, std::size_t k)
{
    const Complex w(d.values[k + 1], 0.0);
    const double h = 2.0 * std::sqrt(d.dt(k));
    std::size_t i = 0;
    while (i + 1 < images_.size()) {
        const Complex a = images_[i], b = images_[i + 1];
        const double need = kRefineRatio * std::max(distance_to_segment(a, b, w), h);
        const double mid = 0.5 * (params_[i] + params_[i + 1]);
        if (std::abs(a - b) > need && images_.size() < kMaxTrackedPoints && mid > params_[i] && mid < params_[i + 1]) {
            Complex g(x_, mid * height_);
            for (std::size_t j = 0; j < k; ++j) g = d.values[j + 1] + loewner_sqrt(g - d.values[j + 1], 4.0 * d.dt(j));
            const auto pos = static_cast<std::ptrdiff_t>(i + 1);
            params_.insert(params_.begin() + pos, mid);
            images_.insert(images_.begin() + pos, g);
            is_probe_.insert(is_probe_.begin() + pos, 0);
            continue;
        }
        ++i;
    }
}

bool SlitTracker::advance(const DrivingSample& d, std::size_t k)
{
    if (hit_) return true;
    if (k != steps_) throw MalformedInput("slit tracker: steps must be applied in order");
    refine(d, k);
    const double w = d.values[k + 1];
    const double dt = d.dt(k);
    const double h = 2.0 * std::sqrt(dt);
    for (std::size_t i = 0; i + 1 < images_.size(); ++i) {
        if (meets_vertical(images_[i], images_[i + 1], w, h)) {
            hit_ = true;
            return true;
        }
    }
    const double c = 4.0 * dt;
    for (Complex& g : images_) g = w + loewner_sqrt(g - w, c);
    ++steps_;
    return false;
}

bool avoids_hull(const DrivingSample& d, double slit_x, double slit_eps)
{
    if (slit_x == 0.0) throw MalformedInput("avoids_hull: the slit foot must differ from 0");
    SlitTracker tracker(slit_x, slit_eps);
    for (std::size_t k = 0; k < d.steps(); ++k)
        if (tracker.advance(d, k)) return false;
    return true;
}

}  // namespace sle::loewner
