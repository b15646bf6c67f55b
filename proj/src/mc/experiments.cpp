#include "sle/mc/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <thread>
#include <utility>

#include <json.hpp>

#include "sle/conformal/maps.hpp"
#include "sle/errors.hpp"
#include "sle/loewner/loewner.hpp"
#include "sle/loewner/rng.hpp"

namespace sle::mc {

using conformal::Complex;
using conformal::HalfPlaneMap;
using loewner::DrivingSample;
using loewner::SlitTracker;

namespace {

// Runs body(i) for i in [0, n). Each index writes only its own slot, so the
// results do not depend on the thread count.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body)
{
    const auto workers = static_cast<std::size_t>(std::max(1, threads));
    if (workers == 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(workers, n); ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) body(i);
        });
    for (auto& t : pool) t.join();
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Mean and standard error, summed in index order.
std::pair<double, double> mean_stderr(const std::vector<double>& v)
{
    if (std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); })) return {v.front(), 0.0};
    const auto n = static_cast<double>(v.size());
    double sum = 0.0;
    for (double x : v) sum += x;
    const double mean = sum / n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double sd = v.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    return {mean, sd / std::sqrt(n)};
}

bool is_kappa_8_3(double kappa)
{
    return std::abs(kappa - 8.0 / 3.0) < 1e-12;
}

double restriction_alpha(double kappa)
{
    return (6.0 - kappa) / (2.0 * kappa);
}

void check_slit(const Slit& s)
{
    if (!(s.x > 0.0) || !(s.eps > 0.0) || !std::isfinite(s.x) || !std::isfinite(s.eps))
        throw MalformedInput("slits need x > 0 and eps > 0");
}

void check_common(double kappa, int steps, std::size_t n_samples)
{
    if (!(kappa >= 0.0) || steps < 1 || n_samples < 2) throw MalformedInput("need kappa >= 0, steps >= 1, n_samples >= 2");
}

// Fraction of replicas whose trace hits every slit by the horizon, with the
// doubling rule. Trackers are kept between rounds; the driving is regenerated
// because equal dt reproduces the same prefix.
EstimateResult hit_all_fraction(double kappa, const std::vector<Slit>& slits, int steps, std::size_t n,
                                std::uint64_t seed, const RunOptions& opt)
{
    double xmax = 0.0;
    for (const Slit& s : slits) xmax = std::max(xmax, s.x);
    const double t0 = 4.0 * std::max(1.0, xmax) * std::max(1.0, xmax);
    std::vector<std::vector<SlitTracker>> trackers(n);
    for (auto& tr : trackers)
        for (const Slit& s : slits) tr.emplace_back(s.x, s.eps);
    std::vector<double> outcome(n, 0.0);

    EstimateResult prev, cur;
    for (int round = 0; round <= opt.max_doublings; ++round) {
        const double horizon = t0 * std::ldexp(1.0, round);
        const int round_steps = steps << round;
        parallel_for(n, opt.threads, [&](std::size_t r) {
            if (outcome[r] == 1.0) return;
            const DrivingSample d =
                loewner::sample_driving(kappa, horizon, round_steps, loewner::replica_seed(seed, r));
            bool all = true;
            for (SlitTracker& tr : trackers[r]) {
                for (std::size_t k = tr.steps_done(); k < d.steps() && !tr.hit(); ++k) tr.advance(d, k);
                all = all && tr.hit();
            }
            outcome[r] = all ? 1.0 : 0.0;
        });
        const auto [mean, se] = mean_stderr(outcome);
        cur.mean = mean;
        cur.std_error = se;
        cur.horizon = horizon;
        if (round > 0 && std::abs(cur.mean - prev.mean) < cur.std_error) break;
        prev = cur;
    }
    cur.n_samples = n;
    cur.seed = seed;
    return cur;
}

}  // namespace

std::string digest(const std::string& text)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string to_json(const EstimateResult& r)
{
    nlohmann::ordered_json j;
    j["mean"] = r.mean;
    j["stderr"] = r.std_error;
    j["theory"] = r.theory ? nlohmann::ordered_json(*r.theory) : nlohmann::ordered_json(nullptr);
    j["n"] = r.n_samples;
    j["seed"] = r.seed;
    j["config_digest"] = r.config_digest;
    j["horizon"] = r.horizon;
    j["discarded"] = r.discarded;
    return j.dump();
}

EstimateResult estimate_avoidance(double kappa, double x, double eps, int steps, std::size_t n_samples,
                                  std::uint64_t seed, const RunOptions& opt)
{
    check_common(kappa, steps, n_samples);
    check_slit({x, eps});
    EstimateResult r = hit_all_fraction(kappa, {{x, eps}}, steps, n_samples, seed, opt);
    r.mean = 1.0 - r.mean;
    if (is_kappa_8_3(kappa)) r.theory = std::pow(x / std::sqrt(x * x + 2.0 * eps * eps), 5.0 / 8.0);
    r.config_digest = digest("avoidance;kappa=" + fmt(kappa) + ";x=" + fmt(x) + ";eps=" + fmt(eps) +
                             ";steps=" + std::to_string(steps) + ";n=" + std::to_string(n_samples) +
                             ";seed=" + std::to_string(seed) + ";doublings=" + std::to_string(opt.max_doublings));
    return r;
}

EstimateResult estimate_hitting(double kappa, const std::vector<Slit>& slits, int steps, std::size_t n_samples,
                                std::uint64_t seed, const RunOptions& opt)
{
    check_common(kappa, steps, n_samples);
    std::set<double> xs;
    std::string config = "hitting;kappa=" + fmt(kappa);
    for (const Slit& s : slits) {
        check_slit(s);
        if (!xs.insert(s.x).second) throw MalformedInput("slit positions must be distinct");
        config += ";slit=" + fmt(s.x) + "," + fmt(s.eps);
    }
    config += ";steps=" + std::to_string(steps) + ";n=" + std::to_string(n_samples) + ";seed=" + std::to_string(seed) +
              ";doublings=" + std::to_string(opt.max_doublings);
    EstimateResult r;
    if (slits.empty()) {
        r.mean = 1.0;
        r.n_samples = n_samples;
        r.seed = seed;
        r.theory = 1.0;
    } else {
        r = hit_all_fraction(kappa, slits, steps, n_samples, seed, opt);
        if (slits.size() == 1 && is_kappa_8_3(kappa)) {
            const double x = slits[0].x, e = slits[0].eps;
            r.theory = 1.0 - std::pow(x / std::sqrt(x * x + 2.0 * e * e), 5.0 / 8.0);
        }
    }
    r.config_digest = digest(config);
    return r;
}

MartingaleReport martingale_check_Yt(double kappa, double x, double eps, const std::vector<double>& check_times,
                                     int steps, std::size_t n_samples, std::uint64_t seed, const RunOptions& opt)
{
    check_common(kappa, steps, n_samples);
    check_slit({x, eps});
    if (!(kappa > 0.0 && kappa <= 4.0)) throw MalformedInput("martingale check needs 0 < kappa <= 4");
    if (check_times.empty()) throw MalformedInput("martingale check needs check times");
    for (std::size_t i = 0; i < check_times.size(); ++i)
        if (!(check_times[i] >= 0.0) || (i > 0 && !(check_times[i] > check_times[i - 1])))
            throw MalformedInput("check times must be nonnegative and strictly increasing");

    const double alpha = restriction_alpha(kappa);
    const double lambda = (8.0 - 3.0 * kappa) * alpha;
    const double horizon = check_times.back() > 0.0 ? check_times.back() : 1.0;
    const HalfPlaneMap phi = HalfPlaneMap::vertical_slit(x, eps, conformal::Normalization::hydrodynamic);
    const conformal::Jet j0 = phi.jet(0.0);
    const double y0 = std::pow(j0.d1.real(), alpha);
    const double s0 = conformal::schwarzian(j0).real();

    std::vector<std::size_t> check_index;
    for (double t : check_times) check_index.push_back(static_cast<std::size_t>(std::llround(t / horizon * steps)));
    const std::size_t last = check_index.back();

    // values[r][c] = Y at check c, or NaN for a discarded replica.
    std::vector<std::vector<double>> values(n_samples, std::vector<double>(check_times.size(), 0.0));
    parallel_for(n_samples, opt.threads, [&](std::size_t r) {
        std::vector<double>& out = values[r];
        const DrivingSample d = loewner::sample_driving(kappa, horizon, steps, loewner::replica_seed(seed, r));
        SlitTracker tracker(x, eps);
        double integral = 0.0, s_prev = s0;
        std::size_t c = 0;
        while (c < check_index.size() && check_index[c] == 0) out[c++] = y0;
        for (std::size_t k = 0; k < last && c < check_index.size(); ++k) {
            if (tracker.advance(d, k)) break;  // Y stays 0 from the hit on
            const bool at_check = check_index[c] == k + 1;
            if (lambda == 0.0 && !at_check) continue;
            double deriv, schw;
            try {
                const HalfPlaneMap h = conformal::zipper_map(tracker.probe_images());
                const conformal::Jet j = h.jet(Complex(d.values[k + 1], 0.0));
                deriv = j.d1.real();
                schw = conformal::schwarzian(j).real();
            } catch (const std::exception&) {
                std::fill(out.begin(), out.end(), std::nan(""));
                return;
            }
            integral += 0.5 * d.dt(k) * (s_prev + schw);
            s_prev = schw;
            while (c < check_index.size() && check_index[c] == k + 1)
                out[c++] = std::pow(deriv, alpha) * std::exp(lambda / 6.0 * integral);
        }
    });

    MartingaleReport rep;
    rep.times = check_times;
    rep.initial_value = y0;
    rep.n_replicas = n_samples;
    std::vector<std::vector<double>> kept(check_times.size());
    for (const auto& row : values) {
        if (std::isnan(row[0])) {
            ++rep.discarded;
            continue;
        }
        for (std::size_t c = 0; c < row.size(); ++c) {
            kept[c].push_back(row[c]);
            rep.max_value = std::max(rep.max_value, row[c]);
        }
    }
    const std::string base = "martingale;kappa=" + fmt(kappa) + ";x=" + fmt(x) + ";eps=" + fmt(eps) +
                             ";steps=" + std::to_string(steps) + ";n=" + std::to_string(n_samples) +
                             ";seed=" + std::to_string(seed);
    for (std::size_t c = 0; c < check_times.size(); ++c) {
        EstimateResult e;
        if (kept[c].size() >= 2) std::tie(e.mean, e.std_error) = mean_stderr(kept[c]);
        e.n_samples = kept[c].size();
        e.theory = y0;
        e.seed = seed;
        e.horizon = check_times[c];
        e.discarded = rep.discarded;
        e.config_digest = digest(base + ";t=" + fmt(check_times[c]));
        rep.estimates.push_back(e);
    }
    return rep;
}

DriftResult drift_check_t0(double x, double eps, double dt, int vertices)
{
    check_slit({x, eps});
    if (!(dt > 0.0) || vertices < 2) throw MalformedInput("drift check needs dt > 0 and at least 2 vertices");
    const double height = eps * std::sqrt(2.0);
    std::vector<Complex> before, after;
    for (int i = 0; i < vertices; ++i) {
        const Complex z(x, height * i / (vertices - 1));
        before.push_back(z);
        after.push_back(loewner::loewner_sqrt(z, 4.0 * dt));
    }
    const double h0 = conformal::zipper_map(before).apply(0.0).real();
    const double h1 = conformal::zipper_map(after).apply(0.0).real();
    const HalfPlaneMap phi = HalfPlaneMap::vertical_slit(x, eps);
    return {(h1 - h0) / dt, -3.0 * conformal::derivative(phi, 0.0, 2).real()};
}

double box_count_slope(const std::vector<Complex>& pts, int min_level, int max_level)
{
    std::vector<double> xs, ys;
    for (int level = min_level; level <= max_level; ++level) {
        const double size = std::ldexp(1.0, -level);
        std::set<std::pair<long, long>> boxes;
        auto mark = [&](Complex p) {
            boxes.emplace(static_cast<long>(std::floor(p.real() / size)), static_cast<long>(std::floor(p.imag() / size)));
        };
        if (!pts.empty()) mark(pts.front());
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            const Complex a = pts[i], b = pts[i + 1];
            const int pieces = static_cast<int>(std::ceil(4.0 * std::abs(b - a) / size));
            for (int s = 1; s <= pieces; ++s) mark(a + (b - a) * (static_cast<double>(s) / pieces));
        }
        xs.push_back(level * std::log(2.0));
        ys.push_back(std::log(static_cast<double>(boxes.size())));
    }
    const auto m = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

EstimateResult estimate_dimension(double kappa, int steps, std::size_t n_samples, std::uint64_t seed,
                                  const RunOptions& opt)
{
    check_common(kappa, steps, n_samples);
    if (!(kappa > 0.0 && kappa < 8.0)) throw MalformedInput("dimension estimate needs 0 < kappa < 8");
    std::vector<double> slopes(n_samples);
    parallel_for(n_samples, opt.threads, [&](std::size_t r) {
        const DrivingSample d = loewner::sample_driving(kappa, 1.0, steps, loewner::replica_seed(seed, r));
        std::vector<Complex> pts = loewner::trace_from_driving(d).points;
        double radius = 0.0;
        for (Complex p : pts) radius = std::max(radius, std::abs(p));
        for (Complex& p : pts) p /= radius;
        slopes[r] = box_count_slope(pts);
    });
    EstimateResult r;
    std::tie(r.mean, r.std_error) = mean_stderr(slopes);
    r.n_samples = n_samples;
    r.theory = std::min(2.0, 1.0 + kappa / 8.0);
    r.seed = seed;
    r.horizon = 1.0;
    r.config_digest = digest("dimension;kappa=" + fmt(kappa) + ";steps=" + std::to_string(steps) +
                             ";n=" + std::to_string(n_samples) + ";seed=" + std::to_string(seed));
    return r;
}

}  // namespace sle::mc
