#include "sle/conformal/maps.hpp"

#include <cmath>
#include <numbers>

#include <json.hpp>

#include "sle/errors.hpp"

namespace sle::conformal {

namespace {

constexpr double kPi = std::numbers::pi;

// Boundary points may arrive with a -0.0 imaginary part; treat them as
// lying on the upper side of every branch cut.
Complex upper(Complex z)
{
    if (z.imag() == 0.0) return {z.real(), 0.0};
    return z;
}

void require_closed_upper(Complex z, const char* who)
{
    if (!(z.imag() >= -1e-12 * (1.0 + std::abs(z))) || !std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError(std::string(who) + ": point outside the closed upper half-plane");
}

Complex log1p_c(Complex u)
{
    const Complex v = 1.0 + u;
    if (v == 1.0) return u;
    return std::log(v) * (u / (v - 1.0));
}

Complex expm1_c(Complex u)
{
    const double er = std::expm1(u.real());
    const double half = std::sin(0.5 * u.imag());
    const double re = er * std::cos(u.imag()) - 2.0 * half * half;
    return {re, (er + 1.0) * std::sin(u.imag())};
}

// ---- vertical slit -------------------------------------------------------

double vs_const(const VerticalSlit& v)
{
    if (v.norm == Normalization::hydrodynamic) return v.x;
    return std::copysign(std::sqrt(v.x * v.x + 2.0 * v.eps * v.eps), v.x);
}

double vs_c(const VerticalSlit& v)
{
    return 2.0 * v.eps * v.eps;
}

// sqrt(w^2 + c) asymptotic to w, analytic off [-i sqrt c, i sqrt c].
Complex slit_sqrt(Complex w, double c)
{
    return w * std::sqrt(1.0 + c / (w * w));
}

// Inverse of slit_sqrt on the closed upper half-plane.
Complex slit_sqrt_inv(Complex s, double c)
{
    if (s.imag() == 0.0 && std::abs(s.real()) <= std::sqrt(c)) return {0.0, std::sqrt(c - s.real() * s.real())};
    return s * std::sqrt(1.0 - c / (s * s));
}

void check_off_slit(const VerticalSlit& v, Complex z)
{
    require_closed_upper(z, "vertical slit");
    const double tip = std::sqrt(2.0) * v.eps;
    if (z.real() == v.x && z.imag() < tip) throw DomainError("vertical slit: point on the slit");
}

Jet vs_forward_jet(const VerticalSlit& v, Complex z, bool with_derivs)
{
    check_off_slit(v, z);
    const double c = vs_c(v);
    const Complex w = upper(z - v.x);
    const Complex s = slit_sqrt(w, c);
    Jet j{s + vs_const(v), {}, {}, {}};
    if (!with_derivs) return j;
    if (s == 0.0) throw SingularityError("vertical slit: derivative at the slit tip");
    j.d1 = w / s;
    j.d2 = c / (s * s * s);
    j.d3 = -3.0 * c * w / std::pow(s, 5);
    return j;
}

Jet vs_inverse_jet(const VerticalSlit& v, Complex zeta, bool with_derivs)
{
    require_closed_upper(zeta, "vertical slit inverse");
    const double c = vs_c(v);
    const Complex s = upper(zeta - vs_const(v));
    const Complex w = slit_sqrt_inv(s, c);
    Jet j{w + v.x, {}, {}, {}};
    if (!with_derivs) return j;
    if (w == 0.0) throw SingularityError("vertical slit inverse: derivative at a branch point");
    j.d1 = s / w;
    j.d2 = -c / (w * w * w);
    j.d3 = 3.0 * c * s / std::pow(w, 5);
    return j;
}

Complex vs_forward_disp(const VerticalSlit& v, Complex z)
{
    const Complex w = upper(z - v.x);
    if (std::abs(w) * std::abs(w) <= 4.0 * vs_c(v)) return vs_forward_jet(v, z, false).f - z;
    const Complex s = slit_sqrt(w, vs_c(v));
    return vs_c(v) / (w + s) + (vs_const(v) - v.x);
}

Complex vs_inverse_disp(const VerticalSlit& v, Complex zeta)
{
    const Complex s = upper(zeta - vs_const(v));
    if (std::abs(s) * std::abs(s) <= 4.0 * vs_c(v)) return vs_inverse_jet(v, zeta, false).f - zeta;
    const Complex w = slit_sqrt_inv(s, vs_c(v));
    return -vs_c(v) / (s + w) + (v.x - vs_const(v));
}

// ---- tilted slit ---------------------------------------------------------

double ts_a(const TiltedSlit& p)
{
    return p.alpha * p.t / (1.0 - p.alpha);
}

double ts_c0(const TiltedSlit& p)
{
    return p.t * (1.0 - 2.0 * p.alpha) / (1.0 - p.alpha);
}

// (1-alpha) Log(w + t) + alpha Log(w - a), arguments in [0, pi].
Complex ts_logF(const TiltedSlit& p, Complex w)
{
    return (1.0 - p.alpha) * std::log(upper(w + p.t)) + p.alpha * std::log(upper(w - ts_a(p)));
}

struct LogDerivs {
    Complex l, l1, l2;  // F'/F and its first two derivatives
};

LogDerivs ts_logderivs(const TiltedSlit& p, Complex w)
{
    const Complex u = 1.0 / (w + p.t), v = 1.0 / (w - ts_a(p));
    const double b = 1.0 - p.alpha, a = p.alpha;
    return {b * u + a * v, -(b * u * u + a * v * v), 2.0 * (b * u * u * u + a * v * v * v)};
}

Jet f_jet_from(Complex f, const LogDerivs& d)
{
    const Complex l = d.l;
    return {f, f * l, f * (l * l + d.l1), f * (l * l * l + 3.0 * l * d.l1 + d.l2)};
}

Jet ts_inverse_jet(const TiltedSlit& p, Complex w, bool with_derivs)
{
    require_closed_upper(w, "tilted slit inverse");
    w = upper(w);
    if (w + p.t == 0.0 || w - ts_a(p) == 0.0) {
        if (with_derivs) throw SingularityError("tilted slit: derivative at a branch point");
        return {0.0, {}, {}, {}};
    }
    const Complex f = upper(std::exp(ts_logF(p, w)));
    if (!with_derivs) return {f, {}, {}, {}};
    return f_jet_from(f, ts_logderivs(p, w));
}

Complex ts_psi(const TiltedSlit& p, Complex w)
{
    return (1.0 - p.alpha) * log1p_c(p.t / w) + p.alpha * log1p_c(-ts_a(p) / w);
}

Complex ts_inverse_disp(const TiltedSlit& p, Complex w)
{
    if (std::abs(w) <= 4.0 * (p.t + ts_a(p))) return ts_inverse_jet(p, w, false).f - w;
    return w * expm1_c(ts_psi(p, upper(w)));
}

// Damped Newton on Log F(w) = target from w0. Returns false when the line
// search stalls before the residual drops below tol.
bool ts_newton(const TiltedSlit& p, Complex& w, Complex target, bool interior, double tol)
{
    const double scale = 1.0 + std::abs(w);
    Complex r = ts_logF(p, w) - target;
    for (int it = 0; it < 50; ++it) {
        if (std::abs(r) < 1e-14) return true;
        const Complex dw = r / ts_logderivs(p, w).l;
        double step = 1.0;
        bool accepted = false;
        Complex w_new, r_new;
        for (int halve = 0; halve < 40 && !accepted; ++halve, step *= 0.5) {
            w_new = w - step * dw;
            if (w_new.imag() <= 0.0) {
                // Interior targets have interior preimages; stay off the axis.
                if (interior) continue;
                w_new = {w_new.real(), 0.0};
            }
            if (w_new + p.t == 0.0 || w_new - ts_a(p) == 0.0) continue;
            r_new = ts_logF(p, w_new) - target;
            accepted = std::abs(r_new) < std::abs(r);
        }
        if (!accepted) break;
        const bool stalled = std::abs(w_new - w) <= 1e-15 * scale;
        w = w_new;
        r = r_new;
        if (stalled) break;
    }
    return std::abs(r) < tol;
}

// Solves F(w) = z for w in the closed upper half-plane. Falls back to
// continuation along the ray from infinity to z, which never meets the slit.
Complex ts_solve(const TiltedSlit& p, Complex z)
{
    require_closed_upper(z, "tilted slit");
    z = upper(z);
    if (z == 0.0) throw DomainError("tilted slit: base point has two preimages");
    const bool interior = z.imag() > 0.0;
    const Complex target = std::log(z);
    auto seed = [&](Complex zz) {
        Complex w = zz - ts_c0(p);
        return w.imag() < 0.0 ? Complex(w.real(), 0.0) : w;
    };
    Complex w = seed(z);
    if (ts_newton(p, w, target, interior, 1e-12)) return w;

    double log_lambda = std::log(std::max(2.0, 8.0 * (p.t + ts_a(p)) / std::abs(z)));
    w = seed(z * std::exp(log_lambda));
    if (!ts_newton(p, w, target + log_lambda, interior, 1e-12))
        throw DomainError("tilted slit: Newton iteration did not converge");
    double step = log_lambda / 8.0;
    for (int attempt = 0; log_lambda > 0.0; ++attempt) {
        const double next = std::max(0.0, log_lambda - step);
        if (next == log_lambda || attempt == 200) throw DomainError("tilted slit: Newton iteration did not converge");
        Complex trial = w;
        if (ts_newton(p, trial, target + next, interior, next == 0.0 ? 1e-12 : 1e-10)) {
            w = trial;
            log_lambda = next;
            step *= 2.0;
        } else {
            step *= 0.25;
        }
    }
    return w;
}

Jet ts_forward_jet(const TiltedSlit& p, Complex z, bool with_derivs)
{
    const Complex w = ts_solve(p, z);
    if (!with_derivs) return {w, {}, {}, {}};
    const LogDerivs d = ts_logderivs(p, w);
    const Jet f = f_jet_from(upper(z), d);
    if (f.d1 == 0.0) throw SingularityError("tilted slit: derivative at the slit tip");
    const Complex f1 = f.d1, f2 = f.d2, f3 = f.d3;
    return {w, 1.0 / f1, -f2 / (f1 * f1 * f1), (3.0 * f2 * f2 - f1 * f3) / std::pow(f1, 5)};
}

Complex ts_forward_disp(const TiltedSlit& p, Complex z)
{
    const Complex w = ts_solve(p, z);
    if (std::abs(w) <= 4.0 * (p.t + ts_a(p))) return w - z;
    return upper(z) * expm1_c(-ts_psi(p, w));
}

// ---- composition ---------------------------------------------------------

Jet chain(const Jet& outer, const Jet& inner)
{
    const Complex g1 = inner.d1, g2 = inner.d2, g3 = inner.d3;
    return {outer.f, outer.d1 * g1, outer.d2 * g1 * g1 + outer.d1 * g2,
            outer.d3 * g1 * g1 * g1 + 3.0 * outer.d2 * g1 * g2 + outer.d1 * g3};
}

Jet eval_jet(const HalfPlaneMap& m, Complex z, bool with_derivs);

Jet eval_elementary(const HalfPlaneMap::Kind& k, Orientation o, Complex z, bool d)
{
    const bool fwd = o == Orientation::forward;
    if (auto* v = std::get_if<VerticalSlit>(&k)) return fwd ? vs_forward_jet(*v, z, d) : vs_inverse_jet(*v, z, d);
    if (auto* t = std::get_if<TiltedSlit>(&k)) return fwd ? ts_forward_jet(*t, z, d) : ts_inverse_jet(*t, z, d);
    if (auto* s = std::get_if<Shift>(&k)) return {z + (fwd ? s->delta : -s->delta), 1.0, 0.0, 0.0};
    const double s = std::get<Scale>(k).s;
    const double f = fwd ? s : 1.0 / s;
    return {z * f, f, 0.0, 0.0};
}

Jet eval_jet(const HalfPlaneMap& m, Complex z, bool with_derivs)
{
    if (auto* c = std::get_if<Composition>(&m.kind())) {
        Jet acc{z, 1.0, 0.0, 0.0};
        for (auto it = c->maps.rbegin(); it != c->maps.rend(); ++it) {
            const Jet step = eval_jet(*it, acc.f, with_derivs);
            acc = with_derivs ? chain(step, acc) : Jet{step.f, {}, {}, {}};
        }
        return acc;
    }
    return eval_elementary(m.kind(), m.orientation(), z, with_derivs);
}

}  // namespace

HalfPlaneMap::HalfPlaneMap(Kind kind, Orientation orientation) : kind_(std::move(kind)), orientation_(orientation)
{
    if (auto* v = std::get_if<VerticalSlit>(&kind_)) {
        if (!(v->eps > 0.0) || !std::isfinite(v->x)) throw MalformedInput("vertical slit needs eps > 0");
        if (v->norm == Normalization::origin && v->x == 0.0)
            throw MalformedInput("origin normalization needs the slit away from 0");
    } else if (auto* t = std::get_if<TiltedSlit>(&kind_)) {
        if (!(t->alpha > 0.0 && t->alpha < 1.0) || !(t->t > 0.0))
            throw MalformedInput("tilted slit needs 0 < alpha < 1 and t > 0");
    } else if (auto* s = std::get_if<Scale>(&kind_)) {
        if (!(s->s > 0.0)) throw MalformedInput("scale factor must be positive");
    } else if (std::holds_alternative<Composition>(kind_)) {
        orientation_ = Orientation::forward;
    }
}

HalfPlaneMap HalfPlaneMap::vertical_slit(double x, double eps, Normalization norm)
{
    return HalfPlaneMap(VerticalSlit{x, eps, norm});
}

HalfPlaneMap HalfPlaneMap::loewner_step(double w, double dt)
{
    if (!(dt > 0.0)) throw MalformedInput("Loewner step needs dt > 0");
    return HalfPlaneMap(VerticalSlit{w, std::sqrt(2.0 * dt), Normalization::hydrodynamic});
}

HalfPlaneMap HalfPlaneMap::tilted_slit(double alpha, double t)
{
    return HalfPlaneMap(TiltedSlit{alpha, t});
}

HalfPlaneMap HalfPlaneMap::tilted_slit_with_length(double alpha, double length)
{
    if (!(alpha > 0.0 && alpha < 1.0)) throw MalformedInput("tilted slit needs 0 < alpha < 1");
    return tilted_slit(alpha, length * std::pow((1.0 - alpha) / alpha, alpha));
}

HalfPlaneMap HalfPlaneMap::shift(double delta)
{
    return HalfPlaneMap(Shift{delta});
}

HalfPlaneMap HalfPlaneMap::scale(double s)
{
    return HalfPlaneMap(Scale{s});
}

HalfPlaneMap HalfPlaneMap::compose(const HalfPlaneMap& outer, const HalfPlaneMap& inner)
{
    return compose(std::vector<HalfPlaneMap>{outer, inner});
}

HalfPlaneMap HalfPlaneMap::compose(std::vector<HalfPlaneMap> left_to_right)
{
    return HalfPlaneMap(Composition{std::move(left_to_right)});
}

HalfPlaneMap HalfPlaneMap::inverse() const
{
    if (auto* c = std::get_if<Composition>(&kind_)) {
        std::vector<HalfPlaneMap> inv;
        inv.reserve(c->maps.size());
        for (auto it = c->maps.rbegin(); it != c->maps.rend(); ++it) inv.push_back(it->inverse());
        return compose(std::move(inv));
    }
    return HalfPlaneMap(kind_, orientation_ == Orientation::forward ? Orientation::inverse : Orientation::forward);
}

Complex HalfPlaneMap::apply(Complex z) const
{
    return eval_jet(*this, z, false).f;
}

Jet HalfPlaneMap::jet(Complex z) const
{
    return eval_jet(*this, z, true);
}

Complex HalfPlaneMap::displacement(Complex z) const
{
    const bool fwd = orientation_ == Orientation::forward;
    if (auto* c = std::get_if<Composition>(&kind_)) {
        Complex total = 0.0, cur = z;
        for (auto it = c->maps.rbegin(); it != c->maps.rend(); ++it) {
            const Complex d = it->displacement(cur);
            total += d;
            cur += d;
        }
        return total;
    }
    if (auto* v = std::get_if<VerticalSlit>(&kind_)) return fwd ? vs_forward_disp(*v, z) : vs_inverse_disp(*v, z);
    if (auto* t = std::get_if<TiltedSlit>(&kind_)) return fwd ? ts_forward_disp(*t, z) : ts_inverse_disp(*t, z);
    return apply(z) - z;
}

Complex apply(const HalfPlaneMap& map, Complex z)
{
    return map.apply(z);
}

Complex derivative(const HalfPlaneMap& map, Complex z, int order)
{
    const Jet j = map.jet(z);
    switch (order) {
    case 1: return j.d1;
    case 2: return j.d2;
    case 3: return j.d3;
    default: throw MalformedInput("derivative order must be 1, 2 or 3");
    }
}

Complex schwarzian(const Jet& j)
{
    if (j.d1 == 0.0) throw SingularityError("Schwarzian at a critical point");
    const Complex r = j.d2 / j.d1;
    return j.d3 / j.d1 - 1.5 * r * r;
}

Complex schwarzian(const HalfPlaneMap& map, Complex z)
{
    return schwarzian(map.jet(z));
}

Complex schwarzian_by_chain(const HalfPlaneMap& outer, const HalfPlaneMap& inner, Complex z)
{
    const Jet g = inner.jet(z);
    return schwarzian(outer, g.f) * g.d1 * g.d1 + schwarzian(g);
}

double hcap_from_expansion(const HalfPlaneMap& map)
{
    const double radii[3] = {1e3, 1e4, 1e5};
    double a[3];
    Complex d[3];
    for (int i = 0; i < 3; ++i) {
        d[i] = map.displacement(Complex(0.0, radii[i]));
        a[i] = -radii[i] * d[i].imag();
    }
    if (std::abs(d[2]) > 10.0 * std::abs(d[0]) + 1e-9) throw MalformedInput("map is not hydrodynamically normalizable");
    // A(R) = a1 + b / R^2 + O(R^-4).
    const double a01 = (100.0 * a[1] - a[0]) / 99.0;
    const double a12 = (100.0 * a[2] - a[1]) / 99.0;
    return (1e4 * a12 - a01) / (1e4 - 1.0);
}

HalfPlaneMap zipper_map(const std::vector<Complex>& polyline)
{
    if (polyline.empty()) throw MalformedInput("zipper: empty polyline");
    const Complex base = polyline.front();
    if (std::abs(base.imag()) > 1e-12 * (1.0 + std::abs(base))) throw MalformedInput("zipper: base point must be real");
    std::vector<Complex> pts;
    pts.reserve(polyline.size());
    for (std::size_t i = 1; i < polyline.size(); ++i) pts.push_back(polyline[i] - base.real());

    std::vector<HalfPlaneMap> chain;  // applied in order
    chain.push_back(HalfPlaneMap::shift(-base.real()));
    double c0_total = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const Complex zeta = pts[k];
        const double len = std::abs(zeta);
        if (len == 0.0) continue;
        if (!(zeta.imag() > 1e-13 * len)) throw MalformedInput("zipper: polyline reaches the boundary");
        const double alpha = std::arg(zeta) / kPi;
        const HalfPlaneMap g = HalfPlaneMap::tilted_slit_with_length(alpha, len);
        try {
            for (std::size_t j = k + 1; j < pts.size(); ++j) pts[j] = g.apply(pts[j]);
        } catch (const DomainError&) {
            throw MalformedInput("zipper: polyline intersects itself");
        }
        c0_total += ts_c0(std::get<TiltedSlit>(g.kind()));
        chain.push_back(g);
    }
    chain.push_back(HalfPlaneMap::shift(base.real() + c0_total));
    std::vector<HalfPlaneMap> left_to_right(chain.rbegin(), chain.rend());
    return HalfPlaneMap::compose(std::move(left_to_right));
}

namespace {

nlohmann::ordered_json describe(const HalfPlaneMap& m)
{
    nlohmann::ordered_json j;
    const char* orient = m.orientation() == Orientation::forward ? "forward" : "inverse";
    if (auto* v = std::get_if<VerticalSlit>(&m.kind())) {
        j["kind"] = "vertical_slit";
        j["x"] = v->x;
        j["eps"] = v->eps;
        j["normalization"] = v->norm == Normalization::origin ? "origin" : "hydrodynamic";
        j["orientation"] = orient;
    } else if (auto* t = std::get_if<TiltedSlit>(&m.kind())) {
        j["kind"] = "tilted_slit";
        j["alpha"] = t->alpha;
        j["t"] = t->t;
        j["orientation"] = orient;
    } else if (auto* s = std::get_if<Shift>(&m.kind())) {
        j["kind"] = "shift";
        j["delta"] = m.orientation() == Orientation::forward ? s->delta : -s->delta;
    } else if (auto* c = std::get_if<Scale>(&m.kind())) {
        j["kind"] = "scale";
        j["s"] = m.orientation() == Orientation::forward ? c->s : 1.0 / c->s;
    } else {
        j["kind"] = "composition";
        j["maps"] = nlohmann::ordered_json::array();
        for (const auto& sub : std::get<Composition>(m.kind()).maps) j["maps"].push_back(describe(sub));
    }
    return j;
}

}  // namespace

std::string to_json(const HalfPlaneMap& map)
{
    return describe(map).dump();
}

}  // namespace sle::conformal
