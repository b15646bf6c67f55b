#ifndef SLE_CONFORMAL_MAPS_HPP
#define SLE_CONFORMAL_MAPS_HPP

#include <complex>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace sle::conformal {

using Complex = std::complex<double>;

/// Value and first three derivatives at a point.
struct Jet {
    Complex f;
    Complex d1;
    Complex d2;
    Complex d3;
};

enum class Orientation { forward, inverse };

/// Where the constant term of a slit map is fixed.
enum class Normalization {
    origin,       // map(0) = 0
    hydrodynamic  // map(z) = z + O(1/z)
};

/// Removes the vertical slit [x, x + i eps sqrt2]:
/// z -> s(z - x) + const with s(w) = sqrt(w^2 + 2 eps^2) the branch
/// asymptotic to w. const = sqrt(x^2 + 2 eps^2) for origin normalization and
/// x for hydrodynamic normalization.
struct VerticalSlit {
    double x;
    double eps;
    Normalization norm = Normalization::origin;
};

/// F(w) = (w + t)^(1-alpha) (w - a)^alpha, a = alpha t/(1-alpha), maps H onto
/// H minus a segment from 0 at angle pi alpha. The forward map is F^-1.
struct TiltedSlit {
    double alpha;
    double t;
};

struct Shift {
    double delta;
};

struct Scale {
    double s;
};

class HalfPlaneMap;

/// maps[0] o maps[1] o ... ; the last map is applied first.
struct Composition {
    std::vector<HalfPlaneMap> maps;
};

class HalfPlaneMap {
public:
    using Kind = std::variant<VerticalSlit, TiltedSlit, Shift, Scale, Composition>;

    HalfPlaneMap() : HalfPlaneMap(Shift{0.0}) {}
    HalfPlaneMap(Kind kind, Orientation orientation = Orientation::forward);

    static HalfPlaneMap identity() { return HalfPlaneMap(Shift{0.0}); }
    static HalfPlaneMap vertical_slit(double x, double eps, Normalization norm = Normalization::origin);
    /// One Loewner step with constant driving w over time dt:
    /// z -> w + sqrt((z - w)^2 + 4 dt).
    static HalfPlaneMap loewner_step(double w, double dt);
    static HalfPlaneMap tilted_slit(double alpha, double t);
    /// Tilted slit whose tip is at length * exp(i pi alpha).
    static HalfPlaneMap tilted_slit_with_length(double alpha, double length);
    static HalfPlaneMap shift(double delta);
    static HalfPlaneMap scale(double s);
    /// outer o inner
    static HalfPlaneMap compose(const HalfPlaneMap& outer, const HalfPlaneMap& inner);
    static HalfPlaneMap compose(std::vector<HalfPlaneMap> left_to_right);

    const Kind& kind() const { return kind_; }
    Orientation orientation() const { return orientation_; }
    HalfPlaneMap inverse() const;

    Complex apply(Complex z) const;
    /// Value and derivatives through order 3.
    Jet jet(Complex z) const;
    /// apply(z) - z, computed without cancellation for large |z|.
    Complex displacement(Complex z) const;

private:
    Kind kind_;
    Orientation orientation_;
};

Complex apply(const HalfPlaneMap& map, Complex z);
/// order in {1, 2, 3}; throws SingularityError at branch points.
Complex derivative(const HalfPlaneMap& map, Complex z, int order);
/// f'''/f' - (3/2)(f''/f')^2; throws SingularityError where f' = 0.
Complex schwarzian(const HalfPlaneMap& map, Complex z);
Complex schwarzian(const Jet& j);
/// Schwarzian of a composition via S(f o g) = (Sf o g) g'^2 + Sg.
Complex schwarzian_by_chain(const HalfPlaneMap& outer, const HalfPlaneMap& inner, Complex z);

/// Coefficient a1 in map(z) = z + a0 + a1/z + ..., from evaluations on the
/// imaginary axis at R = 1e3, 1e4, 1e5 and Richardson extrapolation.
double hcap_from_expansion(const HalfPlaneMap& map);

/// Maps H minus the polyline hull onto H. polyline[0] must be real, the
/// other vertices strictly in H. Hydrodynamically normalized. Throws
/// MalformedInput when the polyline folds back onto itself.
HalfPlaneMap zipper_map(const std::vector<Complex>& polyline);

/// Single-line JSON description of the map.
std::string to_json(const HalfPlaneMap& map);

}  // namespace sle::conformal

#endif
