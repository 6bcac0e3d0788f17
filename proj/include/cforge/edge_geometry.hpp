#ifndef CFORGE_EDGE_GEOMETRY_HPP
#define CFORGE_EDGE_GEOMETRY_HPP

#include <algorithm>
#include <optional>

#include <cforge/curve_geometry.hpp>
#include <cforge/series.hpp>

namespace cforge
{

enum class CoordinateStatus { raw, singular_on_axis, adapted };

// A map germ (u, v) -> R^3 given by its jet.
template <Scalar T>
struct MapGerm {
    JetVec3<T> point;
    CoordinateStatus status = CoordinateStatus::raw;

    int certified() const
    {
        return min_certified(point);
    }

    SpaceCurveJet<T> singular_image() const
    {
        return {restrict_v0(point), status == CoordinateStatus::adapted};
    }
};

// E du^2 + 2F du dv + G dv^2, with the signed area density lambda
// (EG - F^2 = lambda^2) when it is known.
template <Scalar T>
struct FundForm {
    Jet2<T> E, F, G;
    std::optional<Jet2<T>> lambda;
};

// Invariants along the singular curve t = u of an adapted germ.
template <Scalar T>
struct EdgeInvariants {
    Jet1<T> kappa_s;
    Jet1<T> kappa_nu;
    // det(f_u, f_vv, f_vvv) and, independently, 2 det(f_u, phi, phi_v).
    Jet1<T> kappa_c;
    Jet1<T> kappa_c_from_phi;
    // Curvature and torsion of the image curve; zero jets when that curve has
    // vanishing curvature at the origin (frenet_defined false).
    Jet1<T> kappa;
    Jet1<T> tau;
    bool frenet_defined = false;
    bool generic = false;
    bool cuspidal_edge = false;
};

// Normal form (1 + v^2 E0) du^2 + v^2 G0 dv^2 of a metric with an intrinsic
// cuspidal edge along the u-axis.
template <Scalar T>
struct KossowskiMetric {
    Jet2<T> E0;
    Jet2<T> G0;
};

// Largest coefficient deviation along v = 0 of each adaptedness condition.
template <Scalar T>
struct AdaptedReport {
    T unit_speed{};   // |f_u|^2 - 1
    T null_along{};   // f_v
    T unit_second{};  // |f_vv|^2 - 1
    T orthogonal{};   // f_u . f_vv

    T worst() const
    {
        return std::max({unit_speed, null_along, unit_second, orthogonal});
    }

    bool passes(const T &tol) const
    {
        return worst() <= tol;
    }
};

template <Scalar T>
struct AdaptOptions {
    // Substitute u -> -u when needed so that kappa_nu(0) > 0.
    bool orient_kappa_nu = false;
    T gate = T(1e-8);
};

template <Scalar T>
struct AdaptResult {
    // f_adapted = f o change.
    CoordinateChange<T> change;
    MapGerm<T> germ;
    bool orientation_flipped = false;
};

// Whether f_v vanishes on the u-axis within the divisibility tolerance.
template <Scalar T>
bool singular_on_axis(const MapGerm<T> &f, const Tolerances<T> &tol = {});

template <Scalar T>
FundForm<T> first_fundamental_form(const MapGerm<T> &f, const Tolerances<T> &tol = {});

// phi with f_v = v phi.
template <Scalar T>
JetVec3<T> extract_phi(const MapGerm<T> &f, const Tolerances<T> &tol = {});

// (f_u x phi) / |f_u x phi|, so det(f_u, phi, nu) > 0.
template <Scalar T>
JetVec3<T> unit_normal(const MapGerm<T> &f, const Tolerances<T> &tol = {});

template <Scalar T>
AdaptResult<T> adapt_germ(const MapGerm<T> &f, const AdaptOptions<T> &options = {}, const Tolerances<T> &tol = {});

template <Scalar T>
AdaptedReport<T> check_adapted(const MapGerm<T> &f);

template <Scalar T>
EdgeInvariants<T> edge_invariants(const MapGerm<T> &f_adapted, const Tolerances<T> &tol = {});

// (-F_v E_u + 2 E F_uv - E E_vv) / (2 E^{3/2} lambda_v) along v = 0.
template <Scalar T>
Jet1<T> kappa_s_intrinsic(const FundForm<T> &m, const Tolerances<T> &tol = {});

template <Scalar T>
FundForm<T> metric_to_fundform(const KossowskiMetric<T> &m, const Tolerances<T> &tol = {});

// The substitution (u, v) -> (-u, v) at the given order.
template <Scalar T>
CoordinateChange<T> flip_u(int order);

// v^k a(u) as a square jet of the given order. Certified to a.order() + k,
// capped at the order.
template <Scalar T>
Jet2<T> times_v_power(const Jet1<T> &a, int k, int order);

} // namespace cforge

#endif
