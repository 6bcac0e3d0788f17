#ifndef CFORGE_CURVE_GEOMETRY_HPP
#define CFORGE_CURVE_GEOMETRY_HPP

#include <cforge/series.hpp>

namespace cforge
{

// Which of the two admissible initial fields along a curve is meant:
// det(sigma', X, sigma'') > 0 for plus, < 0 for minus.
enum class Branch { plus, minus };

constexpr Branch opposite(Branch b)
{
    return b == Branch::plus ? Branch::minus : Branch::plus;
}

// Sign of det(a, b, w) requested from orthonormal_completion.
enum class Handedness { positive, negative };

template <Scalar T>
struct SpaceCurveJet {
    CurveVec3<T> point;
    bool arclength_certified = false;

    int order() const
    {
        return min_order(point);
    }

    CurveVec3<T> velocity() const
    {
        return derivative(point);
    }
};

template <Scalar T>
struct Frame {
    Vec3<T> e{T(1), T(0), T(0)};
    Vec3<T> n{T(0), T(1), T(0)};
    Vec3<T> b{T(0), T(0), T(1)};
};

// Frenet apparatus as series: unit tangent e, principal normal n, binormal b,
// curvature and torsion.
template <Scalar T>
struct FrenetData {
    CurveVec3<T> e, n, b;
    Jet1<T> kappa;
    Jet1<T> tau;

    Frame<T> frame_at_origin() const
    {
        return {constant_term(e), constant_term(n), constant_term(b)};
    }
};

// Unit field X along an arclength curve sigma with X . sigma' = 0,
// X . sigma'' = kappa_s and the orientation fixed by the branch.
template <Scalar T>
struct NormalField {
    CurveVec3<T> w;
    Branch branch = Branch::plus;
    // c(t) = kappa_s / kappa of sigma.
    Jet1<T> mu;
};

template <Scalar T>
struct Reparametrization {
    // t as a function of arclength.
    Jet1<T> s_inverse;
    SpaceCurveJet<T> curve;
};

// kappa = |c' x c''| / |c'|^3, tau = det(c', c'', c''') / |c' x c''|^2 and the
// Gram-Schmidt frame of (c', c''). Curvature is required to be positive at 0.
template <Scalar T>
FrenetData<T> frenet_apparatus(const SpaceCurveJet<T> &c, const Tolerances<T> &tol = {});

// Integrates e' = kappa n, n' = -kappa e + tau b, b' = -tau n, sigma' = e by
// coefficient recursion. The result is an arclength curve two orders longer
// than min(order(kappa), order(tau)).
template <Scalar T>
SpaceCurveJet<T> curve_from_curvature_torsion(const Jet1<T> &kappa, const Jet1<T> &tau, const Frame<T> &frame0,
                                              const Vec3<T> &p0, const Tolerances<T> &tol = {});

template <Scalar T>
Reparametrization<T> arclength_reparam(const SpaceCurveJet<T> &c, const Tolerances<T> &tol = {});

// The unique unit w with w . a = 0, w . b = mu and the requested sign of
// det(a, b, w), for orthonormal a, b and |mu| < 1.
template <Scalar T>
Vec3<T> orthonormal_completion(const Vec3<T> &a, const Vec3<T> &b, const T &mu, Handedness sign,
                               const Tolerances<T> &tol = {});

// X = c n -/+ sqrt(1 - c^2) (sigma' x n) with c = kappa_s / kappa_sigma. The
// sigma curve must be parametrized by arclength and kappa_sigma(0) > |kappa_s(0)|.
template <Scalar T>
NormalField<T> initial_normal_field(const SpaceCurveJet<T> &sigma, const FrenetData<T> &frenet,
                                    const Jet1<T> &kappa_s, Branch branch, const Tolerances<T> &tol = {});

template <Scalar T>
NormalField<T> initial_normal_field(const SpaceCurveJet<T> &sigma, const Jet1<T> &kappa_s, Branch branch,
                                    const Tolerances<T> &tol = {})
{
    return initial_normal_field(sigma, frenet_apparatus(sigma, tol), kappa_s, branch, tol);
}

// Largest non-constant coefficient of |c'|^2, i.e. the deviation from unit
// speed.
template <Scalar T>
T unit_speed_defect(const SpaceCurveJet<T> &c);

} // namespace cforge

#endif
