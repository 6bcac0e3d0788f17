#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include <cforge/curve_geometry.hpp>

namespace cforge
{

template <Scalar T>
FrenetData<T> frenet_apparatus(const SpaceCurveJet<T> &c, const Tolerances<T> &tol)
{
    if (c.order() < 3) {
        throw Error(ErrorCode::BudgetExhausted, "torsion needs a curve jet of order >= 3");
    }
    const auto d1 = derivative(c.point);
    const auto d2 = derivative(d1);
    const auto d3 = derivative(d2);

    const auto speed_sq = dot(d1, d1);
    if (!(speed_sq[0] > tol.unit * tol.unit)) {
        throw Error(ErrorCode::DegenerateCurve, "vanishing speed at t = 0");
    }
    const auto cr = cross(d1, d2);
    const auto cr_sq = dot(cr, cr);
    if (!(cr_sq[0] > tol.unit * tol.unit)) {
        throw Error(ErrorCode::DegenerateCurve, "vanishing curvature at t = 0");
    }
    const auto speed = sqrt(speed_sq, tol);
    const auto cr_norm = sqrt(cr_sq, tol);

    FrenetData<T> r;
    r.kappa = divide(cr_norm, speed * speed * speed, tol);
    r.tau = divide(det3(d1, d2, d3), cr_sq, tol);
    const auto inv_speed = reciprocal(speed, tol);
    const auto inv_cr = reciprocal(cr_norm, tol);
    r.e = inv_speed * d1;
    r.b = inv_cr * cr;
    r.n = cross(r.b, r.e);
    return r;
}

template <Scalar T>
SpaceCurveJet<T> curve_from_curvature_torsion(const Jet1<T> &kappa, const Jet1<T> &tau, const Frame<T> &frame0,
                                              const Vec3<T> &p0, const Tolerances<T> &tol)
{
    const T frame_tol(1e-9);
    const Vec3<T> *f[3] = {&frame0.e, &frame0.n, &frame0.b};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const T target = i == j ? T(1) : T(0);
            if (scalar_abs(dot(*f[i], *f[j]) - target) > frame_tol) {
                throw Error(ErrorCode::NonOrthonormalFrame, "initial frame is not orthonormal");
            }
        }
    }
    if (!(det3(frame0.e, frame0.n, frame0.b) > T(0))) {
        throw Error(ErrorCode::NonOrthonormalFrame, "initial frame is not positively oriented");
    }
    if (!(kappa[0] > tol.unit)) {
        throw Error(ErrorCode::DegenerateCurve, "curvature must be positive at t = 0");
    }

    const int n = std::min(kappa.order(), tau.order());
    std::vector<Vec3<T>> e(static_cast<std::size_t>(n) + 2), nn(e.size()), b(e.size());
    e[0] = frame0.e;
    nn[0] = frame0.n;
    b[0] = frame0.b;
    for (int k = 0; k <= n; ++k) {
        Vec3<T> de{}, dn{}, db{};
        for (int j = 0; j <= k; ++j) {
            const auto m = static_cast<std::size_t>(k - j);
            de = de + kappa[j] * nn[m];
            dn = dn + (tau[j] * b[m] - kappa[j] * e[m]);
            db = db - tau[j] * nn[m];
        }
        const T inv = T(1) / T(k + 1);
        const auto next = static_cast<std::size_t>(k + 1);
        e[next] = inv * de;
        nn[next] = inv * dn;
        b[next] = inv * db;
    }

    SpaceCurveJet<T> curve;
    curve.arclength_certified = true;
    for (std::size_t i = 0; i < 3; ++i) {
        Jet1<T> tangent(n + 1);
        for (int k = 0; k <= n + 1; ++k) {
            tangent[k] = e[static_cast<std::size_t>(k)][i];
        }
        curve.point[i] = tangent.integral(p0[i]);
    }
    return curve;
}

template <Scalar T>
Reparametrization<T> arclength_reparam(const SpaceCurveJet<T> &c, const Tolerances<T> &tol)
{
    const auto d1 = c.velocity();
    const auto speed_sq = dot(d1, d1);
    if (!(speed_sq[0] > tol.unit * tol.unit)) {
        throw Error(ErrorCode::DegenerateCurve, "vanishing speed at t = 0");
    }
    const auto arclength = sqrt(speed_sq, tol).integral();
    Reparametrization<T> r;
    r.s_inverse = reverse(arclength, tol);
    r.curve.point = map(c.point, [&](const Jet1<T> &x) { return compose(x, r.s_inverse, tol); });
    r.curve.arclength_certified = true;
    return r;
}

template <Scalar T>
Vec3<T> orthonormal_completion(const Vec3<T> &a, const Vec3<T> &b, const T &mu, Handedness sign,
                               const Tolerances<T> &tol)
{
    const T ortho_tol(1e-9);
    if (scalar_abs(dot(a, a) - T(1)) > ortho_tol || scalar_abs(dot(b, b) - T(1)) > ortho_tol ||
        scalar_abs(dot(a, b)) > ortho_tol) {
        throw Error(ErrorCode::NotOrthonormal, "a and b must be orthonormal");
    }
    if (!(T(1) - scalar_abs(mu) > tol.unit)) {
        throw Error(ErrorCode::MuOutOfRange, "|mu| must be < 1");
    }
    const T root = scalar_sqrt(T(1) - mu * mu);
    const T s = sign == Handedness::positive ? T(1) : T(-1);
    return mu * b + (s * root) * cross(a, b);
}

template <Scalar T>
NormalField<T> initial_normal_field(const SpaceCurveJet<T> &sigma, const FrenetData<T> &frenet,
                                    const Jet1<T> &kappa_s, Branch branch, const Tolerances<T> &tol)
{
    const T speed_tol(1e-9);
    if (unit_speed_defect(sigma) > speed_tol) {
        throw Error(ErrorCode::DegenerateCurve, "initial normal field needs an arclength parametrization");
    }
    const auto c = divide(kappa_s, frenet.kappa, tol);
    if (!(T(1) - scalar_abs(c[0]) > tol.unit)) {
        throw Error(ErrorCode::GenericityViolated,
                    "curvature of the target curve does not exceed |kappa_s| at t = 0 (|c(0)| = " +
                        std::to_string(static_cast<double>(scalar_abs(c[0]))) + ")");
    }
    const auto root = sqrt(T(1) - c * c, tol);
    // b = sigma' x n, and det(sigma', b, n) = -1, so the plus branch takes -root.
    const auto signed_root = branch == Branch::plus ? -root : root;
    NormalField<T> r;
    r.w = c * frenet.n + signed_root * frenet.b;
    r.branch = branch;
    r.mu = c;
    return r;
}

template <Scalar T>
T unit_speed_defect(const SpaceCurveJet<T> &c)
{
    const auto d1 = c.velocity();
    auto s = dot(d1, d1);
    s[0] -= T(1);
    return s.max_abs();
}

#define CFORGE_INSTANTIATE_CURVE(T)                                                                                  \
    template FrenetData<T> frenet_apparatus(const SpaceCurveJet<T> &, const Tolerances<T> &);                      \
    template SpaceCurveJet<T> curve_from_curvature_torsion(const Jet1<T> &, const Jet1<T> &, const Frame<T> &,     \
                                                           const Vec3<T> &, const Tolerances<T> &);                \
    template Reparametrization<T> arclength_reparam(const SpaceCurveJet<T> &, const Tolerances<T> &);              \
    template Vec3<T> orthonormal_completion(const Vec3<T> &, const Vec3<T> &, const T &, Handedness,               \
                                            const Tolerances<T> &);                                                \
    template NormalField<T> initial_normal_field(const SpaceCurveJet<T> &, const FrenetData<T> &, const Jet1<T> &, \
                                                 Branch, const Tolerances<T> &);                                   \
    template T unit_speed_defect(const SpaceCurveJet<T> &);

CFORGE_INSTANTIATE_CURVE(double)
CFORGE_INSTANTIATE_CURVE(long double)

} // namespace cforge
