#include <algorithm>
#include <string>

#include <cforge/edge_geometry.hpp>

namespace cforge
{

namespace
{

template <Scalar T>
std::string fmt(const T &x)
{
    return std::to_string(static_cast<double>(x));
}

template <Scalar T>
T max_abs_minus_one(Jet1<T> a)
{
    a[0] -= T(1);
    return a.max_abs();
}

} // namespace

template <Scalar T>
Jet2<T> times_v_power(const Jet1<T> &a, int k, int order)
{
    Jet2<T> r(order, order, std::min(order, a.order() + k));
    if (k <= order) {
        for (int i = 0; i <= std::min(a.order(), order); ++i) {
            r.coeff(i, k) = a[i];
        }
    }
    return r;
}

template <Scalar T>
CoordinateChange<T> flip_u(int order)
{
    return {-Jet2<T>::u(order), Jet2<T>::v(order)};
}

template <Scalar T>
JetVec3<T> extract_phi(const MapGerm<T> &f, const Tolerances<T> &tol)
{
    return map(derive_v(f.point), [&](const Jet2<T> &x) { return x.div_exact_v(tol); });
}

template <Scalar T>
bool singular_on_axis(const MapGerm<T> &f, const Tolerances<T> &tol)
{
    try {
        (void)extract_phi(f, tol);
        return true;
    } catch (const Error &e) {
        if (e.code() == ErrorCode::NotDivisible) {
            return false;
        }
        throw;
    }
}

template <Scalar T>
FundForm<T> first_fundamental_form(const MapGerm<T> &f, const Tolerances<T> &tol)
{
    const auto fu = derive_u(f.point);
    const auto fv = derive_v(f.point);
    FundForm<T> m{dot(fu, fu), dot(fu, fv), dot(fv, fv), std::nullopt};
    if (!singular_on_axis(f, tol)) {
        return m;
    }
    const auto cr = cross(fu, extract_phi(f, tol));
    const auto n2 = dot(cr, cr);
    if (n2(0, 0) > tol.unit * tol.unit) {
        // lambda = det(f_u, f_v, nu) = v |f_u x phi|.
        m.lambda = sqrt(n2, tol).mul_v();
    }
    return m;
}

template <Scalar T>
JetVec3<T> unit_normal(const MapGerm<T> &f, const Tolerances<T> &tol)
{
    const auto cr = cross(derive_u(f.point), extract_phi(f, tol));
    const auto n2 = dot(cr, cr);
    if (!(n2(0, 0) > tol.unit * tol.unit)) {
        throw Error(ErrorCode::DegenerateFrame, "f_u and phi are parallel at the origin");
    }
    const auto inv = reciprocal(sqrt(n2, tol), tol);
    return map(cr, [&](const Jet2<T> &x) { return x * inv; });
}

template <Scalar T>
AdaptedReport<T> check_adapted(const MapGerm<T> &f)
{
    const auto fu = restrict_v0(derive_u(f.point));
    const auto fv_full = derive_v(f.point);
    const auto fv = restrict_v0(fv_full);
    const auto fvv = restrict_v0(derive_v(fv_full));
    AdaptedReport<T> r;
    r.unit_speed = max_abs_minus_one(dot(fu, fu));
    r.null_along = max_abs(fv);
    r.unit_second = max_abs_minus_one(dot(fvv, fvv));
    r.orthogonal = dot(fu, fvv).max_abs();
    return r;
}

template <Scalar T>
AdaptResult<T> adapt_germ(const MapGerm<T> &f, const AdaptOptions<T> &options, const Tolerances<T> &tol)
{
    const int d = f.certified();
    if (d < 3) {
        throw Error(ErrorCode::BudgetExhausted, "adaptation needs a germ certified to degree >= 3");
    }
    const auto u = Jet2<T>::u(d);
    const auto v = Jet2<T>::v(d);

    // Null shear u -> u - c(u) v makes d/dv the null direction on the axis.
    auto fu0 = restrict_v0(derive_u(f.point));
    const auto speed0 = dot(fu0, fu0);
    if (!(speed0[0] > tol.unit * tol.unit)) {
        throw Error(ErrorCode::DegenerateEdge, "f_u vanishes at the origin");
    }
    const auto fv0 = restrict_v0(derive_v(f.point));
    const auto shear = divide(dot(fv0, fu0), speed0, tol);
    const CoordinateChange<T> step1{u - times_v_power(shear, 1, d), v};
    MapGerm<T> g{pull_back(f.point, step1, tol), CoordinateStatus::raw};
    (void)extract_phi(g, tol);
    g.status = CoordinateStatus::singular_on_axis;

    // Arclength along the singular curve.
    const auto unit = arclength_reparam(g.singular_image(), tol);
    const CoordinateChange<T> step2{times_v_power(unit.s_inverse, 0, d), v};
    g.point = pull_back(g.point, step2, tol);

    // u -> u + c(u) v^2 makes f_vv orthogonal to f_u on the axis.
    fu0 = restrict_v0(derive_u(g.point));
    auto fvv0 = restrict_v0(derive_v(derive_v(g.point)));
    const auto cr0 = constant_term(cross(fu0, fvv0));
    if (!(dot(cr0, cr0) > tol.unit * tol.unit)) {
        throw Error(ErrorCode::DegenerateEdge, "f_vv is parallel to f_u at the origin: not a cuspidal edge");
    }
    const auto c2 = dot(fvv0, fu0) * T(-0.5);
    const CoordinateChange<T> step3{u + times_v_power(c2, 2, d), v};
    g.point = pull_back(g.point, step3, tol);

    // v -> a(u) v makes |f_vv| = 1 on the axis.
    fvv0 = restrict_v0(derive_v(derive_v(g.point)));
    const auto a = reciprocal(sqrt(sqrt(dot(fvv0, fvv0), tol), tol), tol);
    // a is known to order d - 2. Its u^{d-1} coefficient only meets the v^1
    // coefficient of g, which vanishes, so a zero there keeps degree d.
    Jet1<T> a_padded(d - 1);
    for (int i = 0; i <= a.order(); ++i) {
        a_padded[i] = a[i];
    }
    const CoordinateChange<T> step4{u, times_v_power(a_padded, 1, d)};
    g.point = pull_back(g.point, step4, tol);

    AdaptResult<T> result;
    result.change = then(then(then(step1, step2, tol), step3, tol), step4, tol);

    if (options.orient_kappa_nu) {
        const auto fu = derive_u(g.point);
        const T kappa_nu0 = det3(constant_term(derive_u(fu)), constant_term(fu),
                                 constant_term(derive_v(derive_v(g.point))));
        if (kappa_nu0 < T(0)) {
            const auto flip = flip_u<T>(d);
            g.point = pull_back(g.point, flip, tol);
            result.change = then(result.change, flip, tol);
            result.orientation_flipped = true;
        }
    }

    const auto report = check_adapted(g);
    if (!report.passes(options.gate)) {
        throw Error(ErrorCode::NotAdapted, "adaptation gate failed: worst deviation " + fmt(report.worst()));
    }
    g.status = CoordinateStatus::adapted;
    result.germ = std::move(g);
    return result;
}

template <Scalar T>
EdgeInvariants<T> edge_invariants(const MapGerm<T> &f, const Tolerances<T> &tol)
{
    const auto report = check_adapted(f);
    if (!report.passes(T(1e-8))) {
        throw Error(ErrorCode::NotAdapted, "germ is not in adapted coordinates: worst deviation " + fmt(report.worst()));
    }
    const auto fu = derive_u(f.point);
    const auto fv = derive_v(f.point);
    const auto fvv = derive_v(fv);
    const auto fu0 = restrict_v0(fu);
    const auto fuu0 = restrict_v0(derive_u(fu));
    const auto fvv0 = restrict_v0(fvv);
    const auto fvvv0 = restrict_v0(derive_v(fvv));
    const auto phi = extract_phi(f, tol);
    const auto phi0 = restrict_v0(phi);

    EdgeInvariants<T> r;
    r.kappa_nu = det3(fuu0, fu0, fvv0);
    r.kappa_c = det3(fu0, fvv0, fvvv0);
    r.kappa_c_from_phi = T(2) * det3(fu0, phi0, restrict_v0(derive_v(phi)));
    const auto gamma = f.singular_image();
    r.kappa_s = dot(phi0, derivative(derivative(gamma.point)));
    try {
        const auto frenet = frenet_apparatus(gamma, tol);
        r.kappa = frenet.kappa;
        r.tau = frenet.tau;
        r.frenet_defined = true;
    } catch (const Error &e) {
        if (e.code() != ErrorCode::DegenerateCurve) {
            throw;
        }
        r.kappa = Jet1<T>(r.kappa_s.order());
        r.tau = Jet1<T>(std::max(0, r.kappa_s.order() - 1));
    }
    r.generic = scalar_abs(r.kappa_nu[0]) > tol.unit;
    r.cuspidal_edge = scalar_abs(r.kappa_c[0]) > tol.unit;
    return r;
}

template <Scalar T>
Jet1<T> kappa_s_intrinsic(const FundForm<T> &m, const Tolerances<T> &tol)
{
    if (!m.lambda) {
        throw Error(ErrorCode::InvalidMetric, "singular curvature needs the signed area density");
    }
    const auto lambda_v = m.lambda->derive_v().restrict_v0();
    if (!(lambda_v[0] > tol.unit)) {
        throw Error(ErrorCode::WrongOrientation, "lambda_v must be positive on the axis");
    }
    const auto Ev = m.E.derive_v();
    const auto num = -(m.F.derive_v() * m.E.derive_u()) + T(2) * m.E * m.F.derive_u().derive_v() - m.E * Ev.derive_v();
    const auto e0 = m.E.restrict_v0();
    const auto den = T(2) * e0 * sqrt(e0, tol) * lambda_v;
    return divide(num.restrict_v0(), den, tol);
}

template <Scalar T>
FundForm<T> metric_to_fundform(const KossowskiMetric<T> &m, const Tolerances<T> &tol)
{
    if (!(m.G0(0, 0) > tol.unit)) {
        throw Error(ErrorCode::InvalidMetric, "G0 must be positive at the origin");
    }
    FundForm<T> r;
    r.E = m.E0.mul_v().mul_v() + T(1);
    r.F = Jet2<T>(m.E0.u_order(), m.E0.v_order());
    r.G = m.G0.mul_v().mul_v();
    r.lambda = sqrt(r.E * m.G0, tol).mul_v();
    return r;
}

#define CFORGE_INSTANTIATE_EDGE(T)                                                                                 \
    template Jet2<T> times_v_power(const Jet1<T> &, int, int);                                                    \
    template CoordinateChange<T> flip_u(int);                                                                     \
    template JetVec3<T> extract_phi(const MapGerm<T> &, const Tolerances<T> &);                                   \
    template bool singular_on_axis(const MapGerm<T> &, const Tolerances<T> &);                                    \
    template FundForm<T> first_fundamental_form(const MapGerm<T> &, const Tolerances<T> &);                       \
    template JetVec3<T> unit_normal(const MapGerm<T> &, const Tolerances<T> &);                                   \
    template AdaptedReport<T> check_adapted(const MapGerm<T> &);                                                  \
    template AdaptResult<T> adapt_germ(const MapGerm<T> &, const AdaptOptions<T> &, const Tolerances<T> &);       \
    template EdgeInvariants<T> edge_invariants(const MapGerm<T> &, const Tolerances<T> &);                        \
    template Jet1<T> kappa_s_intrinsic(const FundForm<T> &, const Tolerances<T> &);                               \
    template FundForm<T> metric_to_fundform(const KossowskiMetric<T> &, const Tolerances<T> &);

CFORGE_INSTANTIATE_EDGE(double)
CFORGE_INSTANTIATE_EDGE(long double)

} // namespace cforge
