#include <cstddef>
#include <string>
#include <vector>

#include <cforge/ck_solver.hpp>

namespace cforge
{

namespace
{

template <Scalar T>
Jet2<T> half(const Jet2<T> &a)
{
    return a * T(0.5);
}

template <Scalar T>
RhsData<T> assemble_germ_rhs(Jet2<T> phi_v_phi, Jet2<T> phi_v_fu, Jet2<T> phi_fuu_v, Jet2<T> phi_phi_uu)
{
    RhsData<T> r;
    r.mode = RhsMode::germ;
    r.s1 = phi_v_phi;
    r.s2 = phi_v_fu;
    r.s3 = phi_fuu_v - half(phi_phi_uu).mul_v();
    r.phi_v_phi = std::move(phi_v_phi);
    r.phi_v_fu = std::move(phi_v_fu);
    r.phi_fuu_v = std::move(phi_fuu_v);
    r.phi_phi_uu = std::move(phi_phi_uu);
    return r;
}

template <Scalar T>
Mat3<Jet1<T>> level_matrix(const CurveVec3<T> &psi, const CurveVec3<T> &g)
{
    const auto gu = derivative(g);
    return Mat3<Jet1<T>>::from_rows(psi, gu, derivative(gu));
}

template <Scalar T>
Jet2<T> assemble(const std::vector<CurveVec3<T>> &levels, std::size_t c)
{
    std::vector<Jet1<T>> slices;
    slices.reserve(levels.size());
    for (const auto &l : levels) {
        slices.push_back(l[c]);
    }
    return Jet2<T>::from_levels(slices);
}

} // namespace

template <Scalar T>
RhsData<T> build_rhs_from_germ(const MapGerm<T> &f, const Tolerances<T> &tol)
{
    const auto report = check_adapted(f);
    if (!report.passes(T(1e-8))) {
        throw Error(ErrorCode::NotAdapted, "source germ is not in adapted coordinates (worst deviation " +
                                               std::to_string(static_cast<double>(report.worst())) + ")");
    }
    if (!edge_invariants(f, tol).generic) {
        throw Error(ErrorCode::NonGeneric, "limiting normal curvature vanishes at the origin");
    }
    const auto phi = extract_phi(f, tol);
    const auto phi_v = derive_v(phi);
    const auto fu = derive_u(f.point);
    return assemble_germ_rhs(dot(phi_v, phi), dot(phi_v, fu), dot(phi, derive_u(fu)).derive_v(),
                             dot(phi, phi).derive_u().derive_u());
}

template <Scalar T>
RhsData<T> build_rhs_from_first_form(const FundForm<T> &m, const Tolerances<T> &tol)
{
    // phi . phi = G / v^2, phi . f_u = F / v, phi . f_uu = (F_u - E_v / 2) / v.
    const auto pp = m.G.div_exact_v(tol).div_exact_v(tol);
    const auto pfu = m.F.div_exact_v(tol);
    const auto pfuu = (m.F.derive_u() - half(m.E.derive_v())).div_exact_v(tol);
    const auto pp_u = pp.derive_u();
    return assemble_germ_rhs(half(pp.derive_v()), pfu.derive_v() - half(pp_u).mul_v(), pfuu.derive_v(),
                             pp_u.derive_u());
}

template <Scalar T>
RhsData<T> build_rhs_from_metric(const KossowskiMetric<T> &m, const Tolerances<T> &tol)
{
    if (!(m.G0(0, 0) > tol.unit)) {
        throw Error(ErrorCode::InvalidMetric, "G0 must be positive at the origin");
    }
    RhsData<T> r;
    r.mode = RhsMode::metric;
    const auto e0v = m.E0.derive_v();
    r.s1 = half(m.G0.derive_v());
    r.s2 = -half(m.G0.derive_u()).mul_v();
    r.s3 = -half(T(3) * e0v + (e0v.derive_v() + m.G0.derive_u().derive_u()).mul_v());
    r.metric = m;
    r.psi0_scale = sqrt(m.G0.restrict_v0(), tol);
    return r;
}

template <Scalar T>
CkSolution<T> ck_solve(const RhsData<T> &rhs, const SpaceCurveJet<T> &sigma, const NormalField<T> &x, int order,
                       const Tolerances<T> &tol)
{
    const int n = order;
    if (n < 3) {
        throw Error(ErrorCode::BudgetExhausted, "requested order must be at least 3");
    }
    if (sigma.order() < n) {
        throw Error(ErrorCode::BudgetExhausted, "initial curve known to order " + std::to_string(sigma.order()) +
                                                    ", requested " + std::to_string(n));
    }
    if (rhs.certified() < n - 3) {
        throw Error(ErrorCode::BudgetExhausted, "source terms certified to " + std::to_string(rhs.certified()) +
                                                    ", need " + std::to_string(n - 3));
    }
    if (min_order(x.w) < n - 2) {
        throw Error(ErrorCode::BudgetExhausted, "initial field known to order " + std::to_string(min_order(x.w)) +
                                                    ", need " + std::to_string(n - 2));
    }
    if (unit_speed_defect(sigma) > T(1e-9)) {
        throw Error(ErrorCode::DegenerateCurve, "initial curve must be parametrized by arclength");
    }

    const auto sig = truncated(sigma.point, n);
    auto psi0 = truncated(x.w, n - 2);
    if (rhs.psi0_scale) {
        psi0 = *rhs.psi0_scale * psi0;
    }
    const auto d1 = derivative(sig);
    const auto d2 = derivative(d1);
    const T kappa0 = scalar_sqrt(dot(constant_term(d2), constant_term(d2)));
    const T det0 = det3(constant_term(psi0), constant_term(d1), constant_term(d2));
    if (!(scalar_abs(det0) >= T(1e-9) * kappa0) || !(kappa0 > tol.unit)) {
        throw Error(ErrorCode::MatrixSingular, "det(X, sigma', sigma'') vanishes at the origin");
    }
    const auto inv0 = inverse(level_matrix(psi0, sig), tol);

    // psi has levels 0..n-2, g levels 0..n, w_k = (k + 1) psi_{k+1}.
    std::vector<CurveVec3<T>> psi{psi0};
    std::vector<CurveVec3<T>> g{sig, CurveVec3<T>{Jet1<T>(n - 1), Jet1<T>(n - 1), Jet1<T>(n - 1)}};
    std::vector<CurveVec3<T>> w;
    std::vector<CurveVec3<T>> psi_u{derivative(psi0)};
    for (int k = 0; k <= n - 3; ++k) {
        Jet1<T> quad(n);
        for (int a = 0; a <= k - 1; ++a) {
            quad = quad + dot(psi_u[static_cast<std::size_t>(a)], psi_u[static_cast<std::size_t>(k - 1 - a)]);
        }
        CurveVec3<T> acc{rhs.s1.level(k), rhs.s2.level(k), rhs.s3.level(k) + quad};
        for (int j = 1; j <= k; ++j) {
            const auto mj = level_matrix(psi[static_cast<std::size_t>(j)], g[static_cast<std::size_t>(j)]);
            acc = acc - mj * w[static_cast<std::size_t>(k - j)];
        }
        w.push_back(inv0 * acc);
        psi.push_back(w.back() / T(k + 1));
        if (k + 1 <= n - 3) {
            psi_u.push_back(derivative(psi.back()));
        }
        g.push_back(psi[static_cast<std::size_t>(k)] / T(k + 2));
    }
    g.push_back(psi[static_cast<std::size_t>(n - 2)] / T(n));

    CkSolution<T> s;
    for (std::size_t c = 0; c < 3; ++c) {
        s.g.point[c] = assemble(g, c);
        s.psi[c] = assemble(psi, c);
    }
    s.g.status = CoordinateStatus::singular_on_axis;
    s.certified = s.g.certified();
    if (s.certified < n) {
        throw Error(ErrorCode::BudgetExhausted, "solution certified to " + std::to_string(s.certified) +
                                                    ", requested " + std::to_string(n));
    }
    return s;
}

template <Scalar T>
CkResidual<T> residual(const MapGerm<T> &g, const JetVec3<T> &psi, const RhsData<T> &rhs)
{
    const auto gu = derive_u(g.point);
    const auto guu = derive_u(gu);
    const auto psi_v = derive_v(psi);
    const auto psi_u = derive_u(psi);
    const auto times_v = [](const JetVec3<T> &a) { return map(a, [](const Jet2<T> &x) { return x.mul_v(); }); };

    CkResidual<T> r;
    r.g_v = max_abs(derive_v(g.point) - times_v(psi));
    r.r_v = max_abs(derive_v(gu) - times_v(psi_u));
    r.psi_psi = (dot(psi, psi_v) - rhs.s1).max_abs();
    r.psi_gu = (dot(gu, psi_v) - rhs.s2).max_abs();
    r.psi_guu = (dot(guu, psi_v) - rhs.s3 - dot(psi_u, psi_u).mul_v()).max_abs();
    r.scale = max_abs(g.point);
    return r;
}

#define CFORGE_INSTANTIATE_CK(T)                                                                                   \
    template RhsData<T> build_rhs_from_germ(const MapGerm<T> &, const Tolerances<T> &);                           \
    template RhsData<T> build_rhs_from_first_form(const FundForm<T> &, const Tolerances<T> &);                    \
    template RhsData<T> build_rhs_from_metric(const KossowskiMetric<T> &, const Tolerances<T> &);                 \
    template CkSolution<T> ck_solve(const RhsData<T> &, const SpaceCurveJet<T> &, const NormalField<T> &, int,    \
                                    const Tolerances<T> &);                                                       \
    template CkResidual<T> residual(const MapGerm<T> &, const JetVec3<T> &, const RhsData<T> &);

CFORGE_INSTANTIATE_CK(double)
CFORGE_INSTANTIATE_CK(long double)

} // namespace cforge
