#include <algorithm>
#include <cmath>
#include <future>
#include <string>
#include <vector>

#include <cforge/deformation.hpp>

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
T max_diff1(const Jet1<T> &a, const Jet1<T> &b, int order)
{
    const int n = std::min({order, a.order(), b.order()});
    T m(0);
    for (int k = 0; k <= n; ++k) {
        m = std::max(m, scalar_abs(a[k] - b[k]));
    }
    return m;
}

template <Scalar T>
T max_diff_curve(const CurveVec3<T> &a, const CurveVec3<T> &b, int order)
{
    return std::max({max_diff1(a[0], b[0], order), max_diff1(a[1], b[1], order), max_diff1(a[2], b[2], order)});
}

template <Scalar T>
T max_diff_germ(const JetVec3<T> &a, const JetVec3<T> &b, int degree)
{
    T m(0);
    for (std::size_t c = 0; c < 3; ++c) {
        const int d = std::min({degree, a[c].certified(), b[c].certified()});
        for (int i = 0; i <= d; ++i) {
            for (int j = 0; i + j <= d; ++j) {
                m = std::max(m, scalar_abs(a[c](i, j) - b[c](i, j)));
            }
        }
    }
    return m;
}

// |kappa_c kappa_nu| as a series, the sign fixed by the constant term.
template <Scalar T>
Jet1<T> abs_product(const EdgeInvariants<T> &inv)
{
    auto p = inv.kappa_c * inv.kappa_nu;
    if (p[0] < T(0)) {
        p = -p;
    }
    return p;
}

template <Scalar T>
SpaceCurveJet<T> unit_speed(const SpaceCurveJet<T> &sigma, const Tolerances<T> &tol)
{
    if (unit_speed_defect(sigma) <= T(1e-9)) {
        auto s = sigma;
        s.arclength_certified = true;
        return s;
    }
    return arclength_reparam(sigma, tol).curve;
}

template <Scalar T>
NormalField<T> initial_field_or_throw(const SpaceCurveJet<T> &sigma, const Jet1<T> &kappa_s, Branch branch,
                                      const Tolerances<T> &tol)
{
    try {
        return initial_normal_field(sigma, kappa_s, branch, tol);
    } catch (const Error &e) {
        if (e.code() == ErrorCode::GenericityViolated) {
            throw Error(ErrorCode::CurvatureTooSmall, std::string("target curvature must exceed |kappa_s|: ") +
                                                          e.what());
        }
        throw;
    }
}

template <Scalar T>
MapGerm<T> truncated_germ(const MapGerm<T> &f, int order)
{
    MapGerm<T> r = f;
    for (std::size_t c = 0; c < 3; ++c) {
        const int d = std::min(order, r.point[c].certified());
        r.point[c] = r.point[c].resized(d);
    }
    return r;
}

template <Scalar T>
int solve_order(const MapGerm<T> &source, const SpaceCurveJet<T> &sigma, const NormalField<T> &x,
                const RhsData<T> &rhs, const PipelineOptions<T> &options)
{
    const int s = std::min({source.certified(), sigma.order(), min_order(x.w) + 2, rhs.certified() + 3});
    if (s < options.order) {
        throw Error(ErrorCode::BudgetExhausted, "inputs support degree " + std::to_string(s) + ", requested " +
                                                    std::to_string(options.order));
    }
    return s;
}

template <Scalar T>
struct FamilySetup {
    AdaptResult<T> source;
    EdgeInvariants<T> invariants;
    Frame<T> frame;
    Vec3<T> p0;
};

template <Scalar T>
FamilySetup<T> prepare_family(const MapGerm<T> &f, const PipelineOptions<T> &options)
{
    FamilySetup<T> s;
    s.source = adapt_germ(truncated_germ(f, options.working_order()), AdaptOptions<T>{true}, options.tol);
    s.invariants = edge_invariants(s.source.germ, options.tol);
    if (!s.invariants.generic) {
        throw Error(ErrorCode::NonGeneric, "limiting normal curvature vanishes at the origin");
    }
    const auto gamma = s.source.germ.singular_image();
    s.frame = frenet_apparatus(gamma, options.tol).frame_at_origin();
    s.p0 = constant_term(gamma.point);
    return s;
}

template <Scalar T>
std::vector<DeformationResult<T>> solve_family(const FamilySetup<T> &setup, std::vector<T> grid, Branch branch,
                                               const PipelineOptions<T> &options,
                                               Jet1<T> (*kappa_law)(const Jet1<T> &, const T &),
                                               Jet1<T> (*tau_law)(const Jet1<T> &, const T &))
{
    std::sort(grid.begin(), grid.end());
    const T ks0 = scalar_abs(setup.invariants.kappa_s[0]);
    std::vector<SpaceCurveJet<T>> curves;
    for (const T &s : grid) {
        const auto kappa = kappa_law(setup.invariants.kappa, s);
        if (!(kappa[0] - ks0 > options.tol.unit)) {
            throw Error(ErrorCode::CurvatureTooSmall, "family member s = " + fmt(s) + " has curvature " +
                                                          fmt(kappa[0]) + " <= |kappa_s(0)| = " + fmt(ks0));
        }
        curves.push_back(curve_from_curvature_torsion(kappa, tau_law(setup.invariants.tau, s), setup.frame,
                                                      setup.p0, options.tol));
    }
    std::vector<std::future<DeformationResult<T>>> jobs;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        jobs.push_back(std::async(std::launch::async, [&, k] {
            auto r = deform_adapted(setup.source, setup.invariants, curves[k], branch, options);
            r.parameter = grid[k];
            return r;
        }));
    }
    std::vector<DeformationResult<T>> members;
    for (auto &j : jobs) {
        members.push_back(j.get());
    }
    return members;
}

template <Scalar T>
Jet1<T> same(const Jet1<T> &a, const T &)
{
    return a;
}

template <Scalar T>
Jet1<T> shifted(const Jet1<T> &a, const T &s)
{
    return a + s;
}

template <Scalar T>
Jet1<T> damped(const Jet1<T> &a, const T &s)
{
    return a * (T(1) - s);
}

} // namespace

template <Scalar T>
std::vector<T> linear_grid(T a, T b, int n)
{
    std::vector<T> r;
    if (n <= 1) {
        r.push_back(a);
        return r;
    }
    for (int k = 0; k < n; ++k) {
        r.push_back(a + (b - a) * T(k) / T(n - 1));
    }
    return r;
}

template <Scalar T>
JetVec3<T> reflect(const JetVec3<T> &g, const Vec3<T> &p0, const Vec3<T> &b0)
{
    const auto height = (g[0] - p0[0]) * b0[0] + (g[1] - p0[1]) * b0[1] + (g[2] - p0[2]) * b0[2];
    JetVec3<T> r;
    for (std::size_t c = 0; c < 3; ++c) {
        r[c] = g[c] - height * (T(2) * b0[c]);
    }
    return r;
}

template <Scalar T>
IsometryReport<T> verify_isometry(const MapGerm<T> &f, const MapGerm<T> &g, int degree,
                                  const std::optional<SpaceCurveJet<T>> &boundary, const Tolerances<T> &tol)
{
    const auto a = first_fundamental_form(f, tol);
    const auto b = first_fundamental_form(g, tol);
    const int d = std::min({degree, a.E.certified(), a.F.certified(), a.G.certified(), b.E.certified(),
                            b.F.certified(), b.G.certified()});
    IsometryReport<T> r;
    r.degree = d;
    r.form_by_degree.assign(static_cast<std::size_t>(d) + 1, T(0));
    for (const auto &[x, y] : {std::pair{&a.E, &b.E}, std::pair{&a.F, &b.F}, std::pair{&a.G, &b.G}}) {
        for (int i = 0; i <= d; ++i) {
            for (int j = 0; i + j <= d; ++j) {
                auto &slot = r.form_by_degree[static_cast<std::size_t>(i + j)];
                slot = std::max(slot, scalar_abs((*x)(i, j) - (*y)(i, j)));
            }
        }
    }
    r.form_deviation = *std::max_element(r.form_by_degree.begin(), r.form_by_degree.end());

    try {
        const auto fa = adapt_germ(f, AdaptOptions<T>{}, tol);
        const auto ga = adapt_germ(g, AdaptOptions<T>{}, tol);
        const auto fi = edge_invariants(fa.germ, tol);
        const auto gi = edge_invariants(ga.germ, tol);
        if (fi.cuspidal_edge && gi.cuspidal_edge) {
            r.product_deviation = max_diff1(abs_product(fi), abs_product(gi), degree);
        }
    } catch (const Error &) {
        r.product_deviation.reset();
    }

    const auto target = boundary ? boundary->point : restrict_v0(f.point);
    r.boundary_deviation = max_diff_curve(restrict_v0(g.point), target, degree);
    return r;
}

template <Scalar T>
DeformationResult<T> deform_adapted(const AdaptResult<T> &source, const EdgeInvariants<T> &source_invariants,
                                    const SpaceCurveJet<T> &sigma, Branch branch, const PipelineOptions<T> &options)
{
    if (!source_invariants.generic) {
        throw Error(ErrorCode::NonGeneric, "limiting normal curvature vanishes at the origin");
    }
    const auto &tol = options.tol;
    DeformationResult<T> r;
    r.branch = branch;
    r.source = source;
    r.source_invariants = source_invariants;
    r.target = unit_speed(sigma, tol);

    const auto rhs = build_rhs_from_germ(source.germ, tol);
    const auto x = initial_field_or_throw(r.target, source_invariants.kappa_s, branch, tol);
    const int s = solve_order(source.germ, r.target, x, rhs, options);
    auto sol = ck_solve(rhs, r.target, x, s, tol);
    r.germ = std::move(sol.g);
    r.germ.status = CoordinateStatus::adapted;
    r.result_invariants = edge_invariants(r.germ, tol);

    auto &v = r.verification;
    v.isometry = verify_isometry(source.germ, r.germ, options.order, std::optional<SpaceCurveJet<T>>(r.target), tol);
    v.kappa_s_deviation = max_diff1(r.result_invariants.kappa_s, source_invariants.kappa_s, options.order - 2);
    if (v.isometry.form_deviation > options.form_tol) {
        v.failures.push_back("first fundamental form deviates by " + fmt(v.isometry.form_deviation));
    }
    if (!v.isometry.product_deviation) {
        v.failures.push_back("output is not a cuspidal edge");
    } else if (*v.isometry.product_deviation > options.product_tol) {
        v.failures.push_back("|kappa_c kappa_nu| deviates by " + fmt(*v.isometry.product_deviation));
    }
    if (v.isometry.boundary_deviation > options.boundary_tol) {
        v.failures.push_back("boundary curve deviates by " + fmt(v.isometry.boundary_deviation));
    }
    if (v.kappa_s_deviation > options.kappa_s_tol) {
        v.failures.push_back("singular curvature deviates by " + fmt(v.kappa_s_deviation));
    }
    if (!r.result_invariants.generic) {
        v.failures.push_back("output is not generic");
    }
    v.passed = v.failures.empty();
    return r;
}

template <Scalar T>
DeformationResult<T> deform_to_curve(const MapGerm<T> &f, const SpaceCurveJet<T> &sigma, Branch branch,
                                     const PipelineOptions<T> &options)
{
    const auto source =
        adapt_germ(truncated_germ(f, options.working_order()), AdaptOptions<T>{true}, options.tol);
    const auto inv = edge_invariants(source.germ, options.tol);
    return deform_adapted(source, inv, sigma, branch, options);
}

template <Scalar T>
DeformationResult<T> isomer(const MapGerm<T> &f, const PipelineOptions<T> &options)
{
    const auto source =
        adapt_germ(truncated_germ(f, options.working_order()), AdaptOptions<T>{true}, options.tol);
    const auto inv = edge_invariants(source.germ, options.tol);
    return deform_adapted(source, inv, source.germ.singular_image(), Branch::minus, options);
}

template <Scalar T>
FamilyResult<T> planar_normalization(const MapGerm<T> &f, Branch branch, const std::vector<T> &grid,
                                     const PipelineOptions<T> &options)
{
    const auto setup = prepare_family(f, options);
    FamilyResult<T> r;
    r.members = solve_family<T>(setup, grid, branch, options, &same<T>, &damped<T>);
    for (const auto &m : r.members) {
        if (scalar_abs(m.parameter - T(1)) < T(1e-12)) {
            const auto other = deform_adapted(setup.source, setup.invariants, m.target, opposite(branch), options);
            const auto &plus = branch == Branch::plus ? m.germ : other.germ;
            const auto &minus = branch == Branch::plus ? other.germ : m.germ;
            r.reflection_deviation =
                max_diff_germ(reflect(plus.point, setup.p0, setup.frame.b), minus.point, options.order);
        }
    }
    return r;
}

template <Scalar T>
FamilyResult<T> kappa_nu_family(const MapGerm<T> &f, const std::vector<T> &grid, const PipelineOptions<T> &options)
{
    const auto setup = prepare_family(f, options);
    FamilyResult<T> r;
    r.members = solve_family<T>(setup, grid, Branch::plus, options, &shifted<T>, &same<T>);
    T worst(0);
    const T ks0 = setup.invariants.kappa_s[0];
    for (const auto &m : r.members) {
        const T k = setup.invariants.kappa[0] + m.parameter;
        const T expected = scalar_sqrt(k * k - ks0 * ks0);
        worst = std::max(worst, scalar_abs(scalar_abs(m.result_invariants.kappa_nu[0]) - expected));
    }
    r.law_deviation = worst;
    return r;
}

template <Scalar T>
MetricRealization<T> realize_metric(const KossowskiMetric<T> &m, const SpaceCurveJet<T> &sigma, Branch branch,
                                    const PipelineOptions<T> &options)
{
    const auto &tol = options.tol;
    MetricRealization<T> r;
    r.branch = branch;
    r.metric = m;
    r.target = unit_speed(sigma, tol);
    const auto form = metric_to_fundform(m, tol);
    r.kappa_s = kappa_s_intrinsic(form, tol);
    const auto rhs = build_rhs_from_metric(m, tol);
    const auto x = initial_field_or_throw(r.target, r.kappa_s, branch, tol);
    const int s = std::min({r.target.order(), min_order(x.w) + 2, rhs.certified() + 3});
    if (s < options.order) {
        throw Error(ErrorCode::BudgetExhausted, "inputs support degree " + std::to_string(s) + ", requested " +
                                                    std::to_string(options.order));
    }
    auto sol = ck_solve(rhs, r.target, x, s, tol);
    r.residual = residual(sol.g, sol.psi, rhs).relative();
    r.germ = std::move(sol.g);

    const auto got = first_fundamental_form(r.germ, tol);
    const int d = std::min({options.order, got.E.certified(), got.G.certified(), form.E.certified(),
                            form.G.certified()});
    T dev(0);
    for (const auto &[x1, y1] : {std::pair{&got.E, &form.E}, std::pair{&got.F, &form.F}, std::pair{&got.G, &form.G}}) {
        for (int i = 0; i <= d; ++i) {
            for (int j = 0; i + j <= d; ++j) {
                dev = std::max(dev, scalar_abs((*x1)(i, j) - (*y1)(i, j)));
            }
        }
    }
    r.form_deviation = dev;
    r.boundary_deviation = max_diff_curve(restrict_v0(r.germ.point), r.target.point, options.order);

    try {
        const auto inv = edge_invariants(adapt_germ(r.germ, AdaptOptions<T>{}, tol).germ, tol);
        if (!inv.cuspidal_edge) {
            r.warnings.push_back("output is not a cuspidal edge (kappa_c(0) = 0)");
        }
        if (!inv.generic) {
            r.warnings.push_back("output is not generic (kappa_nu(0) = 0)");
        }
        r.invariants = inv;
    } catch (const Error &e) {
        r.warnings.push_back(std::string("output could not be classified: ") + e.what());
    }
    return r;
}

template <Scalar T>
MapGerm<T> to_source_coordinates(const DeformationResult<T> &result, const Tolerances<T> &tol)
{
    const auto back = invert(result.source.change, tol);
    return {pull_back(result.germ.point, back, tol), CoordinateStatus::singular_on_axis};
}

#define CFORGE_INSTANTIATE_DEFORMATION(T)                                                                          \
    template std::vector<T> linear_grid(T, T, int);                                                               \
    template JetVec3<T> reflect(const JetVec3<T> &, const Vec3<T> &, const Vec3<T> &);                            \
    template IsometryReport<T> verify_isometry(const MapGerm<T> &, const MapGerm<T> &, int,                       \
                                               const std::optional<SpaceCurveJet<T>> &, const Tolerances<T> &);   \
    template DeformationResult<T> deform_adapted(const AdaptResult<T> &, const EdgeInvariants<T> &,               \
                                                 const SpaceCurveJet<T> &, Branch, const PipelineOptions<T> &);   \
    template DeformationResult<T> deform_to_curve(const MapGerm<T> &, const SpaceCurveJet<T> &, Branch,           \
                                                  const PipelineOptions<T> &);                                    \
    template DeformationResult<T> isomer(const MapGerm<T> &, const PipelineOptions<T> &);                         \
    template FamilyResult<T> planar_normalization(const MapGerm<T> &, Branch, const std::vector<T> &,             \
                                                  const PipelineOptions<T> &);                                    \
    template FamilyResult<T> kappa_nu_family(const MapGerm<T> &, const std::vector<T> &,                          \
                                             const PipelineOptions<T> &);                                         \
    template MetricRealization<T> realize_metric(const KossowskiMetric<T> &, const SpaceCurveJet<T> &, Branch,    \
                                                 const PipelineOptions<T> &);                                     \
    template MapGerm<T> to_source_coordinates(const DeformationResult<T> &, const Tolerances<T> &);

CFORGE_INSTANTIATE_DEFORMATION(double)
CFORGE_INSTANTIATE_DEFORMATION(long double)

} // namespace cforge
