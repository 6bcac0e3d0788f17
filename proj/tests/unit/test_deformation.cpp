#include <cmath>

#include <doctest.h>

#include <cforge/deformation.hpp>

#include "germs.hpp"
#include "test_support.hpp"

using namespace cforge;
using namespace cforge::testing;

namespace
{

template <typename Fn>
ErrorCode code_of(Fn &&fn)
{
    try {
        fn();
    } catch (const Error &e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::ParseError;
}

PipelineOptions<double> options(int order = 6)
{
    PipelineOptions<double> o;
    o.order = order;
    return o;
}

} // namespace

TEST_CASE("the plus branch along the own image curve is the identity")
{
    const auto o = options();
    const auto f = sample_edge(o.working_order());
    const auto src = adapt_germ(f, AdaptOptions<double>{true});
    const auto r = deform_to_curve(f, src.germ.singular_image(), Branch::plus, o);
    CHECK(r.verification.passed);
    CHECK(max_diff(r.germ.point, src.germ.point, o.order) < 1e-7);
    CHECK(r.germ.status == CoordinateStatus::adapted);
}

TEST_CASE("the isomer of the sample edge")
{
    const auto o = options();
    const auto r = isomer(sample_edge(o.working_order()), o);
    const auto &v = r.verification;
    INFO(v.failures.size());
    CHECK(v.passed);
    CHECK(v.isometry.form_deviation <= 1e-7);
    CHECK(v.isometry.boundary_deviation <= 1e-8);
    REQUIRE(v.isometry.product_deviation.has_value());
    CHECK(*v.isometry.product_deviation <= 1e-6);
    CHECK(v.kappa_s_deviation <= 1e-7);
    CHECK(v.isometry.degree >= o.order);
    // A genuinely different germ.
    CHECK(max_diff(r.germ.point, r.source.germ.point, o.order) > 1e-4);
    // The minus branch reverses the sign of kappa_nu.
    CHECK(r.result_invariants.kappa_nu[0] < 0.0);
    CHECK(r.source_invariants.kappa_nu[0] > 0.0);
}

TEST_CASE("the isomer of the isomer is the source")
{
    const auto o = options();
    const auto first = isomer(sample_edge(o.working_order()), o);
    auto o2 = o;
    o2.headroom = 2;
    const auto second = isomer(first.germ, o2);
    const auto back = to_source_coordinates(second);
    CHECK(max_diff(back.point, first.source.germ.point, o.order) < 1e-7);
}

TEST_CASE("source coordinates undo the adaptation")
{
    const auto o = options();
    const auto f = sample_edge(o.working_order());
    const auto r = deform_to_curve(f, adapt_germ(f, AdaptOptions<double>{true}).germ.singular_image(), Branch::plus, o);
    CHECK(max_diff(to_source_coordinates(r).point, f.point, o.order) < 1e-7);
}

TEST_CASE("planar normalization of the sample edge")
{
    const auto o = options();
    const auto fam = planar_normalization(sample_edge(o.working_order()), Branch::plus, linear_grid(0.0, 1.0, 3), o);
    REQUIRE(fam.members.size() == 3);
    const auto src = fam.members[0].source.germ;
    CHECK(fam.members[0].parameter == 0.0);
    CHECK(max_diff(fam.members[0].germ.point, src.point, o.order) < 1e-7);
    const auto kappa = edge_invariants(src).kappa;
    for (const auto &m : fam.members) {
        CHECK(m.verification.passed);
        CHECK(max_diff(m.result_invariants.kappa, kappa, o.order - 2) < 1e-7);
    }
    const auto planar = frenet_apparatus(fam.members[2].germ.singular_image());
    CHECK(planar.tau.max_abs() <= 1e-7);
    REQUIRE(fam.reflection_deviation.has_value());
    CHECK(*fam.reflection_deviation <= 1e-7);
}

TEST_CASE("the limiting normal curvature family")
{
    const auto o = options();
    const auto fam = kappa_nu_family(sample_edge(o.working_order()), {0.5, 0.0, 0.25}, o);
    REQUIRE(fam.members.size() == 3);
    // Members come back ordered by s.
    CHECK(fam.members[0].parameter == 0.0);
    CHECK(fam.members[2].parameter == 0.5);
    CHECK(std::abs(fam.members[0].result_invariants.kappa_nu[0]) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(fam.members[1].result_invariants.kappa_nu[0]) == doctest::Approx(1.25).epsilon(1e-6));
    CHECK(std::abs(fam.members[2].result_invariants.kappa_nu[0]) == doctest::Approx(1.5).epsilon(1e-6));
    REQUIRE(fam.law_deviation.has_value());
    CHECK(*fam.law_deviation <= 1e-6);
    const auto base = fam.members[0].result_invariants;
    const double p0 = std::abs(base.kappa_c[0] * base.kappa_nu[0]);
    for (const auto &m : fam.members) {
        CHECK(m.verification.passed);
        CHECK(std::abs(m.result_invariants.kappa_c[0] * m.result_invariants.kappa_nu[0]) ==
              doctest::Approx(p0).epsilon(1e-6));
    }
}

TEST_CASE("family members below the curvature bound are rejected")
{
    const auto o = options();
    CHECK(code_of([&] { (void)kappa_nu_family(sample_edge(o.working_order()), {0.0, -1.0}, o); }) ==
          ErrorCode::CurvatureTooSmall);
}

TEST_CASE("a target curve whose curvature equals |kappa_s| is rejected")
{
    const auto o = options();
    auto rng = make_rng(41);
    const auto f = random_cuspidal_edge(rng, o.working_order());
    const auto src = adapt_germ(f, AdaptOptions<double>{true});
    const auto ks = edge_invariants(src.germ).kappa_s;
    REQUIRE(std::abs(ks[0]) > 1e-3);
    const auto sigma = curve_from_curvature_torsion(Jet1<double>::constant(std::abs(ks[0]), o.working_order()),
                                                    Jet1<double>(o.working_order()), Frame<double>{}, Vec3<double>{});
    CHECK(code_of([&] { (void)deform_to_curve(f, sigma, Branch::plus, o); }) == ErrorCode::CurvatureTooSmall);
}

TEST_CASE("non-generic and budget failures")
{
    const auto o = options();
    const auto cusp = standard_cusp(o.working_order());
    CHECK(code_of([&] { (void)isomer(cusp, o); }) == ErrorCode::NonGeneric);
    CHECK(code_of([&] { (void)isomer(sample_edge(o.order - 1), o); }) == ErrorCode::BudgetExhausted);
}

TEST_CASE("isometry report on reference pairs")
{
    const auto f = sample_edge(10);
    const auto same = verify_isometry(f, f, 8);
    CHECK(same.form_deviation == 0.0);
    CHECK(same.boundary_deviation == 0.0);
    REQUIRE(same.product_deviation.has_value());
    CHECK(*same.product_deviation == 0.0);

    const auto pair = verify_isometry(f, sample_partner(10), 6);
    REQUIRE(pair.form_by_degree.size() == 7);
    for (int k = 0; k <= 5; ++k) {
        CHECK(pair.form_by_degree[static_cast<std::size_t>(k)] <= 1e-9);
    }
    CHECK(pair.form_by_degree[6] > 0.0);

    // A rotation about the z-axis and a translation keep E, F, G.
    const double c = std::cos(0.7), s = std::sin(0.7);
    auto moved = f;
    moved.point[0] = f.point[0] * c - f.point[1] * s + 1.0;
    moved.point[1] = f.point[0] * s + f.point[1] * c;
    const auto rigid = verify_isometry(f, moved, 8);
    CHECK(rigid.form_deviation < 1e-14);
    CHECK(rigid.boundary_deviation > 0.1);
}

TEST_CASE("random germs deform along random curves")
{
    const auto o = options();
    auto rng = make_rng(42);
    for (int trial = 0; trial < 10; ++trial) {
        const auto f = random_cuspidal_edge(rng, o.working_order());
        const auto src = adapt_germ(f, AdaptOptions<double>{true});
        const auto inv = edge_invariants(src.germ);
        auto kappa = random_jet1<double>(rng, o.working_order(), 0.2);
        kappa[0] = std::abs(inv.kappa_s[0]) + 0.8;
        const auto tau = random_jet1<double>(rng, o.working_order(), 0.5);
        const auto sigma = curve_from_curvature_torsion(kappa, tau, Frame<double>{}, Vec3<double>{});
        for (const auto b : {Branch::plus, Branch::minus}) {
            const auto r = deform_adapted(src, inv, sigma, b, o);
            CHECK(r.verification.passed);
        }
    }
}

TEST_CASE("metric realization reports the intrinsic data")
{
    const int n = 12;
    const KossowskiMetric<double> m{Jet2<double>::constant(0.5, n), Jet2<double>::constant(1, n)};
    const auto circle =
        curve_from_curvature_torsion(Jet1<double>::constant(1, n), Jet1<double>(n), Frame<double>{}, Vec3<double>{});
    const auto r = realize_metric(m, circle, Branch::plus, options());
    CHECK(r.kappa_s[0] == doctest::Approx(-0.5).epsilon(1e-9));
    CHECK(r.form_deviation <= 1e-7);
    CHECK(r.boundary_deviation <= 1e-8);
    CHECK(r.residual <= 1e-10);
    REQUIRE(r.invariants.has_value());
    CHECK(r.invariants->kappa_s[0] == doctest::Approx(-0.5).epsilon(1e-6));
    CHECK(r.invariants->kappa_nu[0] * r.invariants->kappa_nu[0] == doctest::Approx(0.75).epsilon(1e-5));
    // G0 constant in v forces phi_v = 0 on the axis, so kappa_c(0) = 0 and the
    // output is a front but not a cuspidal edge.
    CHECK(std::abs(r.invariants->kappa_c[0]) < 1e-9);
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].find("cuspidal") != std::string::npos);
}

TEST_CASE("grids and reflections")
{
    const auto g = linear_grid(0.0, 1.0, 11);
    REQUIRE(g.size() == 11);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == 1.0);
    CHECK(g[5] == doctest::Approx(0.5));
    CHECK(linear_grid(0.3, 1.0, 1).size() == 1);

    const auto f = sample_edge(6);
    const auto once = reflect(f.point, Vec3<double>{0, 0, 1}, Vec3<double>{0, 0, 1});
    CHECK(max_diff(once[2], 2.0 - f.point[2], 6) < 1e-15);
    const auto twice = reflect(once, Vec3<double>{0, 0, 1}, Vec3<double>{0, 0, 1});
    CHECK(max_diff(twice, f.point, 6) < 1e-15);
}
