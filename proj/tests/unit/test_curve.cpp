#include <cmath>
#include <vector>

#include <doctest.h>

#include <cforge/curve_geometry.hpp>

#include "test_support.hpp"

using namespace cforge;
using cforge::testing::make_rng;
using cforge::testing::max_diff;
using cforge::testing::max_nonconstant;
using cforge::testing::uniform;

namespace
{

constexpr int kOrder = 10;

// Taylor coefficients of cos and sin about 0.
Jet1<double> cos_series(int n, double scale = 1.0)
{
    Jet1<double> r(n);
    double fact = 1.0;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) {
            fact *= k;
        }
        if (k % 2 == 0) {
            r[k] = ((k / 2) % 2 == 0 ? 1.0 : -1.0) * std::pow(scale, k) / fact;
        }
    }
    return r;
}

Jet1<double> sin_series(int n, double scale = 1.0)
{
    Jet1<double> r(n);
    double fact = 1.0;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) {
            fact *= k;
        }
        if (k % 2 == 1) {
            r[k] = ((k / 2) % 2 == 0 ? 1.0 : -1.0) * std::pow(scale, k) / fact;
        }
    }
    return r;
}

SpaceCurveJet<double> sample_curve(int n)
{
    SpaceCurveJet<double> c;
    c.point[0] = Jet1<double>::variable(n);
    c.point[1] = Jet1<double>(n);
    c.point[1][3] = 1.0 / 6.0;
    c.point[2] = Jet1<double>(n);
    c.point[2][2] = 0.5;
    c.point[2][3] = 1.0 / 6.0;
    return c;
}

Jet1<double> constant(double c, int n)
{
    return Jet1<double>::constant(c, n);
}

template <typename T>
Jet1<T> random_positive(std::mt19937_64 &rng, int n)
{
    auto k = cforge::testing::random_jet1<T>(rng, n, T(0.5));
    k[0] = uniform<T>(rng, T(0.5), T(1.5));
    return k;
}

} // namespace

TEST_CASE("frenet apparatus of the unit circle and the helix")
{
    SpaceCurveJet<double> circle;
    circle.point = {cos_series(kOrder), sin_series(kOrder), Jet1<double>(kOrder)};
    const auto fc = frenet_apparatus(circle);
    CHECK(max_diff(fc.kappa, constant(1.0, fc.kappa.order())) < 1e-12);
    CHECK(fc.tau.max_abs() < 1e-12);
    CHECK(fc.kappa.order() == kOrder - 2);
    CHECK(fc.tau.order() == kOrder - 3);

    SpaceCurveJet<double> helix;
    helix.point = {cos_series(kOrder), sin_series(kOrder), Jet1<double>::variable(kOrder)};
    const auto fh = frenet_apparatus(helix);
    CHECK(max_diff(fh.kappa, constant(0.5, fh.kappa.order())) < 1e-12);
    CHECK(max_diff(fh.tau, constant(0.5, fh.tau.order())) < 1e-12);
}

TEST_CASE("frenet apparatus of the cuspidal-edge image curve")
{
    const auto f = frenet_apparatus(sample_curve(kOrder));
    CHECK(f.kappa[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(f.tau[0] == doctest::Approx(-1.0).epsilon(1e-14));
    const auto frame = f.frame_at_origin();
    CHECK(frame.e[0] == doctest::Approx(1.0));
    CHECK(frame.n[2] == doctest::Approx(1.0));
    CHECK(frame.b[1] == doctest::Approx(-1.0));

    // kappa^2 = 2 d / (2 + 2t^2 + 2t^3 + t^4)^3 and tau = -4 / d with
    // d = 4 + 8t + 8t^2 + t^4, from |c' x c''|^2 = d/4 and det(c', c'', c''') = -1.
    const int n = f.tau.order();
    const auto d_n = Jet1<double>(std::vector<double>{4, 8, 8, 0, 1, 0, 0, 0, 0, 0, 0}).truncated(n);
    const auto s_n = Jet1<double>(std::vector<double>{2, 0, 2, 2, 1, 0, 0, 0, 0, 0, 0}).truncated(n);
    const auto kappa_sq = divide(2.0 * d_n, s_n * s_n * s_n);
    const auto tau = divide(constant(-4.0, n), d_n);
    CHECK(max_diff(f.kappa * f.kappa, kappa_sq, n) < 1e-12);
    CHECK(max_diff(f.tau, tau, n) < 1e-12);
}

TEST_CASE("frenet apparatus rejects degenerate curves")
{
    SpaceCurveJet<double> line;
    line.point = {Jet1<double>::variable(6), Jet1<double>(6), Jet1<double>(6)};
    CHECK_THROWS_AS(frenet_apparatus(line), Error);
    try {
        (void)frenet_apparatus(line);
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::DegenerateCurve);
    }
    SpaceCurveJet<double> stalled;
    stalled.point = {Jet1<double>(6), Jet1<double>(6), Jet1<double>(6)};
    stalled.point[0][2] = 1.0;
    CHECK_THROWS_AS(frenet_apparatus(stalled), Error);
}

TEST_CASE("plane circle synthesis")
{
    const auto c = curve_from_curvature_torsion(constant(1.0, kOrder), Jet1<double>(kOrder), Frame<double>{},
                                                Vec3<double>{});
    CHECK(c.order() == kOrder + 2);
    CHECK(c.arclength_certified);
    CHECK(max_diff(c.point[0], sin_series(kOrder + 2)) < 1e-15);
    CHECK(max_diff(c.point[1], 1.0 - cos_series(kOrder + 2)) < 1e-15);
    CHECK(c.point[2].max_abs() == 0.0);
}

TEST_CASE("curve synthesis validates its inputs")
{
    Frame<double> skew;
    skew.n = {0.1, 1.0, 0.0};
    CHECK_THROWS_AS(curve_from_curvature_torsion(constant(1.0, 4), Jet1<double>(4), skew, Vec3<double>{}), Error);
    Frame<double> left;
    left.b = {0.0, 0.0, -1.0};
    try {
        (void)curve_from_curvature_torsion(constant(1.0, 4), Jet1<double>(4), left, Vec3<double>{});
        FAIL("left-handed frame accepted");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::NonOrthonormalFrame);
    }
    try {
        (void)curve_from_curvature_torsion(constant(0.0, 4), Jet1<double>(4), Frame<double>{}, Vec3<double>{});
        FAIL("zero curvature accepted");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::DegenerateCurve);
    }
}

TEST_CASE_TEMPLATE("frenet round trip on random curvature and torsion", T, double, long double)
{
    auto rng = make_rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 8;
        const auto kappa = random_positive<T>(rng, n);
        const auto tau = cforge::testing::random_jet1<T>(rng, n);
        // A random rotation of the canonical frame through Gram-Schmidt.
        Vec3<T> e{uniform<T>(rng), uniform<T>(rng), uniform<T>(rng)};
        e = e / scalar_sqrt(dot(e, e));
        Vec3<T> m{uniform<T>(rng), uniform<T>(rng), uniform<T>(rng)};
        m = m - dot(m, e) * e;
        m = m / scalar_sqrt(dot(m, m));
        const Frame<T> frame{e, m, cross(e, m)};
        const Vec3<T> p0{uniform<T>(rng), uniform<T>(rng), uniform<T>(rng)};

        const auto c = curve_from_curvature_torsion(kappa, tau, frame, p0);
        CHECK(unit_speed_defect(c) < T(1e-12));
        const auto f = frenet_apparatus(c);
        CHECK(max_diff(f.kappa, kappa) < T(1e-8));
        CHECK(max_diff(f.tau, tau) < T(1e-8));
        const auto e0 = constant_term(f.e);
        CHECK(scalar_abs(dot(e0, e) - T(1)) < T(1e-12));
        CHECK(constant_term(c.point) == p0);
    }
}

TEST_CASE("image curve rebuilt from its own curvature, torsion and frame")
{
    const auto gamma = sample_curve(kOrder);
    const auto unit = arclength_reparam(gamma);
    const auto f = frenet_apparatus(unit.curve);
    const auto rebuilt = curve_from_curvature_torsion(f.kappa, f.tau, f.frame_at_origin(), constant_term(gamma.point));
    CHECK(max_diff(rebuilt.point, unit.curve.point, f.tau.order() + 2) < 1e-10);
}

TEST_CASE("arclength reparametrization")
{
    SpaceCurveJet<double> line;
    line.point = {2.0 * Jet1<double>::variable(6), Jet1<double>(6), Jet1<double>(6)};
    const auto r = arclength_reparam(line);
    CHECK(max_diff(r.s_inverse, 0.5 * Jet1<double>::variable(6)) < 1e-15);

    const auto circle = curve_from_curvature_torsion(constant(1.0, 8), Jet1<double>(8), Frame<double>{},
                                                     Vec3<double>{});
    const auto same = arclength_reparam(circle);
    CHECK(max_diff(same.s_inverse, Jet1<double>::variable(same.s_inverse.order())) < 1e-14);

    const auto unit = arclength_reparam(sample_curve(kOrder));
    CHECK(unit_speed_defect(unit.curve) < 1e-10);
    CHECK(unit_speed_defect(sample_curve(kOrder)) == doctest::Approx(1.0));

    SpaceCurveJet<double> stalled;
    stalled.point = {Jet1<double>(4), Jet1<double>(4), Jet1<double>(4)};
    CHECK_THROWS_AS(arclength_reparam(stalled), Error);
}

TEST_CASE("orthonormal completion")
{
    const Vec3<double> a{0, 0, 1}, b{1, 0, 0};
    const auto w = orthonormal_completion(a, b, 0.6, Handedness::positive);
    CHECK(w[0] == doctest::Approx(0.6));
    CHECK(w[1] == doctest::Approx(0.8));
    CHECK(w[2] == doctest::Approx(0.0));
    CHECK(det3(a, b, w) == doctest::Approx(0.8));

    const auto w0 = orthonormal_completion(a, b, 0.0, Handedness::negative);
    // a x b = (0, 1, 0).
    CHECK(w0[0] == 0.0);
    CHECK(w0[1] == doctest::Approx(-1.0));
    CHECK(w0[2] == 0.0);

    try {
        (void)orthonormal_completion(a, b, 1.0, Handedness::positive);
        FAIL("|mu| = 1 accepted");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::MuOutOfRange);
    }
    try {
        (void)orthonormal_completion(a, Vec3<double>{1, 0, 0.1}, 0.2, Handedness::positive);
        FAIL("non-orthonormal pair accepted");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::NotOrthonormal);
    }
}

TEST_CASE("orthonormal completion properties on random frames")
{
    auto rng = make_rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        Vec3<double> a{uniform(rng), uniform(rng), uniform(rng)};
        a = a / std::sqrt(dot(a, a));
        Vec3<double> b{uniform(rng), uniform(rng), uniform(rng)};
        b = b - dot(a, b) * a;
        b = b / std::sqrt(dot(b, b));
        const double mu = uniform(rng, -0.99, 0.99);
        const auto wp = orthonormal_completion(a, b, mu, Handedness::positive);
        const auto wm = orthonormal_completion(a, b, mu, Handedness::negative);
        for (const auto &w : {wp, wm}) {
            CHECK(std::abs(dot(w, a)) < 1e-10);
            CHECK(std::abs(dot(w, b) - mu) < 1e-10);
            CHECK(std::abs(dot(w, w) - 1.0) < 1e-10);
        }
        CHECK(det3(a, b, wp) > 0.0);
        CHECK(det3(a, b, wm) < 0.0);
        const auto sum = wp + wm;
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(std::abs(sum[i] - 2.0 * mu * b[i]) < 1e-12);
        }
    }
}

TEST_CASE("initial normal field satisfies its defining identities")
{
    auto rng = make_rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 8;
        const auto kappa = random_positive<double>(rng, n);
        const auto tau = cforge::testing::random_jet1<double>(rng, n);
        const auto sigma = curve_from_curvature_torsion(kappa, tau, Frame<double>{}, Vec3<double>{});
        auto kappa_s = cforge::testing::random_jet1<double>(rng, n, 0.3);
        kappa_s[0] = uniform(rng, -0.9, 0.9) * kappa[0];
        const auto frenet = frenet_apparatus(sigma);
        const auto d1 = sigma.velocity();
        const auto d2 = derivative(d1);
        for (const auto branch : {Branch::plus, Branch::minus}) {
            const auto x = initial_normal_field(sigma, frenet, kappa_s, branch);
            CHECK(max_nonconstant(dot(x.w, x.w)) < 1e-10);
            CHECK(std::abs(dot(x.w, x.w)[0] - 1.0) < 1e-10);
            CHECK(dot(x.w, d1).max_abs() < 1e-10);
            CHECK(max_diff(dot(x.w, d2), kappa_s) < 1e-10);
            const double orientation = det3(d1, x.w, d2)[0];
            CHECK((branch == Branch::plus ? orientation > 0.0 : orientation < 0.0));
        }
    }
}

TEST_CASE("initial normal field special cases")
{
    const auto sigma = curve_from_curvature_torsion(constant(2.0, 8), constant(0.3, 8), Frame<double>{},
                                                    Vec3<double>{});
    const auto d2 = derivative(sigma.velocity());
    const auto plus = initial_normal_field(sigma, Jet1<double>(8), Branch::plus);
    const auto minus = initial_normal_field(sigma, Jet1<double>(8), Branch::minus);
    CHECK(dot(plus.w, d2).max_abs() < 1e-12);
    CHECK(max_diff(plus.w, -minus.w) < 1e-15);
    // At t = 0 the binormal is (0, 0, 1) and X+ = -b.
    CHECK(constant_term(plus.w)[2] == doctest::Approx(-1.0));

    try {
        (void)initial_normal_field(sigma, constant(2.0, 8), Branch::plus);
        FAIL("kappa_s = kappa accepted");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::GenericityViolated);
    }
    try {
        (void)initial_normal_field(sample_curve(6), Jet1<double>(6), Branch::plus);
        FAIL("non-arclength curve accepted");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::DegenerateCurve);
    }
}

TEST_CASE("reflection across the osculating plane exchanges the branches")
{
    auto rng = make_rng(14);
    for (int trial = 0; trial < 20; ++trial) {
        const auto kappa = random_positive<double>(rng, 8);
        const auto sigma = curve_from_curvature_torsion(kappa, Jet1<double>(8), Frame<double>{}, Vec3<double>{});
        auto kappa_s = cforge::testing::random_jet1<double>(rng, 8, 0.3);
        kappa_s[0] = 0.5 * kappa[0];
        const auto plus = initial_normal_field(sigma, kappa_s, Branch::plus);
        const auto minus = initial_normal_field(sigma, kappa_s, Branch::minus);
        // The curve lies in z = 0, so the reflection only negates z.
        CHECK(sigma.point[2].max_abs() < 1e-15);
        auto reflected = plus.w;
        reflected[2] = -reflected[2];
        CHECK(max_diff(reflected, minus.w) < 1e-12);
    }
}
