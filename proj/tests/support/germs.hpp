#ifndef CFORGE_TESTS_GERMS_HPP
#define CFORGE_TESTS_GERMS_HPP

#include <initializer_list>
#include <random>

#include <cforge/edge_geometry.hpp>

#include "test_support.hpp"

namespace cforge::testing
{

struct Monomial {
    int i, j;
    double x, y, z;
};

template <Scalar T = double>
MapGerm<T> germ_from(std::initializer_list<Monomial> terms, int order)
{
    MapGerm<T> g;
    g.point = {Jet2<T>(order, order), Jet2<T>(order, order), Jet2<T>(order, order)};
    for (const auto &m : terms) {
        if (m.i <= order && m.j <= order) {
            g.point[0].coeff(m.i, m.j) += T(m.x);
            g.point[1].coeff(m.i, m.j) += T(m.y);
            g.point[2].coeff(m.i, m.j) += T(m.z);
        }
    }
    return g;
}

// (u, -v^2/2 + u^3/6, u^2/2 + u^3/6 + v^3/6).
template <Scalar T = double>
MapGerm<T> sample_edge(int order)
{
    return germ_from<T>({{1, 0, 1, 0, 0},
                         {0, 2, 0, -0.5, 0},
                         {3, 0, 0, 1.0 / 6, 1.0 / 6},
                         {2, 0, 0, 0, 0.5},
                         {0, 3, 0, 0, 1.0 / 6}},
                        order);
}

// A degree-6 polynomial whose first fundamental form agrees with that of
// sample_edge through total degree 5, approximating its isomer.
template <Scalar T = double>
MapGerm<T> sample_partner(int order)
{
    return germ_from<T>({// first component
                         {1, 0, 1, 0, 0},
                         {2, 2, 0.5, 0, 0},
                         {3, 2, -0.5, 0, 0},
                         {1, 4, -0.5, 0, 0},
                         {0, 5, 1.0 / 30, 0, 0},
                         {3, 3, 1.0 / 6, 0, 0},
                         {2, 4, 9.0 / 4, 0, 0},
                         {0, 6, 1.0 / 6, 0, 0},
                         // second component
                         {0, 2, 0, 0.5, 0},
                         {3, 0, 0, 1.0 / 6, 0},
                         {2, 2, 0, -1, 0},
                         {1, 3, 0, 1.0 / 3, 0},
                         {3, 2, 0, 2, 0},
                         {2, 3, 0, -1.0 / 3, 0},
                         {1, 4, 0, 1, 0},
                         {0, 5, 0, -1.0 / 5, 0},
                         {4, 2, 0, -9.0 / 4, 0},
                         {2, 4, 0, -6, 0},
                         {1, 5, 0, 13.0 / 15, 0},
                         {0, 6, 0, -11.0 / 36, 0},
                         // third component
                         {2, 0, 0, 0, 0.5},
                         {3, 0, 0, 0, 1.0 / 6},
                         {1, 2, 0, 0, -1},
                         {0, 3, 0, 0, 1.0 / 6},
                         {2, 2, 0, 0, 1},
                         {0, 4, 0, 0, 0.5},
                         {2, 3, 0, 0, -1.0 / 3},
                         {1, 4, 0, 0, -2.5},
                         {0, 5, 0, 0, -1.0 / 15},
                         {4, 2, 0, 0, -2},
                         {3, 3, 0, 0, 2.0 / 3},
                         {2, 4, 0, 0, 6},
                         {1, 5, 0, 0, 0.4},
                         {0, 6, 0, 0, 25.0 / 18}},
                        order);
}

template <Scalar T = double>
MapGerm<T> standard_cusp(int order)
{
    return germ_from<T>({{1, 0, 1, 0, 0}, {0, 2, 0, 1, 0}, {0, 3, 0, 0, 1}}, order);
}

template <Scalar T = double>
MapGerm<T> plane(int order)
{
    return germ_from<T>({{1, 0, 1, 0, 0}, {0, 1, 0, 1, 0}}, order);
}

// gamma(u) + v^2 Q(u, v) with random gamma, Q: a cuspidal edge along the
// u-axis with |kappa_nu(0)| bounded away from 0, or with kappa_nu(0) = 0 when
// `generic` is false.
template <Scalar T = double>
MapGerm<T> random_cuspidal_edge(std::mt19937_64 &rng, int order, bool generic = true)
{
    JetVec3<T> p;
    for (std::size_t c = 0; c < 3; ++c) {
        p[c] = Jet2<T>(order, order);
    }
    const Vec3<T> e1{T(1) + uniform<T>(rng, T(-0.3), T(0.3)), uniform<T>(rng, T(-0.2), T(0.2)),
                     uniform<T>(rng, T(-0.2), T(0.2))};
    const Vec3<T> q0{uniform<T>(rng, T(-0.3), T(0.3)), T(1) + uniform<T>(rng, T(-0.3), T(0.3)),
                     uniform<T>(rng, T(-0.3), T(0.3))};
    const Vec3<T> q1{uniform<T>(rng, T(-0.3), T(0.3)), uniform<T>(rng, T(-0.3), T(0.3)),
                     T(1) + uniform<T>(rng, T(-0.3), T(0.3))};
    for (std::size_t c = 0; c < 3; ++c) {
        p[c].coeff(1, 0) = e1[c];
        p[c].coeff(0, 2) = q0[c];
        p[c].coeff(0, 3) = q1[c];
        for (int i = 2; i <= order; ++i) {
            p[c].coeff(i, 0) = uniform<T>(rng, T(-0.25), T(0.25));
        }
        for (int i = 0; i <= order; ++i) {
            for (int j = 2; i + j <= order; ++j) {
                if ((i == 0 && j <= 3)) {
                    continue;
                }
                p[c].coeff(i, j) = uniform<T>(rng, T(-0.15), T(0.15));
            }
        }
    }
    // gamma''(0) = a e1 + b q0 + c n with |c| >= 0.5 for generic germs and
    // c = 0 otherwise, n the unit normal of span(e1, q0).
    auto n = cross(e1, q0);
    n = n / scalar_sqrt(dot(n, n));
    const T a = uniform<T>(rng, T(-0.5), T(0.5));
    const T b = uniform<T>(rng, T(-0.5), T(0.5));
    T c(0);
    if (generic) {
        c = uniform<T>(rng, T(0.5), T(1.2)) * (uniform<T>(rng) < T(0) ? T(-1) : T(1));
    }
    for (std::size_t k = 0; k < 3; ++k) {
        p[k].coeff(2, 0) = (a * e1[k] + b * q0[k] + c * n[k]) / T(2);
    }
    return {p, CoordinateStatus::singular_on_axis};
}

// A random change (u, v) -> (u + v A(u, v), v B(u, v)) with B(0, 0) > 0; it
// keeps the singular set on the u-axis but moves the null direction.
template <Scalar T = double>
CoordinateChange<T> random_axis_change(std::mt19937_64 &rng, int order)
{
    auto a = random_jet2<T>(rng, order, order - 1, T(0.3));
    auto b = random_jet2<T>(rng, order, order - 1, T(0.2));
    b.coeff(0, 0) = uniform<T>(rng, T(0.7), T(1.4));
    return {Jet2<T>::u(order) + a.mul_v(), b.mul_v()};
}

} // namespace cforge::testing

#endif
