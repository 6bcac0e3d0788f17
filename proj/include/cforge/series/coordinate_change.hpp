#ifndef CFORGE_SERIES_COORDINATE_CHANGE_HPP
#define CFORGE_SERIES_COORDINATE_CHANGE_HPP

#include <algorithm>

#include <cforge/error.hpp>
#include <cforge/series/jet2.hpp>
#include <cforge/series/vec3.hpp>

namespace cforge
{

// A jet of a local diffeomorphism (u, v) -> (xi(u, v), eta(u, v)) fixing the
// origin. A germ f is pulled back as f o change.
template <Scalar T>
struct CoordinateChange {
    Jet2<T> xi;
    Jet2<T> eta;

    static CoordinateChange identity(int order)
    {
        return {Jet2<T>::u(order), Jet2<T>::v(order)};
    }

    int certified() const
    {
        return std::min(xi.certified(), eta.certified());
    }
};

template <Scalar T>
Vec3<Jet2<T>> pull_back(const Vec3<Jet2<T>> &f, const CoordinateChange<T> &c, const Tolerances<T> &tol = {})
{
    return map(f, [&](const Jet2<T> &x) { return compose(x, c.xi, c.eta, tol); });
}

// outer o inner: first apply inner to the new coordinates, then outer.
template <Scalar T>
CoordinateChange<T> then(const CoordinateChange<T> &outer, const CoordinateChange<T> &inner,
                         const Tolerances<T> &tol = {})
{
    return {compose(outer.xi, inner.xi, inner.eta, tol), compose(outer.eta, inner.xi, inner.eta, tol)};
}

// Compositional inverse by fixed-point iteration on the nonlinear part; each
// sweep fixes one more total degree.
template <Scalar T>
CoordinateChange<T> invert(const CoordinateChange<T> &c, const Tolerances<T> &tol = {})
{
    const int d = c.certified();
    const T a = c.xi(1, 0), b = c.xi(0, 1), p = c.eta(1, 0), q = c.eta(0, 1);
    const T jac = a * q - b * p;
    if (!(scalar_abs(jac) > tol.unit)) {
        throw Error(ErrorCode::SingularAtOrigin, "coordinate change has a singular linear part");
    }
    auto nonlinear = [&](const Jet2<T> &x) {
        auto r = x.resized(d);
        r.coeff(0, 0) = T(0);
        r.coeff(1, 0) = T(0);
        r.coeff(0, 1) = T(0);
        return r;
    };
    const auto nxi = nonlinear(c.xi);
    const auto neta = nonlinear(c.eta);
    const auto u = Jet2<T>::u(d);
    const auto v = Jet2<T>::v(d);

    CoordinateChange<T> inv{(q * u - b * v) / jac, (a * v - p * u) / jac};
    for (int sweep = 1; sweep < d; ++sweep) {
        const auto ru = u - compose(nxi, inv.xi, inv.eta, tol);
        const auto rv = v - compose(neta, inv.xi, inv.eta, tol);
        inv = {(q * ru - b * rv) / jac, (a * rv - p * ru) / jac};
    }
    return inv;
}

} // namespace cforge

#endif
