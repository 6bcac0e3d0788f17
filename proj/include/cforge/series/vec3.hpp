#ifndef CFORGE_SERIES_VEC3_HPP
#define CFORGE_SERIES_VEC3_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <type_traits>
#include <utility>

#include <cforge/error.hpp>
#include <cforge/series/jet1.hpp>
#include <cforge/series/jet2.hpp>
#include <cforge/series/scalar.hpp>

namespace cforge
{

template <typename E>
struct scalar_of {
    using type = E;
};

template <Scalar T>
struct scalar_of<Jet1<T>> {
    using type = T;
};

template <Scalar T>
struct scalar_of<Jet2<T>> {
    using type = T;
};

template <typename E>
using scalar_of_t = typename scalar_of<E>::type;

// Three-component vector over a ring element E: a scalar, a Jet1 or a Jet2.
template <typename E>
struct Vec3 {
    std::array<E, 3> c{};

    Vec3() = default;
    Vec3(E x, E y, E z) : c{std::move(x), std::move(y), std::move(z)} {}

    E &operator[](std::size_t i)
    {
        return c[i];
    }
    const E &operator[](std::size_t i) const
    {
        return c[i];
    }

    friend Vec3 operator+(const Vec3 &a, const Vec3 &b)
    {
        return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
    }
    friend Vec3 operator-(const Vec3 &a, const Vec3 &b)
    {
        return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
    }
    friend Vec3 operator-(const Vec3 &a)
    {
        return {-a[0], -a[1], -a[2]};
    }
    friend Vec3 operator*(const E &s, const Vec3 &a)
    {
        return {s * a[0], s * a[1], s * a[2]};
    }
    friend Vec3 operator*(const Vec3 &a, const E &s)
    {
        return {a[0] * s, a[1] * s, a[2] * s};
    }
    // Scalar multipliers for vectors of jets.
    friend Vec3 operator*(const scalar_of_t<E> &s, const Vec3 &a)
        requires(!std::is_same_v<E, scalar_of_t<E>>)
    {
        return {a[0] * s, a[1] * s, a[2] * s};
    }
    friend Vec3 operator*(const Vec3 &a, const scalar_of_t<E> &s)
        requires(!std::is_same_v<E, scalar_of_t<E>>)
    {
        return {a[0] * s, a[1] * s, a[2] * s};
    }
    friend Vec3 operator/(const Vec3 &a, const scalar_of_t<E> &s)
    {
        return {a[0] / s, a[1] / s, a[2] / s};
    }

    friend bool operator==(const Vec3 &, const Vec3 &) = default;
};

template <typename E>
E dot(const Vec3<E> &a, const Vec3<E> &b)
{
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <typename E>
Vec3<E> cross(const Vec3<E> &a, const Vec3<E> &b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <typename E>
E det3(const Vec3<E> &a, const Vec3<E> &b, const Vec3<E> &c)
{
    return dot(a, cross(b, c));
}

template <typename E, typename F>
auto map(const Vec3<E> &a, F &&fn)
{
    using R = decltype(fn(a[0]));
    return Vec3<R>{fn(a[0]), fn(a[1]), fn(a[2])};
}

// 3x3 matrix stored by rows.
template <typename E>
struct Mat3 {
    std::array<Vec3<E>, 3> rows{};

    Vec3<E> &operator[](std::size_t i)
    {
        return rows[i];
    }
    const Vec3<E> &operator[](std::size_t i) const
    {
        return rows[i];
    }

    static Mat3 from_rows(Vec3<E> r0, Vec3<E> r1, Vec3<E> r2)
    {
        Mat3 m;
        m.rows = {std::move(r0), std::move(r1), std::move(r2)};
        return m;
    }

    static Mat3 from_columns(const Vec3<E> &c0, const Vec3<E> &c1, const Vec3<E> &c2)
    {
        Mat3 m;
        for (std::size_t i = 0; i < 3; ++i) {
            m.rows[i] = Vec3<E>{c0[i], c1[i], c2[i]};
        }
        return m;
    }

    Vec3<E> column(std::size_t j) const
    {
        return {rows[0][j], rows[1][j], rows[2][j]};
    }

    friend Vec3<E> operator*(const Mat3 &m, const Vec3<E> &x)
    {
        return {dot(m[0], x), dot(m[1], x), dot(m[2], x)};
    }

    friend Mat3 operator*(const Mat3 &a, const Mat3 &b)
    {
        Mat3 r;
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                r.rows[i][j] = dot(a[i], b.column(j));
            }
        }
        return r;
    }
};

template <typename E>
E det(const Mat3<E> &m)
{
    return det3(m[0], m[1], m[2]);
}

// Transpose of the cofactor matrix: adj(m) * m = det(m) * I.
template <typename E>
Mat3<E> adjugate(const Mat3<E> &m)
{
    return Mat3<E>::from_columns(cross(m[1], m[2]), cross(m[2], m[0]), cross(m[0], m[1]));
}

namespace detail
{

template <Scalar T>
T reciprocal_of(const T &x, const Tolerances<T> &tol)
{
    if (!(scalar_abs(x) > tol.unit)) {
        throw Error(ErrorCode::NonUnitDivisor, "zero scalar determinant");
    }
    return T(1) / x;
}

template <Scalar T>
Jet1<T> reciprocal_of(const Jet1<T> &x, const Tolerances<T> &tol)
{
    return reciprocal(x, tol);
}

template <Scalar T>
Jet2<T> reciprocal_of(const Jet2<T> &x, const Tolerances<T> &tol)
{
    return reciprocal(x, tol);
}

template <typename E, Scalar T>
Mat3<E> adjugate_inverse(const Mat3<E> &m, const Tolerances<T> &tol)
{
    const E d = det(m);
    E inv_d;
    try {
        inv_d = reciprocal_of(d, tol);
    } catch (const Error &) {
        throw Error(ErrorCode::SingularAtOrigin, "determinant vanishes at the origin");
    }
    auto adj = adjugate(m);
    Mat3<E> r;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            r.rows[i][j] = adj[i][j] * inv_d;
        }
    }
    return r;
}

} // namespace detail

// Inverse through the adjugate and a unit-determinant division; the
// determinant must be a unit at the origin.
template <Scalar T>
Mat3<T> inverse(const Mat3<T> &m, const Tolerances<T> &tol = {})
{
    return detail::adjugate_inverse(m, tol);
}

template <Scalar T>
using JetVec3 = Vec3<Jet2<T>>;

template <Scalar T>
using JetMat3 = Mat3<Jet2<T>>;

template <Scalar T>
using CurveVec3 = Vec3<Jet1<T>>;

// Componentwise helpers that keep call sites short.
template <Scalar T>
Vec3<T> constant_term(const Vec3<Jet1<T>> &a)
{
    return {a[0][0], a[1][0], a[2][0]};
}

template <Scalar T>
Vec3<T> constant_term(const Vec3<Jet2<T>> &a)
{
    return {a[0](0, 0), a[1](0, 0), a[2](0, 0)};
}

template <Scalar T>
Vec3<Jet1<T>> derivative(const Vec3<Jet1<T>> &a)
{
    return map(a, [](const Jet1<T> &x) { return x.derivative(); });
}

template <Scalar T>
Vec3<Jet2<T>> derive_u(const Vec3<Jet2<T>> &a)
{
    return map(a, [](const Jet2<T> &x) { return x.derive_u(); });
}

template <Scalar T>
Vec3<Jet2<T>> derive_v(const Vec3<Jet2<T>> &a)
{
    return map(a, [](const Jet2<T> &x) { return x.derive_v(); });
}

template <Scalar T>
Vec3<Jet1<T>> restrict_v0(const Vec3<Jet2<T>> &a)
{
    return map(a, [](const Jet2<T> &x) { return x.restrict_v0(); });
}

template <Scalar T>
Vec3<Jet1<T>> truncated(const Vec3<Jet1<T>> &a, int order)
{
    return map(a, [order](const Jet1<T> &x) { return x.truncated(order); });
}

template <Scalar T>
T max_abs(const Vec3<Jet1<T>> &a)
{
    return std::max({a[0].max_abs(), a[1].max_abs(), a[2].max_abs()});
}

template <Scalar T>
T max_abs(const Vec3<Jet2<T>> &a, int max_degree = -1)
{
    return std::max({a[0].max_abs(max_degree), a[1].max_abs(max_degree), a[2].max_abs(max_degree)});
}

template <Scalar T>
int min_order(const Vec3<Jet1<T>> &a)
{
    return std::min({a[0].order(), a[1].order(), a[2].order()});
}

template <Scalar T>
int min_certified(const Vec3<Jet2<T>> &a)
{
    return std::min({a[0].certified(), a[1].certified(), a[2].certified()});
}

template <Scalar T>
Mat3<Jet2<T>> inverse(const Mat3<Jet2<T>> &m, const Tolerances<T> &tol = {})
{
    return detail::adjugate_inverse(m, tol);
}

template <Scalar T>
Mat3<Jet1<T>> inverse(const Mat3<Jet1<T>> &m, const Tolerances<T> &tol = {})
{
    return detail::adjugate_inverse(m, tol);
}

} // namespace cforge

#endif
