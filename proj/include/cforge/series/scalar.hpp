#ifndef CFORGE_SERIES_SCALAR_HPP
#define CFORGE_SERIES_SCALAR_HPP

#include <cmath>
#include <concepts>

namespace cforge
{

// Minimal numeric contract for jet coefficients: field operations, ordering,
// square root and absolute value. binary64 is the default; long double is the
// extended-precision option exercised by the test-suite.
template <typename T>
concept Scalar = std::regular<T> && requires(T a, T b, int i) {
    { a + b } -> std::convertible_to<T>;
    { a - b } -> std::convertible_to<T>;
    { a * b } -> std::convertible_to<T>;
    { a / b } -> std::convertible_to<T>;
    { -a } -> std::convertible_to<T>;
    { a < b } -> std::convertible_to<bool>;
    { T(i) };
    { std::sqrt(a) } -> std::convertible_to<T>;
    { std::abs(a) } -> std::convertible_to<T>;
};

template <Scalar T>
T scalar_sqrt(const T &x)
{
    using std::sqrt;
    return sqrt(x);
}

template <Scalar T>
T scalar_abs(const T &x)
{
    using std::abs;
    return abs(x);
}

template <Scalar T>
struct Tolerances {
    // A constant term counts as a unit when its magnitude exceeds this.
    T unit = T(1e-9);
    // Relative to the largest coefficient of the dividend.
    T divisibility = T(1e-9);
};

} // namespace cforge

#endif
