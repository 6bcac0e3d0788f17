#ifndef CFORGE_SERIES_JET1_HPP
#define CFORGE_SERIES_JET1_HPP

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <cforge/error.hpp>
#include <cforge/series/scalar.hpp>

namespace cforge
{

// Truncated univariate power series c_0 + c_1 t + ... + c_N t^N.
//
// Every stored coefficient is exact (up to scalar rounding); the order N is
// the certified degree. Binary operations truncate to the smaller order, so
// the order of a result is always the degree to which it is known.
template <Scalar T>
class Jet1
{
public:
    Jet1() : m_coeffs(1, T(0)) {}

    explicit Jet1(int order) : m_coeffs(static_cast<std::size_t>(checked_order(order)) + 1u, T(0)) {}

    explicit Jet1(std::vector<T> coeffs) : m_coeffs(std::move(coeffs))
    {
        if (m_coeffs.empty()) {
            m_coeffs.push_back(T(0));
        }
    }

    static Jet1 constant(const T &c, int order)
    {
        Jet1 r(order);
        r.m_coeffs[0] = c;
        return r;
    }

    // The series t.
    static Jet1 variable(int order)
    {
        Jet1 r(order);
        if (order >= 1) {
            r.m_coeffs[1] = T(1);
        }
        return r;
    }

    int order() const noexcept
    {
        return static_cast<int>(m_coeffs.size()) - 1;
    }

    const T &operator[](int k) const
    {
        assert(k >= 0 && k <= order());
        return m_coeffs[static_cast<std::size_t>(k)];
    }

    T &operator[](int k)
    {
        assert(k >= 0 && k <= order());
        return m_coeffs[static_cast<std::size_t>(k)];
    }

    std::span<const T> coeffs() const noexcept
    {
        return m_coeffs;
    }

    Jet1 truncated(int order) const
    {
        const int n = std::min(order, this->order());
        return Jet1(std::vector<T>(m_coeffs.begin(), m_coeffs.begin() + (n + 1)));
    }

    Jet1 derivative() const
    {
        if (order() == 0) {
            throw Error(ErrorCode::ZeroBudget, "derivative of an order-0 jet");
        }
        Jet1 r(order() - 1);
        for (int k = 1; k <= order(); ++k) {
            r[k - 1] = T(k) * (*this)[k];
        }
        return r;
    }

    // Antiderivative with prescribed constant term; gains one order.
    Jet1 integral(const T &c0 = T(0)) const
    {
        Jet1 r(order() + 1);
        r[0] = c0;
        for (int k = 0; k <= order(); ++k) {
            r[k + 1] = (*this)[k] / T(k + 1);
        }
        return r;
    }

    T evaluate(const T &t) const
    {
        T acc(0);
        for (int k = order(); k >= 0; --k) {
            acc = acc * t + (*this)[k];
        }
        return acc;
    }

    T max_abs() const
    {
        T m(0);
        for (const auto &c : m_coeffs) {
            m = std::max(m, scalar_abs(c));
        }
        return m;
    }

    Jet1 operator-() const
    {
        Jet1 r(*this);
        for (auto &c : r.m_coeffs) {
            c = -c;
        }
        return r;
    }

    Jet1 &operator+=(const Jet1 &o)
    {
        truncate_in_place(o.order());
        for (int k = 0; k <= order(); ++k) {
            (*this)[k] += o[k];
        }
        return *this;
    }

    Jet1 &operator-=(const Jet1 &o)
    {
        truncate_in_place(o.order());
        for (int k = 0; k <= order(); ++k) {
            (*this)[k] -= o[k];
        }
        return *this;
    }

    Jet1 &operator*=(const T &s)
    {
        for (auto &c : m_coeffs) {
            c *= s;
        }
        return *this;
    }

    friend Jet1 operator+(Jet1 a, const Jet1 &b)
    {
        return a += b;
    }

    friend Jet1 operator-(Jet1 a, const Jet1 &b)
    {
        return a -= b;
    }

    friend Jet1 operator*(const Jet1 &a, const Jet1 &b)
    {
        const int n = std::min(a.order(), b.order());
        Jet1 r(n);
        for (int i = 0; i <= n; ++i) {
            if (a[i] == T(0)) {
                continue;
            }
            for (int j = 0; i + j <= n; ++j) {
                r[i + j] += a[i] * b[j];
            }
        }
        return r;
    }

    friend Jet1 operator*(Jet1 a, const T &s)
    {
        return a *= s;
    }

    friend Jet1 operator*(const T &s, Jet1 a)
    {
        return a *= s;
    }

    friend Jet1 operator/(Jet1 a, const T &s)
    {
        for (auto &c : a.m_coeffs) {
            c /= s;
        }
        return a;
    }

    friend Jet1 operator+(Jet1 a, const T &s)
    {
        a[0] += s;
        return a;
    }

    friend Jet1 operator+(const T &s, Jet1 a)
    {
        a[0] += s;
        return a;
    }

    friend Jet1 operator-(Jet1 a, const T &s)
    {
        a[0] -= s;
        return a;
    }

    friend Jet1 operator-(const T &s, const Jet1 &a)
    {
        Jet1 r = -a;
        r[0] += s;
        return r;
    }

    friend bool operator==(const Jet1 &, const Jet1 &) = default;

    friend std::ostream &operator<<(std::ostream &os, const Jet1 &a)
    {
        os << '[';
        for (int k = 0; k <= a.order(); ++k) {
            os << (k ? ", " : "") << a[k];
        }
        return os << ']';
    }

private:
    static int checked_order(int order)
    {
        if (order < 0) {
            throw Error(ErrorCode::BudgetExhausted, "negative jet order " + std::to_string(order));
        }
        return order;
    }

    void truncate_in_place(int order)
    {
        if (order < this->order()) {
            m_coeffs.resize(static_cast<std::size_t>(order) + 1u);
        }
    }

    std::vector<T> m_coeffs;
};

template <Scalar T>
Jet1<T> reciprocal(const Jet1<T> &b, const Tolerances<T> &tol = {})
{
    if (!(scalar_abs(b[0]) > tol.unit)) {
        throw Error(ErrorCode::NonUnitDivisor, "constant term of divisor below unit tolerance");
    }
    Jet1<T> q(b.order());
    q[0] = T(1) / b[0];
    for (int k = 1; k <= b.order(); ++k) {
        T acc(0);
        for (int j = 1; j <= k; ++j) {
            acc += b[j] * q[k - j];
        }
        q[k] = -acc / b[0];
    }
    return q;
}

template <Scalar T>
Jet1<T> divide(const Jet1<T> &a, const Jet1<T> &b, const Tolerances<T> &tol = {})
{
    if (!(scalar_abs(b[0]) > tol.unit)) {
        throw Error(ErrorCode::NonUnitDivisor, "constant term of divisor below unit tolerance");
    }
    const int n = std::min(a.order(), b.order());
    Jet1<T> q(n);
    for (int k = 0; k <= n; ++k) {
        T acc = a[k];
        for (int j = 1; j <= k; ++j) {
            acc -= b[j] * q[k - j];
        }
        q[k] = acc / b[0];
    }
    return q;
}

template <Scalar T>
Jet1<T> sqrt(const Jet1<T> &a, const Tolerances<T> &tol = {})
{
    if (!(a[0] > tol.unit)) {
        throw Error(ErrorCode::NonPositiveConstantTerm, "square root needs a positive constant term");
    }
    Jet1<T> s(a.order());
    s[0] = scalar_sqrt(a[0]);
    for (int k = 1; k <= a.order(); ++k) {
        T acc = a[k];
        for (int j = 1; j < k; ++j) {
            acc -= s[j] * s[k - j];
        }
        s[k] = acc / (T(2) * s[0]);
    }
    return s;
}

// a(b(t)) for b(0) = 0. The result is known to min(order(a), order(b)).
template <Scalar T>
Jet1<T> compose(const Jet1<T> &a, const Jet1<T> &b, const Tolerances<T> &tol = {})
{
    if (scalar_abs(b[0]) > tol.unit) {
        throw Error(ErrorCode::NonVanishingConstant, "inner series must vanish at 0");
    }
    const int n = std::min(a.order(), b.order());
    Jet1<T> inner = b.truncated(n);
    inner[0] = T(0);
    Jet1<T> acc = Jet1<T>::constant(a[n], n);
    for (int k = n - 1; k >= 0; --k) {
        acc = acc * inner + a[k];
    }
    return acc;
}

// Compositional inverse of a series with a(0) = 0 and a'(0) != 0.
template <Scalar T>
Jet1<T> reverse(const Jet1<T> &a, const Tolerances<T> &tol = {})
{
    if (scalar_abs(a[0]) > tol.unit) {
        throw Error(ErrorCode::NonVanishingConstant, "series reversion needs a(0) = 0");
    }
    const int n = a.order();
    if (n < 1 || !(scalar_abs(a[1]) > tol.unit)) {
        throw Error(ErrorCode::NonUnitDivisor, "series reversion needs a'(0) != 0");
    }
    const Jet1<T> t = Jet1<T>::variable(n);
    Jet1<T> nonlinear = a;
    nonlinear[0] = T(0);
    nonlinear[1] = T(0);
    // x = (t - N(x)) / a_1, one more correct coefficient per sweep.
    Jet1<T> x = t / a[1];
    for (int sweep = 1; sweep < n; ++sweep) {
        x = (t - compose(nonlinear, x, tol)) / a[1];
    }
    return x;
}

} // namespace cforge

#endif
