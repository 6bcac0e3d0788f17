#ifndef CFORGE_SERIES_JET2_HPP
#define CFORGE_SERIES_JET2_HPP

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include <cforge/error.hpp>
#include <cforge/series/jet1.hpp>
#include <cforge/series/scalar.hpp>

namespace cforge
{

// Truncated bivariate power series sum_{i<=U, j<=V} c_ij u^i v^j.
//
// Storage is a dense rectangle (U, V). On top of the rectangle a certified
// total degree D <= min(U, V) is tracked: every coefficient with i + j <= D is
// exact, anything above is bookkeeping only and never promoted back to
// certified. Arithmetic keeps D honest: products certify to the smaller D,
// one partial derivative costs one degree.
template <Scalar T>
class Jet2
{
public:
    Jet2() : Jet2(0, 0) {}

    Jet2(int u_order, int v_order, int certified = std::numeric_limits<int>::max())
        : m_nu(check(u_order)), m_nv(check(v_order)),
          m_cert(std::min({certified, u_order, v_order})),
          m_coeffs(static_cast<std::size_t>(u_order + 1) * static_cast<std::size_t>(v_order + 1), T(0))
    {
        if (m_cert < 0) {
            throw Error(ErrorCode::BudgetExhausted, "negative certified degree");
        }
    }

    static Jet2 constant(const T &c, int order)
    {
        Jet2 r(order, order);
        r.coeff(0, 0) = c;
        return r;
    }

    static Jet2 u(int order)
    {
        Jet2 r(order, order);
        if (order >= 1) {
            r.coeff(1, 0) = T(1);
        }
        return r;
    }

    static Jet2 v(int order)
    {
        Jet2 r(order, order);
        if (order >= 1) {
            r.coeff(0, 1) = T(1);
        }
        return r;
    }

    // Slice v^j of a Jet2 assembled from per-level univariate data; level j is
    // certified to u-degree levels[j].order(), the total degree to the
    // smallest order(j) + j.
    static Jet2 from_levels(const std::vector<Jet1<T>> &levels)
    {
        const int nv = static_cast<int>(levels.size()) - 1;
        int nu = 0;
        int cert = nv;
        for (int j = 0; j <= nv; ++j) {
            nu = std::max(nu, levels[static_cast<std::size_t>(j)].order());
            cert = std::min(cert, levels[static_cast<std::size_t>(j)].order() + j);
        }
        Jet2 r(nu, std::max(nv, 0), cert);
        for (int j = 0; j <= nv; ++j) {
            const auto &lv = levels[static_cast<std::size_t>(j)];
            for (int i = 0; i <= lv.order(); ++i) {
                r.coeff(i, j) = lv[i];
            }
        }
        return r;
    }

    int u_order() const noexcept
    {
        return m_nu;
    }

    int v_order() const noexcept
    {
        return m_nv;
    }

    int certified() const noexcept
    {
        return m_cert;
    }

    T operator()(int i, int j) const
    {
        assert(i >= 0 && j >= 0 && i <= m_nu && j <= m_nv);
        return m_coeffs[index(i, j)];
    }

    T &coeff(int i, int j)
    {
        assert(i >= 0 && j >= 0 && i <= m_nu && j <= m_nv);
        return m_coeffs[index(i, j)];
    }

    Jet2 with_certified(int cert) const
    {
        Jet2 r(*this);
        r.m_cert = std::max(0, std::min({cert, m_cert}));
        return r;
    }

    // Square jet of the given order; shrinking drops certification with it,
    // growing pads with uncertified zeros.
    Jet2 resized(int order) const
    {
        return resized(order, order);
    }

    Jet2 resized(int u_order, int v_order) const
    {
        Jet2 r(u_order, v_order, m_cert);
        for (int i = 0; i <= std::min(u_order, m_nu); ++i) {
            for (int j = 0; j <= std::min(v_order, m_nv); ++j) {
                r.coeff(i, j) = (*this)(i, j);
            }
        }
        return r;
    }

    Jet2 derive_u() const
    {
        if (m_cert == 0 || m_nu == 0) {
            throw Error(ErrorCode::ZeroBudget, "u-derivative of a degree-0 jet");
        }
        Jet2 r(m_nu - 1, m_nv, m_cert - 1);
        for (int i = 1; i <= m_nu; ++i) {
            for (int j = 0; j <= m_nv; ++j) {
                r.coeff(i - 1, j) = T(i) * (*this)(i, j);
            }
        }
        return r;
    }

    Jet2 derive_v() const
    {
        if (m_cert == 0 || m_nv == 0) {
            throw Error(ErrorCode::ZeroBudget, "v-derivative of a degree-0 jet");
        }
        Jet2 r(m_nu, m_nv - 1, m_cert - 1);
        for (int i = 0; i <= m_nu; ++i) {
            for (int j = 1; j <= m_nv; ++j) {
                r.coeff(i, j - 1) = T(j) * (*this)(i, j);
            }
        }
        return r;
    }

    // v * a. The v^0 row becomes an exact zero, so certification gains one.
    Jet2 mul_v() const
    {
        Jet2 r(m_nu, m_nv, m_cert + 1);
        for (int i = 0; i <= m_nu; ++i) {
            for (int j = 0; j < m_nv; ++j) {
                r.coeff(i, j + 1) = (*this)(i, j);
            }
        }
        return r;
    }

    // a / v for a jet whose v^0 row vanishes (within tolerance).
    Jet2 div_exact_v(const Tolerances<T> &tol = {}) const
    {
        if (m_nv == 0 || m_cert == 0) {
            throw Error(ErrorCode::ZeroBudget, "division by v of a degree-0 jet");
        }
        const T bound = tol.divisibility * max_abs();
        for (int i = 0; i <= m_cert; ++i) {
            if (scalar_abs((*this)(i, 0)) > bound) {
                throw Error(ErrorCode::NotDivisible, "v^0 coefficient of u^" + std::to_string(i) + " does not vanish");
            }
        }
        Jet2 r(m_nu, m_nv - 1, m_cert - 1);
        for (int i = 0; i <= m_nu; ++i) {
            for (int j = 1; j <= m_nv; ++j) {
                r.coeff(i, j - 1) = (*this)(i, j);
            }
        }
        return r;
    }

    // Coefficient of v^j as a series in u, certified part only.
    Jet1<T> level(int j) const
    {
        if (j > m_cert) {
            throw Error(ErrorCode::BudgetExhausted, "v-level " + std::to_string(j) + " beyond certified degree");
        }
        Jet1<T> r(m_cert - j);
        for (int i = 0; i <= m_cert - j; ++i) {
            r[i] = (*this)(i, j);
        }
        return r;
    }

    Jet1<T> restrict_v0() const
    {
        return level(0);
    }

    static Jet2 embed_u(const Jet1<T> &a)
    {
        return embed_u(a, a.order());
    }

    static Jet2 embed_u(const Jet1<T> &a, int v_order)
    {
        Jet2 r(a.order(), v_order);
        for (int i = 0; i <= a.order(); ++i) {
            r.coeff(i, 0) = a[i];
        }
        return r;
    }

    T evaluate(const T &u, const T &v) const
    {
        T acc(0);
        for (int i = m_nu; i >= 0; --i) {
            T row(0);
            for (int j = m_nv; j >= 0; --j) {
                row = row * v + (*this)(i, j);
            }
            acc = acc * u + row;
        }
        return acc;
    }

    // Largest |c_ij| with i + j <= max_degree (default: the certified degree).
    T max_abs(int max_degree = -1) const
    {
        const int d = max_degree < 0 ? m_cert : max_degree;
        T m(0);
        for (int i = 0; i <= m_nu; ++i) {
            for (int j = 0; j <= m_nv && i + j <= d; ++j) {
                m = std::max(m, scalar_abs((*this)(i, j)));
            }
        }
        return m;
    }

    Jet2 operator-() const
    {
        Jet2 r(*this);
        for (auto &c : r.m_coeffs) {
            c = -c;
        }
        return r;
    }

    Jet2 &operator*=(const T &s)
    {
        for (auto &c : m_coeffs) {
            c *= s;
        }
        return *this;
    }

    friend Jet2 operator+(const Jet2 &a, const Jet2 &b)
    {
        return combine(a, b, T(1));
    }

    friend Jet2 operator-(const Jet2 &a, const Jet2 &b)
    {
        return combine(a, b, T(-1));
    }

    friend Jet2 operator*(const Jet2 &a, const Jet2 &b)
    {
        const int nu = std::min(a.m_nu, b.m_nu);
        const int nv = std::min(a.m_nv, b.m_nv);
        Jet2 r(nu, nv, std::min(a.m_cert, b.m_cert));
        for (int i1 = 0; i1 <= nu; ++i1) {
            for (int j1 = 0; j1 <= nv; ++j1) {
                const T c = a(i1, j1);
                if (c == T(0)) {
                    continue;
                }
                for (int i2 = 0; i1 + i2 <= nu; ++i2) {
                    for (int j2 = 0; j1 + j2 <= nv; ++j2) {
                        r.coeff(i1 + i2, j1 + j2) += c * b(i2, j2);
                    }
                }
            }
        }
        return r;
    }

    friend Jet2 operator*(Jet2 a, const T &s)
    {
        return a *= s;
    }

    friend Jet2 operator*(const T &s, Jet2 a)
    {
        return a *= s;
    }

    friend Jet2 operator/(Jet2 a, const T &s)
    {
        for (auto &c : a.m_coeffs) {
            c /= s;
        }
        return a;
    }

    friend Jet2 operator+(Jet2 a, const T &s)
    {
        a.coeff(0, 0) += s;
        return a;
    }

    friend Jet2 operator+(const T &s, Jet2 a)
    {
        a.coeff(0, 0) += s;
        return a;
    }

    friend Jet2 operator-(Jet2 a, const T &s)
    {
        a.coeff(0, 0) -= s;
        return a;
    }

    friend Jet2 operator-(const T &s, const Jet2 &a)
    {
        Jet2 r = -a;
        r.coeff(0, 0) += s;
        return r;
    }

    friend bool operator==(const Jet2 &, const Jet2 &) = default;

    friend std::ostream &operator<<(std::ostream &os, const Jet2 &a)
    {
        os << "Jet2(U=" << a.m_nu << ", V=" << a.m_nv << ", D=" << a.m_cert << ")";
        for (int i = 0; i <= a.m_nu; ++i) {
            for (int j = 0; j <= a.m_nv; ++j) {
                if (a(i, j) != T(0)) {
                    os << ' ' << a(i, j) << "*u^" << i << "v^" << j;
                }
            }
        }
        return os;
    }

private:
    static int check(int order)
    {
        if (order < 0) {
            throw Error(ErrorCode::BudgetExhausted, "negative jet order " + std::to_string(order));
        }
        return order;
    }

    std::size_t index(int i, int j) const noexcept
    {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(m_nv + 1) + static_cast<std::size_t>(j);
    }

    static Jet2 combine(const Jet2 &a, const Jet2 &b, const T &sign)
    {
        const int nu = std::min(a.m_nu, b.m_nu);
        const int nv = std::min(a.m_nv, b.m_nv);
        Jet2 r(nu, nv, std::min(a.m_cert, b.m_cert));
        for (int i = 0; i <= nu; ++i) {
            for (int j = 0; j <= nv; ++j) {
                r.coeff(i, j) = a(i, j) + sign * b(i, j);
            }
        }
        return r;
    }

    int m_nu;
    int m_nv;
    int m_cert;
    std::vector<T> m_coeffs;
};

template <Scalar T>
Jet2<T> divide(const Jet2<T> &a, const Jet2<T> &b, const Tolerances<T> &tol = {})
{
    const T b00 = b(0, 0);
    if (!(scalar_abs(b00) > tol.unit)) {
        throw Error(ErrorCode::NonUnitDivisor, "constant term of divisor below unit tolerance");
    }
    const int nu = std::min(a.u_order(), b.u_order());
    const int nv = std::min(a.v_order(), b.v_order());
    Jet2<T> q(nu, nv, std::min(a.certified(), b.certified()));
    for (int i = 0; i <= nu; ++i) {
        for (int j = 0; j <= nv; ++j) {
            T acc = a(i, j);
            for (int p = 0; p <= i; ++p) {
                for (int r = 0; r <= j; ++r) {
                    if (p == 0 && r == 0) {
                        continue;
                    }
                    acc -= b(p, r) * q(i - p, j - r);
                }
            }
            q.coeff(i, j) = acc / b00;
        }
    }
    return q;
}

template <Scalar T>
Jet2<T> reciprocal(const Jet2<T> &b, const Tolerances<T> &tol = {})
{
    Jet2<T> one(b.u_order(), b.v_order());
    one.coeff(0, 0) = T(1);
    return divide(one, b, tol);
}

template <Scalar T>
Jet2<T> sqrt(const Jet2<T> &a, const Tolerances<T> &tol = {})
{
    if (!(a(0, 0) > tol.unit)) {
        throw Error(ErrorCode::NonPositiveConstantTerm, "square root needs a positive constant term");
    }
    const int nu = a.u_order();
    const int nv = a.v_order();
    Jet2<T> s(nu, nv, a.certified());
    const T s00 = scalar_sqrt(a(0, 0));
    s.coeff(0, 0) = s00;
    for (int i = 0; i <= nu; ++i) {
        for (int j = 0; j <= nv; ++j) {
            if (i == 0 && j == 0) {
                continue;
            }
            T acc = a(i, j);
            for (int p = 0; p <= i; ++p) {
                for (int r = 0; r <= j; ++r) {
                    if ((p == 0 && r == 0) || (p == i && r == j)) {
                        continue;
                    }
                    acc -= s(p, r) * s(i - p, j - r);
                }
            }
            s.coeff(i, j) = acc / (T(2) * s00);
        }
    }
    return s;
}

// a(xi(u, v), eta(u, v)) for a coordinate change fixing the origin.
template <Scalar T>
Jet2<T> compose(const Jet2<T> &a, const Jet2<T> &xi, const Jet2<T> &eta, const Tolerances<T> &tol = {})
{
    if (scalar_abs(xi(0, 0)) > tol.unit || scalar_abs(eta(0, 0)) > tol.unit) {
        throw Error(ErrorCode::NonVanishingConstant, "substitution must fix the origin");
    }
    const int d = std::min({a.certified(), xi.certified(), eta.certified()});
    auto x = xi.resized(d);
    auto y = eta.resized(d);
    x.coeff(0, 0) = T(0);
    y.coeff(0, 0) = T(0);

    std::vector<Jet2<T>> xpow{Jet2<T>::constant(T(1), d)};
    std::vector<Jet2<T>> ypow{Jet2<T>::constant(T(1), d)};
    for (int k = 1; k <= d; ++k) {
        xpow.push_back(xpow.back() * x);
        ypow.push_back(ypow.back() * y);
    }
    Jet2<T> r(d, d, d);
    for (int p = 0; p <= d; ++p) {
        for (int q = 0; p + q <= d; ++q) {
            const T c = a(p, q);
            if (c == T(0)) {
                continue;
            }
            const auto term = xpow[static_cast<std::size_t>(p)] * ypow[static_cast<std::size_t>(q)];
            for (int i = 0; i <= d; ++i) {
                for (int j = 0; i + j <= d; ++j) {
                    r.coeff(i, j) += c * term(i, j);
                }
            }
        }
    }
    return r;
}

} // namespace cforge

#endif
