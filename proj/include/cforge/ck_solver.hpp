#ifndef CFORGE_CK_SOLVER_HPP
#define CFORGE_CK_SOLVER_HPP

#include <algorithm>
#include <optional>

#include <cforge/curve_geometry.hpp>
#include <cforge/edge_geometry.hpp>
#include <cforge/series.hpp>

namespace cforge
{

enum class RhsMode { germ, metric };

// Source terms of the system
//   psi . psi_v = s1,  g_u . psi_v = s2,  g_uu . psi_v = s3 + v psi_u . psi_u,
//   g_v = v psi.
// Germ mode: s1 = phi_v . phi, s2 = phi_v . f_u,
// s3 = (phi . f_uu)_v - (v/2) (phi . phi)_uu.
// Metric mode: s1 = (G0)_v / 2, s2 = -v (G0)_u / 2,
// s3 = -(3 (E0)_v + v (E0)_vv + v (G0)_uu) / 2.
template <Scalar T>
struct RhsData {
    RhsMode mode = RhsMode::germ;
    Jet2<T> s1, s2, s3;
    // Germ-mode ingredients, kept for reporting.
    Jet2<T> phi_v_phi, phi_v_fu, phi_fuu_v, phi_phi_uu;
    std::optional<KossowskiMetric<T>> metric;
    // |psi(u, 0)|; the initial field is scaled by it. Absent means 1.
    std::optional<Jet1<T>> psi0_scale;

    int certified() const
    {
        return std::min({s1.certified(), s2.certified(), s3.certified()});
    }
};

template <Scalar T>
struct CkSolution {
    MapGerm<T> g;
    JetVec3<T> psi;
    int certified = 0;
};

// Largest certified coefficient of each equation's defect.
template <Scalar T>
struct CkResidual {
    T g_v{};      // g_v - v psi
    T r_v{};      // (g_u)_v - v psi_u
    T psi_psi{};  // psi . psi_v - s1
    T psi_gu{};   // g_u . psi_v - s2
    T psi_guu{};  // g_uu . psi_v - s3 - v psi_u . psi_u
    T scale{};    // largest certified coefficient of g

    T worst() const
    {
        return std::max({g_v, r_v, psi_psi, psi_gu, psi_guu});
    }

    T relative() const
    {
        return scale > T(0) ? worst() / scale : worst();
    }
};

// Requires an adapted generic germ.
template <Scalar T>
RhsData<T> build_rhs_from_germ(const MapGerm<T> &f_adapted, const Tolerances<T> &tol = {});

// The same source terms from E, F, G alone.
template <Scalar T>
RhsData<T> build_rhs_from_first_form(const FundForm<T> &m, const Tolerances<T> &tol = {});

template <Scalar T>
RhsData<T> build_rhs_from_metric(const KossowskiMetric<T> &m, const Tolerances<T> &tol = {});

// Solves level by level in v for g certified to total degree `order`, with
// g(u, 0) = sigma(u) and psi(u, 0) = X(u) (times psi0_scale). sigma must be
// known to `order` and the source terms to order - 3.
template <Scalar T>
CkSolution<T> ck_solve(const RhsData<T> &rhs, const SpaceCurveJet<T> &sigma, const NormalField<T> &x, int order,
                       const Tolerances<T> &tol = {});

template <Scalar T>
CkResidual<T> residual(const MapGerm<T> &g, const JetVec3<T> &psi, const RhsData<T> &rhs);

} // namespace cforge

#endif
