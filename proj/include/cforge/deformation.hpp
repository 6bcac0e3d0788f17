#ifndef CFORGE_DEFORMATION_HPP
#define CFORGE_DEFORMATION_HPP

#include <optional>
#include <string>
#include <vector>

#include <cforge/ck_solver.hpp>
#include <cforge/curve_geometry.hpp>
#include <cforge/edge_geometry.hpp>

namespace cforge
{

template <Scalar T>
struct PipelineOptions {
    // Total degree to which results are verified and reported.
    int order = 8;
    // Extra degrees carried through adaptation and solving.
    int headroom = 4;
    T form_tol = T(1e-7);
    T product_tol = T(1e-6);
    T boundary_tol = T(1e-8);
    T kappa_s_tol = T(1e-7);
    Tolerances<T> tol{};

    int working_order() const
    {
        return order + headroom;
    }
};

template <Scalar T>
struct IsometryReport {
    // Largest |E - E'|, |F - F'|, |G - G'| coefficient per total degree.
    std::vector<T> form_by_degree;
    T form_deviation{};
    // Largest coefficient of |kappa_c kappa_nu| (g) - |kappa_c kappa_nu| (f), when
    // both germs are cuspidal edges.
    std::optional<T> product_deviation;
    T boundary_deviation{};
    int degree = 0;
};

template <Scalar T>
struct Verification {
    IsometryReport<T> isometry;
    T kappa_s_deviation{};
    bool passed = false;
    std::vector<std::string> failures;
};

template <Scalar T>
struct DeformationResult {
    // In the adapted coordinates of the oriented source.
    MapGerm<T> germ;
    Branch branch = Branch::plus;
    SpaceCurveJet<T> target;
    // Adaptation of the caller's germ: source.germ = f o source.change.
    AdaptResult<T> source;
    EdgeInvariants<T> source_invariants;
    EdgeInvariants<T> result_invariants;
    Verification<T> verification;
    T parameter{};
};

template <Scalar T>
struct FamilyResult {
    std::vector<DeformationResult<T>> members;
    // |T o g^{1,+} - g^{1,-}| for the reflection T across the osculating plane
    // of the image curve at 0, when s = 1 is in the grid.
    std::optional<T> reflection_deviation;
    // Largest | |kappa_nu(0)| - sqrt((kappa(0) + s)^2 - kappa_s(0)^2) | over members.
    std::optional<T> law_deviation;
};

template <Scalar T>
struct MetricRealization {
    MapGerm<T> germ;
    Branch branch = Branch::plus;
    SpaceCurveJet<T> target;
    KossowskiMetric<T> metric;
    Jet1<T> kappa_s;
    // Invariants after adapting the output; absent if adaptation failed.
    std::optional<EdgeInvariants<T>> invariants;
    T form_deviation{};
    T boundary_deviation{};
    T residual{};
    std::vector<std::string> warnings;
};

// E, F, G agreement per degree, |kappa_c kappa_nu| agreement and g(u, 0)
// against `boundary` (f(u, 0) when absent), on total degrees <= degree.
template <Scalar T>
IsometryReport<T> verify_isometry(const MapGerm<T> &f, const MapGerm<T> &g, int degree,
                                  const std::optional<SpaceCurveJet<T>> &boundary = std::nullopt,
                                  const Tolerances<T> &tol = {});

// Adapts f (orienting so that kappa_nu(0) > 0) and solves for the germ with
// the same first fundamental form whose singular image is sigma. sigma is
// parametrized by the adapted u of the oriented source; it is reparametrized
// by arclength if needed.
template <Scalar T>
DeformationResult<T> deform_to_curve(const MapGerm<T> &f, const SpaceCurveJet<T> &sigma, Branch branch,
                                     const PipelineOptions<T> &options = {});

template <Scalar T>
DeformationResult<T> isomer(const MapGerm<T> &f, const PipelineOptions<T> &options = {});

// The same deformation after an adaptation the caller has already done.
template <Scalar T>
DeformationResult<T> deform_adapted(const AdaptResult<T> &source, const EdgeInvariants<T> &source_invariants,
                                    const SpaceCurveJet<T> &sigma, Branch branch, const PipelineOptions<T> &options);

// Members for curves with curvature kappa and torsion (1 - s) tau.
template <Scalar T>
FamilyResult<T> planar_normalization(const MapGerm<T> &f, Branch branch, const std::vector<T> &grid,
                                     const PipelineOptions<T> &options = {});

// Members for curves with curvature kappa + s and torsion tau.
template <Scalar T>
FamilyResult<T> kappa_nu_family(const MapGerm<T> &f, const std::vector<T> &grid,
                                const PipelineOptions<T> &options = {});

template <Scalar T>
MetricRealization<T> realize_metric(const KossowskiMetric<T> &m, const SpaceCurveJet<T> &sigma, Branch branch,
                                    const PipelineOptions<T> &options = {});

// result.germ expressed in the caller's coordinates.
template <Scalar T>
MapGerm<T> to_source_coordinates(const DeformationResult<T> &result, const Tolerances<T> &tol = {});

// x -> x - 2 ((x - p0) . b0) b0.
template <Scalar T>
JetVec3<T> reflect(const JetVec3<T> &g, const Vec3<T> &p0, const Vec3<T> &b0);

// n evenly spaced values from a to b.
template <Scalar T>
std::vector<T> linear_grid(T a, T b, int n);

} // namespace cforge

#endif
