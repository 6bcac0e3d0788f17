#ifndef CFORGE_IO_CURVE_FILE_HPP
#define CFORGE_IO_CURVE_FILE_HPP

#include <filesystem>

#include <json.hpp>

#include <cforge/curve_geometry.hpp>

namespace cforge::io
{

// Either {"kind": "explicit", "coeffs": [{"k", "x", "y", "z"}, ...]} giving the
// Taylor coefficients of the point, or {"kind": "intrinsic", "kappa": [...],
// "tau": [...], "frame0": {"e", "n", "b"}, "p0": [x, y, z]} integrated from
// curvature and torsion; frame0 and p0 default to the standard frame and the
// origin. Coefficients beyond `order` are dropped.
SpaceCurveJet<double> curve_from_json(const nlohmann::json &doc, int order);
// Always written in explicit form.
nlohmann::json curve_to_json(const SpaceCurveJet<double> &c);

SpaceCurveJet<double> read_curve(const std::filesystem::path &path, int order);

} // namespace cforge::io

#endif
