#ifndef CFORGE_IO_GERM_FILE_HPP
#define CFORGE_IO_GERM_FILE_HPP

#include <filesystem>
#include <optional>

#include <json.hpp>

#include <cforge/edge_geometry.hpp>

namespace cforge::io
{

// {"u_order": U, "v_order": V, "coeffs": [{"i", "j", "x", "y", "z"}, ...]}
// with an optional "certified" total degree. A file without "certified" is an
// exact polynomial. With `order` the germ is embedded in an order x order jet
// certified to min(order, certified); otherwise the file's own shape is kept.
MapGerm<double> germ_from_json(const nlohmann::json &doc, std::optional<int> order = std::nullopt);
nlohmann::json germ_to_json(const MapGerm<double> &g);

MapGerm<double> read_germ(const std::filesystem::path &path, std::optional<int> order = std::nullopt);
void write_germ(const std::filesystem::path &path, const MapGerm<double> &g);

// Series coefficients as a plain array.
nlohmann::json jet_to_json(const Jet1<double> &a);

// Reads a whole file as JSON, mapping IO and syntax failures to ParseError.
nlohmann::json read_json(const std::filesystem::path &path);
void write_json(const std::filesystem::path &path, const nlohmann::json &doc);

} // namespace cforge::io

#endif
