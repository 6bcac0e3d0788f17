#include <set>
#include <string>

#include <cforge/io/curve_file.hpp>
#include <cforge/io/germ_file.hpp>

namespace cforge::io
{

namespace
{

using nlohmann::json;

[[noreturn]] void fail(const std::string &what)
{
    throw Error(ErrorCode::ParseError, what);
}

Jet1<double> series(const json &doc, const char *key, int order)
{
    if (!doc.contains(key) || !doc.at(key).is_array() || doc.at(key).empty()) {
        fail(std::string("missing non-empty array \"") + key + "\"");
    }
    Jet1<double> r(order);
    const auto &arr = doc.at(key);
    for (std::size_t k = 0; k < arr.size(); ++k) {
        if (!arr[k].is_number()) {
            fail(std::string("\"") + key + "\" must contain numbers");
        }
        if (static_cast<int>(k) <= order) {
            r[static_cast<int>(k)] = arr[k].get<double>();
        }
    }
    return r;
}

Vec3<double> vec(const json &v, const char *what)
{
    if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() || !v[2].is_number()) {
        fail(std::string(what) + " must be an array of three numbers");
    }
    return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

} // namespace

SpaceCurveJet<double> curve_from_json(const json &doc, int order)
{
    if (!doc.is_object() || !doc.contains("kind") || !doc.at("kind").is_string()) {
        fail("curve document must be an object with a string \"kind\"");
    }
    if (order < 0) {
        fail("curve order must be non-negative");
    }
    const auto kind = doc.at("kind").get<std::string>();
    if (kind == "explicit") {
        if (!doc.contains("coeffs") || !doc.at("coeffs").is_array()) {
            fail("explicit curve needs an array \"coeffs\"");
        }
        SpaceCurveJet<double> c;
        c.point = {Jet1<double>(order), Jet1<double>(order), Jet1<double>(order)};
        std::set<int> seen;
        for (const auto &term : doc.at("coeffs")) {
            if (!term.is_object() || !term.contains("k") || !term.at("k").is_number_integer()) {
                fail("each curve coefficient needs an integer \"k\"");
            }
            const int k = term.at("k").get<int>();
            if (k < 0 || !seen.insert(k).second) {
                fail("curve coefficient index " + std::to_string(k) + " is negative or repeated");
            }
            if (k > order) {
                continue;
            }
            const char *names[] = {"x", "y", "z"};
            for (std::size_t a = 0; a < 3; ++a) {
                if (term.contains(names[a])) {
                    if (!term.at(names[a]).is_number()) {
                        fail("curve coefficients must be numbers");
                    }
                    c.point[a][k] = term.at(names[a]).get<double>();
                }
            }
        }
        return c;
    }
    if (kind == "intrinsic") {
        const auto kappa = series(doc, "kappa", order);
        const auto tau = series(doc, "tau", order);
        if (!(kappa[0] > 0.0)) {
            fail("intrinsic curve needs kappa[0] > 0");
        }
        Frame<double> frame;
        if (doc.contains("frame0")) {
            const auto &f = doc.at("frame0");
            if (!f.is_object() || !f.contains("e") || !f.contains("n") || !f.contains("b")) {
                fail("frame0 needs \"e\", \"n\" and \"b\"");
            }
            frame = {vec(f.at("e"), "frame0.e"), vec(f.at("n"), "frame0.n"), vec(f.at("b"), "frame0.b")};
        }
        const Vec3<double> p0 = doc.contains("p0") ? vec(doc.at("p0"), "p0") : Vec3<double>{};
        auto c = curve_from_curvature_torsion(kappa, tau, frame, p0);
        c.point = truncated(c.point, order);
        return c;
    }
    fail("unknown curve kind \"" + kind + "\"");
}

json curve_to_json(const SpaceCurveJet<double> &c)
{
    json coeffs = json::array();
    for (int k = 0; k <= c.order(); ++k) {
        coeffs.push_back({{"k", k}, {"x", c.point[0][k]}, {"y", c.point[1][k]}, {"z", c.point[2][k]}});
    }
    return {{"kind", "explicit"}, {"coeffs", std::move(coeffs)}};
}

SpaceCurveJet<double> read_curve(const std::filesystem::path &path, int order)
{
    return curve_from_json(read_json(path), order);
}

} // namespace cforge::io
