#include <algorithm>
#include <fstream>
#include <limits>
#include <set>
#include <string>
#include <utility>

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

int get_int(const json &obj, const char *key)
{
    if (!obj.contains(key) || !obj.at(key).is_number_integer()) {
        fail(std::string("missing integer field \"") + key + "\"");
    }
    return obj.at(key).get<int>();
}

double get_number(const json &obj, const char *key)
{
    if (!obj.contains(key)) {
        return 0.0;
    }
    if (!obj.at(key).is_number()) {
        fail(std::string("field \"") + key + "\" must be a number");
    }
    return obj.at(key).get<double>();
}

} // namespace

MapGerm<double> germ_from_json(const json &doc, std::optional<int> order)
{
    if (!doc.is_object()) {
        fail("germ document must be an object");
    }
    const int nu = get_int(doc, "u_order");
    const int nv = get_int(doc, "v_order");
    if (nu < 0 || nv < 0) {
        fail("u_order and v_order must be non-negative");
    }
    int cert = std::numeric_limits<int>::max();
    if (doc.contains("certified")) {
        cert = get_int(doc, "certified");
        if (cert < 0) {
            fail("certified must be non-negative");
        }
    }
    if (!doc.contains("coeffs") || !doc.at("coeffs").is_array()) {
        fail("missing array field \"coeffs\"");
    }
    const int du = order ? *order : nu;
    const int dv = order ? *order : nv;
    if (order) {
        cert = std::min(cert, *order);
    }

    MapGerm<double> g;
    for (std::size_t c = 0; c < 3; ++c) {
        g.point[c] = Jet2<double>(du, dv, cert);
    }
    std::set<std::pair<int, int>> seen;
    for (const auto &term : doc.at("coeffs")) {
        if (!term.is_object()) {
            fail("each coefficient must be an object");
        }
        const int i = get_int(term, "i");
        const int j = get_int(term, "j");
        if (i < 0 || j < 0 || i > nu || j > nv) {
            fail("monomial (" + std::to_string(i) + ", " + std::to_string(j) + ") outside the declared orders");
        }
        if (!seen.insert({i, j}).second) {
            fail("monomial (" + std::to_string(i) + ", " + std::to_string(j) + ") listed twice");
        }
        if (i > du || j > dv) {
            continue;
        }
        g.point[0].coeff(i, j) = get_number(term, "x");
        g.point[1].coeff(i, j) = get_number(term, "y");
        g.point[2].coeff(i, j) = get_number(term, "z");
    }
    g.status = CoordinateStatus::raw;
    return g;
}

json germ_to_json(const MapGerm<double> &g)
{
    const int nu = std::max({g.point[0].u_order(), g.point[1].u_order(), g.point[2].u_order()});
    const int nv = std::max({g.point[0].v_order(), g.point[1].v_order(), g.point[2].v_order()});
    const auto at = [&](std::size_t c, int i, int j) {
        const auto &a = g.point[c];
        return i <= a.u_order() && j <= a.v_order() ? a(i, j) : 0.0;
    };
    json coeffs = json::array();
    for (int i = 0; i <= nu; ++i) {
        for (int j = 0; j <= nv; ++j) {
            const double x = at(0, i, j), y = at(1, i, j), z = at(2, i, j);
            if (x != 0.0 || y != 0.0 || z != 0.0) {
                coeffs.push_back({{"i", i}, {"j", j}, {"x", x}, {"y", y}, {"z", z}});
            }
        }
    }
    return json{{"u_order", nu}, {"v_order", nv}, {"certified", g.certified()}, {"coeffs", std::move(coeffs)}};
}

json read_json(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in) {
        fail("cannot open " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::exception &e) {
        fail(path.string() + ": " + e.what());
    }
}

void write_json(const std::filesystem::path &path, const json &doc)
{
    std::ofstream out(path);
    if (!out) {
        fail("cannot write " + path.string());
    }
    out << doc.dump(2) << '\n';
}

MapGerm<double> read_germ(const std::filesystem::path &path, std::optional<int> order)
{
    return germ_from_json(read_json(path), order);
}

void write_germ(const std::filesystem::path &path, const MapGerm<double> &g)
{
    write_json(path, germ_to_json(g));
}

json jet_to_json(const Jet1<double> &a)
{
    json r = json::array();
    for (int k = 0; k <= a.order(); ++k) {
        r.push_back(a[k]);
    }
    return r;
}

} // namespace cforge::io
