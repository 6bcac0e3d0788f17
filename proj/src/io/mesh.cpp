#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

#include <cforge/io/mesh.hpp>

namespace cforge::io
{

namespace
{

[[noreturn]] void fail(const std::string &what)
{
    throw Error(ErrorCode::ParseError, what);
}

double parse_double(std::string_view s, std::string_view whole)
{
    // std::from_chars for double is available in libstdc++ 11+.
    double x = 0;
    const auto *end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, x);
    if (ec != std::errc() || ptr != end || !std::isfinite(x)) {
        fail("bad number in range \"" + std::string(whole) + "\"");
    }
    return x;
}

// Sum of the degree-d homogeneous part and of all parts up to d.
std::array<double, 2> evaluate_parts(const Jet2<double> &a, double u, double v, int d)
{
    double top = 0, total = 0;
    for (int i = 0; i <= std::min(d, a.u_order()); ++i) {
        for (int j = 0; j <= std::min(d - i, a.v_order()); ++j) {
            const double term = a(i, j) * std::pow(u, i) * std::pow(v, j);
            total += term;
            if (i + j == d) {
                top += term;
            }
        }
    }
    return {top, total};
}

} // namespace

SampleRange parse_range(std::string_view text)
{
    const auto a = text.find(':');
    const auto b = a == std::string_view::npos ? a : text.find(':', a + 1);
    if (a == std::string_view::npos || b == std::string_view::npos || text.find(':', b + 1) != std::string_view::npos) {
        fail("range \"" + std::string(text) + "\" must have the form a:b:n");
    }
    SampleRange r;
    r.lo = parse_double(text.substr(0, a), text);
    r.hi = parse_double(text.substr(a + 1, b - a - 1), text);
    const auto n = text.substr(b + 1);
    const auto [ptr, ec] = std::from_chars(n.data(), n.data() + n.size(), r.count);
    if (ec != std::errc() || ptr != n.data() + n.size()) {
        fail("bad sample count in range \"" + std::string(text) + "\"");
    }
    if (!(r.lo < r.hi) || r.count < 2) {
        fail("range \"" + std::string(text) + "\" needs a < b and n >= 2");
    }
    return r;
}

MeshGrid sample_germ(const MapGerm<double> &g, const SampleRange &u, const SampleRange &v)
{
    MeshGrid m{u, v, {}, {}};
    const int d = g.certified();
    double worst_top = 0;
    std::array<double, 3> lo{}, hi{};
    lo.fill(INFINITY);
    hi.fill(-INFINITY);
    for (int i = 0; i < u.count; ++i) {
        for (int j = 0; j < v.count; ++j) {
            std::array<double, 3> p{};
            for (std::size_t c = 0; c < 3; ++c) {
                const auto [top, total] = evaluate_parts(g.point[c], u.at(i), v.at(j), d);
                p[c] = total;
                worst_top = std::max(worst_top, std::abs(top));
                lo[c] = std::min(lo[c], total);
                hi[c] = std::max(hi[c], total);
            }
            m.points.push_back(p);
        }
    }
    double extent = 0;
    for (std::size_t c = 0; c < 3; ++c) {
        extent = std::max(extent, hi[c] - lo[c]);
    }
    if (worst_top > 1e-3 * extent) {
        m.warnings.push_back("degree-" + std::to_string(d) + " terms reach " + format_number(worst_top) +
                             " on the sample box; the truncated germ may not be faithful there");
    }
    return m;
}

std::string format_number(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_obj(std::ostream &os, const MeshGrid &grid)
{
    os << "# " << grid.u.count << " x " << grid.v.count << " grid\n";
    for (const auto &p : grid.points) {
        os << "v " << format_number(p[0]) << ' ' << format_number(p[1]) << ' ' << format_number(p[2]) << '\n';
    }
    const int nv = grid.v.count;
    for (int i = 0; i + 1 < grid.u.count; ++i) {
        for (int j = 0; j + 1 < nv; ++j) {
            const int a = i * nv + j + 1;
            os << "f " << a << ' ' << a + nv << ' ' << a + nv + 1 << ' ' << a + 1 << '\n';
        }
    }
}

void write_csv(std::ostream &os, const MeshGrid &grid)
{
    os << "u,v,x,y,z\n";
    for (int i = 0; i < grid.u.count; ++i) {
        for (int j = 0; j < grid.v.count; ++j) {
            const auto &p = grid.points[static_cast<std::size_t>(i * grid.v.count + j)];
            os << format_number(grid.u.at(i)) << ',' << format_number(grid.v.at(j)) << ',' << format_number(p[0])
               << ',' << format_number(p[1]) << ',' << format_number(p[2]) << '\n';
        }
    }
}

} // namespace cforge::io
