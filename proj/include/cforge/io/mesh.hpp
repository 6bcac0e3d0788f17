#ifndef CFORGE_IO_MESH_HPP
#define CFORGE_IO_MESH_HPP

#include <array>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <cforge/edge_geometry.hpp>

namespace cforge::io
{

struct SampleRange {
    double lo = 0;
    double hi = 0;
    int count = 0;

    double at(int k) const
    {
        return count == 1 ? lo : lo + (hi - lo) * k / (count - 1);
    }
};

// "a:b:n" with a < b and n >= 2.
SampleRange parse_range(std::string_view text);

struct MeshGrid {
    SampleRange u;
    SampleRange v;
    // Row-major: the vertex at (u_i, v_j) is points[i * v.count + j].
    std::vector<std::array<double, 3>> points;
    std::vector<std::string> warnings;
};

// Evaluates the certified part of g on the grid. Warns when the top certified
// degree contributes more than 1e-3 of the sampled extent somewhere on the box,
// a sign that the truncation is not faithful there.
MeshGrid sample_germ(const MapGerm<double> &g, const SampleRange &u, const SampleRange &v);

// OBJ with one quad per grid cell, 1-based indices, 17 significant digits.
void write_obj(std::ostream &os, const MeshGrid &grid);
// Header "u,v,x,y,z", one row per vertex in grid order.
void write_csv(std::ostream &os, const MeshGrid &grid);

// printf %.17g.
std::string format_number(double x);

} // namespace cforge::io

#endif
