#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "geom.hpp"

namespace af {

// Conforming triangulation with the connectivity and geometry the schemes
// need. Triangles are stored counter-clockwise; every edge borders one or two
// triangles; boundary edges carry a tag. Immutable after construction.
struct Mesh {
    std::vector<Vec2> vertex;
    std::vector<std::array<int, 3>> tri;              // CCW vertex indices
    std::vector<std::array<int, 3>> tri_edge;         // edge ids of local edges (v0,v1),(v1,v2),(v2,v0)
    std::vector<std::array<std::int8_t, 3>> tri_edge_sign; // +1 if stored normal is outward for this tri
    std::vector<std::array<int, 2>> edge_vert;
    std::vector<std::array<int, 2>> edge_tri;         // {left, right}; right = -1 on boundary
    std::vector<int> edge_tag;                        // boundary tag id, -1 for interior edges
    std::vector<double> tri_area;
    std::vector<double> edge_len;
    std::vector<Vec2> edge_normal;                    // unit, points left -> right (outward on boundary)
    std::vector<std::string> tag_names;

    int num_vertices() const { return static_cast<int>(vertex.size()); }
    int num_edges() const { return static_cast<int>(edge_vert.size()); }
    int num_triangles() const { return static_cast<int>(tri.size()); }
    bool is_boundary_edge(int e) const { return edge_tri[e][1] < 0; }
    int num_boundary_edges() const;

    double total_area() const;
    // Harness h-metric: mean of per-triangle diameters (longest edge).
    double mean_diameter() const;
    Vec2 centroid(int t) const {
        const auto& v = tri[t];
        return (vertex[v[0]] + vertex[v[1]] + vertex[v[2]]) / 3.0;
    }
    int tag_id(const std::string& name) const; // -1 if absent
};

// Assemble edges, adjacency and geometry from vertices + triangles.
// Reorients negatively oriented triangles, rejects degenerate triangles and
// edges shared by more than two triangles. boundary_tag(v0, v1) is consulted
// for every boundary edge; returning -1 maps the edge to a default tag.
Mesh build_mesh(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> triangles,
                const std::vector<std::string>& tag_names,
                const std::function<int(int, int)>& boundary_tag);

Mesh load_gmsh(const std::string& path);

// nx-by-ny grid of cells on the rectangle, each cell cut by the same diagonal
// (bottom-left to top-right). Boundary tags: left, right, bottom, top.
Mesh structured_mesh(int nx, int ny, const Rect& domain);

// Channel with a ramp rising at ramp_angle_deg from (corner_x, 0); grid cells
// are vertically squeezed above the ramp and cut by the diagonal.
// Tags as in structured_mesh; "bottom" follows the ramp.
Mesh ramp_mesh(int nx, int ny, double x0, double x1, double height,
               double corner_x, double ramp_angle_deg);

// Split every edge into k equal segments (k = 2 or 3); each triangle becomes
// k^2 similar triangles. Boundary tags are inherited.
Mesh refine_split_edges(const Mesh& mesh, int k);

} // namespace af
