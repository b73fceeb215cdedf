#pragma once

#include <array>
#include <vector>

#include "dofmap.hpp"
#include "mesh.hpp"

namespace af {

// Per-element geometric tables for the point-value schemes.
//  - grad_lambda[t][k]: gradient of barycentric coordinate k on triangle t,
//    i.e. the inward scaled normal opposite vertex k divided by 2|E|.
//  - node_normal[t][j]: scaled normal n_sigma^E of local point DoF j: the
//    inward scaled normal of the opposite edge for a vertex, the outward
//    scaled normal of its edge for an edge-interior node.
struct GeometryTables {
    int order = 2;
    std::vector<std::array<Vec2, 3>> grad_lambda;
    std::vector<std::array<Vec2, 9>> node_normal;
};

GeometryTables build_geometry_tables(const Mesh& mesh, int order);

// Sub-element partition of one triangle: the N-1 boundary DoF nodes walked
// counter-clockwise plus the centroid node split the element into N-1
// sub-triangles {b_i, b_N, b_{i+1}}. Node index -1 denotes the centroid.
struct SubElementPartition {
    int nsub = 0;
    std::array<std::array<int, 3>, 9> node;      // local point-DoF ids, -1 = centroid
    std::array<std::array<Vec2, 3>, 9> pos;      // matching positions
    std::array<std::array<Vec2, 3>, 9> inward;   // scaled inward normals opposite each node
    std::array<double, 9> area;
};

SubElementPartition subelement_partition(const Mesh& mesh, const DofMap& dm, int t);

} // namespace af
