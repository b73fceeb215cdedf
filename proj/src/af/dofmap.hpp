#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mesh.hpp"

namespace af {

// Global enumeration of the point-value DoFs plus one average DoF per
// triangle. Point DoFs: vertices first, then edge-interior nodes by edge
// index and parameter along the stored edge direction, deterministic.
// Average DoF ids follow the point DoFs, one per triangle.
struct DofMap {
    int order = 2;
    int n_points = 0;   // V + (order-1) * E
    int n_avg = 0;      // T
    int per_tri = 6;    // point DoFs per triangle: 6 or 9

    std::vector<std::array<int, 9>> tri_dofs;  // local order: v0,v1,v2, edge(0,1).., edge(1,2).., edge(2,0)..
    std::vector<Vec2> point_pos;

    // point DoF -> incident (triangle, local index), CSR
    std::vector<int> adj_offset;
    std::vector<int> adj_tri;
    std::vector<std::uint8_t> adj_local;

    // |C_sigma| = sum over incident elements of 2|E| / (3 (N-1))
    std::vector<double> dual_measure;

    // point DoF -> incident boundary edges, CSR (empty range for interior DoFs)
    std::vector<int> bedge_offset;
    std::vector<int> bedge_list;

    int total_dofs() const { return n_points + n_avg; }
    int avg_dof(int t) const { return n_points + t; }
    bool on_boundary(int dof) const { return bedge_offset[dof + 1] > bedge_offset[dof]; }

    // Point DoFs of edge e in stored direction: [v0, interior nodes..., v1].
    void edge_trace_dofs(const Mesh& mesh, int e, int* dofs) const {
        dofs[0] = mesh.edge_vert[e][0];
        for (int s = 0; s < order - 1; ++s)
            dofs[1 + s] = mesh.num_vertices() + e * (order - 1) + s;
        dofs[order] = mesh.edge_vert[e][1];
    }
};

DofMap build_dof_map(const Mesh& mesh, int order);

} // namespace af
