#include "dofmap.hpp"

#include <stdexcept>

#include "basis.hpp"

namespace af {

DofMap build_dof_map(const Mesh& mesh, int order) {
    if (order != 2 && order != 3) throw std::invalid_argument("build_dof_map: order must be 2 or 3");

    DofMap dm;
    dm.order = order;
    const int V = mesh.num_vertices();
    const int E = mesh.num_edges();
    const int T = mesh.num_triangles();
    const int per_edge = order - 1;
    dm.n_points = V + per_edge * E;
    dm.n_avg = T;
    dm.per_tri = num_point_nodes(order);

    dm.point_pos.resize(dm.n_points);
    for (int v = 0; v < V; ++v) dm.point_pos[v] = mesh.vertex[v];
    for (int e = 0; e < E; ++e) {
        const Vec2& a = mesh.vertex[mesh.edge_vert[e][0]];
        const Vec2& b = mesh.vertex[mesh.edge_vert[e][1]];
        for (int s = 0; s < per_edge; ++s) {
            const double t = static_cast<double>(s + 1) / order;
            dm.point_pos[V + e * per_edge + s] = a + (b - a) * t;
        }
    }

    dm.tri_dofs.resize(T);
    for (int t = 0; t < T; ++t) {
        auto& d = dm.tri_dofs[t];
        d.fill(-1);
        for (int k = 0; k < 3; ++k) d[k] = mesh.tri[t][k];
        for (int le = 0; le < 3; ++le) {
            const int e = mesh.tri_edge[t][le];
            const bool forward = mesh.tri_edge_sign[t][le] > 0;
            for (int s = 0; s < per_edge; ++s) {
                // local edge nodes run from the local first vertex of the edge
                const int stored = forward ? s : per_edge - 1 - s;
                d[3 + le * per_edge + s] = V + e * per_edge + stored;
            }
        }
    }

    // Adjacency CSR.
    std::vector<int> count(dm.n_points, 0);
    for (int t = 0; t < T; ++t)
        for (int k = 0; k < dm.per_tri; ++k) ++count[dm.tri_dofs[t][k]];
    dm.adj_offset.assign(dm.n_points + 1, 0);
    for (int i = 0; i < dm.n_points; ++i) dm.adj_offset[i + 1] = dm.adj_offset[i] + count[i];
    dm.adj_tri.resize(dm.adj_offset.back());
    dm.adj_local.resize(dm.adj_offset.back());
    std::vector<int> fill = dm.adj_offset;
    for (int t = 0; t < T; ++t) {
        for (int k = 0; k < dm.per_tri; ++k) {
            const int dof = dm.tri_dofs[t][k];
            dm.adj_tri[fill[dof]] = t;
            dm.adj_local[fill[dof]] = static_cast<std::uint8_t>(k);
            ++fill[dof];
        }
    }

    const double sub_frac = 2.0 / (3.0 * dm.per_tri);  // 2|E| / (3 (N-1)) per incident element
    dm.dual_measure.assign(dm.n_points, 0.0);
    for (int t = 0; t < T; ++t)
        for (int k = 0; k < dm.per_tri; ++k)
            dm.dual_measure[dm.tri_dofs[t][k]] += sub_frac * mesh.tri_area[t];

    // Boundary incidence.
    std::vector<int> bcount(dm.n_points, 0);
    for (int e = 0; e < E; ++e) {
        if (!mesh.is_boundary_edge(e)) continue;
        ++bcount[mesh.edge_vert[e][0]];
        ++bcount[mesh.edge_vert[e][1]];
        for (int s = 0; s < per_edge; ++s) ++bcount[V + e * per_edge + s];
    }
    dm.bedge_offset.assign(dm.n_points + 1, 0);
    for (int i = 0; i < dm.n_points; ++i) dm.bedge_offset[i + 1] = dm.bedge_offset[i] + bcount[i];
    dm.bedge_list.resize(dm.bedge_offset.back());
    std::vector<int> bfill = dm.bedge_offset;
    for (int e = 0; e < E; ++e) {
        if (!mesh.is_boundary_edge(e)) continue;
        auto push = [&](int dof) { dm.bedge_list[bfill[dof]++] = e; };
        push(mesh.edge_vert[e][0]);
        push(mesh.edge_vert[e][1]);
        for (int s = 0; s < per_edge; ++s) push(V + e * per_edge + s);
    }
    return dm;
}

} // namespace af
