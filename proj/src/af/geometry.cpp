#include "geometry.hpp"

#include "basis.hpp"

namespace af {

GeometryTables build_geometry_tables(const Mesh& mesh, int order) {
    GeometryTables g;
    g.order = order;
    const int T = mesh.num_triangles();
    const int npn = num_point_nodes(order);
    g.grad_lambda.resize(T);
    g.node_normal.resize(T);
    for (int t = 0; t < T; ++t) {
        const auto& v = mesh.tri[t];
        const Vec2 p0 = mesh.vertex[v[0]], p1 = mesh.vertex[v[1]], p2 = mesh.vertex[v[2]];
        // outward scaled normals of local edges (0,1), (1,2), (2,0)
        const Vec2 out01 = outward_scaled_normal(p0, p1);
        const Vec2 out12 = outward_scaled_normal(p1, p2);
        const Vec2 out20 = outward_scaled_normal(p2, p0);
        const double inv2a = 1.0 / (2.0 * mesh.tri_area[t]);
        // grad lambda_k = inward normal of the edge opposite vertex k / (2|E|)
        g.grad_lambda[t][0] = (-1.0 * out12) * inv2a;
        g.grad_lambda[t][1] = (-1.0 * out20) * inv2a;
        g.grad_lambda[t][2] = (-1.0 * out01) * inv2a;

        auto& nn = g.node_normal[t];
        nn[0] = -1.0 * out12;
        nn[1] = -1.0 * out20;
        nn[2] = -1.0 * out01;
        const Vec2 eout[3] = {out01, out12, out20};
        for (int le = 0; le < 3; ++le)
            for (int s = 0; s < order - 1; ++s)
                nn[3 + le * (order - 1) + s] = eout[le];
        for (int j = npn; j < 9; ++j) nn[j] = Vec2{0, 0};
    }
    return g;
}

SubElementPartition subelement_partition(const Mesh& mesh, const DofMap& dm, int t) {
    SubElementPartition p;
    const int npn = dm.per_tri;
    p.nsub = npn;  // N-1 sub-triangles around the centroid
    const int* walk = boundary_walk(dm.order);
    const Vec2 c = mesh.centroid(t);
    for (int i = 0; i < npn; ++i) {
        const int a = walk[i];
        const int b = walk[(i + 1) % npn];
        // CCW: consecutive boundary nodes, then the centroid
        p.node[i] = {a, b, -1};
        p.pos[i] = {dm.point_pos[dm.tri_dofs[t][a]], dm.point_pos[dm.tri_dofs[t][b]], c};
        p.area[i] = triangle_area(p.pos[i][0], p.pos[i][1], p.pos[i][2]);
        for (int k = 0; k < 3; ++k) {
            const Vec2& q0 = p.pos[i][(k + 1) % 3];
            const Vec2& q1 = p.pos[i][(k + 2) % 3];
            p.inward[i][k] = -1.0 * outward_scaled_normal(q0, q1);
        }
    }
    return p;
}

} // namespace af
