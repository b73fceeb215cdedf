#pragma once

#include <memory>
#include <vector>

#include "basis.hpp"
#include "boundary.hpp"
#include "dofmap.hpp"
#include "geometry.hpp"
#include "mesh.hpp"
#include "models.hpp"
#include "state.hpp"

namespace af {

// Residual-distribution variant of the point update: upwind matrices K+ or
// the sign(K) flavour (kept as an option, not separately validated).
enum class PointVariant { kplus, sign };

struct SchemeConfig {
    PointVariant point_variant = PointVariant::kplus;
    // numerical flux at farfield / exact-Dirichlet boundary faces
    FluxKind boundary_flux = FluxKind::roe_hartenyee;
};

struct LowOrderConfig {
    FluxKind avg_flux = FluxKind::rusanov;
    enum class PointKind { local_lax_friedrichs, roe_rd };
    PointKind point_kind = PointKind::local_lax_friedrichs;
    double alpha_safety = 1.0;  // >= 1
};

// Everything the spatial operators need, plus basis tables evaluated once at
// the local nodes. Immutable after construction; shared read-only by all
// parallel assembly loops.
template <int M>
struct Discretization {
    const Mesh& mesh;
    const DofMap& dm;
    const GeometryTables& geom;
    const FluxModel<M>& model;
    const BoundarySpec<M>& bc;
    SchemeConfig scheme;
    LowOrderConfig low;

    int order;
    int N;    // basis size
    int npn;  // point nodes per element (N - 1)

    // d phi_i / d lam_k at local node s: node_dphi[(s*N + i)*3 + k]
    std::vector<double> node_dphi;
    // edge-trace interpolation weights at the 3 Gauss points: trace_w[q][j]
    double trace_w[3][4] = {};
    const int* walk = nullptr;

    std::vector<int> boundary_edges;

    Discretization(const Mesh& mesh_, const DofMap& dm_, const GeometryTables& geom_,
                   const FluxModel<M>& model_, const BoundarySpec<M>& bc_,
                   SchemeConfig scheme_ = {}, LowOrderConfig low_ = {})
        : mesh(mesh_), dm(dm_), geom(geom_), model(model_), bc(bc_), scheme(scheme_), low(low_),
          order(dm_.order), N(basis_size(dm_.order)), npn(num_point_nodes(dm_.order)) {
        bc.validate(model);
        node_dphi.resize(npn * N * 3);
        const auto* nodes = local_node_coords(order);
        std::vector<double> g(N * 3);
        for (int s = 0; s < npn; ++s) {
            eval_basis_bary_grad(order, nodes[s].data(), reinterpret_cast<double(*)[3]>(g.data()));
            for (int i = 0; i < N * 3; ++i) node_dphi[s * N * 3 + i] = g[i];
        }
        const EdgeRule& er = edge_rule();
        for (int q = 0; q < 3; ++q) edge_trace_weights(order, er.t[q], trace_w[q]);
        walk = boundary_walk(order);
        for (int e = 0; e < mesh.num_edges(); ++e)
            if (mesh.is_boundary_edge(e)) boundary_edges.push_back(e);
    }

    // Gradient of the element representation at local node s of triangle t.
    void element_gradient(const SolutionState<M>& u, int t, int s, VecM<M>& gx,
                          VecM<M>& gy) const {
        const auto& gl = geom.grad_lambda[t];
        const double* D = node_dphi.data() + static_cast<std::size_t>(s) * N * 3;
        gx.setZero();
        gy.setZero();
        for (int i = 0; i < N; ++i) {
            const Vec2 gi = D[3 * i] * gl[0] + D[3 * i + 1] * gl[1] + D[3 * i + 2] * gl[2];
            const auto ci = i < npn ? VecM<M>(u.pt(dm.tri_dofs[t][i])) : VecM<M>(u.av(t));
            gx += gi.x * ci;
            gy += gi.y * ci;
        }
    }

    // Trace of the representation on edge e at parameter tq (from the stored
    // first vertex); the bubble vanishes on edges so only edge DoFs enter.
    VecM<M> edge_trace(const SolutionState<M>& u, int e, int q) const {
        int dofs[4];
        dm.edge_trace_dofs(mesh, e, dofs);
        VecM<M> val = trace_w[q][0] * VecM<M>(u.pt(dofs[0]));
        for (int s = 0; s < order - 1; ++s) val += trace_w[q][1 + s] * VecM<M>(u.pt(dofs[1 + s]));
        val += trace_w[q][order] * VecM<M>(u.pt(dofs[order]));
        return val;
    }

    Vec2 edge_point(int e, double tq) const {
        const Vec2& a = mesh.vertex[mesh.edge_vert[e][0]];
        const Vec2& b = mesh.vertex[mesh.edge_vert[e][1]];
        return a + (b - a) * tq;
    }

    int local_index_of(int t, int dof) const {
        for (int k = 0; k < npn; ++k)
            if (dm.tri_dofs[t][k] == dof) return k;
        return -1;
    }
};

// Gather the average time derivative from a face-flux table:
// d ubar_E / dt = -(1/|E|) sum over faces of the outward-signed stored flux.
template <int M>
void avg_rhs_from_face_flux(const Mesh& mesh, const std::vector<double>& face_flux,
                            std::vector<double>& avg_rhs) {
    const int T = mesh.num_triangles();
#pragma omp parallel for schedule(static)
    for (int t = 0; t < T; ++t) {
        VecM<M> acc = VecM<M>::Zero();
        for (int k = 0; k < 3; ++k) {
            const int e = mesh.tri_edge[t][k];
            const double s = static_cast<double>(mesh.tri_edge_sign[t][k]);
            acc -= s * Eigen::Map<const VecM<M>>(face_flux.data() + e * M);
        }
        Eigen::Map<VecM<M>>(avg_rhs.data() + t * M) = acc / mesh.tri_area[t];
    }
}

// Solve N^{-1} phi = acc for phi, where N^{-1} accumulates K+ (or sign)
// contributions. A vanishing scalar sum means no upwind contribution and a
// zero residual; for systems a rank-deficient sum falls back to the
// Moore-Penrose solution of the (consistent) system.
template <int M>
VecM<M> solve_upwind_system(const MatM<M>& Ninv, const VecM<M>& acc) {
    if constexpr (M == 1) {
        VecM<1> phi;
        phi[0] = Ninv(0, 0) != 0.0 ? acc[0] / Ninv(0, 0) : 0.0;
        return phi;
    } else {
        Eigen::CompleteOrthogonalDecomposition<MatM<M>> cod(Ninv);
        return cod.solve(acc);
    }
}

} // namespace af
