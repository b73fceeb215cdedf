#pragma once

#include <cmath>
#include <limits>

#include "discretization.hpp"

namespace af {

// High-order spatial operator:
//   averages:     |E| d ubar/dt + closed boundary integral of f(u_h).n = 0,
//                 3-point Gauss per edge on the continuous trace;
//   point values: du_sigma/dt + sum_E N_sigma (K_sigma^E)+ J(u_sigma).grad u|_E(sigma) = 0,
//                 with N_sigma^-1 = sum of the (K)+ over the incident elements
//                 (wall edges add a mirrored virtual element, inflow edges a
//                 characteristic relaxation, Neumann zeroes the total).

// Integrated trace flux through every edge; boundary edges use the boundary
// prescription. Result is signed along the stored edge normal.
template <int M>
void high_order_face_fluxes(const Discretization<M>& d, const SolutionState<M>& u, double time,
                            std::vector<double>& face_flux) {
    const EdgeRule& er = edge_rule();
    const int E = d.mesh.num_edges();
#pragma omp parallel for schedule(static)
    for (int e = 0; e < E; ++e) {
        const Vec2 n = d.mesh.edge_normal[e] * d.mesh.edge_len[e];
        VecM<M> acc = VecM<M>::Zero();
        if (!d.mesh.is_boundary_edge(e)) {
            for (int q = 0; q < 3; ++q) {
                const VecM<M> uq = d.edge_trace(u, e, q);
                acc += er.w[q] * d.model.flux_dot_n(uq, d.edge_point(e, er.t[q]), n);
            }
        } else {
            const auto& entry = d.bc.entry(d.mesh.edge_tag[e]);
            for (int q = 0; q < 3; ++q) {
                const VecM<M> uq = d.edge_trace(u, e, q);
                const Vec2 xq = d.edge_point(e, er.t[q]);
                VecM<M> f;
                if (entry.kind != BcKind::neumann && !d.model.admissible(uq)) {
                    f.setConstant(std::numeric_limits<double>::quiet_NaN());
                } else {
                    f = boundary_face_flux(d.model, d.bc, entry, d.scheme.boundary_flux, uq, xq,
                                           n, time);
                }
                acc += er.w[q] * f;
            }
        }
        Eigen::Map<VecM<M>>(face_flux.data() + e * M) = acc;
    }
}

namespace detail {

// One element's contribution to the point residual at its local node s:
// accumulates K+ (or sign K) into Ninv and K+ J(u_sigma).grad u into acc.
template <int M>
inline void accumulate_element(const Discretization<M>& d, const VecM<M>& u_sigma, const Vec2& xs,
                               const Vec2& normal, const VecM<M>& gx, const VecM<M>& gy,
                               MatM<M>& Ninv, VecM<M>& acc) {
    const EigenSplit<M> split = d.model.eigen_split(u_sigma, xs, normal);
    const VecM<M> transport = d.model.jac_apply(u_sigma, xs, gx, gy);
    if (d.scheme.point_variant == PointVariant::kplus) {
        Ninv += split.plus;
        acc += split.plus * transport;
    } else {
        Ninv += split.sign;
        acc += split.sign * transport;
    }
}

} // namespace detail

// Total point residual sum_E Phi_sigma^E (+ boundary terms) at one DoF;
// du_sigma/dt is the negative of this. Exposed for tests.
template <int M>
VecM<M> point_residual_at(const Discretization<M>& d, const SolutionState<M>& u, int dof,
                          double time) {
    const VecM<M> us = u.pt(dof);
    const Vec2 xs = d.dm.point_pos[dof];
    if (!d.model.admissible(us))
        return VecM<M>::Constant(std::numeric_limits<double>::quiet_NaN());

    MatM<M> Ninv = MatM<M>::Zero();
    VecM<M> acc = VecM<M>::Zero();
    VecM<M> penalty = VecM<M>::Zero();
    VecM<M> gx, gy;

    for (int a = d.dm.adj_offset[dof]; a < d.dm.adj_offset[dof + 1]; ++a) {
        const int t = d.dm.adj_tri[a];
        const int s = d.dm.adj_local[a];
        d.element_gradient(u, t, s, gx, gy);
        detail::accumulate_element(d, us, xs, d.geom.node_normal[t][s], gx, gy, Ninv, acc);
    }

    for (int b = d.dm.bedge_offset[dof]; b < d.dm.bedge_offset[dof + 1]; ++b) {
        const int e = d.dm.bedge_list[b];
        const auto& entry = d.bc.entry(d.mesh.edge_tag[e]);
        if (entry.kind == BcKind::neumann) return VecM<M>::Zero();
        const Vec2 un = d.mesh.edge_normal[e];
        if (entry.kind == BcKind::wall) {
            // Virtual element: the owner reflected across the wall line. Fixed
            // point sigma keeps its position; values mirror, the gradient
            // transforms as Mirror . grad u . R with R the reflection.
            const int t = d.mesh.edge_tri[e][0];
            const int s = d.local_index_of(t, dof);
            d.element_gradient(u, t, s, gx, gy);
            VecM<M> gxr = gx * (1.0 - 2.0 * un.x * un.x) + gy * (-2.0 * un.x * un.y);
            VecM<M> gyr = gx * (-2.0 * un.x * un.y) + gy * (1.0 - 2.0 * un.y * un.y);
            // mirror is linear in the state, so it applies to gradient columns
            gxr = d.model.mirror(gxr, un);
            gyr = d.model.mirror(gyr, un);
            const VecM<M> um = d.model.mirror(us, un);
            const Vec2 nv = reflect(d.geom.node_normal[t][s], un);
            detail::accumulate_element(d, um, xs, nv, gxr, gyr, Ninv, acc);
        } else {
            // farfield / exact Dirichlet: relax incoming characteristics to the
            // boundary data, scaled by the dual measure.
            const VecM<M> ub = entry.kind == BcKind::farfield ? entry.u_inf
                                                              : d.bc.dirichlet_value(xs, time);
            const Vec2 n_out = d.mesh.edge_normal[e] * d.mesh.edge_len[e];
            const EigenSplit<M> split = d.model.eigen_split(us, xs, n_out);
            penalty -= split.minus * (us - ub) / d.dm.dual_measure[dof];
        }
    }

    return solve_upwind_system<M>(Ninv, acc) + penalty;
}

template <int M>
void high_order_point_rhs(const Discretization<M>& d, const SolutionState<M>& u, double time,
                          std::vector<double>& point_rhs) {
    const int P = d.dm.n_points;
#pragma omp parallel for schedule(static)
    for (int dof = 0; dof < P; ++dof) {
        Eigen::Map<VecM<M>>(point_rhs.data() + dof * M) = -point_residual_at(d, u, dof, time);
    }
}

// Full spatial operator evaluation (Eq. of the averages + point updates).
template <int M>
void spatial_operator_high(const Discretization<M>& d, const SolutionState<M>& u, double time,
                           SchemeWorkspace<M>& ws) {
    high_order_face_fluxes(d, u, time, ws.face_flux);
    avg_rhs_from_face_flux<M>(d.mesh, ws.face_flux, ws.avg_rhs);
    high_order_point_rhs(d, u, time, ws.point_rhs);
}

} // namespace af
