#pragma once

#include <cmath>
#include <limits>

#include "discretization.hpp"

namespace af {

// First-order invariant-domain-preserving fallback:
//   averages:     finite volume on the triangles, Rusanov or Roe flux built
//                 from the cell averages only;
//   point values: sub-element residual distribution. Each element is split
//                 into N-1 sub-triangles by its boundary DoF nodes and the
//                 centroid node, whose value is the cell average. The update is
//                 du_sigma/dt = -(1/|C_sigma|) sum over sub-triangles of
//                 Phi_sigma^T with the local Lax-Friedrichs residual
//                 Phi_sigma^T = (1/3)|T| J(um) grad u_P1 + alpha (u_sigma - um).

// Ghost average across a boundary edge for the first-order flux.
template <int M>
VecM<M> low_order_ghost(const Discretization<M>& d, const VecM<M>& uL, int e, double time) {
    const auto& entry = d.bc.entry(d.mesh.edge_tag[e]);
    const Vec2 un = d.mesh.edge_normal[e];
    const Vec2 xm = d.edge_point(e, 0.5);
    VecM<M> ghost;
    if (boundary_ghost(d.model, d.bc, entry, uL, xm, un, time, ghost)) return ghost;
    return uL;  // Neumann
}

// |Gamma| Fhat(uL, uR, n) from the adjacent cell averages (integrated flux,
// along the stored edge normal).
template <int M>
VecM<M> low_order_face_flux(const Discretization<M>& d, const SolutionState<M>& u, int e,
                            double time) {
    const Vec2 n = d.mesh.edge_normal[e] * d.mesh.edge_len[e];
    const Vec2 xm = d.edge_point(e, 0.5);
    const VecM<M> uL = u.av(d.mesh.edge_tri[e][0]);
    if (!d.model.admissible(uL)) return VecM<M>::Constant(std::numeric_limits<double>::quiet_NaN());
    if (d.mesh.is_boundary_edge(e)) {
        const auto& entry = d.bc.entry(d.mesh.edge_tag[e]);
        FluxKind kind = d.low.avg_flux;
        if (entry.kind == BcKind::wall) kind = FluxKind::rusanov;
        VecM<M> ghost;
        if (!boundary_ghost(d.model, d.bc, entry, uL, xm, d.mesh.edge_normal[e], time, ghost))
            return d.model.flux_dot_n(uL, xm, n);
        return numerical_flux(d.model, kind, uL, ghost, xm, n);
    }
    const VecM<M> uR = u.av(d.mesh.edge_tri[e][1]);
    if (!d.model.admissible(uR)) return VecM<M>::Constant(std::numeric_limits<double>::quiet_NaN());
    return numerical_flux(d.model, d.low.avg_flux, uL, uR, xm, n);
}

template <int M>
void low_order_face_fluxes(const Discretization<M>& d, const SolutionState<M>& u, double time,
                           std::vector<double>& face_flux) {
    const int E = d.mesh.num_edges();
#pragma omp parallel for schedule(static)
    for (int e = 0; e < E; ++e)
        Eigen::Map<VecM<M>>(face_flux.data() + e * M) = low_order_face_flux(d, u, e, time);
}

// Local Lax-Friedrichs residual of one sub-triangle at its local node `which`
// (positions CCW, values at the three nodes). alpha majorizes the spectral
// radius of J.n over the nodes, the node mean and the inward scaled normals.
template <int M>
VecM<M> llf_subelement_residual(const FluxModel<M>& model, const Vec2 pos[3], const VecM<M> val[3],
                                int which, double alpha_safety) {
    const double area = triangle_area(pos[0], pos[1], pos[2]);
    const VecM<M> um = (val[0] + val[1] + val[2]) / 3.0;
    const Vec2 xc = (pos[0] + pos[1] + pos[2]) / 3.0;

    Vec2 inward[3];
    VecM<M> gx = VecM<M>::Zero(), gy = VecM<M>::Zero();
    for (int k = 0; k < 3; ++k) {
        inward[k] = -1.0 * outward_scaled_normal(pos[(k + 1) % 3], pos[(k + 2) % 3]);
        gx += val[k] * (inward[k].x / (2.0 * area));
        gy += val[k] * (inward[k].y / (2.0 * area));
    }
    double alpha = 0.0;
    for (int k = 0; k < 3; ++k) {
        for (int j = 0; j < 3; ++j)
            alpha = std::max(alpha, model.wave_speed(val[k], xc, inward[j]));
        alpha = std::max(alpha, model.wave_speed(um, xc, inward[k]));
    }
    alpha *= alpha_safety;

    return (area / 3.0) * model.jac_apply(um, xc, gx, gy) + alpha * (val[which] - um);
}

// Finite-volume scheme in residual-distribution form (Roe flux with the
// Harten-Yee fix): Phi_i = sum_j [Fhat(u_i, u_j, nu_ij) - f(u_i).nu_ij] with
// nu_ij = (n_j_in - n_i_in)/6 the scaled median-dual interface normals.
template <int M>
VecM<M> roe_rd_subelement_residual(const FluxModel<M>& model, const Vec2 pos[3],
                                   const VecM<M> val[3], int which) {
    const Vec2 xc = (pos[0] + pos[1] + pos[2]) / 3.0;
    Vec2 inward[3];
    for (int k = 0; k < 3; ++k)
        inward[k] = -1.0 * outward_scaled_normal(pos[(k + 1) % 3], pos[(k + 2) % 3]);
    VecM<M> acc = VecM<M>::Zero();
    for (int j = 0; j < 3; ++j) {
        if (j == which) continue;
        const Vec2 nu = (inward[j] - inward[which]) / 6.0;
        acc += numerical_flux(model, FluxKind::roe_hartenyee, val[which], val[j], xc, nu) -
               model.flux_dot_n(val[which], xc, nu);
    }
    return acc;
}

namespace detail {

template <int M>
VecM<M> subelement_residual(const Discretization<M>& d, const Vec2 pos[3], const VecM<M> val[3],
                            int which) {
    if (d.low.point_kind == LowOrderConfig::PointKind::local_lax_friedrichs)
        return llf_subelement_residual(d.model, pos, val, which, d.low.alpha_safety);
    return roe_rd_subelement_residual(d.model, pos, val, which);
}

// Residuals of the (at most two) sub-triangles of element t that contain the
// local boundary node s; optionally reflected across a wall edge with unit
// normal `wall_n` (mirrored geometry and states).
template <int M>
VecM<M> element_subresiduals(const Discretization<M>& d, const SolutionState<M>& u, int t, int s,
                             const Vec2* wall_n) {
    const int npn = d.npn;
    // position of s in the CCW boundary walk
    int w = -1;
    for (int i = 0; i < npn; ++i)
        if (d.walk[i] == s) { w = i; break; }
    const Vec2 c = d.mesh.centroid(t);
    const VecM<M> uc = u.av(t);

    auto node_of = [&](int wi) { return d.dm.tri_dofs[t][d.walk[(wi + npn) % npn]]; };
    const int self = node_of(w);
    VecM<M> acc = VecM<M>::Zero();
    for (int side = 0; side < 2; ++side) {
        // side 0: sub-triangle (b_w, b_{w+1}, centroid); side 1: (b_{w-1}, b_w, centroid)
        const int other = side == 0 ? node_of(w + 1) : node_of(w - 1);
        Vec2 pos[3];
        VecM<M> val[3];
        pos[2] = c;
        val[2] = uc;
        const int which = side == 0 ? 0 : 1;
        const int oidx = 1 - which;
        pos[which] = d.dm.point_pos[self]; val[which] = u.pt(self);
        pos[oidx] = d.dm.point_pos[other]; val[oidx] = u.pt(other);
        if (wall_n) {
            // reflected geometry flips orientation; swap the two boundary nodes
            // to restore CCW and mirror the states
            Vec2 rpos[3];
            VecM<M> rval[3];
            const Vec2 anchor = d.dm.point_pos[self];
            for (int k = 0; k < 3; ++k) {
                rpos[k] = anchor + reflect(pos[k] - anchor, *wall_n);
                rval[k] = d.model.mirror(val[k], *wall_n);
            }
            std::swap(rpos[0], rpos[1]);
            std::swap(rval[0], rval[1]);
            acc += subelement_residual(d, rpos, rval, 1 - which);
        } else {
            acc += subelement_residual(d, pos, val, which);
        }
    }
    return acc;
}

} // namespace detail

// First-order point update at one DoF: du/dt (already includes the minus sign
// and the 1/|C_sigma| scaling, plus the boundary treatment).
template <int M>
VecM<M> low_order_point_rhs_at(const Discretization<M>& d, const SolutionState<M>& u, int dof,
                               double time) {
    const VecM<M> us = u.pt(dof);
    const Vec2 xs = d.dm.point_pos[dof];
    if (!d.model.admissible(us))
        return VecM<M>::Constant(std::numeric_limits<double>::quiet_NaN());

    VecM<M> acc = VecM<M>::Zero();
    double measure = d.dm.dual_measure[dof];
    VecM<M> penalty = VecM<M>::Zero();

    for (int a = d.dm.adj_offset[dof]; a < d.dm.adj_offset[dof + 1]; ++a)
        acc += detail::element_subresiduals(d, u, d.dm.adj_tri[a], d.dm.adj_local[a], nullptr);

    for (int b = d.dm.bedge_offset[dof]; b < d.dm.bedge_offset[dof + 1]; ++b) {
        const int e = d.dm.bedge_list[b];
        const auto& entry = d.bc.entry(d.mesh.edge_tag[e]);
        if (entry.kind == BcKind::neumann) return VecM<M>::Zero();
        if (entry.kind == BcKind::wall) {
            const int t = d.mesh.edge_tri[e][0];
            const int s = d.local_index_of(t, dof);
            const Vec2 un = d.mesh.edge_normal[e];
            acc += detail::element_subresiduals(d, u, t, s, &un);
            // the mirrored element contributes its sub-element measures as well
            measure += (2.0 / (3.0 * d.npn)) * d.mesh.tri_area[t];
        } else {
            const VecM<M> ub = entry.kind == BcKind::farfield ? entry.u_inf
                                                              : d.bc.dirichlet_value(xs, time);
            const Vec2 n_out = d.mesh.edge_normal[e] * d.mesh.edge_len[e];
            const EigenSplit<M> split = d.model.eigen_split(us, xs, n_out);
            penalty -= split.minus * (us - ub) / d.dm.dual_measure[dof];
        }
    }
    return -(acc / measure + penalty);
}

template <int M>
void low_order_point_rhs(const Discretization<M>& d, const SolutionState<M>& u, double time,
                         std::vector<double>& point_rhs) {
    const int P = d.dm.n_points;
#pragma omp parallel for schedule(static)
    for (int dof = 0; dof < P; ++dof)
        Eigen::Map<VecM<M>>(point_rhs.data() + dof * M) = low_order_point_rhs_at(d, u, dof, time);
}

// Largest forward-Euler step for which the local Lax-Friedrichs point update
// is provably invariant-domain preserving: 3 dt/|T| rho(J.n) <= 1 over all
// sub-triangles, nodes and inward normals.
template <int M>
double provable_point_dt(const Discretization<M>& d, const SolutionState<M>& u) {
    double dt = std::numeric_limits<double>::infinity();
    for (int t = 0; t < d.mesh.num_triangles(); ++t) {
        const SubElementPartition part = subelement_partition(d.mesh, d.dm, t);
        for (int i = 0; i < part.nsub; ++i) {
            const Vec2 xc = (part.pos[i][0] + part.pos[i][1] + part.pos[i][2]) / 3.0;
            for (int k = 0; k < 3; ++k) {
                const int ln = part.node[i][k];
                const VecM<M> uv = ln < 0 ? VecM<M>(u.av(t)) : VecM<M>(u.pt(d.dm.tri_dofs[t][ln]));
                for (int j = 0; j < 3; ++j) {
                    const double sp = d.model.wave_speed(uv, xc, part.inward[i][j]) *
                                      d.low.alpha_safety;
                    if (sp > 0.0) dt = std::min(dt, part.area[i] / (3.0 * sp));
                }
            }
        }
    }
    return dt;
}

} // namespace af
