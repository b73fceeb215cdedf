#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "models.hpp"

namespace af {

enum class BcKind { wall, farfield, neumann, exact_dirichlet };

// Per-tag boundary prescription. Wall and Neumann need no data; farfield
// carries a free-stream state; exact_dirichlet evaluates the supplied exact
// solution at quadrature points / DoF positions.
template <int M>
struct BoundarySpec {
    struct Entry {
        BcKind kind = BcKind::neumann;
        VecM<M> u_inf = VecM<M>::Zero();
    };
    std::vector<Entry> by_tag;
    std::function<void(const Vec2&, double, double*)> exact;

    const Entry& entry(int tag) const {
        if (tag < 0 || tag >= static_cast<int>(by_tag.size()))
            throw std::runtime_error("boundary: edge tag without a boundary prescription");
        return by_tag[tag];
    }

    VecM<M> dirichlet_value(const Vec2& x, double t) const {
        VecM<M> u;
        exact(x, t, u.data());
        return u;
    }

    void validate(const FluxModel<M>& model) const {
        for (const auto& e : by_tag) {
            if (e.kind == BcKind::farfield && !model.admissible(e.u_inf))
                throw std::runtime_error("boundary: inadmissible farfield state");
            if (e.kind == BcKind::exact_dirichlet && !exact)
                throw std::runtime_error("boundary: exact_dirichlet requires an exact solution");
        }
    }
};

// Mirror of a state across a boundary with unit normal n: same density,
// pressure and energy, reflected velocity (identity for scalar models).
template <int M>
VecM<M> mirror_state(const FluxModel<M>& model, const VecM<M>& u, const Vec2& unit_n) {
    return model.mirror(u, unit_n);
}

// Integrated-boundary-flux ghost value at one quadrature point, or "none"
// for Neumann where the physical flux of the interior trace is used.
template <int M>
bool boundary_ghost(const FluxModel<M>& model, const BoundarySpec<M>& spec,
                    const typename BoundarySpec<M>::Entry& entry, const VecM<M>& u_h,
                    const Vec2& x, const Vec2& unit_n, double t, VecM<M>& ghost) {
    switch (entry.kind) {
        case BcKind::wall:
            ghost = model.mirror(u_h, unit_n);
            return true;
        case BcKind::farfield:
            ghost = entry.u_inf;
            return true;
        case BcKind::exact_dirichlet:
            ghost = spec.dirichlet_value(x, t);
            return true;
        case BcKind::neumann:
            return false;
    }
    return false;
}

// Numerical flux through a boundary quadrature point with scaled normal n.
// Walls always use Rusanov with the mirrored state: its mass and energy
// components cancel exactly, which keeps those totals conserved to rounding.
template <int M>
VecM<M> boundary_face_flux(const FluxModel<M>& model, const BoundarySpec<M>& spec,
                           const typename BoundarySpec<M>::Entry& entry, FluxKind kind,
                           const VecM<M>& u_h, const Vec2& x, const Vec2& n, double t) {
    const double nn = norm(n);
    const Vec2 unit_n{n.x / nn, n.y / nn};
    VecM<M> ghost;
    if (!boundary_ghost(model, spec, entry, u_h, x, unit_n, t, ghost))
        return model.flux_dot_n(u_h, x, n);
    if (entry.kind == BcKind::wall) kind = FluxKind::rusanov;
    return numerical_flux(model, kind, u_h, ghost, x, n);
}

} // namespace af
