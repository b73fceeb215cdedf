#pragma once

#include <Eigen/Dense>
#include <vector>

#include "models.hpp"

namespace af {

// Point values at the boundary DoFs plus independent cell averages.
template <int M>
struct SolutionState {
    int n_points = 0;
    int n_tris = 0;
    double time = 0.0;
    std::vector<double> point;  // n_points x M
    std::vector<double> avg;    // n_tris x M

    SolutionState() = default;
    SolutionState(int np, int nt) : n_points(np), n_tris(nt), point(np * M, 0.0), avg(nt * M, 0.0) {}

    Eigen::Map<VecM<M>> pt(int i) { return Eigen::Map<VecM<M>>(point.data() + i * M); }
    Eigen::Map<const VecM<M>> pt(int i) const {
        return Eigen::Map<const VecM<M>>(point.data() + i * M);
    }
    Eigen::Map<VecM<M>> av(int t) { return Eigen::Map<VecM<M>>(avg.data() + t * M); }
    Eigen::Map<const VecM<M>> av(int t) const {
        return Eigen::Map<const VecM<M>>(avg.data() + t * M);
    }

    bool all_finite() const {
        for (double v : point)
            if (!std::isfinite(v)) return false;
        for (double v : avg)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

// Per-stage spatial-operator output. Interior face fluxes are stored once and
// reused with opposite signs by the two adjacent elements; MOOD edits the
// accumulated table before the averages are finalized, which keeps the update
// conservative by construction.
template <int M>
struct SchemeWorkspace {
    std::vector<double> face_flux;  // E x M, along the stored edge normal
    std::vector<double> avg_rhs;    // T x M
    std::vector<double> point_rhs;  // P x M

    void resize(int n_edges, int n_tris, int n_points) {
        face_flux.assign(n_edges * M, 0.0);
        avg_rhs.assign(n_tris * M, 0.0);
        point_rhs.assign(n_points * M, 0.0);
    }
    Eigen::Map<VecM<M>> flux(int e) { return Eigen::Map<VecM<M>>(face_flux.data() + e * M); }
    Eigen::Map<const VecM<M>> flux(int e) const {
        return Eigen::Map<const VecM<M>>(face_flux.data() + e * M);
    }
};

} // namespace af
