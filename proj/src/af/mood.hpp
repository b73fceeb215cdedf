#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "discretization.hpp"
#include "loworder.hpp"

namespace af {

enum class MoodCause : std::uint8_t { none = 0, cad = 1, pad = 2, dmp = 3 };

struct MoodConfig {
    bool enabled = true;
    bool cad = true;
    bool pad = true;
    bool dmp = true;
    // scalar PAD allowance around the invariant interval
    double pad_tol = 1e-5;
    // relaxed DMP band: eps = max(delta0, delta1 * (max - min))
    double dmp_delta0 = 1e-4;
    double dmp_delta1 = 1e-3;
    double plateau_tol = 1e-10;
    // detection runs after each full Runge-Kutta cycle by default
    bool per_stage = false;
};

struct MoodFlags {
    std::vector<std::uint8_t> avg_cause;    // per triangle
    std::vector<std::uint8_t> point_cause;  // per point DoF
    std::vector<std::uint8_t> edge_flag;    // faces whose flux is recomputed
    long avg_cad = 0, avg_pad = 0, avg_dmp = 0;
    long point_cad = 0, point_pad = 0, point_dmp = 0;

    long num_flagged_avg() const { return avg_cad + avg_pad + avg_dmp; }
    long num_flagged_points() const { return point_cad + point_pad + point_dmp; }
};

// Face-or-vertex element neighborhoods V(E), excluding E itself.
struct NeighborTables {
    std::vector<int> offset;
    std::vector<int> list;

    NeighborTables() = default;
    explicit NeighborTables(const Mesh& mesh) {
        const int T = mesh.num_triangles();
        const int V = mesh.num_vertices();
        std::vector<int> voff(V + 1, 0);
        for (const auto& t : mesh.tri)
            for (int k = 0; k < 3; ++k) ++voff[t[k] + 1];
        for (int v = 0; v < V; ++v) voff[v + 1] += voff[v];
        std::vector<int> vtri(voff.back());
        std::vector<int> fill = voff;
        for (int t = 0; t < T; ++t)
            for (int k = 0; k < 3; ++k) vtri[fill[mesh.tri[t][k]]++] = t;

        offset.assign(T + 1, 0);
        std::vector<int> scratch;
        std::vector<std::vector<int>> per_tri(T);
        for (int t = 0; t < T; ++t) {
            scratch.clear();
            for (int k = 0; k < 3; ++k) {
                const int v = mesh.tri[t][k];
                for (int i = voff[v]; i < voff[v + 1]; ++i)
                    if (vtri[i] != t) scratch.push_back(vtri[i]);
            }
            std::sort(scratch.begin(), scratch.end());
            scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
            per_tri[t] = scratch;
            offset[t + 1] = offset[t] + static_cast<int>(scratch.size());
        }
        list.resize(offset.back());
        for (int t = 0; t < T; ++t)
            std::copy(per_tri[t].begin(), per_tri[t].end(), list.begin() + offset[t]);
    }
};

// Detection state shared by the average and point cascades: per-element
// min/max of each test functional over the element's own values at t_n.
template <int M>
class MoodDetector {
public:
    MoodDetector(const Discretization<M>& d, const MoodConfig& cfg)
        : d_(d), cfg_(cfg), nbr_(d.mesh), nfun_(d.model.num_functionals()) {}

    const MoodConfig& config() const { return cfg_; }
    const NeighborTables& neighbors() const { return nbr_; }

    // PAD: scalar models test the invariant interval with the pad tolerance,
    // systems use the admissibility predicate.
    bool pad_ok(const VecM<M>& u) const {
        if constexpr (M == 1) {
            double lo, hi;
            scalar_bounds(lo, hi);
            return u[0] >= lo - cfg_.pad_tol && u[0] <= hi + cfg_.pad_tol;
        } else {
            return d_.model.admissible(u);
        }
    }

    // Prepare per-element functional ranges from the previous-cycle state.
    void prepare(const SolutionState<M>& un) {
        const int T = d_.mesh.num_triangles();
        elem_min_.assign(static_cast<std::size_t>(T) * nfun_, 0.0);
        elem_max_.assign(static_cast<std::size_t>(T) * nfun_, 0.0);
        avg_fun_.assign(static_cast<std::size_t>(T) * nfun_, 0.0);
#pragma omp parallel for schedule(static)
        for (int t = 0; t < T; ++t) {
            double f[2];
            d_.model.functionals(un.av(t), f);
            for (int k = 0; k < nfun_; ++k) {
                avg_fun_[t * nfun_ + k] = f[k];
                elem_min_[t * nfun_ + k] = f[k];
                elem_max_[t * nfun_ + k] = f[k];
            }
            for (int s = 0; s < d_.npn; ++s) {
                d_.model.functionals(un.pt(d_.dm.tri_dofs[t][s]), f);
                for (int k = 0; k < nfun_; ++k) {
                    elem_min_[t * nfun_ + k] = std::min(elem_min_[t * nfun_ + k], f[k]);
                    elem_max_[t * nfun_ + k] = std::max(elem_max_[t * nfun_ + k], f[k]);
                }
            }
        }
    }

    // Cascade for the averages; fills flags.avg_cause and the per-cause counters.
    void detect_averages(const SolutionState<M>& candidate, MoodFlags& flags) const {
        const int T = d_.mesh.num_triangles();
        flags.avg_cause.assign(T, 0);
        long ncad = 0, npad = 0, ndmp = 0;
#pragma omp parallel for schedule(static) reduction(+ : ncad, npad, ndmp)
        for (int t = 0; t < T; ++t) {
            const auto u = candidate.av(t);
            if (cfg_.cad && !u.allFinite()) {
                flags.avg_cause[t] = static_cast<std::uint8_t>(MoodCause::cad);
                ++ncad;
                continue;
            }
            if (cfg_.pad && !pad_ok(u)) {
                flags.avg_cause[t] = static_cast<std::uint8_t>(MoodCause::pad);
                ++npad;
                continue;
            }
            if (!cfg_.dmp) continue;
            double f[2];
            d_.model.functionals(u, f);
            for (int k = 0; k < nfun_ && !flags.avg_cause[t]; ++k) {
                // plateau check over the element and its face neighbors
                double pmin = elem_min_[t * nfun_ + k], pmax = elem_max_[t * nfun_ + k];
                for (int le = 0; le < 3; ++le) {
                    const int e = d_.mesh.tri_edge[t][le];
                    const int o = d_.mesh.edge_tri[e][0] == t ? d_.mesh.edge_tri[e][1]
                                                              : d_.mesh.edge_tri[e][0];
                    if (o < 0) continue;
                    pmin = std::min(pmin, elem_min_[o * nfun_ + k]);
                    pmax = std::max(pmax, elem_max_[o * nfun_ + k]);
                }
                if (pmax - pmin <= cfg_.plateau_tol) continue;
                // relaxed discrete maximum principle on the neighbor averages
                double lo = 0.0, hi = 0.0;
                bool first = true;
                for (int i = nbr_.offset[t]; i < nbr_.offset[t + 1]; ++i) {
                    const double v = avg_fun_[nbr_.list[i] * nfun_ + k];
                    lo = first ? v : std::min(lo, v);
                    hi = first ? v : std::max(hi, v);
                    first = false;
                }
                if (first) continue;
                const double eps = std::max(cfg_.dmp_delta0, cfg_.dmp_delta1 * (hi - lo));
                if (f[k] < lo - eps || f[k] > hi + eps) {
                    flags.avg_cause[t] = static_cast<std::uint8_t>(MoodCause::dmp);
                    ++ndmp;
                }
            }
        }
        flags.avg_cad += ncad;
        flags.avg_pad += npad;
        flags.avg_dmp += ndmp;
    }

    // Cascade for the point values. The DMP neighborhood collects the values
    // (averages and point values) of the elements incident to the DoF and of
    // their face-or-vertex neighbors at t_n.
    void detect_points(const SolutionState<M>& candidate, MoodFlags& flags) const {
        const int P = d_.dm.n_points;
        flags.point_cause.assign(P, 0);
        long ncad = 0, npad = 0, ndmp = 0;
#pragma omp parallel for schedule(static) reduction(+ : ncad, npad, ndmp)
        for (int dof = 0; dof < P; ++dof) {
            const auto u = candidate.pt(dof);
            if (cfg_.cad && !u.allFinite()) {
                flags.point_cause[dof] = static_cast<std::uint8_t>(MoodCause::cad);
                ++ncad;
                continue;
            }
            if (cfg_.pad && !pad_ok(u)) {
                flags.point_cause[dof] = static_cast<std::uint8_t>(MoodCause::pad);
                ++npad;
                continue;
            }
            if (!cfg_.dmp) continue;
            double f[2];
            d_.model.functionals(u, f);
            for (int k = 0; k < nfun_ && !flags.point_cause[dof]; ++k) {
                double lo = 0.0, hi = 0.0;
                bool first = true;
                auto take = (*[](double v, double& lo_, double& hi_, bool& first_) {
                    lo_ = first_ ? v : std::min(lo_, v);
                    hi_ = first_ ? v : std::max(hi_, v);
                    first_ = false;
                });
                for (int a = d_.dm.adj_offset[dof]; a < d_.dm.adj_offset[dof + 1]; ++a) {
                    const int t = d_.dm.adj_tri[a];
                    take(elem_min_[t * nfun_ + k], lo, hi, first);
                    take(elem_max_[t * nfun_ + k], lo, hi, first);
                    for (int i = nbr_.offset[t]; i < nbr_.offset[t + 1]; ++i) {
                        const int o = nbr_.list[i];
                        take(elem_min_[o * nfun_ + k], lo, hi, first);
                        take(elem_max_[o * nfun_ + k], lo, hi, first);
                    }
                }
                if (first || hi - lo <= cfg_.plateau_tol) continue;  // plateau: skip DMP
                const double eps = std::max(cfg_.dmp_delta0, cfg_.dmp_delta1 * (hi - lo));
                if (f[k] < lo - eps || f[k] > hi + eps) {
                    flags.point_cause[dof] = static_cast<std::uint8_t>(MoodCause::dmp);
                    ++ndmp;
                }
            }
        }
        flags.point_cad += ncad;
        flags.point_pad += npad;
        flags.point_dmp += ndmp;
    }

    // A flagged element flags each of its faces.
    void flag_edges(MoodFlags& flags) const {
        flags.edge_flag.assign(d_.mesh.num_edges(), 0);
        for (int t = 0; t < d_.mesh.num_triangles(); ++t) {
            if (!flags.avg_cause[t]) continue;
            for (int le = 0; le < 3; ++le) flags.edge_flag[d_.mesh.tri_edge[t][le]] = 1;
        }
    }

private:
    void scalar_bounds(double& lo, double& hi) const {
        if (const auto* adv = dynamic_cast<const AdvectionModel*>(&d_.model)) {
            lo = adv->domain_lo();
            hi = adv->domain_hi();
        } else if (const auto* kpp = dynamic_cast<const KppModel*>(&d_.model)) {
            lo = kpp->domain_lo();
            hi = kpp->domain_hi();
        } else {
            lo = -std::numeric_limits<double>::infinity();
            hi = std::numeric_limits<double>::infinity();
        }
    }

    const Discretization<M>& d_;
    MoodConfig cfg_;
    NeighborTables nbr_;
    int nfun_;
    std::vector<double> elem_min_, elem_max_, avg_fun_;
};

} // namespace af
