#pragma once

#include <array>
#include <vector>

#include "geom.hpp"

namespace af {

// Shape functions on a triangle for the enriched quadratic/cubic space:
// N-1 point-value functions with zero mean plus a mean-carrying bubble,
// N = 7 (order 2) or N = 10 (order 3).
//
// Local point-DoF ordering: vertices 0,1,2, then (order-1) nodes per local
// edge (0,1), (1,2), (2,0); per edge the nodes run from the first vertex.
// The bubble has local index N-1.

int basis_size(int order);       // N
int num_point_nodes(int order);  // N - 1

// Barycentric coordinates of the local point-DoF nodes (num_point_nodes entries).
const std::array<double, 3>* local_node_coords(int order);

// Local point-DoF indices walked counter-clockwise along the element boundary
// starting at vertex 0 (num_point_nodes entries).
const int* boundary_walk(int order);

// Values of all N shape functions at a barycentric point.
void eval_basis(int order, const double lam[3], double* vals);

// Partial derivatives d phi_i / d lam_k, i = 0..N-1, k = 0..2.
void eval_basis_bary_grad(int order, const double lam[3], double (*grad)[3]);

// Physical gradient from barycentric partials: grad_x phi = sum_k dphi/dlam_k * glam_k,
// where glam_k = grad lambda_k = (inward scaled normal of edge opposite vertex k) / (2|E|).
inline Vec2 physical_grad(const double dphi[3], const Vec2 glam[3]) {
    return dphi[0] * glam[0] + dphi[1] * glam[1] + dphi[2] * glam[2];
}

// 1D trace along an element edge. Node order: [first vertex, interior nodes
// from the first vertex, second vertex]; t in [0,1] measured from the first
// vertex. The bubble vanishes on edges, so traces use only these order+1 DoFs.
void edge_trace_weights(int order, double t, double* w);

// 3-point Gauss rule on [0,1]; weights sum to 1 (exact through degree 5).
struct EdgeRule {
    std::array<double, 3> t;
    std::array<double, 3> w;
};
const EdgeRule& edge_rule();

// Symmetric interior rule on the reference triangle; weights sum to 1 and
// scale by |E|. Degree 5 (7 points) for order 2, degree 6 (12 points) for order 3.
struct TriRule {
    std::vector<std::array<double, 3>> lam;
    std::vector<double> w;
};
const TriRule& interior_rule(int order);

// Composite refinement of a base rule over 4^levels congruent sub-triangles.
TriRule subdivided_rule(const TriRule& base, int levels);

// Integral over a physical triangle using a rule (values sampled by callback).
template <typename F>
double integrate(const TriRule& rule, const Vec2& a, const Vec2& b, const Vec2& c, F&& f) {
    const double area = triangle_area(a, b, c);
    double acc = 0.0;
    for (std::size_t q = 0; q < rule.w.size(); ++q) {
        const auto& l = rule.lam[q];
        const Vec2 x = l[0] * a + l[1] * b + l[2] * c;
        acc += rule.w[q] * f(x, l.data());
    }
    return acc * area;
}

} // namespace af
