#include "basis.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace af {

int basis_size(int order) {
    if (order == 2) return 7;
    if (order == 3) return 10;
    throw std::invalid_argument("basis order must be 2 or 3");
}

int num_point_nodes(int order) { return basis_size(order) - 1; }

namespace {

const std::array<std::array<double, 3>, 6> kNodesP2 = {{
    {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
    {0.5, 0.5, 0}, {0, 0.5, 0.5}, {0.5, 0, 0.5},
}};

const std::array<std::array<double, 3>, 9> kNodesP3 = {{
    {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
    {2.0 / 3.0, 1.0 / 3.0, 0}, {1.0 / 3.0, 2.0 / 3.0, 0},
    {0, 2.0 / 3.0, 1.0 / 3.0}, {0, 1.0 / 3.0, 2.0 / 3.0},
    {1.0 / 3.0, 0, 2.0 / 3.0}, {2.0 / 3.0, 0, 1.0 / 3.0},
}};

const int kWalkP2[6] = {0, 3, 1, 4, 2, 5};
const int kWalkP3[9] = {0, 3, 4, 1, 5, 6, 2, 7, 8};

} // namespace

const std::array<double, 3>* local_node_coords(int order) {
    return order == 2 ? kNodesP2.data() : kNodesP3.data();
}

const int* boundary_walk(int order) { return order == 2 ? kWalkP2 : kWalkP3; }

void eval_basis(int order, const double lam[3], double* v) {
    const double l0 = lam[0], l1 = lam[1], l2 = lam[2];
    const double bub = 60.0 * l0 * l1 * l2;
    if (order == 2) {
        v[0] = l0 * (2.0 * l0 - 1.0);
        v[1] = l1 * (2.0 * l1 - 1.0);
        v[2] = l2 * (2.0 * l2 - 1.0);
        v[3] = 4.0 * l0 * l1 - bub / 3.0;
        v[4] = 4.0 * l1 * l2 - bub / 3.0;
        v[5] = 4.0 * l2 * l0 - bub / 3.0;
        v[6] = bub;
    } else {
        const double c = l0 * l1 * l2;
        v[0] = 0.5 * l0 * (3.0 * l0 - 1.0) * (3.0 * l0 - 2.0) - 2.0 * c;
        v[1] = 0.5 * l1 * (3.0 * l1 - 1.0) * (3.0 * l1 - 2.0) - 2.0 * c;
        v[2] = 0.5 * l2 * (3.0 * l2 - 1.0) * (3.0 * l2 - 2.0) - 2.0 * c;
        v[3] = 4.5 * (l0 * l1 * (3.0 * l0 - 1.0) - c);
        v[4] = 4.5 * (l0 * l1 * (3.0 * l1 - 1.0) - c);
        v[5] = 4.5 * (l1 * l2 * (3.0 * l1 - 1.0) - c);
        v[6] = 4.5 * (l1 * l2 * (3.0 * l2 - 1.0) - c);
        v[7] = 4.5 * (l2 * l0 * (3.0 * l2 - 1.0) - c);
        v[8] = 4.5 * (l2 * l0 * (3.0 * l0 - 1.0) - c);
        v[9] = 60.0 * c;
    }
}

void eval_basis_bary_grad(int order, const double lam[3], double (*g)[3]) {
    const double l0 = lam[0], l1 = lam[1], l2 = lam[2];
    // bubble partials
    const double b0 = 60.0 * l1 * l2, b1 = 60.0 * l0 * l2, b2 = 60.0 * l0 * l1;
    if (order == 2) {
        g[0][0] = 4.0 * l0 - 1.0; g[0][1] = 0.0; g[0][2] = 0.0;
        g[1][0] = 0.0; g[1][1] = 4.0 * l1 - 1.0; g[1][2] = 0.0;
        g[2][0] = 0.0; g[2][1] = 0.0; g[2][2] = 4.0 * l2 - 1.0;
        g[3][0] = 4.0 * l1 - b0 / 3.0; g[3][1] = 4.0 * l0 - b1 / 3.0; g[3][2] = -b2 / 3.0;
        g[4][0] = -b0 / 3.0; g[4][1] = 4.0 * l2 - b1 / 3.0; g[4][2] = 4.0 * l1 - b2 / 3.0;
        g[5][0] = 4.0 * l2 - b0 / 3.0; g[5][1] = -b1 / 3.0; g[5][2] = 4.0 * l0 - b2 / 3.0;
        g[6][0] = b0; g[6][1] = b1; g[6][2] = b2;
    } else {
        const double c0 = l1 * l2, c1 = l0 * l2, c2 = l0 * l1;
        auto vtx = [](double l) { return 13.5 * l * l - 9.0 * l + 1.0; };
        g[0][0] = vtx(l0) - 2.0 * c0; g[0][1] = -2.0 * c1; g[0][2] = -2.0 * c2;
        g[1][0] = -2.0 * c0; g[1][1] = vtx(l1) - 2.0 * c1; g[1][2] = -2.0 * c2;
        g[2][0] = -2.0 * c0; g[2][1] = -2.0 * c1; g[2][2] = vtx(l2) - 2.0 * c2;
        // phi = 4.5 (la lb (3 la - 1) - l0 l1 l2) for edge (a,b), node nearer a
        auto edge = [&](int i, int a, int b) {
            const double la = lam[a], lb = lam[b];
            g[i][0] = -4.5 * c0; g[i][1] = -4.5 * c1; g[i][2] = -4.5 * c2;
            g[i][a] += 4.5 * (lb * (6.0 * la - 1.0));
            g[i][b] += 4.5 * (la * (3.0 * la - 1.0));
        };
        edge(3, 0, 1); edge(4, 1, 0);
        edge(5, 1, 2); edge(6, 2, 1);
        edge(7, 2, 0); edge(8, 0, 2);
        g[9][0] = b0; g[9][1] = b1; g[9][2] = b2;
    }
}

void edge_trace_weights(int order, double t, double* w) {
    if (order == 2) {
        w[0] = (1.0 - t) * (1.0 - 2.0 * t);
        w[1] = 4.0 * t * (1.0 - t);
        w[2] = t * (2.0 * t - 1.0);
    } else {
        // nodes at 0, 1/3, 2/3, 1
        w[0] = -4.5 * (t - 1.0 / 3.0) * (t - 2.0 / 3.0) * (t - 1.0);
        w[1] = 13.5 * t * (t - 2.0 / 3.0) * (t - 1.0);
        w[2] = -13.5 * t * (t - 1.0 / 3.0) * (t - 1.0);
        w[3] = 4.5 * t * (t - 1.0 / 3.0) * (t - 2.0 / 3.0);
    }
}

const EdgeRule& edge_rule() {
    static const EdgeRule rule = [] {
        EdgeRule r;
        const double s = std::sqrt(3.0 / 5.0) * 0.5;
        r.t = {0.5 - s, 0.5, 0.5 + s};
        r.w = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
        return r;
    }();
    return rule;
}

namespace {

TriRule make_rule_deg5() {
    TriRule r;
    auto add3 = [&](double a, double b, double w) {
        r.lam.push_back({a, b, b}); r.w.push_back(w);
        r.lam.push_back({b, a, b}); r.w.push_back(w);
        r.lam.push_back({b, b, a}); r.w.push_back(w);
    };
    r.lam.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
    r.w.push_back(0.225);
    add3(0.059715871789770, 0.470142064105115, 0.132394152788506);
    add3(0.797426985353087, 0.101286507323456, 0.125939180544827);
    return r;
}

TriRule make_rule_deg6() {
    TriRule r;
    auto add3 = [&](double a, double b, double w) {
        r.lam.push_back({a, b, b}); r.w.push_back(w);
        r.lam.push_back({b, a, b}); r.w.push_back(w);
        r.lam.push_back({b, b, a}); r.w.push_back(w);
    };
    auto add6 = [&](double a, double b, double c, double w) {
        r.lam.push_back({a, b, c}); r.w.push_back(w);
        r.lam.push_back({a, c, b}); r.w.push_back(w);
        r.lam.push_back({b, a, c}); r.w.push_back(w);
        r.lam.push_back({b, c, a}); r.w.push_back(w);
        r.lam.push_back({c, a, b}); r.w.push_back(w);
        r.lam.push_back({c, b, a}); r.w.push_back(w);
    };
    add3(0.873821971016996, 0.063089014491502, 0.050844906370207);
    add3(0.501426509658179, 0.249286745170910, 0.116786275726379);
    add6(0.636502499121399, 0.310352451033785, 0.053145049844816, 0.082851075618374);
    return r;
}

} // namespace

const TriRule& interior_rule(int order) {
    static const TriRule deg5 = make_rule_deg5();
    static const TriRule deg6 = make_rule_deg6();
    if (order != 2 && order != 3) throw std::invalid_argument("interior_rule: order must be 2 or 3");
    return order == 2 ? deg5 : deg6;
}

TriRule subdivided_rule(const TriRule& base, int levels) {
    TriRule cur = base;
    for (int l = 0; l < levels; ++l) {
        TriRule next;
        next.lam.reserve(cur.lam.size() * 4);
        next.w.reserve(cur.w.size() * 4);
        // 4 congruent children in barycentric coordinates: each child maps the
        // reference triangle affinely; weights scale by 1/4.
        const std::array<std::array<std::array<double, 3>, 3>, 4> child = {{
            {{{1, 0, 0}, {0.5, 0.5, 0}, {0.5, 0, 0.5}}},
            {{{0.5, 0.5, 0}, {0, 1, 0}, {0, 0.5, 0.5}}},
            {{{0.5, 0, 0.5}, {0, 0.5, 0.5}, {0, 0, 1}}},
            {{{0.5, 0.5, 0}, {0, 0.5, 0.5}, {0.5, 0, 0.5}}},
        }};
        for (const auto& c : child) {
            for (std::size_t q = 0; q < cur.w.size(); ++q) {
                const auto& l0 = cur.lam[q];
                std::array<double, 3> lm{};
                for (int k = 0; k < 3; ++k)
                    lm[k] = l0[0] * c[0][k] + l0[1] * c[1][k] + l0[2] * c[2][k];
                next.lam.push_back(lm);
                next.w.push_back(0.25 * cur.w[q]);
            }
        }
        cur = std::move(next);
    }
    return cur;
}

} // namespace af
