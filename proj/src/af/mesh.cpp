#include "mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace af {

int Mesh::num_boundary_edges() const {
    int n = 0;
    for (int e = 0; e < num_edges(); ++e)
        if (is_boundary_edge(e)) ++n;
    return n;
}

double Mesh::total_area() const {
    double a = 0.0;
    for (double t : tri_area) a += t;
    return a;
}

double Mesh::mean_diameter() const {
    double acc = 0.0;
    for (const auto& t : tri) {
        const Vec2& a = vertex[t[0]];
        const Vec2& b = vertex[t[1]];
        const Vec2& c = vertex[t[2]];
        acc += std::max({norm(b - a), norm(c - b), norm(a - c)});
    }
    return tri.empty() ? 0.0 : acc / static_cast<double>(tri.size());
}

int Mesh::tag_id(const std::string& name) const {
    for (std::size_t i = 0; i < tag_names.size(); ++i)
        if (tag_names[i] == name) return static_cast<int>(i);
    return -1;
}

Mesh build_mesh(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> triangles,
                const std::vector<std::string>& tag_names,
                const std::function<int(int, int)>& boundary_tag) {
    Mesh m;
    m.vertex = std::move(vertices);
    m.tri = std::move(triangles);
    m.tag_names = tag_names;

    const int nv = m.num_vertices();
    const int nt = m.num_triangles();
    m.tri_area.resize(nt);
    for (int t = 0; t < nt; ++t) {
        auto& v = m.tri[t];
        for (int k = 0; k < 3; ++k)
            if (v[k] < 0 || v[k] >= nv) throw std::runtime_error("mesh: vertex index out of range");
        double a = triangle_area(m.vertex[v[0]], m.vertex[v[1]], m.vertex[v[2]]);
        if (a < 0.0) {
            std::swap(v[1], v[2]);
            a = -a;
        }
        if (!(a > 0.0)) throw std::runtime_error("mesh: zero-area triangle");
        m.tri_area[t] = a;
    }

    // Deduplicate edges; left triangle = the one traversing the edge in its stored direction.
    std::map<std::pair<int, int>, int> edge_of;
    m.tri_edge.resize(nt);
    m.tri_edge_sign.resize(nt);
    for (int t = 0; t < nt; ++t) {
        for (int k = 0; k < 3; ++k) {
            const int a = m.tri[t][k];
            const int b = m.tri[t][(k + 1) % 3];
            const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
            auto it = edge_of.find(key);
            if (it == edge_of.end()) {
                const int e = static_cast<int>(m.edge_vert.size());
                edge_of.emplace(key, e);
                m.edge_vert.push_back({a, b});
                m.edge_tri.push_back({t, -1});
                m.tri_edge[t][k] = e;
                m.tri_edge_sign[t][k] = 1;
            } else {
                const int e = it->second;
                if (m.edge_tri[e][1] >= 0)
                    throw std::runtime_error("mesh: non-conforming (edge shared by more than two triangles)");
                if (m.edge_vert[e][0] == a)
                    throw std::runtime_error("mesh: inconsistent orientation on shared edge");
                m.edge_tri[e][1] = t;
                m.tri_edge[t][k] = e;
                m.tri_edge_sign[t][k] = -1;
            }
        }
    }

    const int ne = m.num_edges();
    m.edge_len.resize(ne);
    m.edge_normal.resize(ne);
    m.edge_tag.assign(ne, -1);
    int default_tag = -1;
    for (int e = 0; e < ne; ++e) {
        const Vec2& p = m.vertex[m.edge_vert[e][0]];
        const Vec2& q = m.vertex[m.edge_vert[e][1]];
        const Vec2 n = outward_scaled_normal(p, q);
        m.edge_len[e] = norm(n);
        if (!(m.edge_len[e] > 0.0)) throw std::runtime_error("mesh: zero-length edge");
        m.edge_normal[e] = n / m.edge_len[e];
        if (m.edge_tri[e][1] < 0) {
            int tag = boundary_tag ? boundary_tag(m.edge_vert[e][0], m.edge_vert[e][1]) : -1;
            if (tag < 0) {
                if (default_tag < 0) {
                    default_tag = static_cast<int>(m.tag_names.size());
                    m.tag_names.push_back("boundary");
                }
                tag = default_tag;
            }
            m.edge_tag[e] = tag;
        }
    }
    return m;
}

Mesh structured_mesh(int nx, int ny, const Rect& domain) {
    if (nx < 1 || ny < 1) throw std::invalid_argument("structured_mesh: nx, ny must be >= 1");
    if (!(domain.width() > 0.0) || !(domain.height() > 0.0))
        throw std::invalid_argument("structured_mesh: degenerate rectangle");

    const double dx = domain.width() / nx;
    const double dy = domain.height() / ny;
    std::vector<Vec2> verts;
    verts.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1));
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i)
            verts.push_back({domain.x0 + i * dx, domain.y0 + j * dy});

    auto vid = [nx](int i, int j) { return j * (nx + 1) + i; };
    std::vector<std::array<int, 3>> tris;
    tris.reserve(static_cast<std::size_t>(2) * nx * ny);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int v00 = vid(i, j), v10 = vid(i + 1, j);
            const int v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
            tris.push_back({v00, v10, v11});
            tris.push_back({v00, v11, v01});
        }
    }

    auto tag = [&](int a, int b) -> int {
        const int ia = a % (nx + 1), ja = a / (nx + 1);
        const int ib = b % (nx + 1), jb = b / (nx + 1);
        if (ia == 0 && ib == 0) return 0;
        if (ia == nx && ib == nx) return 1;
        if (ja == 0 && jb == 0) return 2;
        if (ja == ny && jb == ny) return 3;
        return -1;
    };
    return build_mesh(std::move(verts), std::move(tris), {"left", "right", "bottom", "top"}, tag);
}

Mesh ramp_mesh(int nx, int ny, double x0, double x1, double height,
               double corner_x, double ramp_angle_deg) {
    if (nx < 1 || ny < 1) throw std::invalid_argument("ramp_mesh: nx, ny must be >= 1");
    const double slope = std::tan(ramp_angle_deg * M_PI / 180.0);
    auto bottom = [&](double x) { return x > corner_x ? (x - corner_x) * slope : 0.0; };
    if (!(height > bottom(x1))) throw std::invalid_argument("ramp_mesh: ramp reaches the top of the channel");

    const double dx = (x1 - x0) / nx;
    std::vector<Vec2> verts;
    verts.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1));
    for (int j = 0; j <= ny; ++j) {
        for (int i = 0; i <= nx; ++i) {
            const double x = x0 + i * dx;
            const double b = bottom(x);
            verts.push_back({x, b + (height - b) * j / ny});
        }
    }
    auto vid = [nx](int i, int j) { return j * (nx + 1) + i; };
    std::vector<std::array<int, 3>> tris;
    tris.reserve(static_cast<std::size_t>(2) * nx * ny);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int v00 = vid(i, j), v10 = vid(i + 1, j);
            const int v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
            tris.push_back({v00, v10, v11});
            tris.push_back({v00, v11, v01});
        }
    }
    auto tag = [&](int a, int b) -> int {
        const int ia = a % (nx + 1), ja = a / (nx + 1);
        const int ib = b % (nx + 1), jb = b / (nx + 1);
        if (ia == 0 && ib == 0) return 0;
        if (ia == nx && ib == nx) return 1;
        if (ja == 0 && jb == 0) return 2;
        if (ja == ny && jb == ny) return 3;
        return -1;
    };
    return build_mesh(std::move(verts), std::move(tris), {"left", "right", "bottom", "top"}, tag);
}

Mesh refine_split_edges(const Mesh& mesh, int k) {
    if (k != 2 && k != 3) throw std::invalid_argument("refine_split_edges: k must be 2 or 3");

    std::vector<Vec2> verts = mesh.vertex;
    // Edge split points, ordered along the stored edge direction.
    std::vector<std::array<int, 2>> edge_pts(mesh.num_edges(), {-1, -1});
    // Provenance of new vertices for tag inheritance: parent edge id (original
    // vertices resolve through their incident edges directly).
    std::vector<int> vert_edge(mesh.vertex.size(), -1);
    for (int e = 0; e < mesh.num_edges(); ++e) {
        const Vec2& a = mesh.vertex[mesh.edge_vert[e][0]];
        const Vec2& b = mesh.vertex[mesh.edge_vert[e][1]];
        for (int s = 1; s < k; ++s) {
            edge_pts[e][s - 1] = static_cast<int>(verts.size());
            verts.push_back(a + (b - a) * (static_cast<double>(s) / k));
            vert_edge.push_back(e);
        }
    }

    std::vector<std::array<int, 3>> tris;
    tris.reserve(static_cast<std::size_t>(k) * k * mesh.num_triangles());
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        // Lattice of vertex ids: L[i][j] holds the point with barycentric
        // coordinates ((k-i-j)/k, i/k, j/k) w.r.t. (v0, v1, v2).
        int L[4][4];
        const auto& tv = mesh.tri[t];
        auto lattice_point = [&](int i, int j) -> int {
            const int r = k - i - j;
            if (r == k) return tv[0];
            if (i == k) return tv[1];
            if (j == k) return tv[2];
            auto on_edge = [&](int le, int steps_from_first) {
                const int e = mesh.tri_edge[t][le];
                const bool forward = mesh.tri_edge_sign[t][le] > 0;
                return edge_pts[e][forward ? steps_from_first - 1 : (k - steps_from_first) - 1];
            };
            if (j == 0) return on_edge(0, i);           // edge v0 -> v1
            if (r == 0) return on_edge(1, j);           // edge v1 -> v2
            if (i == 0) return on_edge(2, k - j);       // edge v2 -> v0
            // interior point (k = 3 only): barycentric (1/3, 1/3, 1/3)
            const int id = static_cast<int>(verts.size());
            verts.push_back((mesh.vertex[tv[0]] + mesh.vertex[tv[1]] + mesh.vertex[tv[2]]) / 3.0);
            vert_edge.push_back(-2);
            return id;
        };
        for (int j = 0; j <= k; ++j)
            for (int i = 0; i + j <= k; ++i)
                L[i][j] = lattice_point(i, j);
        for (int j = 0; j < k; ++j) {
            for (int i = 0; i + j < k; ++i) {
                tris.push_back({L[i][j], L[i + 1][j], L[i][j + 1]});
                if (i + j < k - 1)
                    tris.push_back({L[i + 1][j], L[i + 1][j + 1], L[i][j + 1]});
            }
        }
    }

    // A child boundary edge lies on the parent edge both its endpoints belong to.
    auto parent_edge = [&](int v) -> int { return v < mesh.num_vertices() ? -1 : vert_edge[v]; };
    auto tag = [&](int a, int b) -> int {
        const int ea = parent_edge(a), eb = parent_edge(b);
        int e = -1;
        if (ea >= 0 && (eb == ea || eb == -1)) e = ea;
        else if (eb >= 0 && ea == -1) e = eb;
        else if (ea == -1 && eb == -1 && k == 2) {
            // both endpoints are original vertices: k = 2 never produces this on
            // a boundary edge; guarded for completeness
            return -1;
        }
        if (e < 0) return -1;
        // endpoint that is an original vertex must close the parent edge
        for (int v : {a, b}) {
            if (v < mesh.num_vertices() && v != mesh.edge_vert[e][0] && v != mesh.edge_vert[e][1])
                return -1;
        }
        return mesh.edge_tag[e];
    };
    return build_mesh(std::move(verts), std::move(tris), mesh.tag_names, tag);
}

} // namespace af
