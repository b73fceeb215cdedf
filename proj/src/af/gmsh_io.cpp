#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "mesh.hpp"

namespace af {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw std::runtime_error("gmsh: " + path + ": " + msg);
}

std::string next_line(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (!line.empty()) return line;
    }
    return {};
}

void skip_to_end(std::istream& in, const std::string& section, const std::string& path) {
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("$End" + section, 0) == 0) return;
    }
    fail(path, "missing $End" + section);
}

struct RawMesh {
    std::map<long long, int> node_id;     // file tag -> dense index
    std::vector<Vec2> coords;
    std::vector<std::array<int, 3>> tris;
    std::map<std::pair<int, int>, int> line_phys;  // boundary segment -> physical tag
    std::map<int, std::string> phys_names;         // physical tag -> name (dim 1)
};

void read_physical_names(std::istream& in, RawMesh& raw, const std::string& path) {
    int n = 0;
    std::istringstream(next_line(in)) >> n;
    for (int i = 0; i < n; ++i) {
        std::istringstream ls(next_line(in));
        int dim = 0, tag = 0;
        std::string name;
        ls >> dim >> tag;
        std::getline(ls, name);
        const auto a = name.find('"');
        const auto b = name.rfind('"');
        if (a != std::string::npos && b > a) name = name.substr(a + 1, b - a - 1);
        if (dim == 1) raw.phys_names[tag] = name;
    }
    skip_to_end(in, "PhysicalNames", path);
}

void read_v22(std::istream& in, RawMesh& raw, const std::string& path) {
    std::string line;
    while (!(line = next_line(in)).empty()) {
        if (line == "$PhysicalNames") {
            read_physical_names(in, raw, path);
        } else if (line == "$Nodes") {
            long long n = 0;
            std::istringstream(next_line(in)) >> n;
            for (long long i = 0; i < n; ++i) {
                std::istringstream ls(next_line(in));
                long long id;
                double x, y, z;
                if (!(ls >> id >> x >> y >> z)) fail(path, "bad node line");
                raw.node_id[id] = static_cast<int>(raw.coords.size());
                raw.coords.push_back({x, y});
            }
            skip_to_end(in, "Nodes", path);
        } else if (line == "$Elements") {
            long long n = 0;
            std::istringstream(next_line(in)) >> n;
            for (long long i = 0; i < n; ++i) {
                std::istringstream ls(next_line(in));
                long long id;
                int type = 0, ntags = 0;
                if (!(ls >> id >> type >> ntags)) fail(path, "bad element line");
                int phys = -1;
                for (int k = 0; k < ntags; ++k) {
                    int tag;
                    ls >> tag;
                    if (k == 0) phys = tag;
                }
                auto node = [&](long long t) {
                    auto it = raw.node_id.find(t);
                    if (it == raw.node_id.end()) fail(path, "element references unknown node");
                    return it->second;
                };
                if (type == 1) {
                    long long a, b;
                    if (!(ls >> a >> b)) fail(path, "bad line element");
                    const int va = node(a), vb = node(b);
                    raw.line_phys[{std::min(va, vb), std::max(va, vb)}] = phys;
                } else if (type == 2) {
                    long long a, b, c;
                    if (!(ls >> a >> b >> c)) fail(path, "bad triangle element");
                    raw.tris.push_back({node(a), node(b), node(c)});
                } else {
                    fail(path, "unsupported element type " + std::to_string(type));
                }
            }
            skip_to_end(in, "Elements", path);
        } else if (line[0] == '$' && line.rfind("$End", 0) != 0) {
            skip_to_end(in, line.substr(1), path);
        }
    }
}

void read_v41(std::istream& in, RawMesh& raw, const std::string& path) {
    std::map<int, int> curve_phys;  // 1D entity tag -> physical tag
    std::string line;
    while (!(line = next_line(in)).empty()) {
        if (line == "$PhysicalNames") {
            read_physical_names(in, raw, path);
        } else if (line == "$Entities") {
            std::istringstream hs(next_line(in));
            long long np = 0, nc = 0, ns = 0, nv = 0;
            hs >> np >> nc >> ns >> nv;
            for (long long i = 0; i < np; ++i) next_line(in);
            for (long long i = 0; i < nc; ++i) {
                std::istringstream ls(next_line(in));
                int tag;
                double b[6];
                long long nphys = 0;
                ls >> tag >> b[0] >> b[1] >> b[2] >> b[3] >> b[4] >> b[5] >> nphys;
                if (nphys > 0) {
                    int p;
                    ls >> p;
                    curve_phys[tag] = p;
                }
            }
            skip_to_end(in, "Entities", path);
        } else if (line == "$Nodes") {
            std::istringstream hs(next_line(in));
            long long nblocks = 0, nnodes = 0;
            hs >> nblocks >> nnodes;
            for (long long blk = 0; blk < nblocks; ++blk) {
                std::istringstream bs(next_line(in));
                int dim, etag, param;
                long long nb = 0;
                bs >> dim >> etag >> param >> nb;
                std::vector<long long> tags(nb);
                for (auto& t : tags) std::istringstream(next_line(in)) >> t;
                for (long long i = 0; i < nb; ++i) {
                    std::istringstream ls(next_line(in));
                    double x, y, z;
                    if (!(ls >> x >> y >> z)) fail(path, "bad node coordinates");
                    raw.node_id[tags[i]] = static_cast<int>(raw.coords.size());
                    raw.coords.push_back({x, y});
                }
            }
            skip_to_end(in, "Nodes", path);
        } else if (line == "$Elements") {
            std::istringstream hs(next_line(in));
            long long nblocks = 0, nelem = 0;
            hs >> nblocks >> nelem;
            auto node = [&](long long t) {
                auto it = raw.node_id.find(t);
                if (it == raw.node_id.end()) fail(path, "element references unknown node");
                return it->second;
            };
            for (long long blk = 0; blk < nblocks; ++blk) {
                std::istringstream bs(next_line(in));
                int dim, etag, type;
                long long nb = 0;
                bs >> dim >> etag >> type >> nb;
                for (long long i = 0; i < nb; ++i) {
                    std::istringstream ls(next_line(in));
                    long long id;
                    ls >> id;
                    if (type == 1) {
                        long long a, b;
                        if (!(ls >> a >> b)) fail(path, "bad line element");
                        const int va = node(a), vb = node(b);
                        auto it = curve_phys.find(etag);
                        raw.line_phys[{std::min(va, vb), std::max(va, vb)}] =
                            it == curve_phys.end() ? -1 : it->second;
                    } else if (type == 2) {
                        long long a, b, c;
                        if (!(ls >> a >> b >> c)) fail(path, "bad triangle element");
                        raw.tris.push_back({node(a), node(b), node(c)});
                    } else {
                        fail(path, "unsupported element type " + std::to_string(type));
                    }
                }
            }
            skip_to_end(in, "Elements", path);
        } else if (line[0] == '$' && line.rfind("$End", 0) != 0) {
            skip_to_end(in, line.substr(1), path);
        }
    }
}

} // namespace

Mesh load_gmsh(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(path, "cannot open file");

    std::string line = next_line(in);
    if (line != "$MeshFormat") fail(path, "missing $MeshFormat");
    double version = 0.0;
    int file_type = 0, data_size = 0;
    std::istringstream(next_line(in)) >> version >> file_type >> data_size;
    if (file_type != 0) fail(path, "binary files are not supported");
    skip_to_end(in, "MeshFormat", path);

    RawMesh raw;
    if (version >= 2.199 && version < 3.0) {
        read_v22(in, raw, path);
    } else if (version >= 4.099 && version < 5.0) {
        read_v41(in, raw, path);
    } else {
        fail(path, "unsupported format version " + std::to_string(version));
    }
    if (raw.tris.empty()) fail(path, "no triangles found");

    // Physical tags -> dense tag ids with names.
    std::map<int, int> phys_to_tag;
    std::vector<std::string> names;
    for (const auto& [seg, phys] : raw.line_phys) {
        (void)seg;
        if (phys >= 0 && !phys_to_tag.count(phys)) {
            phys_to_tag[phys] = static_cast<int>(names.size());
            auto it = raw.phys_names.find(phys);
            names.push_back(it != raw.phys_names.end() ? it->second : "tag" + std::to_string(phys));
        }
    }

    auto tag = [&](int a, int b) -> int {
        auto it = raw.line_phys.find({std::min(a, b), std::max(a, b)});
        if (it == raw.line_phys.end() || it->second < 0) return -1;
        return phys_to_tag.at(it->second);
    };
    return build_mesh(std::move(raw.coords), std::move(raw.tris), names, tag);
}

} // namespace af
