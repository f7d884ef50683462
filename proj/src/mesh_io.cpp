#include <cstdio>
#include <fstream>
#include <sstream>

#include "clip3/mesh.hpp"

namespace clip3 {

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

ConvexMesh load_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MeshParseError("load_mesh: cannot open " + path);

    int nv = 0, nf = 0;
    if (!(in >> nv >> nf) || nv < 0 || nf < 0)
        throw MeshParseError("load_mesh: bad header in " + path);

    std::vector<Vec3> vertices;
    vertices.reserve(nv);
    for (int i = 0; i < nv; ++i) {
        double x, y, z;
        if (!(in >> x >> y >> z)) throw MeshParseError("load_mesh: bad vertex line");
        vertices.emplace_back(x, y, z);
    }
    std::vector<std::array<int, 3>> tris;
    tris.reserve(nf);
    for (int i = 0; i < nf; ++i) {
        int a, b, c;
        if (!(in >> a >> b >> c)) throw MeshParseError("load_mesh: bad facet line");
        tris.push_back({a, b, c});
    }
    return build_mesh(std::move(vertices), tris);
}

void save_mesh(const ConvexMesh& mesh, const std::string& path) {
    std::ostringstream out;
    out << mesh.vertex_count() << ' ' << mesh.facet_count() << '\n';
    for (const Vec3& v : mesh.vertices)
        out << fmt17(v.x) << ' ' << fmt17(v.y) << ' ' << fmt17(v.z) << '\n';
    for (const Facet& f : mesh.facets)
        out << f.vertex_ids[0] << ' ' << f.vertex_ids[1] << ' ' << f.vertex_ids[2] << '\n';

    std::ofstream file(path);
    if (!file || !(file << out.str()) || !file.flush())
        throw std::ios_base::failure("save_mesh: cannot write " + path);
}

}  // namespace clip3
