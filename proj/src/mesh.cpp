#include "clip3/mesh.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>

namespace clip3 {

namespace {

std::uint64_t edge_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

}  // namespace

ConvexMesh build_mesh(std::vector<Vec3> vertices,
                      const std::vector<std::array<int, 3>>& facet_vertex_ids,
                      double eps) {
    const int nv = static_cast<int>(vertices.size());
    const int nf = static_cast<int>(facet_vertex_ids.size());
    if (nv < 4) throw MeshError("build_mesh: need at least 4 vertices");
    if (nf < 4) throw MeshError("build_mesh: need at least 4 facets");

    ConvexMesh mesh;
    mesh.vertices = std::move(vertices);

    Vec3 c{0, 0, 0};
    for (const Vec3& v : mesh.vertices) c = c + v;
    mesh.centroid = c * (1.0 / nv);
    double r2 = 0.0;
    for (const Vec3& v : mesh.vertices) r2 = std::max(r2, norm2(v - mesh.centroid));
    mesh.scale = std::sqrt(r2);
    if (mesh.scale <= 0.0) throw DegenerateFacet("build_mesh: all vertices coincide");

    mesh.facets.reserve(nf);
    for (const auto& ids : facet_vertex_ids) {
        for (int i : ids)
            if (i < 0 || i >= nv) throw MeshError("build_mesh: vertex index out of range");
        if (ids[0] == ids[1] || ids[1] == ids[2] || ids[0] == ids[2])
            throw DegenerateFacet("build_mesh: repeated vertex in facet");

        Facet f;
        f.vertex_ids = ids;
        const Vec3& v0 = mesh.vertices[ids[0]];
        const Vec3& v1 = mesh.vertices[ids[1]];
        const Vec3& v2 = mesh.vertices[ids[2]];
        Vec3 n = cross(v1 - v0, v2 - v0);
        if (norm(n) <= 2.0 * eps * mesh.scale * mesh.scale)
            throw DegenerateFacet("build_mesh: zero-area facet");
        n = normalized(n);
        double d = -dot(n, v0);
        // Outward: the centroid must be on the negative side.
        const double at_centroid = dot(n, mesh.centroid) + d;
        if (std::abs(at_centroid) <= eps * mesh.scale)
            throw NotConvex("build_mesh: centroid on a facet plane");
        if (at_centroid > 0.0) {
            std::swap(f.vertex_ids[1], f.vertex_ids[2]);
            n = -n;
            d = -d;
        }
        f.normal = n;
        f.plane_d = d;
        mesh.facets.push_back(f);
    }

    // Per-edge adjacency; every undirected edge must appear in exactly 2 facets.
    struct EdgeUse {
        int facet = -1, slot = -1;
        int count = 0;
        int other_facet = -1, other_slot = -1;
    };
    std::unordered_map<std::uint64_t, EdgeUse> edges;
    edges.reserve(static_cast<std::size_t>(nf) * 3 / 2);
    for (int k = 0; k < nf; ++k) {
        const auto& ids = mesh.facets[k].vertex_ids;
        for (int e = 0; e < 3; ++e) {
            EdgeUse& u = edges[edge_key(ids[e], ids[(e + 1) % 3])];
            if (u.count == 0) {
                u.facet = k;
                u.slot = e;
            } else if (u.count == 1) {
                u.other_facet = k;
                u.other_slot = e;
            }
            ++u.count;
        }
    }
    for (const auto& [key, u] : edges) {
        (void)key;
        if (u.count != 2) throw NotClosed("build_mesh: edge not shared by exactly 2 facets");
        mesh.facets[u.facet].neighbor_ids[u.slot] = u.other_facet;
        mesh.facets[u.other_facet].neighbor_ids[u.other_slot] = u.facet;
    }

    const long long ne = static_cast<long long>(edges.size());
    if (nv - ne + nf != 2 || 2 * ne != 3LL * nf)
        throw NotClosed("build_mesh: Euler formula violated");

    // Convexity: each edge locally convex (the apex of the neighbor facet lies
    // on the inner side of this facet's plane).
    for (int k = 0; k < nf; ++k) {
        const Facet& f = mesh.facets[k];
        const Plane pl = f.plane();
        for (int e = 0; e < 3; ++e) {
            const Facet& g = mesh.facets[f.neighbor_ids[e]];
            for (int gv : g.vertex_ids) {
                if (gv == f.vertex_ids[e] || gv == f.vertex_ids[(e + 1) % 3]) continue;
                if (pl.eval(mesh.vertices[gv]) > eps * mesh.scale)
                    throw NotConvex("build_mesh: reflex edge");
            }
        }
    }

    return mesh;
}

Vec3 facet_centroid(const ConvexMesh& mesh, int k) {
    const auto& ids = mesh.facets[k].vertex_ids;
    return (mesh.vertices[ids[0]] + mesh.vertices[ids[1]] + mesh.vertices[ids[2]]) *
           (1.0 / 3.0);
}

int opposite_facet(const ConvexMesh& mesh, int k, int edge_index) {
    return mesh.facets[k].neighbor_ids[edge_index];
}

bool convex_all_pairs(const ConvexMesh& mesh, double eps) {
    for (const Facet& f : mesh.facets) {
        const Plane pl = f.plane();
        for (const Vec3& v : mesh.vertices)
            if (pl.eval(v) > eps * mesh.scale) return false;
    }
    return true;
}

}  // namespace clip3
