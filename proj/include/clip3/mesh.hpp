#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "clip3/geometry.hpp"

namespace clip3 {

struct MeshError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotClosed : MeshError {
    using MeshError::MeshError;
};
struct NotConvex : MeshError {
    using MeshError::MeshError;
};
struct DegenerateFacet : MeshError {
    using MeshError::MeshError;
};
struct InvalidFacetCount : MeshError {
    using MeshError::MeshError;
};
struct MeshParseError : MeshError {
    using MeshError::MeshError;
};

// Triangular facet with outward unit normal. neighbor_ids[e] is the facet
// across edge e = (vertex_ids[e], vertex_ids[(e+1) % 3]).
struct Facet {
    std::array<int, 3> vertex_ids{};
    std::array<int, 3> neighbor_ids{-1, -1, -1};
    Vec3 normal;
    double plane_d = 0.0;

    Plane plane() const { return {normal.x, normal.y, normal.z, plane_d}; }
};

// Closed triangulated convex polyhedron. Immutable after build_mesh.
struct ConvexMesh {
    std::vector<Vec3> vertices;
    std::vector<Facet> facets;
    Vec3 centroid;    // mean of vertices
    double scale = 0; // bounding-sphere radius about the centroid

    int facet_count() const { return static_cast<int>(facets.size()); }
    int vertex_count() const { return static_cast<int>(vertices.size()); }
};

// Validates and finishes a mesh from raw vertices and facet index triples:
// computes outward normals (flipping winding as needed), derives per-edge
// neighbors, and checks closedness, Euler's formula and convexity.
ConvexMesh build_mesh(std::vector<Vec3> vertices,
                      const std::vector<std::array<int, 3>>& facet_vertex_ids,
                      double eps = kEps);

Vec3 facet_centroid(const ConvexMesh& mesh, int k);

// neighbor_ids[edge_index]; symmetric on a validated mesh.
int opposite_facet(const ConvexMesh& mesh, int k, int edge_index);

// Exhaustive O(F*V) convexity formulation: every vertex on the inner side of
// every facet plane. build_mesh itself uses the equivalent per-edge dihedral
// test; this one exists to cross-validate it.
bool convex_all_pairs(const ConvexMesh& mesh, double eps = kEps);

// N-sided polyhedron with triangular facets inscribed in the sphere of the
// given radius: n_facets/2 + 2 Fibonacci-spiral points (rotated by a random
// orientation derived from the seed), hulled incrementally. Deterministic
// for a fixed seed. n_facets must be even and >= 4.
ConvexMesh generate_inscribed_polyhedron(int n_facets, double radius,
                                         std::uint64_t seed);

// Text format: "V F\n", V lines "x y z", F lines "i0 i1 i2" (0-based).
// Normals and neighbors are recomputed on load.
ConvexMesh load_mesh(const std::string& path);
void save_mesh(const ConvexMesh& mesh, const std::string& path);

}  // namespace clip3
