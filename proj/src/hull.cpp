#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <unordered_map>
#include <vector>

#include "clip3/mesh.hpp"

namespace clip3 {

namespace {

struct HullFace {
    std::array<int, 3> v{};
    std::array<int, 3> nb{-1, -1, -1};
    Vec3 n;
    double d = 0.0;
    bool alive = true;
};

double face_eval(const HullFace& f, const Vec3& p) { return dot(f.n, p) + f.d; }

HullFace make_face(const std::vector<Vec3>& pts, int a, int b, int c) {
    HullFace f;
    f.v = {a, b, c};
    f.n = normalized(cross(pts[b] - pts[a], pts[c] - pts[a]));
    f.d = -dot(f.n, pts[a]);
    return f;
}

int slot_of_edge(const HullFace& f, int from, int to) {
    for (int e = 0; e < 3; ++e)
        if (f.v[e] == from && f.v[(e + 1) % 3] == to) return e;
    return -1;
}

// Incremental hull of points in convex position. Insertion follows the
// spiral ordering so the previous apex is a good starting hint for the
// visible-face search.
std::vector<std::array<int, 3>> incremental_hull(const std::vector<Vec3>& pts,
                                                 double tol) {
    const int n = static_cast<int>(pts.size());

    // Initial simplex from extreme points.
    int i0 = 0;
    int i1 = -1;
    double best = -1.0;
    for (int i = 0; i < n; ++i) {
        const double d2 = norm2(pts[i] - pts[i0]);
        if (d2 > best) {
            best = d2;
            i1 = i;
        }
    }
    int i2 = -1;
    best = -1.0;
    for (int i = 0; i < n; ++i) {
        const double a = norm2(cross(pts[i1] - pts[i0], pts[i] - pts[i0]));
        if (a > best) {
            best = a;
            i2 = i;
        }
    }
    const Vec3 n012 = cross(pts[i1] - pts[i0], pts[i2] - pts[i0]);
    int i3 = -1;
    best = -1.0;
    for (int i = 0; i < n; ++i) {
        const double h = std::abs(dot(n012, pts[i] - pts[i0]));
        if (h > best) {
            best = h;
            i3 = i;
        }
    }
    if (i1 < 0 || i2 < 0 || i3 < 0 || best <= tol)
        throw MeshError("incremental_hull: degenerate point set");

    const Vec3 inner = (pts[i0] + pts[i1] + pts[i2] + pts[i3]) * 0.25;
    std::vector<HullFace> faces;
    faces.reserve(static_cast<std::size_t>(2 * n));
    const std::array<std::array<int, 3>, 4> tetra{{
        {i0, i1, i2}, {i0, i1, i3}, {i0, i2, i3}, {i1, i2, i3}}};
    for (const auto& t : tetra) {
        HullFace f = make_face(pts, t[0], t[1], t[2]);
        if (face_eval(f, inner) > 0.0) {
            std::swap(f.v[1], f.v[2]);
            f.n = -f.n;
            f.d = -f.d;
        }
        faces.push_back(f);
    }
    for (int a = 0; a < 4; ++a)
        for (int e = 0; e < 3; ++e)
            for (int b = 0; b < 4; ++b)
                if (b != a && slot_of_edge(faces[b], faces[a].v[(e + 1) % 3], faces[a].v[e]) >= 0)
                    faces[a].nb[e] = b;

    std::vector<int> visit_mark(static_cast<std::size_t>(2 * n) + 8, -1);
    int hint = 0;

    for (int p = 0; p < n; ++p) {
        if (p == i0 || p == i1 || p == i2 || p == i3) continue;
        const Vec3& pt = pts[p];

        // Find one visible face: greedy climb from the hint, full scan if stuck.
        int seed_face = -1;
        int cur = faces[hint].alive ? hint : -1;
        for (int steps = 0; cur >= 0 && steps < static_cast<int>(faces.size()); ++steps) {
            const double e0 = face_eval(faces[cur], pt);
            if (e0 > tol) {
                seed_face = cur;
                break;
            }
            int next = -1;
            double bestv = e0;
            for (int nb : faces[cur].nb) {
                if (nb < 0 || !faces[nb].alive) continue;
                const double ev = face_eval(faces[nb], pt);
                if (ev > bestv) {
                    bestv = ev;
                    next = nb;
                }
            }
            cur = next;
        }
        if (seed_face < 0) {
            for (int i = 0; i < static_cast<int>(faces.size()); ++i) {
                if (faces[i].alive && face_eval(faces[i], pt) > tol) {
                    seed_face = i;
                    break;
                }
            }
        }
        if (seed_face < 0)
            throw MeshError("incremental_hull: point not outside current hull");

        // Flood the visible region.
        if (visit_mark.size() < faces.size() + 16) visit_mark.resize(faces.size() * 2 + 16, -1);
        std::vector<int> stack{seed_face}, visible;
        visit_mark[seed_face] = p;
        while (!stack.empty()) {
            const int f = stack.back();
            stack.pop_back();
            visible.push_back(f);
            for (int nb : faces[f].nb) {
                if (visit_mark[nb] == p || !faces[nb].alive) continue;
                if (face_eval(faces[nb], pt) > tol) {
                    visit_mark[nb] = p;
                    stack.push_back(nb);
                }
            }
        }

        // Horizon edges (u, w): directed edge of a visible face whose neighbor
        // stays. New faces (u, w, p) are chained through the loop.
        struct HorizonEdge {
            int u, w, outside;
        };
        std::vector<HorizonEdge> horizon;
        for (int f : visible) {
            for (int e = 0; e < 3; ++e) {
                const int g = faces[f].nb[e];
                if (visit_mark[g] != p)
                    horizon.push_back({faces[f].v[e], faces[f].v[(e + 1) % 3], g});
            }
        }

        std::unordered_map<int, int> starts, ends;
        starts.reserve(horizon.size());
        ends.reserve(horizon.size());
        const int base = static_cast<int>(faces.size());
        for (std::size_t h = 0; h < horizon.size(); ++h) {
            starts[horizon[h].u] = base + static_cast<int>(h);
            ends[horizon[h].w] = base + static_cast<int>(h);
        }
        for (const HorizonEdge& he : horizon) {
            HullFace nf = make_face(pts, he.u, he.w, p);
            const int id = static_cast<int>(faces.size());
            nf.nb[0] = he.outside;
            nf.nb[1] = starts.at(he.w);
            nf.nb[2] = ends.at(he.u);
            const int back = slot_of_edge(faces[he.outside], he.w, he.u);
            faces[he.outside].nb[back] = id;
            faces.push_back(nf);
        }
        for (int f : visible) faces[f].alive = false;
        if (visit_mark.size() < faces.size() + 16) visit_mark.resize(faces.size() * 2 + 16, -1);
        hint = base;
    }

    std::vector<std::array<int, 3>> tris;
    for (const HullFace& f : faces)
        if (f.alive) tris.push_back(f.v);
    return tris;
}

double unit_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Rotation matrix from a uniformly random quaternion.
std::array<Vec3, 3> random_rotation(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const double u1 = unit_double(rng), u2 = unit_double(rng), u3 = unit_double(rng);
    const double two_pi = 6.283185307179586476925286766559;
    const double qx = std::sqrt(1.0 - u1) * std::sin(two_pi * u2);
    const double qy = std::sqrt(1.0 - u1) * std::cos(two_pi * u2);
    const double qz = std::sqrt(u1) * std::sin(two_pi * u3);
    const double qw = std::sqrt(u1) * std::cos(two_pi * u3);
    return {Vec3{1 - 2 * (qy * qy + qz * qz), 2 * (qx * qy - qz * qw), 2 * (qx * qz + qy * qw)},
            Vec3{2 * (qx * qy + qz * qw), 1 - 2 * (qx * qx + qz * qz), 2 * (qy * qz - qx * qw)},
            Vec3{2 * (qx * qz - qy * qw), 2 * (qy * qz + qx * qw), 1 - 2 * (qx * qx + qy * qy)}};
}

}  // namespace

ConvexMesh generate_inscribed_polyhedron(int n_facets, double radius,
                                         std::uint64_t seed) {
    if (n_facets < 4 || n_facets % 2 != 0)
        throw InvalidFacetCount("generate_inscribed_polyhedron: n_facets must be even and >= 4");
    if (!(radius > 0.0))
        throw MeshError("generate_inscribed_polyhedron: radius must be positive");

    const int nv = n_facets / 2 + 2;
    const auto rot = random_rotation(seed);
    const double golden_angle = 2.39996322972865332223155550663;

    std::vector<Vec3> pts;
    pts.reserve(nv);
    for (int i = 0; i < nv; ++i) {
        const double z = 1.0 - 2.0 * (i + 0.5) / nv;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double th = golden_angle * i;
        const Vec3 u{r * std::cos(th), r * std::sin(th), z};
        Vec3 w{dot(rot[0], u), dot(rot[1], u), dot(rot[2], u)};
        w = normalized(w) * radius;  // pin exactly onto the sphere
        pts.push_back(w);
    }

    const auto tris = incremental_hull(pts, 1e-12 * radius);
    if (static_cast<int>(tris.size()) != n_facets)
        throw MeshError("generate_inscribed_polyhedron: hull facet count mismatch");
    return build_mesh(std::move(pts), tris);
}

}  // namespace clip3
