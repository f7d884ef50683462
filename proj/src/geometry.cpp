#include "clip3/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace clip3 {

Plane plane_through_line_and_point(const Segment& seg, const Vec3& p, double eps) {
    const Vec3 s = seg.dir();
    const Vec3 w = p - seg.a;
    const Vec3 n = cross(s, w);
    const double sn = norm(s), wn = norm(w);
    if (norm(n) <= eps * sn * wn)
        throw DegeneratePlane("plane_through_line_and_point: point collinear with line");
    const Vec3 u = normalized(n);
    return Plane::from_normal_point(u, seg.a);
}

Plane orthogonal_plane_through_line(const Segment& seg, const Plane& rho1, double eps) {
    const Vec3 s = seg.dir();
    const Vec3 n1 = rho1.normal();
    const Vec3 n = cross(s, n1);
    if (norm(n) <= eps * norm(s) * norm(n1))
        throw DegeneratePlane("orthogonal_plane_through_line: line parallel to plane normal");
    const Vec3 u = normalized(n);
    return Plane::from_normal_point(u, seg.a);
}

namespace {

// Scale a coefficient pair (lead, trail) so the leading nonzero one is 1.
void normalize_leading(double& lead, double& trail) {
    const double mag = std::max(std::abs(lead), std::abs(trail));
    if (std::abs(lead) > kEps * mag) {
        trail /= lead;
        lead = 1.0;
    } else {
        lead = 0.0;
        trail = 1.0;
    }
}

}  // namespace

DiagonalPlanes diagonal_planes(const Segment& seg, double eps) {
    const Vec3 s = seg.dir();
    const double sn = norm(s);

    // rho1: A*x + C*z + D = 0 containing the line needs A*sx + C*sz = 0.
    double a1, c1;
    if (std::abs(s.x) > eps * sn || std::abs(s.z) > eps * sn) {
        a1 = s.z;
        c1 = -s.x;
    } else {
        // Line parallel to the y axis: any A, C works; use the x = const plane.
        a1 = 1.0;
        c1 = 0.0;
    }

    // rho2: B*y + C*z + D = 0 containing the line needs B*sy + C*sz = 0.
    const bool rho2_vacuous = std::abs(s.y) <= eps * sn && std::abs(s.z) <= eps * sn;
    double b2 = s.z, c2 = -s.y;

    bool usable = !rho2_vacuous;
    if (usable) {
        // The pair must be non-collinear: normals (a1,0,c1) and (0,b2,c2).
        const Vec3 n1{a1, 0.0, c1}, n2{0.0, b2, c2};
        usable = norm(cross(n1, n2)) > eps * norm(n1) * norm(n2);
    }

    DiagonalPlanes out;
    if (usable) {
        normalize_leading(a1, c1);
        normalize_leading(b2, c2);
        out.rho1 = Plane{a1, 0.0, c1, -(a1 * seg.a.x + c1 * seg.a.z)};
        out.rho2 = Plane{0.0, b2, c2, -(b2 * seg.a.y + c2 * seg.a.z)};
        out.fell_back = false;
        return out;
    }

    // General pair: plane through the line and an off-line point one segment
    // length away along the axis least aligned with s.
    const std::array<Vec3, 3> axes{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
    const std::array<double, 3> comps{std::abs(s.x), std::abs(s.y), std::abs(s.z)};
    const int least = static_cast<int>(std::min_element(comps.begin(), comps.end()) - comps.begin());
    out.rho1 = plane_through_line_and_point(seg, seg.a + axes[least] * sn, eps);
    out.rho2 = orthogonal_plane_through_line(seg, out.rho1, eps);
    out.fell_back = true;
    return out;
}

std::optional<LineTriangleHit> solve_line_triangle(const Segment& seg,
                                                   const Vec3& v0,
                                                   const Vec3& v1,
                                                   const Vec3& v2,
                                                   double scale,
                                                   double eps) {
    const Vec3 s1 = v1 - v0;
    const Vec3 s2 = v2 - v0;
    if (norm(cross(s1, s2)) <= 2.0 * eps * scale * scale)
        throw DegenerateTriangle("solve_line_triangle: degenerate triangle");

    const Vec3 s = seg.dir();
    // Columns s1, s2, -s; right-hand side a - v0.
    double m[3][4] = {
        {s1.x, s2.x, -s.x, seg.a.x - v0.x},
        {s1.y, s2.y, -s.y, seg.a.y - v0.y},
        {s1.z, s2.z, -s.z, seg.a.z - v0.z},
    };

    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (std::abs(m[piv][col]) < eps * scale)
            return std::nullopt;  // singular: line parallel to the triangle plane
        if (piv != col) std::swap(m[piv], m[col]);
        for (int r = col + 1; r < 3; ++r) {
            const double f = m[r][col] / m[col][col];
            for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
        }
    }

    double sol[3];
    for (int r = 2; r >= 0; --r) {
        double acc = m[r][3];
        for (int c = r + 1; c < 3; ++c) acc -= m[r][c] * sol[c];
        sol[r] = acc / m[r][r];
    }

    const double p = sol[0], q = sol[1], t = sol[2];
    if (p >= -eps && q >= -eps && p + q <= 1.0 + eps)
        return LineTriangleHit{p, q, t};
    return std::nullopt;
}

}  // namespace clip3
