#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

namespace clip3 {

// Shared relative tolerance for on-plane / degeneracy tests. Always used
// together with a length scale (typically the mesh bounding-sphere radius)
// so that eps * scale is an absolute distance band.
inline constexpr double kEps = 1e-9;

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegeneratePlane : GeometryError {
    using GeometryError::GeometryError;
};
struct DegenerateTriangle : GeometryError {
    using GeometryError::GeometryError;
};

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {
        if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
            throw GeometryError("Vec3: non-finite component");
    }

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double k) const { return {x * k, y * k, z * k}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
};

inline Vec3 operator*(double k, const Vec3& v) { return v * k; }

inline double dot(const Vec3& a, const Vec3& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm2(const Vec3& v) { return dot(v, v); }
inline double norm(const Vec3& v) { return std::sqrt(norm2(v)); }

inline Vec3 normalized(const Vec3& v) {
    const double n = norm(v);
    if (n == 0.0) throw GeometryError("normalized: zero vector");
    return v * (1.0 / n);
}

// Implicit plane F(x) = a*x + b*y + c*z + d.
struct Plane {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

    Plane() = default;
    Plane(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {
        if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d))
            throw GeometryError("Plane: non-finite coefficient");
        if (a == 0.0 && b == 0.0 && c == 0.0)
            throw GeometryError("Plane: zero normal");
    }

    static Plane from_normal_point(const Vec3& n, const Vec3& p) {
        return {n.x, n.y, n.z, -dot(n, p)};
    }

    Vec3 normal() const { return {a, b, c}; }
    double eval(const Vec3& v) const { return a * v.x + b * v.y + c * v.z + d; }
};

inline double plane_eval(const Plane& p, const Vec3& x) { return p.eval(x); }

enum class SignClass { Negative, OnPlane, Positive };

// |v| <= eps*scale classifies as OnPlane.
inline SignClass sign_classify(double v, double scale, double eps = kEps) {
    const double band = eps * scale;
    if (v > band) return SignClass::Positive;
    if (v < -band) return SignClass::Negative;
    return SignClass::OnPlane;
}

enum class ClipMode { Segment, Line };

// Directed segment x_A -> x_B; with mode == Line the endpoints only fix the
// supporting line and its parametrization x(t) = a + (b - a) * t.
struct Segment {
    Vec3 a, b;
    ClipMode mode = ClipMode::Segment;

    Segment() = default;
    Segment(const Vec3& a_, const Vec3& b_, ClipMode m = ClipMode::Segment)
        : a(a_), b(b_), mode(m) {
        if (a.x == b.x && a.y == b.y && a.z == b.z)
            throw GeometryError("Segment: endpoints coincide");
    }

    Vec3 dir() const { return b - a; }
    Vec3 at(double t) const { return a + dir() * t; }
};

// Plane through the line of `seg` and the point `p`. Normal is
// normalize((b - a) x (p - a)). Throws DegeneratePlane if p is collinear
// with the segment.
Plane plane_through_line_and_point(const Segment& seg, const Vec3& p,
                                   double eps = kEps);

// Plane through the line of `seg` orthogonal to `rho1` (which must contain
// the line). Normal is normalize((b - a) x n(rho1)).
Plane orthogonal_plane_through_line(const Segment& seg, const Plane& rho1,
                                    double eps = kEps);

// Two non-collinear planes through the line, each dropping one coordinate:
// rho1 has zero y-coefficient, rho2 zero x-coefficient, both scaled so the
// leading nonzero coefficient is 1. When no such pair exists the general
// constructions above are used instead and fell_back is set.
struct DiagonalPlanes {
    Plane rho1, rho2;
    bool fell_back = false;
};
DiagonalPlanes diagonal_planes(const Segment& seg, double eps = kEps);

// Solution of [s1 | s2 | -s] (p q t)^T = a - v0 by 3x3 elimination with
// partial pivoting. Returns the hit iff p >= -eps, q >= -eps, p + q <= 1 + eps;
// a singular system (line parallel to the triangle plane) is a no-hit.
struct LineTriangleHit {
    double p = 0.0, q = 0.0, t = 0.0;
};
std::optional<LineTriangleHit> solve_line_triangle(const Segment& seg,
                                                   const Vec3& v0,
                                                   const Vec3& v1,
                                                   const Vec3& v2,
                                                   double scale,
                                                   double eps = kEps);

}  // namespace clip3
