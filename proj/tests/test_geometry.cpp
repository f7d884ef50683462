#include <doctest.h>

#include <cmath>
#include <random>

#include "clip3/geometry.hpp"

using namespace clip3;

namespace {

// Deterministic double in [lo, hi) from a raw 64-bit generator (the
// distribution classes are implementation-defined, this mapping is not).
double uniform(std::mt19937_64& rng, double lo, double hi) {
    const double u = (rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

Vec3 random_point(std::mt19937_64& rng, double r = 2.0) {
    return {uniform(rng, -r, r), uniform(rng, -r, r), uniform(rng, -r, r)};
}

bool planes_parallel(const Plane& p, const Plane& q, double tol = 1e-12) {
    const Vec3 c = cross(p.normal(), q.normal());
    return norm(c) <= tol * norm(p.normal()) * norm(q.normal());
}

}  // namespace

TEST_CASE("Vec3 rejects non-finite components") {
    CHECK_THROWS_AS(Vec3(std::nan(""), 0.0, 0.0), GeometryError);
    CHECK_THROWS_AS(Vec3(0.0, std::numeric_limits<double>::infinity(), 0.0),
                    GeometryError);
    CHECK_NOTHROW(Vec3(1.0, -2.0, 3.0));
}

TEST_CASE("Vec3 algebra") {
    const Vec3 a{1, 2, 3}, b{4, 5, 6};
    CHECK(dot(a, b) == 32.0);
    const Vec3 c = cross(a, b);
    CHECK(c.x == -3.0);
    CHECK(c.y == 6.0);
    CHECK(c.z == -3.0);
    CHECK(norm(Vec3{3, 4, 0}) == 5.0);
    CHECK_THROWS_AS(normalized(Vec3{0, 0, 0}), GeometryError);
}

TEST_CASE("Plane rejects degenerate coefficients") {
    CHECK_THROWS_AS(Plane(0, 0, 0, 1), GeometryError);
    CHECK_THROWS_AS(Plane(std::nan(""), 1, 0, 0), GeometryError);
}

TEST_CASE("plane_eval direct substitutions") {
    const Plane p{1, 1, 1, -1};  // x + y + z - 1
    CHECK(plane_eval(p, {0, 0, 0}) == -1.0);
    CHECK(std::abs(plane_eval(p, {1.0 / 3, 1.0 / 3, 1.0 / 3})) <= 1e-15);
    const Plane x0{1, 0, 0, 0};
    CHECK(plane_eval(x0, {-1, 0.25, 0.25}) == -1.0);
}

TEST_CASE("sign_classify thresholds") {
    CHECK(sign_classify(0.0, 1.0, 1e-12) == SignClass::OnPlane);
    CHECK(sign_classify(5.0, 1.0, 1e-12) == SignClass::Positive);
    CHECK(sign_classify(-3e-13, 1.0, 1e-12) == SignClass::OnPlane);
    CHECK(sign_classify(-5e-12, 1.0, 1e-12) == SignClass::Negative);
    // scale stretches the band
    CHECK(sign_classify(5e-12, 100.0, 1e-12) == SignClass::OnPlane);
}

TEST_CASE("sign_classify is antisymmetric") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 10000; ++i) {
        const double v = uniform(rng, -1.0, 1.0) * std::pow(10.0, uniform(rng, -14, 2));
        const SignClass s = sign_classify(v, 1.0);
        const SignClass ns = sign_classify(-v, 1.0);
        if (s == SignClass::OnPlane) {
            CHECK(ns == SignClass::OnPlane);
        } else {
            CHECK(ns != s);
            CHECK(ns != SignClass::OnPlane);
        }
    }
}

TEST_CASE("plane_through_line_and_point coordinate cases") {
    const Segment sx{{0, 0, 0}, {1, 0, 0}};
    const Plane p1 = plane_through_line_and_point(sx, {0, 1, 0});
    CHECK(planes_parallel(p1, Plane{0, 0, 1, 0}));  // z = 0 up to sign
    CHECK(std::abs(p1.d) <= 1e-15);

    const Segment sz{{0, 0, 0}, {0, 0, 1}};
    const Plane p2 = plane_through_line_and_point(sz, {1, 0, 0});
    CHECK(planes_parallel(p2, Plane{0, 1, 0, 0}));  // y = 0 up to sign

    CHECK_THROWS_AS(plane_through_line_and_point(sx, {2, 0, 0}), DegeneratePlane);
}

TEST_CASE("plane_through_line_and_point contains its three points (property)") {
    std::mt19937_64 rng(7);
    int accepted = 0;
    while (accepted < 10000) {
        const Vec3 a = random_point(rng), b = random_point(rng), p = random_point(rng);
        if (norm(b - a) < 1e-6) continue;
        const Segment seg{a, b};
        // scale of the configuration
        const double scale = std::max({norm(a), norm(b), norm(p), 1.0});
        Plane rho;
        try {
            rho = plane_through_line_and_point(seg, p);
        } catch (const DegeneratePlane&) {
            continue;  // nearly collinear triple; precondition excluded
        }
        ++accepted;
        CHECK(std::abs(plane_eval(rho, a)) <= 1e-9 * scale);
        CHECK(std::abs(plane_eval(rho, b)) <= 1e-9 * scale);
        CHECK(std::abs(plane_eval(rho, p)) <= 1e-9 * scale);
        CHECK(norm(rho.normal()) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("orthogonal_plane_through_line coordinate cases") {
    const Segment sx{{0, 0, 0}, {1, 0, 0}};
    const Plane z0{0, 0, 1, 0};
    const Plane y0{0, 1, 0, 0};
    CHECK(planes_parallel(orthogonal_plane_through_line(sx, z0), y0));
    CHECK(planes_parallel(orthogonal_plane_through_line(sx, y0), z0));

    const Segment diag{{0, 0, 0}, {1, 1, 0}};
    const Plane q = orthogonal_plane_through_line(diag, z0);
    CHECK(planes_parallel(q, Plane{1, -1, 0, 0}));  // x - y = 0 up to sign/scale
}

TEST_CASE("orthogonal_plane_through_line orthogonality (property)") {
    std::mt19937_64 rng(11);
    int accepted = 0;
    while (accepted < 10000) {
        const Vec3 a = random_point(rng), b = random_point(rng), p = random_point(rng);
        if (norm(b - a) < 1e-6) continue;
        const Segment seg{a, b};
        const double scale = std::max({norm(a), norm(b), 1.0});
        Plane rho1;
        try {
            rho1 = plane_through_line_and_point(seg, p);
        } catch (const DegeneratePlane&) {
            continue;
        }
        const Plane rho2 = orthogonal_plane_through_line(seg, rho1);
        ++accepted;
        CHECK(std::abs(dot(rho1.normal(), rho2.normal())) <= 1e-9);
        CHECK(std::abs(plane_eval(rho2, a)) <= 1e-9 * scale);
        CHECK(std::abs(plane_eval(rho2, b)) <= 1e-9 * scale);
    }
}

TEST_CASE("diagonal_planes general segment") {
    const Segment seg{{0, 0, 0}, {1, 1, 1}};
    const DiagonalPlanes dp = diagonal_planes(seg);
    CHECK_FALSE(dp.fell_back);
    CHECK(dp.rho1.b == 0.0);  // zero y-coefficient
    CHECK(dp.rho2.a == 0.0);  // zero x-coefficient
    for (const Vec3& e : {seg.a, seg.b}) {
        CHECK(std::abs(plane_eval(dp.rho1, e)) <= 1e-12);
        CHECK(std::abs(plane_eval(dp.rho2, e)) <= 1e-12);
    }
    // expected forms x - z = 0 and y - z = 0
    CHECK(planes_parallel(dp.rho1, Plane{1, 0, -1, 0}));
    CHECK(planes_parallel(dp.rho2, Plane{0, 1, -1, 0}));
    // leading nonzero coefficient normalized to 1
    CHECK(dp.rho1.a == 1.0);
    CHECK(dp.rho2.b == 1.0);
}

TEST_CASE("diagonal_planes segment along y degenerates rho1 to x = const") {
    const Segment seg{{0, 0, 0}, {0, 1, 0}};
    const DiagonalPlanes dp = diagonal_planes(seg);
    CHECK_FALSE(dp.fell_back);
    CHECK(dp.rho1.a == 1.0);
    CHECK(dp.rho1.b == 0.0);
    CHECK(dp.rho1.c == 0.0);
    CHECK(dp.rho1.d == 0.0);
    CHECK(planes_parallel(dp.rho2, Plane{0, 0, 1, 0}));  // z = 0
    CHECK_FALSE(planes_parallel(dp.rho1, dp.rho2));
}

TEST_CASE("diagonal_planes segment along x takes the fallback pair") {
    const Segment seg{{0, 0, 0}, {1, 0, 0}};
    const DiagonalPlanes dp = diagonal_planes(seg);
    CHECK(dp.fell_back);
    for (const Vec3& e : {seg.a, seg.b}) {
        CHECK(std::abs(plane_eval(dp.rho1, e)) <= 1e-12);
        CHECK(std::abs(plane_eval(dp.rho2, e)) <= 1e-12);
    }
    CHECK(std::abs(dot(normalized(dp.rho1.normal()), normalized(dp.rho2.normal()))) <=
          1e-9);
}

TEST_CASE("diagonal_planes never collinear (property)") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 10000; ++i) {
        Vec3 a = random_point(rng), b = random_point(rng);
        if (norm(b - a) < 1e-6) continue;
        // mix in axis-aligned directions to hit every degeneracy branch
        switch (i % 5) {
            case 1: b = a + Vec3{uniform(rng, 0.1, 2), 0, 0}; break;
            case 2: b = a + Vec3{0, uniform(rng, 0.1, 2), 0}; break;
            case 3: b = a + Vec3{0, 0, uniform(rng, 0.1, 2)}; break;
            case 4: b = a + Vec3{uniform(rng, 0.1, 2), uniform(rng, 0.1, 2), 0}; break;
            default: break;
        }
        const Segment seg{a, b};
        const DiagonalPlanes dp = diagonal_planes(seg);
        const double scale = std::max({norm(a), norm(b), 1.0});
        CHECK_FALSE(planes_parallel(dp.rho1, dp.rho2, 1e-9));
        for (const Vec3& e : {a, b}) {
            CHECK(std::abs(plane_eval(dp.rho1, e)) <=
                  1e-9 * scale * std::max(1.0, norm(dp.rho1.normal())));
            CHECK(std::abs(plane_eval(dp.rho2, e)) <=
                  1e-9 * scale * std::max(1.0, norm(dp.rho2.normal())));
        }
    }
}

TEST_CASE("solve_line_triangle fixture hits and miss") {
    const Segment seg{{-1, 0.25, 0.25}, {1, 0.25, 0.25}};

    auto h1 = solve_line_triangle(seg, {0, 0, 0}, {0, 1, 0}, {0, 0, 1}, 1.0);
    REQUIRE(h1.has_value());
    CHECK(h1->p == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(h1->q == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(h1->t == doctest::Approx(0.5).epsilon(1e-12));

    auto h2 = solve_line_triangle(seg, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, 1.0);
    REQUIRE(h2.has_value());
    CHECK(h2->t == doctest::Approx(0.75).epsilon(1e-12));

    const Segment miss{{-1, 2, 2}, {1, 2, 2}};
    CHECK_FALSE(solve_line_triangle(miss, {0, 0, 0}, {0, 1, 0}, {0, 0, 1}, 1.0)
                    .has_value());
}

TEST_CASE("solve_line_triangle rejects degenerate triangles and parallel lines") {
    const Segment seg{{-1, 0.25, 0.25}, {1, 0.25, 0.25}};
    CHECK_THROWS_AS(
        solve_line_triangle(seg, {0, 0, 0}, {1, 0, 0}, {2, 0, 0}, 1.0),
        DegenerateTriangle);
    // line parallel to the triangle plane z = 0: singular, no-hit
    const Segment par{{0, 0, 1}, {1, 0, 1}};
    CHECK_FALSE(
        solve_line_triangle(par, {0, 0, 0}, {1, 0, 0}, {0, 1, 0}, 1.0).has_value());
}

TEST_CASE("solve_line_triangle agrees with reconstruction (property)") {
    std::mt19937_64 rng(31);
    int hits = 0;
    for (int i = 0; i < 20000 && hits < 10000; ++i) {
        const Vec3 v0 = random_point(rng), v1 = random_point(rng), v2 = random_point(rng);
        const Vec3 a = random_point(rng), b = random_point(rng);
        if (norm(b - a) < 1e-6) continue;
        if (norm(cross(v1 - v0, v2 - v0)) < 1e-3) continue;
        const Segment seg{a, b};
        const double scale =
            std::max({norm(v0), norm(v1), norm(v2), norm(a), norm(b), 1.0});
        std::optional<LineTriangleHit> h;
        try {
            h = solve_line_triangle(seg, v0, v1, v2, scale);
        } catch (const DegenerateTriangle&) {
            continue;
        }
        if (!h) continue;
        ++hits;
        const Vec3 via_line = seg.at(h->t);
        const Vec3 via_tri = v0 + (v1 - v0) * h->p + (v2 - v0) * h->q;
        CHECK(std::abs(via_line.x - via_tri.x) <= 1e-9 * scale);
        CHECK(std::abs(via_line.y - via_tri.y) <= 1e-9 * scale);
        CHECK(std::abs(via_line.z - via_tri.z) <= 1e-9 * scale);
        CHECK(h->p >= -kEps);
        CHECK(h->q >= -kEps);
        CHECK(h->p + h->q <= 1 + kEps);
    }
    CHECK(hits > 1000);  // the property actually exercised hit cases
}
