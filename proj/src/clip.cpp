#include "clip3/clip.hpp"

#include <cmath>

namespace clip3 {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Barycentric containment with a small relative slack; used to confirm that
// an interval bound actually lies on its binding facet.
bool point_in_facet(const ConvexMesh& mesh, int k, const Vec3& x, double tol = 1e-7) {
    const auto& ids = mesh.facets[k].vertex_ids;
    const Vec3& v0 = mesh.vertices[ids[0]];
    const Vec3 e1 = mesh.vertices[ids[1]] - v0;
    const Vec3 e2 = mesh.vertices[ids[2]] - v0;
    const Vec3 w = x - v0;
    const double d11 = dot(e1, e1), d12 = dot(e1, e2), d22 = dot(e2, e2);
    const double dw1 = dot(w, e1), dw2 = dot(w, e2);
    const double det = d11 * d22 - d12 * d12;
    if (det <= 0.0) return false;
    const double p = (d22 * dw1 - d12 * dw2) / det;
    const double q = (d11 * dw2 - d12 * dw1) / det;
    return p >= -tol && q >= -tol && p + q <= 1.0 + tol;
}

ClipResult finish_hit(const Segment& seg, double lo, double hi, Counters counters,
                      bool fell_back) {
    ClipResult r;
    r.counters = counters;
    r.fell_back = fell_back;
    if (seg.mode == ClipMode::Segment) {
        lo = std::max(lo, 0.0);
        hi = std::min(hi, 1.0);
    }
    if (lo > hi || !std::isfinite(lo) || !std::isfinite(hi)) return r;  // miss
    r.hit = true;
    r.t_min = lo;
    r.t_max = hi;
    r.clipped_a = seg.at(lo);
    r.clipped_b = seg.at(hi);
    return r;
}

// Decide hit/miss from an interval accumulated over a *subset* of the facets
// (two-plane filter or ring walk), tracked in line space. Every pierced facet
// is guaranteed to be in the tested subset, so a finite two-sided candidate
// whose bounds lie on their binding facets is the exact clip; a candidate
// that fails both confirmations is spurious and the line misses. Mixed or
// one-sided evidence signals an epsilon degeneracy and resolves via clip_cb.
ClipResult resolve_partial(const ConvexMesh& mesh, const Segment& seg,
                           const Interval& line_iv, const StepBindings& bind,
                           const Counters& counters, double eps) {
    ClipResult miss;
    miss.counters = counters;
    if (line_iv.empty()) return miss;

    // A genuine hit always bounds both sides: the entry and exit facets are
    // pierced by the line, hence crossed by both planes, hence tested.
    const bool lo_finite = std::isfinite(line_iv.lo);
    const bool hi_finite = std::isfinite(line_iv.hi);
    if (!lo_finite || !hi_finite) return miss;

    auto fallback = [&]() {
        ClipResult r = clip_cb(mesh, seg, eps);
        r.counters += counters;
        r.fell_back = true;
        return r;
    };
    if (bind.entry < 0 || bind.exit < 0) return fallback();

    const bool entry_ok = point_in_facet(mesh, bind.entry, seg.at(line_iv.lo));
    const bool exit_ok = point_in_facet(mesh, bind.exit, seg.at(line_iv.hi));
    if (entry_ok && exit_ok)
        return finish_hit(seg, line_iv.lo, line_iv.hi, counters, false);
    if (!entry_ok && !exit_ok) return miss;  // both bounds off their facets
    return fallback();
}

bool crossing_signs(SignClass c0, SignClass c1, SignClass c2) {
    if (c0 == SignClass::OnPlane || c1 == SignClass::OnPlane || c2 == SignClass::OnPlane)
        return true;
    return !(c0 == c1 && c1 == c2);
}

}  // namespace

void cb_step(const Plane& facet_plane, const Segment& seg, double scale,
             Interval& interval, double eps, int facet_id, StepBindings* bindings) {
    const Vec3 s = seg.dir();
    const Vec3 n = facet_plane.normal();
    const double xi = dot(s, n);
    const double fa = facet_plane.eval(seg.a);  // (x_i - a).n == -fa for unit planes
    if (std::abs(xi) > eps * scale) {
        const double t = -fa / xi;
        if (xi > 0.0) {
            if (t < interval.hi) {
                interval.hi = t;
                if (bindings) bindings->exit = facet_id;
            }
        } else {
            if (t > interval.lo) {
                interval.lo = t;
                if (bindings) bindings->entry = facet_id;
            }
        }
    } else if (fa > eps * scale) {
        // Line parallel to the plane with a on the outer side: no point of the
        // line is inside this half-space.
        interval.lo = kInf;
        interval.hi = -kInf;
        if (bindings) *bindings = StepBindings{};
    }
}

bool facet_crossed_by(const ConvexMesh& mesh, int k, const Plane& plane,
                      const std::vector<SignClass>* sign_cache, double eps) {
    const auto& ids = mesh.facets[k].vertex_ids;
    SignClass c[3];
    for (int i = 0; i < 3; ++i) {
        c[i] = sign_cache
                   ? (*sign_cache)[ids[i]]
                   : sign_classify(plane.eval(mesh.vertices[ids[i]]), mesh.scale, eps);
    }
    return crossing_signs(c[0], c[1], c[2]);
}

ClipResult clip_cb(const ConvexMesh& mesh, const Segment& seg, double eps) {
    Interval iv = Interval::for_mode(seg.mode);
    Counters c;
    const int n = mesh.facet_count();
    for (int k = 0; k < n; ++k)
        cb_step(mesh.facets[k].plane(), seg, mesh.scale, iv, eps);
    c.facets_examined = static_cast<std::uint64_t>(n);
    c.cb_steps = static_cast<std::uint64_t>(n);
    ClipResult r = finish_hit(seg, iv.lo, iv.hi, c, false);
    return r;
}

ClipResult clip_two_planes(const ConvexMesh& mesh, const Segment& seg, double eps) {
    const DiagonalPlanes dp = diagonal_planes(seg, eps);
    const int n = mesh.facet_count();
    const int nv = mesh.vertex_count();

    Counters c;
    c.facets_examined = static_cast<std::uint64_t>(n);

    std::vector<SignClass> q(static_cast<std::size_t>(nv));
    for (int k = 0; k < nv; ++k)
        q[static_cast<std::size_t>(k)] =
            sign_classify(dp.rho1.eval(mesh.vertices[k]), mesh.scale, eps);
    c.plane_tests += static_cast<std::uint64_t>(nv);

    Interval iv = Interval::for_mode(ClipMode::Line);
    StepBindings bind;
    for (int k = 0; k < n; ++k) {
        c.plane_tests += 3;  // sign-vector lookups
        if (!facet_crossed_by(mesh, k, dp.rho1, &q, eps)) continue;
        c.plane_tests += 3;  // F2 evaluations
        if (!facet_crossed_by(mesh, k, dp.rho2, nullptr, eps)) continue;
        cb_step(mesh.facets[k].plane(), seg, mesh.scale, iv, eps, k, &bind);
        ++c.cb_steps;
        if (iv.empty()) break;
    }
    return resolve_partial(mesh, seg, iv, bind, c, eps);
}

ClipResult clip_sqrt_walk(const ConvexMesh& mesh, const Segment& seg, double eps) {
    const int n = mesh.facet_count();
    const double scale = mesh.scale;

    // Starting facet: lowest index whose supporting plane does not contain the
    // line and whose centroid is off the line.
    int start = -1;
    Plane rho1;
    for (int k = 0; k < n; ++k) {
        const Plane pl = mesh.facets[k].plane();
        if (sign_classify(pl.eval(seg.a), scale, eps) == SignClass::OnPlane &&
            sign_classify(pl.eval(seg.b), scale, eps) == SignClass::OnPlane)
            continue;
        try {
            rho1 = plane_through_line_and_point(seg, facet_centroid(mesh, k), eps);
        } catch (const DegeneratePlane&) {
            continue;
        }
        start = k;
        break;
    }
    if (start < 0) throw WalkStalled("clip_sqrt: no usable starting facet");
    const Plane rho2 = orthogonal_plane_through_line(seg, rho1, eps);

    // OnPlane vertices count as Positive so the crossed-edge relation is a
    // consistent binary labelling on both facets sharing an edge.
    auto vertex_positive = [&](int vid) {
        return sign_classify(rho1.eval(mesh.vertices[vid]), scale, eps) !=
               SignClass::Negative;
    };

    Counters c;
    Interval iv = Interval::for_mode(ClipMode::Line);
    StepBindings bind;
    int prev = -1, cur = start;
    while (true) {
        ++c.walk_visits;
        c.plane_tests += 3;
        if (facet_crossed_by(mesh, cur, rho2, nullptr, eps)) {
            c.plane_tests += 3;
            cb_step(mesh.facets[cur].plane(), seg, scale, iv, eps, cur, &bind);
            ++c.cb_steps;
        }
        if (c.walk_visits >= static_cast<std::uint64_t>(n)) break;

        const auto& ids = mesh.facets[cur].vertex_ids;
        const bool lab[3] = {vertex_positive(ids[0]), vertex_positive(ids[1]),
                             vertex_positive(ids[2])};
        int next = -1;
        for (int e = 0; e < 3; ++e) {
            if (lab[e] == lab[(e + 1) % 3]) continue;
            const int nb = mesh.facets[cur].neighbor_ids[e];
            if (nb == prev) continue;
            next = nb;
            break;
        }
        if (next < 0) throw WalkStalled("clip_sqrt: no crossed edge to advance");
        if (next == start) break;
        prev = cur;
        cur = next;
    }
    c.facets_examined = c.walk_visits;
    return resolve_partial(mesh, seg, iv, bind, c, eps);
}

ClipResult clip_sqrt(const ConvexMesh& mesh, const Segment& seg, double eps) {
    try {
        return clip_sqrt_walk(mesh, seg, eps);
    } catch (const WalkStalled&) {
        ClipResult r = clip_cb(mesh, seg, eps);
        r.fell_back = true;
        return r;
    }
}

ClipResult clip_oracle(const ConvexMesh& mesh, const Segment& seg, double eps) {
    const int n = mesh.facet_count();
    Counters c;
    c.facets_examined = static_cast<std::uint64_t>(n);

    double lo = kInf, hi = -kInf;
    bool any = false;
    for (int k = 0; k < n; ++k) {
        const auto& ids = mesh.facets[k].vertex_ids;
        const auto hit = solve_line_triangle(seg, mesh.vertices[ids[0]],
                                             mesh.vertices[ids[1]],
                                             mesh.vertices[ids[2]], mesh.scale, eps);
        if (!hit) continue;
        any = true;
        lo = std::min(lo, hit->t);
        hi = std::max(hi, hit->t);
    }

    if (!any) {
        ClipResult r;
        r.counters = c;
        if (seg.mode == ClipMode::Segment && point_inside(mesh, seg.a, eps * mesh.scale)) {
            r.hit = true;
            r.t_min = 0.0;
            r.t_max = 1.0;
            r.clipped_a = seg.a;
            r.clipped_b = seg.b;
        }
        return r;
    }
    return finish_hit(seg, lo, hi, c, false);
}

bool point_inside(const ConvexMesh& mesh, const Vec3& x, double slack) {
    for (const Facet& f : mesh.facets)
        if (f.plane().eval(x) > slack) return false;
    return true;
}

bool results_match(const ClipResult& a, const ClipResult& b, double tol_t) {
    if (a.hit != b.hit) return false;
    if (!a.hit) return true;
    return std::abs(a.t_min - b.t_min) <= tol_t && std::abs(a.t_max - b.t_max) <= tol_t;
}

bool results_match_degenerate(const ClipResult& a, const ClipResult& b, double tol_t) {
    if (a.hit != b.hit) {
        const ClipResult& h = a.hit ? a : b;
        return h.t_max - h.t_min <= tol_t;
    }
    if (!a.hit) return true;
    return std::abs(a.t_min - b.t_min) <= tol_t && std::abs(a.t_max - b.t_max) <= tol_t;
}

}  // namespace clip3
