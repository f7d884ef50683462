#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "clip3/mesh.hpp"

namespace clip3 {

// Raised internally when the ring walk of clip_sqrt finds no crossed edge to
// advance over (an epsilon degeneracy); clip_sqrt falls back to clip_cb.
struct WalkStalled : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operation counts, the deterministic proxy for wall-clock comparisons.
struct Counters {
    std::uint64_t facets_examined = 0;
    std::uint64_t cb_steps = 0;
    std::uint64_t plane_tests = 0;
    std::uint64_t walk_visits = 0;

    Counters& operator+=(const Counters& o) {
        facets_examined += o.facets_examined;
        cb_steps += o.cb_steps;
        plane_tests += o.plane_tests;
        walk_visits += o.walk_visits;
        return *this;
    }
};

// Parametric interval <lo, hi>; empty once lo > hi.
struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    static Interval for_mode(ClipMode mode) {
        if (mode == ClipMode::Segment) return {0.0, 1.0};
        const double inf = std::numeric_limits<double>::infinity();
        return {-inf, inf};
    }
    bool empty() const { return lo > hi; }
};

// Facets whose planes produced the current interval bounds (-1: untouched).
struct StepBindings {
    int entry = -1;
    int exit = -1;
};

struct ClipResult {
    bool hit = false;
    double t_min = 0.0, t_max = 0.0;
    Vec3 clipped_a, clipped_b;
    Counters counters;
    bool fell_back = false;  // clip_sqrt / clip_two_planes resolved via clip_cb
};

// One Cyrus-Beck half-space step: xi = s.n, t = (x_i - a).n / xi. An exiting
// plane (xi > 0) lowers hi, an entering one raises lo. A parallel plane
// (|xi| <= eps*scale) leaves the interval alone when a is on the inner side
// and otherwise forces it empty.
void cb_step(const Plane& facet_plane, const Segment& seg, double scale,
             Interval& interval, double eps = kEps, int facet_id = -1,
             StepBindings* bindings = nullptr);

// True iff the plane separates the facet's vertices: the three sign classes
// are not all equal, and any OnPlane vertex counts as an intersection. With
// a sign cache (one SignClass per mesh vertex) no plane evaluation is done.
bool facet_crossed_by(const ConvexMesh& mesh, int k, const Plane& plane,
                      const std::vector<SignClass>* sign_cache = nullptr,
                      double eps = kEps);

// Reference: a cb_step against every facet.
ClipResult clip_cb(const ConvexMesh& mesh, const Segment& seg, double eps = kEps);

// Two-plane separation filter: only facets crossed by both diagonal planes
// through the line get the detailed step. Sign classes of the first plane
// are precomputed per vertex.
ClipResult clip_two_planes(const ConvexMesh& mesh, const Segment& seg,
                           double eps = kEps);

// Ring walk: visits only the facets crossed by the plane through the line
// and a facet centroid, stepping neighbor-to-neighbor across crossed edges.
// Expected O(sqrt(N)) visits. Falls back to clip_cb on a stalled walk.
ClipResult clip_sqrt(const ConvexMesh& mesh, const Segment& seg, double eps = kEps);

// As clip_sqrt but throws WalkStalled instead of falling back.
ClipResult clip_sqrt_walk(const ConvexMesh& mesh, const Segment& seg,
                          double eps = kEps);

// Independent ground truth: direct line-triangle solves against every facet.
ClipResult clip_oracle(const ConvexMesh& mesh, const Segment& seg, double eps = kEps);

// All facet-plane evaluations at or below slack.
bool point_inside(const ConvexMesh& mesh, const Vec3& x, double slack);

// Hit/miss flags equal and, when hit, both interval ends within tol_t.
bool results_match(const ClipResult& a, const ClipResult& b, double tol_t);

// Lenient variant for deliberately degenerate inputs: a miss and a hit whose
// interval width is within tol_t also count as agreement (tangency).
bool results_match_degenerate(const ClipResult& a, const ClipResult& b, double tol_t);

}  // namespace clip3
