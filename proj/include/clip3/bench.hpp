#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clip3/clip.hpp"

namespace clip3 {

struct GenerationExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Carries the offending segment, serialized for replay, when two algorithms
// disagree during a benchmark run.
struct EquivalenceViolation : std::runtime_error {
    std::string segment_text;
    EquivalenceViolation(const std::string& what, std::string segment)
        : std::runtime_error(what), segment_text(std::move(segment)) {}
};

enum class HitMode { AllMiss, AllHit };

struct LineDataset {
    std::vector<Segment> segments;
    HitMode hit_mode = HitMode::AllHit;
    double outer_radius = 0.0;
    std::uint64_t seed = 0;
    double rejection_rate = 0.0;  // rejected attempts / total attempts
};

// Endpoint pairs uniform inside the outer sphere (rejection sampling from
// the cube, deterministic per seed), filtered with clip_oracle until `count`
// segments match hit_mode.
LineDataset generate_line_dataset(const ConvexMesh& mesh, int count, HitMode mode,
                                  double outer_radius, std::uint64_t seed);

// Text format: line 1 "count", then "ax ay az bx by bz" per segment.
LineDataset load_line_dataset(const std::string& path);
void save_line_dataset(const LineDataset& ds, const std::string& path);

struct BenchRow {
    int n_facets = 0;
    double t_cb = 0.0, t_rho = 0.0, t = 0.0;  // seconds per whole batch
    double v1 = 0.0, v2 = 0.0;                // t_cb / t, t_rho / t
    double mean_walk_visits = 0.0;
    double mean_cb_steps_rho = 0.0;
    std::uint64_t total_cb_steps_cb = 0;
    std::uint64_t total_cb_steps_rho = 0;
    std::uint64_t total_walk_visits = 0;
    std::uint64_t total_facets_examined_cb = 0;
    std::uint64_t sqrt_fallbacks = 0;
};

struct BenchConfig {
    double inner_radius = 0.5;  // polyhedron sphere
    double outer_radius = 1.0;  // line-generation sphere
    int reps = 1;               // timing repetitions; fastest rep is kept
};

// One row per facet count: generates the mesh and dataset, times each
// algorithm over the whole batch single-threaded, and cross-checks that all
// three clippers agree on every segment (throws EquivalenceViolation).
std::vector<BenchRow> run_benchmark(const std::vector<int>& n_facets_list,
                                    int lines_per_case, HitMode mode,
                                    std::uint64_t seed,
                                    const BenchConfig& config = {});

enum class TableFormat { Csv, Markdown };

// Columns are N values; rows are T_CB, T_rho, T, v1, v2 and the counter means.
std::string emit_table(const std::vector<BenchRow>& rows, TableFormat format);

}  // namespace clip3
