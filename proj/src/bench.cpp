#include "clip3/bench.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

namespace clip3 {

namespace {

double unit_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Vec3 point_in_sphere(std::mt19937_64& rng, double radius) {
    for (;;) {
        const double x = 2.0 * unit_double(rng) - 1.0;
        const double y = 2.0 * unit_double(rng) - 1.0;
        const double z = 2.0 * unit_double(rng) - 1.0;
        if (x * x + y * y + z * z <= 1.0) return Vec3{x, y, z} * radius;
    }
}

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string serialize_segment(const Segment& s) {
    std::ostringstream out;
    out << fmt17(s.a.x) << ' ' << fmt17(s.a.y) << ' ' << fmt17(s.a.z) << ' '
        << fmt17(s.b.x) << ' ' << fmt17(s.b.y) << ' ' << fmt17(s.b.z);
    return out.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

LineDataset generate_line_dataset(const ConvexMesh& mesh, int count, HitMode mode,
                                  double outer_radius, std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("generate_line_dataset: count must be >= 1");
    if (!(outer_radius > mesh.scale))
        throw std::invalid_argument(
            "generate_line_dataset: outer_radius must exceed the mesh bounding radius");

    LineDataset ds;
    ds.hit_mode = mode;
    ds.outer_radius = outer_radius;
    ds.seed = seed;
    ds.segments.reserve(static_cast<std::size_t>(count));

    std::mt19937_64 rng(seed);
    std::uint64_t attempts = 0;
    while (static_cast<int>(ds.segments.size()) < count) {
        ++attempts;
        if (attempts % 1000000 == 0 &&
            static_cast<double>(ds.segments.size()) < 0.001 * static_cast<double>(attempts))
            throw GenerationExhausted("generate_line_dataset: acceptance rate below 0.1%");

        const Vec3 a = point_in_sphere(rng, outer_radius);
        const Vec3 b = point_in_sphere(rng, outer_radius);
        if (norm2(b - a) == 0.0) continue;
        const Segment seg{a, b};
        const bool hit = clip_oracle(mesh, seg).hit;
        if (hit == (mode == HitMode::AllHit)) ds.segments.push_back(seg);
    }
    ds.rejection_rate =
        1.0 - static_cast<double>(count) / static_cast<double>(attempts);
    return ds;
}

LineDataset load_line_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MeshParseError("load_line_dataset: cannot open " + path);
    int count = 0;
    if (!(in >> count) || count < 1)
        throw MeshParseError("load_line_dataset: bad count in " + path);
    LineDataset ds;
    ds.segments.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        double v[6];
        for (double& x : v)
            if (!(in >> x)) throw MeshParseError("load_line_dataset: bad segment line");
        ds.segments.emplace_back(Vec3{v[0], v[1], v[2]}, Vec3{v[3], v[4], v[5]});
    }
    return ds;
}

void save_line_dataset(const LineDataset& ds, const std::string& path) {
    std::ostringstream out;
    out << ds.segments.size() << '\n';
    for (const Segment& s : ds.segments) out << serialize_segment(s) << '\n';
    std::ofstream file(path);
    if (!file || !(file << out.str()) || !file.flush())
        throw std::ios_base::failure("save_line_dataset: cannot write " + path);
}

std::vector<BenchRow> run_benchmark(const std::vector<int>& n_facets_list,
                                    int lines_per_case, HitMode mode,
                                    std::uint64_t seed, const BenchConfig& config) {
    if (lines_per_case < 1)
        throw std::invalid_argument("run_benchmark: lines_per_case must be >= 1");

    std::vector<BenchRow> rows;
    rows.reserve(n_facets_list.size());
    for (int n : n_facets_list) {
        const ConvexMesh mesh =
            generate_inscribed_polyhedron(n, config.inner_radius, seed + static_cast<std::uint64_t>(n));
        const LineDataset ds =
            generate_line_dataset(mesh, lines_per_case, mode, config.outer_radius,
                                  seed + 0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(n));

        std::vector<ClipResult> res_cb(ds.segments.size());
        std::vector<ClipResult> res_rho(ds.segments.size());
        std::vector<ClipResult> res_sqrt(ds.segments.size());

        BenchRow row;
        row.n_facets = n;
        row.t_cb = row.t_rho = row.t = std::numeric_limits<double>::infinity();
        const int reps = std::max(1, config.reps);
        for (int rep = 0; rep < reps; ++rep) {
            auto t0 = std::chrono::steady_clock::now();
            for (std::size_t i = 0; i < ds.segments.size(); ++i)
                res_cb[i] = clip_cb(mesh, ds.segments[i]);
            row.t_cb = std::min(row.t_cb, seconds_since(t0));

            t0 = std::chrono::steady_clock::now();
            for (std::size_t i = 0; i < ds.segments.size(); ++i)
                res_rho[i] = clip_two_planes(mesh, ds.segments[i]);
            row.t_rho = std::min(row.t_rho, seconds_since(t0));

            t0 = std::chrono::steady_clock::now();
            for (std::size_t i = 0; i < ds.segments.size(); ++i)
                res_sqrt[i] = clip_sqrt(mesh, ds.segments[i]);
            row.t = std::min(row.t, seconds_since(t0));
        }

        const double tol = 1e-9 * mesh.scale;
        for (std::size_t i = 0; i < ds.segments.size(); ++i) {
            if (!results_match(res_cb[i], res_rho[i], tol))
                throw EquivalenceViolation("run_benchmark: clip_two_planes disagrees with clip_cb",
                                           serialize_segment(ds.segments[i]));
            if (!results_match(res_cb[i], res_sqrt[i], tol))
                throw EquivalenceViolation("run_benchmark: clip_sqrt disagrees with clip_cb",
                                           serialize_segment(ds.segments[i]));
        }

        for (std::size_t i = 0; i < ds.segments.size(); ++i) {
            row.total_cb_steps_cb += res_cb[i].counters.cb_steps;
            row.total_facets_examined_cb += res_cb[i].counters.facets_examined;
            row.total_cb_steps_rho += res_rho[i].counters.cb_steps;
            row.total_walk_visits += res_sqrt[i].counters.walk_visits;
            if (res_sqrt[i].fell_back) ++row.sqrt_fallbacks;
        }
        const double m = static_cast<double>(ds.segments.size());
        row.mean_walk_visits = static_cast<double>(row.total_walk_visits) / m;
        row.mean_cb_steps_rho = static_cast<double>(row.total_cb_steps_rho) / m;
        row.v1 = row.t_cb / row.t;
        row.v2 = row.t_rho / row.t;
        rows.push_back(row);
    }
    return rows;
}

std::string emit_table(const std::vector<BenchRow>& rows, TableFormat format) {
    if (rows.empty()) throw std::invalid_argument("emit_table: no rows");

    const char* names[7] = {"T_CB",          "T_rho",           "T",   "v1",
                            "v2",            "mean_walk_visits", "mean_cb_steps_rho"};
    auto value = [](const BenchRow& r, int row) {
        switch (row) {
            case 0: return r.t_cb;
            case 1: return r.t_rho;
            case 2: return r.t;
            case 3: return r.v1;
            case 4: return r.v2;
            case 5: return r.mean_walk_visits;
            default: return r.mean_cb_steps_rho;
        }
    };

    std::ostringstream out;
    if (format == TableFormat::Csv) {
        out << "N";
        for (const BenchRow& r : rows) out << ',' << r.n_facets;
        out << '\n';
        for (int i = 0; i < 7; ++i) {
            out << names[i];
            for (const BenchRow& r : rows) out << ',' << fmt17(value(r, i));
            out << '\n';
        }
    } else {
        out << "| N |";
        for (const BenchRow& r : rows) out << ' ' << r.n_facets << " |";
        out << "\n|---|";
        for (std::size_t i = 0; i < rows.size(); ++i) out << "---|";
        out << '\n';
        for (int i = 0; i < 7; ++i) {
            out << "| " << names[i] << " |";
            for (const BenchRow& r : rows) {
                char buf[32];
                std::snprintf(buf, sizeof(buf), "%.6g", value(r, i));
                out << ' ' << buf << " |";
            }
            out << '\n';
        }
    }
    return out.str();
}

}  // namespace clip3
