// Command-line front end: mesh and line-set generation, single clips,
// four-way verification and the benchmark table.
//
// Exit codes: 0 success, 1 semantic failure (equivalence), 2 usage or
// malformed input, 3 I/O failure, 4 mesh validation failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "clip3/bench.hpp"
#include "clip3/clip.hpp"
#include "clip3/mesh.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSemantic = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitValidation = 4;

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string result_line(const clip3::ClipResult& r) {
    if (!r.hit) return "MISS";
    std::string s = "HIT " + fmt17(r.t_min) + ' ' + fmt17(r.t_max);
    for (double v : {r.clipped_a.x, r.clipped_a.y, r.clipped_a.z, r.clipped_b.x,
                     r.clipped_b.y, r.clipped_b.z})
        s += ' ' + fmt17(v);
    return s;
}

clip3::ClipResult run_algo(const std::string& algo, const clip3::ConvexMesh& mesh,
                           const clip3::Segment& seg) {
    if (algo == "cb") return clip3::clip_cb(mesh, seg);
    if (algo == "planes") return clip3::clip_two_planes(mesh, seg);
    if (algo == "sqrt") return clip3::clip_sqrt(mesh, seg);
    return clip3::clip_oracle(mesh, seg);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out || !(out << text) || !out.flush())
        throw std::ios_base::failure("cannot write " + path);
}

int cmd_gen_mesh(int n, double radius, std::uint64_t seed, const std::string& out_path) {
    const clip3::ConvexMesh mesh = clip3::generate_inscribed_polyhedron(n, radius, seed);
    clip3::save_mesh(mesh, out_path);
    const int v = mesh.vertex_count(), f = mesh.facet_count();
    std::cout << "V=" << v << " E=" << (3 * f / 2) << " F=" << f << " -> " << out_path
              << "\n";
    return kExitOk;
}

int cmd_gen_lines(const std::string& mesh_path, int count, const std::string& mode,
                  double radius, std::uint64_t seed, const std::string& out_path) {
    const clip3::ConvexMesh mesh = clip3::load_mesh(mesh_path);
    const auto hit_mode = mode == "hit" ? clip3::HitMode::AllHit : clip3::HitMode::AllMiss;
    const clip3::LineDataset ds =
        clip3::generate_line_dataset(mesh, count, hit_mode, radius, seed);
    clip3::save_line_dataset(ds, out_path);
    std::cout << ds.segments.size() << " segments (" << mode
              << "), rejection rate " << ds.rejection_rate << " -> " << out_path << "\n";
    return kExitOk;
}

int cmd_clip(const std::string& mesh_path, const std::string& algo,
             const std::vector<double>& seg_coords, const std::string& lines_path,
             bool line_mode) {
    const clip3::ConvexMesh mesh = clip3::load_mesh(mesh_path);
    const auto mode = line_mode ? clip3::ClipMode::Line : clip3::ClipMode::Segment;

    std::vector<clip3::Segment> segments;
    if (!seg_coords.empty()) {
        segments.emplace_back(
            clip3::Vec3{seg_coords[0], seg_coords[1], seg_coords[2]},
            clip3::Vec3{seg_coords[3], seg_coords[4], seg_coords[5]}, mode);
    } else {
        for (const clip3::Segment& s : clip3::load_line_dataset(lines_path).segments)
            segments.emplace_back(s.a, s.b, mode);
    }

    clip3::Counters totals;
    for (const clip3::Segment& seg : segments) {
        const clip3::ClipResult r = run_algo(algo, mesh, seg);
        totals += r.counters;
        std::cout << result_line(r) << "\n";
    }
    std::cout << "counters facets_examined=" << totals.facets_examined
              << " cb_steps=" << totals.cb_steps << " plane_tests=" << totals.plane_tests
              << " walk_visits=" << totals.walk_visits << "\n";
    return kExitOk;
}

int cmd_verify(const std::string& mesh_path, const std::string& lines_path,
               bool line_mode) {
    const clip3::ConvexMesh mesh = clip3::load_mesh(mesh_path);
    const clip3::LineDataset ds = clip3::load_line_dataset(lines_path);
    const auto mode = line_mode ? clip3::ClipMode::Line : clip3::ClipMode::Segment;
    const double tol = 1e-9 * mesh.scale;

    for (const clip3::Segment& raw : ds.segments) {
        const clip3::Segment seg{raw.a, raw.b, mode};
        const clip3::ClipResult oracle = clip3::clip_oracle(mesh, seg);
        const clip3::ClipResult cb = clip3::clip_cb(mesh, seg);
        const clip3::ClipResult rho = clip3::clip_two_planes(mesh, seg);
        const clip3::ClipResult sq = clip3::clip_sqrt(mesh, seg);
        if (!clip3::results_match(oracle, cb, tol) || !clip3::results_match(oracle, rho, tol) ||
            !clip3::results_match(oracle, sq, tol)) {
            std::cout << "DISAGREE on segment: " << fmt17(seg.a.x) << ' ' << fmt17(seg.a.y)
                      << ' ' << fmt17(seg.a.z) << ' ' << fmt17(seg.b.x) << ' '
                      << fmt17(seg.b.y) << ' ' << fmt17(seg.b.z) << "\n"
                      << "  oracle: " << result_line(oracle) << "\n"
                      << "  cb:     " << result_line(cb) << "\n"
                      << "  planes: " << result_line(rho) << "\n"
                      << "  sqrt:   " << result_line(sq) << "\n";
            return kExitSemantic;
        }
    }
    std::cout << "OK " << ds.segments.size() << " segments, all four algorithms agree\n";
    return kExitOk;
}

int cmd_bench(const std::vector<int>& n_list, int lines, const std::string& mode,
              std::uint64_t seed, const std::string& format, const std::string& out_path,
              const clip3::BenchConfig& config) {
    const auto hit_mode = mode == "hit" ? clip3::HitMode::AllHit : clip3::HitMode::AllMiss;
    const auto rows = clip3::run_benchmark(n_list, lines, hit_mode, seed, config);
    const auto fmt = format == "md" ? clip3::TableFormat::Markdown : clip3::TableFormat::Csv;
    const std::string table = clip3::emit_table(rows, fmt);
    if (out_path.empty())
        std::cout << table;
    else
        write_text(out_path, table);
    for (const auto& r : rows)
        std::cout << "N=" << r.n_facets << " v1=" << r.v1 << " v2=" << r.v2
                  << " sqrt_fallbacks=" << r.sqrt_fallbacks << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Line and segment clipping against triangulated convex polyhedra"};
    app.require_subcommand(1);

    // gen-mesh
    auto* gen_mesh = app.add_subcommand("gen-mesh", "Generate a sphere-inscribed polyhedron");
    int gm_n = 4;
    double gm_radius = 0.5;
    std::uint64_t gm_seed = 1;
    std::string gm_out;
    gen_mesh->add_option("--n", gm_n, "Facet count (even, >= 4)")->required();
    gen_mesh->add_option("--radius", gm_radius, "Sphere radius");
    gen_mesh->add_option("--seed", gm_seed, "RNG seed");
    gen_mesh->add_option("--out", gm_out, "Output mesh path")->required();

    // gen-lines
    auto* gen_lines = app.add_subcommand("gen-lines", "Generate a hit/miss line dataset");
    std::string gl_mesh, gl_mode = "hit", gl_out;
    int gl_count = 1000;
    double gl_radius = 1.0;
    std::uint64_t gl_seed = 1;
    gen_lines->add_option("--mesh", gl_mesh, "Mesh path")->required();
    gen_lines->add_option("--count", gl_count, "Segment count")->check(CLI::PositiveNumber);
    gen_lines->add_option("--mode", gl_mode, "hit or miss")->check(CLI::IsMember({"hit", "miss"}));
    gen_lines->add_option("--radius", gl_radius, "Outer sphere radius");
    gen_lines->add_option("--seed", gl_seed, "RNG seed");
    gen_lines->add_option("--out", gl_out, "Output dataset path")->required();

    // clip
    auto* clip = app.add_subcommand("clip", "Clip segments against a mesh");
    std::string c_mesh, c_algo = "cb", c_lines;
    std::vector<double> c_seg;
    bool c_line_mode = false;
    clip->add_option("--mesh", c_mesh, "Mesh path")->required();
    clip->add_option("--algo", c_algo, "cb, planes, sqrt or oracle")
        ->check(CLI::IsMember({"cb", "planes", "sqrt", "oracle"}));
    auto* seg_opt = clip->add_option("--seg", c_seg, "ax ay az bx by bz")->expected(6);
    auto* lines_opt = clip->add_option("--lines", c_lines, "Line dataset path");
    seg_opt->excludes(lines_opt);
    clip->add_flag("--line", c_line_mode, "Clip infinite lines instead of segments");

    // verify
    auto* verify = app.add_subcommand("verify", "Check all four algorithms agree");
    std::string v_mesh, v_lines;
    bool v_line_mode = false;
    verify->add_option("--mesh", v_mesh, "Mesh path")->required();
    verify->add_option("--lines", v_lines, "Line dataset path")->required();
    verify->add_flag("--line", v_line_mode, "Clip infinite lines instead of segments");

    // bench
    auto* bench = app.add_subcommand("bench", "Run the efficiency benchmark");
    std::vector<int> b_n{10, 50, 200, 1000};
    int b_lines = 10000;
    std::string b_mode = "hit", b_format = "csv", b_out;
    std::uint64_t b_seed = 1;
    clip3::BenchConfig b_config;
    bench->add_option("--n", b_n, "Facet counts")->delimiter(',');
    bench->add_option("--lines", b_lines, "Lines per case")->check(CLI::PositiveNumber);
    bench->add_option("--mode", b_mode, "hit or miss")->check(CLI::IsMember({"hit", "miss"}));
    bench->add_option("--seed", b_seed, "RNG seed");
    bench->add_option("--format", b_format, "csv or md")->check(CLI::IsMember({"csv", "md"}));
    bench->add_option("--out", b_out, "Write the table here instead of stdout");
    bench->add_option("--inner-radius", b_config.inner_radius, "Polyhedron sphere radius");
    bench->add_option("--outer-radius", b_config.outer_radius, "Line sphere radius");
    bench->add_option("--reps", b_config.reps, "Timing repetitions");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen_mesh->parsed()) return cmd_gen_mesh(gm_n, gm_radius, gm_seed, gm_out);
        if (gen_lines->parsed())
            return cmd_gen_lines(gl_mesh, gl_count, gl_mode, gl_radius, gl_seed, gl_out);
        if (clip->parsed()) {
            if (c_seg.empty() && c_lines.empty()) {
                std::cerr << "clip: need --seg or --lines\n";
                return kExitUsage;
            }
            return cmd_clip(c_mesh, c_algo, c_seg, c_lines, c_line_mode);
        }
        if (verify->parsed()) return cmd_verify(v_mesh, v_lines, v_line_mode);
        if (bench->parsed())
            return cmd_bench(b_n, b_lines, b_mode, b_seed, b_format, b_out, b_config);
    } catch (const clip3::EquivalenceViolation& e) {
        std::cerr << e.what() << "\nsegment: " << e.segment_text << "\n";
        return kExitSemantic;
    } catch (const clip3::InvalidFacetCount& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const clip3::MeshParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const clip3::MeshError& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
    } catch (const std::ios_base::failure& e) {
        std::cerr << e.what() << "\n";
        return kExitIo;
    } catch (const clip3::GeometryError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitSemantic;
    }
    return kExitUsage;
}
