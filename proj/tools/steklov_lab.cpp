// steklov_lab: generate meshes, solve Steklov and Robin problems, analyze nodal
// sets and run the acceptance suites.
//
// Exit status: 0 clean, 2 when violations are reported, 1 on errors.
#include "steklov/embedded_graph.hpp"
#include "steklov/generators.hpp"
#include "steklov/mesh_io.hpp"
#include "steklov/nodal.hpp"
#include "steklov/parallel.hpp"
#include "steklov/report.hpp"
#include "steklov/robin.hpp"
#include "steklov/solver.hpp"
#include "steklov/spectrum.hpp"
#include "steklov/verify.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace steklov;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_violation = 2;

struct GeometryOptions {
    std::vector<double> disk, annulus, square, mobius;
    std::string file;
    int refine = 3;

    void add(CLI::App* app) {
        auto* g = app->add_option_group("geometry", "exactly one geometry");
        g->add_option("--disk", disk, "disk of the given radius")->expected(1);
        g->add_option("--annulus", annulus, "annulus with inner and outer radius")->expected(2);
        g->add_option("--square", square, "square [0,side]^2")->expected(1);
        g->add_option("--mobius", mobius, "Mobius band with length and width")->expected(2);
        g->add_option("--mesh", file, "mesh file");
        g->require_option(1);
        app->add_option("--refine", refine, "refinement level of generated meshes")->capture_default_str()->check(CLI::Range(0, 8));
    }

    LoadedMesh load() const {
        if (!file.empty())
            return load_mesh(file);
        if (!disk.empty())
            return {make_disk(disk[0], refine), {}, {}, {}};
        if (!annulus.empty())
            return {make_annulus(annulus[0], annulus[1], refine), {}, {}, {}};
        if (!square.empty())
            return {make_square(square[0], refine), {}, {}, {}};
        return {make_mobius(mobius[0], mobius[1], std::max(refine, 1)), {}, {}, {}};
    }
};

struct DensityOptions {
    std::string spec = "constant";

    void add(CLI::App* app) {
        app->add_option("--rho", spec, "density: constant[:c], cosine:<amplitude>, or file (RHO section)")
            ->capture_default_str();
    }

    BoundaryDensity make(const LoadedMesh& loaded) const {
        if (spec == "file") {
            if (!loaded.rho)
                throw PreconditionError("--rho file needs a mesh file with a RHO section");
            return {*loaded.rho};
        }
        const auto colon = spec.find(':');
        const std::string kind = spec.substr(0, colon);
        const double arg = colon == std::string::npos ? 1.0 : std::stod(spec.substr(colon + 1));
        if (kind == "constant")
            return BoundaryDensity::constant(loaded.mesh, arg);
        if (kind == "cosine" && colon != std::string::npos)
            return BoundaryDensity::cosine(loaded.mesh, arg);
        throw PreconditionError("unknown density '" + spec + "'");
    }
};

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write '" + path.string() + "'");
    out << text;
}

template <class Fn>
void write_with(const fs::path& path, Fn&& fn) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write '" + path.string() + "'");
    fn(out);
}

Json settings_json(const ClusterTolerance& tol) {
    return Json{{"cluster_rel_tol", tol.rel_tol}, {"cluster_abs_floor", tol.abs_floor}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steklov spectral geometry lab"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "steklov_lab 1.0");

    // mesh
    auto* mesh_cmd = app.add_subcommand("mesh", "generate or load a mesh and report its topology");
    GeometryOptions mesh_geo;
    std::string mesh_out;
    mesh_geo.add(mesh_cmd);
    mesh_cmd->add_option("-o,--output", mesh_out, "write the mesh in SMESH format");

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "Steklov spectrum, clusters and multiplicity bounds");
    GeometryOptions solve_geo;
    DensityOptions solve_rho;
    int solve_count = 20;
    ClusterTolerance solve_tol;
    bool check_bounds_flag = false, traces_flag = false, weyl_flag = false, pairing_flag = false;
    std::string solve_out = "steklov_out";
    solve_geo.add(solve_cmd);
    solve_rho.add(solve_cmd);
    solve_cmd->add_option("--count", solve_count, "number of eigenvalues")->capture_default_str()->check(CLI::PositiveNumber);
    solve_cmd->add_option("--rel-tol", solve_tol.rel_tol, "cluster relative tolerance")->capture_default_str()->check(CLI::PositiveNumber);
    solve_cmd->add_option("--abs-floor", solve_tol.abs_floor, "cluster absolute floor")->capture_default_str()->check(CLI::PositiveNumber);
    solve_cmd->add_flag("--check-bounds", check_bounds_flag, "exit 2 on multiplicity bound violations");
    solve_cmd->add_flag("--traces", traces_flag, "also write boundary traces");
    solve_cmd->add_flag("--weyl", weyl_flag, "write the Weyl residual report (needs count >= 20)");
    solve_cmd->add_flag("--pairing", pairing_flag, "write the disk pairing report");
    solve_cmd->add_option("--out", solve_out, "output directory")->capture_default_str();

    // nodal
    auto* nodal_cmd = app.add_subcommand("nodal", "nodal graph, domains and lemma margins of one eigenfunction");
    GeometryOptions nodal_geo;
    DensityOptions nodal_rho;
    int nodal_index = 1, nodal_count = 0;
    double zero_tol = NodalOptions{}.zero_tol, domain_tol = 0.0, cluster_radius = 0.0;
    std::string nodal_out = "steklov_out";
    nodal_geo.add(nodal_cmd);
    nodal_rho.add(nodal_cmd);
    nodal_cmd->add_option("--index", nodal_index, "eigenfunction index")->capture_default_str()->check(CLI::NonNegativeNumber);
    nodal_cmd->add_option("--count", nodal_count, "eigenpairs to compute (default index + 6)");
    nodal_cmd->add_option("--zero-tol", zero_tol, "graph zero band relative to max|u|")->capture_default_str()->check(CLI::PositiveNumber);
    nodal_cmd->add_option("--domain-tol", domain_tol, "nodal domain zero band relative to max|u| (default 10 h^2)");
    nodal_cmd->add_option("--cluster-radius", cluster_radius, "vertex clustering radius (default 3 mean edge lengths)");
    nodal_cmd->add_option("--out", nodal_out, "output directory")->capture_default_str();

    // robin
    auto* robin_cmd = app.add_subcommand("robin", "Robin/Dirichlet/Neumann spectrum of -Laplace + V");
    GeometryOptions robin_geo;
    std::string bc = "neumann";
    double robin_h = 1.0, potential = 0.0;
    int robin_count = 16;
    std::string robin_out = "steklov_out";
    robin_geo.add(robin_cmd);
    robin_cmd->add_option("--bc", bc, "neumann, dirichlet, robin or file (ROBIN/POT sections)")
        ->capture_default_str()
        ->check(CLI::IsMember({"neumann", "dirichlet", "robin", "file"}));
    robin_cmd->add_option("--robin-coef", robin_h, "Robin coefficient in du/dn + h u = 0")->capture_default_str();
    robin_cmd->add_option("--potential", potential, "constant potential V")->capture_default_str();
    robin_cmd->add_option("--count", robin_count, "number of eigenvalues")->capture_default_str()->check(CLI::PositiveNumber);
    robin_cmd->add_option("--out", robin_out, "output directory")->capture_default_str();

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run an acceptance suite (or all)");
    std::string suite;
    verify_cmd->add_option("suite", suite, "suite name or 'all'")->required();

    // graph-fuzz
    auto* fuzz_cmd = app.add_subcommand("graph-fuzz", "property tests on random rotation systems, or check one file");
    int fuzz_cases = 10000;
    std::uint64_t fuzz_seed = 1;
    bool no_sweep = false;
    std::string rs_file;
    int rs_x = -1, rs_l = -1;
    std::optional<int> rs_chi;
    fuzz_cmd->add_option("--cases", fuzz_cases, "random cases")->capture_default_str()->check(CLI::NonNegativeNumber);
    fuzz_cmd->add_option("--seed", fuzz_seed, "random seed")->capture_default_str();
    fuzz_cmd->add_flag("--no-sweep", no_sweep, "skip the exhaustive sweep");
    fuzz_cmd->add_option("--file", rs_file, "rotation system file to analyze instead");
    fuzz_cmd->add_option("--x", rs_x, "vertex for the Gamma decomposition (with --file)");
    fuzz_cmd->add_option("--l", rs_l, "boundary component count (default: number of marks)");
    fuzz_cmd->add_option("--chi-bar", rs_chi, "reduced Euler characteristic (default: surface Euler characteristic)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_error;
    }

    try {
        if (*mesh_cmd) {
            const auto loaded = mesh_geo.load();
            const auto topo = topology(loaded.mesh);
            Json j{{"vertices", loaded.mesh.vertex_count()},
                   {"triangles", loaded.mesh.triangle_count()},
                   {"edges", loaded.mesh.edge_count()},
                   {"boundary_vertices", loaded.mesh.boundary_vertices().size()},
                   {"max_edge_length", loaded.mesh.max_edge_length()},
                   {"topology", to_json(topo)}};
            std::cout << j.dump(2) << '\n';
            if (!mesh_out.empty())
                save_mesh(mesh_out, loaded.mesh, loaded.rho ? &*loaded.rho : nullptr);
            return exit_ok;
        }

        if (*solve_cmd) {
            const auto loaded = solve_geo.load();
            const auto& mesh = loaded.mesh;
            const auto rho = solve_rho.make(loaded);
            const auto topo = topology(mesh);
            const auto spec = steklov_spectrum(mesh, rho, solve_count);
            const auto clusters = cluster_multiplicities(spec, solve_tol);
            // the top cluster may be truncated by the count
            std::vector<MultiplicityCluster> complete(clusters.begin(), clusters.end() - (clusters.size() > 1 ? 1 : 0));
            const auto bounds = check_bounds(complete, topo, is_disk(topo));
            fs::create_directories(solve_out);
            const fs::path dir(solve_out);
            write_with(dir / "spectrum.csv", [&](std::ostream& o) { write_spectrum_csv(o, spec.eigenvalues, clusters); });
            Json cj{{"settings", settings_json(solve_tol)}, {"clusters", to_json(clusters)}};
            write_file(dir / "clusters.json", cj.dump(2) + "\n");
            Json bj = to_json(bounds);
            bj["settings"] = settings_json(solve_tol);
            write_file(dir / "bounds.json", bj.dump(2) + "\n");
            if (traces_flag)
                write_with(dir / "traces.txt", [&](std::ostream& o) { write_traces(o, spec); });
            if (weyl_flag) {
                const auto w = weyl_residual(spec.eigenvalues, weighted_boundary_length(mesh, rho));
                write_with(dir / "weyl.csv", [&](std::ostream& o) { write_weyl_csv(o, w); });
                write_file(dir / "weyl.json", to_json(w).dump(2) + "\n");
            }
            if (pairing_flag) {
                const auto p = disk_pairing(spec.eigenvalues, clusters, topo);
                write_with(dir / "pairing.csv", [&](std::ostream& o) { write_pairing_csv(o, p); });
            }
            std::cout << "vertices " << mesh.vertex_count() << ", boundary vertices " << mesh.boundary_vertices().size()
                      << ", chi_bar " << topo.reduced_euler << ", l " << topo.boundary_count << '\n';
            for (const auto& c : clusters)
                std::cout << "  k=" << c.first_index << " m=" << c.dim << " sigma=" << fmt_fixed(c.value, 8) << '\n';
            std::cout << "bound violations: " << bounds.violations << " (outputs in " << solve_out << ")\n";
            return check_bounds_flag && !bounds.pass() ? exit_violation : exit_ok;
        }

        if (*nodal_cmd) {
            const auto loaded = nodal_geo.load();
            const auto& mesh = loaded.mesh;
            const int count = nodal_count > 0 ? nodal_count : nodal_index + 6;
            if (nodal_index >= count)
                throw PreconditionError("index " + std::to_string(nodal_index) + " is beyond the " + std::to_string(count) +
                                        " computed eigenpairs");
            const auto spec = steklov_spectrum(mesh, nodal_rho.make(loaded), count);
            const auto topo = topology(mesh);
            const auto clusters = cluster_multiplicities(spec);
            NodalOptions opt;
            opt.zero_tol = zero_tol;
            const double dtol = domain_tol > 0.0 ? domain_tol : fem_zero_tol(mesh);
            opt.cluster_radius = cluster_radius > 0.0 ? cluster_radius : default_cluster_radius(mesh);
            const Eigen::VectorXd u = spec.extensions.col(nodal_index);
            const auto graph = extract_nodal_graph(mesh, u, opt);
            const auto reduced = reduce_graph(graph, mesh);
            std::vector<int> orders;
            for (const auto& v : graph.interior_vertices)
                orders.push_back(v.order());
            const auto lemma = lemma_bounds_check(reduced, topo, orders);
            // Courant over every complete cluster, one task per cluster
            std::vector<MultiplicityCluster> complete(clusters.begin(), clusters.end() - (clusters.size() > 1 ? 1 : 0));
            std::vector<CourantReport> parts(complete.size());
            parallel_for(static_cast<int>(complete.size()), [&](int c) {
                parts[static_cast<std::size_t>(c)] = courant_check(mesh, spec, {complete[static_cast<std::size_t>(c)]}, dtol);
            });
            CourantReport courant;
            for (const auto& p : parts) {
                courant.entries.insert(courant.entries.end(), p.entries.begin(), p.entries.end());
                courant.violations += p.violations;
            }
            fs::create_directories(nodal_out);
            const fs::path dir(nodal_out);
            write_with(dir / "nodal_graph.txt", [&](std::ostream& o) { write_nodal_graph(o, graph); });
            write_with(dir / "nodal.svg", [&](std::ostream& o) { write_nodal_svg(o, mesh, graph); });
            Json j{{"index", nodal_index},
                   {"eigenvalue", spec.eigenvalues[nodal_index]},
                   {"settings", {{"zero_tol", opt.zero_tol}, {"domain_tol", dtol}, {"cluster_radius", opt.cluster_radius}}},
                   {"interior_vertices", graph.interior_vertices.size()},
                   {"boundary_endpoints", graph.boundary_endpoints.size()},
                   {"arcs", graph.arcs.size()},
                   {"loops", graph.loop_count()},
                   {"closed_curves", graph.cycles.size()},
                   {"issues", graph.issues()},
                   {"reduced", to_json(reduced)},
                   {"lemma", to_json(lemma)},
                   {"courant", to_json(courant)}};
            write_file(dir / "nodal_report.json", j.dump(2) + "\n");
            std::cout << "eigenfunction " << nodal_index << " (sigma = " << fmt_fixed(spec.eigenvalues[nodal_index], 8)
                      << "): " << reduced.f << " nodal domains, " << graph.interior_vertices.size() << " interior vertices, "
                      << graph.arcs.size() << " arcs, " << graph.boundary_endpoints.size() << " boundary endpoints\n"
                      << "Courant violations: " << courant.violations << ", lemma margins "
                      << (lemma.pass ? "non-negative" : "NEGATIVE") << '\n';
            return courant.pass() && lemma.pass ? exit_ok : exit_violation;
        }

        if (*robin_cmd) {
            const auto loaded = robin_geo.load();
            const auto& mesh = loaded.mesh;
            RobinData data = bc == "dirichlet" ? RobinData::dirichlet(mesh, potential)
                             : bc == "robin"   ? RobinData::robin(mesh, robin_h, potential)
                             : bc == "file"    ? RobinData::from_file(loaded)
                                               : RobinData::neumann(mesh, potential);
            const auto spec = robin_spectrum(mesh, data, robin_count);
            const auto topo = topology(mesh);
            const auto clusters = cluster_multiplicities(spec.eigenvalues);
            std::vector<MultiplicityCluster> complete(clusters.begin(), clusters.end() - (clusters.size() > 1 ? 1 : 0));
            const auto bound = check_bound_in11(complete, topo);
            const auto courant = courant_check(mesh, spec.eigenvectors, complete, fem_zero_tol(mesh));
            fs::create_directories(robin_out);
            const fs::path dir(robin_out);
            write_with(dir / "robin_spectrum.csv", [&](std::ostream& o) { write_spectrum_csv(o, spec.eigenvalues, clusters); });
            write_file(dir / "robin_bounds.json", to_json(bound).dump(2) + "\n");
            write_file(dir / "robin_courant.json", to_json(courant).dump(2) + "\n");
            for (int j = 0; j < spec.size(); ++j)
                std::cout << "  lambda_" << j << " = " << fmt_fixed(spec.eigenvalues[j], 8) << '\n';
            std::cout << "bound violations: " << bound.violations << ", Courant violations: " << courant.violations << '\n';
            return bound.pass() && courant.pass() ? exit_ok : exit_violation;
        }

        if (*verify_cmd) {
            const auto results = run_verify(suite);
            bool all = true;
            for (const auto& r : results) {
                std::cout << format_result(r) << '\n';
                all = all && r.pass;
            }
            return all ? exit_ok : exit_violation;
        }

        if (*fuzz_cmd) {
            if (!rs_file.empty()) {
                std::ifstream in(rs_file);
                if (!in)
                    throw ParseError("cannot open '" + rs_file + "'", 0);
                const auto rs = read_rotation_system(in);
                std::vector<int> degrees;
                for (int v = 0; v < rs.vertex_count(); ++v)
                    degrees.push_back(rs.degree(v));
                Json j{{"vertices", rs.vertex_count()},
                       {"edges", rs.edge_count()},
                       {"faces", face_count(rs)},
                       {"surface_euler", rs.surface_euler()},
                       {"euler_defect", euler_defect(rs)},
                       {"degree_sum_ok", degree_sum_check(rs)},
                       {"degrees", degrees},
                       {"marks", rs.marked_vertices()}};
                bool violation = false;
                if (rs_x >= 0) {
                    const int l = rs_l >= 0 ? rs_l : static_cast<int>(rs.marked_vertices().size());
                    const auto lr = lemma_l22_check(rs, rs_x, l, rs_chi.value_or(rs.surface_euler()));
                    j["lemma"] = {{"precondition_met", lr.precondition_met}, {"rejection", lr.rejection},
                                  {"deg_gamma1", lr.deg1},                   {"bound", lr.bound},
                                  {"faces_gamma1", lr.f1},                   {"pass", lr.pass}};
                    violation = lr.violation();
                }
                std::cout << j.dump(2) << '\n';
                return violation ? exit_violation : exit_ok;
            }
            const auto s = graph_fuzz(fuzz_cases, fuzz_seed, !no_sweep);
            Json j{{"cases", s.cases},
                   {"seed", fuzz_seed},
                   {"degree_sum_failures", s.degree_sum_failures},
                   {"negative_defects", s.negative_defects},
                   {"full_defect_nonzero", s.full_defect_nonzero},
                   {"face_count_mismatches", s.face_count_mismatches},
                   {"subdivision_failures", s.subdivision_failures},
                   {"non_tree_gamma2", s.non_tree_gamma2},
                   {"relation_failures", s.relation_failures},
                   {"lemma_checked", s.lemma_checked},
                   {"lemma_violations", s.lemma_violations},
                   {"sweep_cases", s.sweep_cases},
                   {"sweep_mismatches", s.sweep_mismatches},
                   {"sweep_lemma_checked", s.sweep_lemma_checked},
                   {"sweep_lemma_violations", s.sweep_lemma_violations}};
            std::cout << j.dump(2) << '\n';
            const bool ok = s.degree_sum_failures == 0 && s.negative_defects == 0 && s.full_defect_nonzero == 0 &&
                            s.face_count_mismatches == 0 && s.subdivision_failures == 0 && s.non_tree_gamma2 == 0 &&
                            s.relation_failures == 0 && s.lemma_violations == 0 && s.sweep_mismatches == 0 &&
                            s.sweep_lemma_violations == 0;
            return ok ? exit_ok : exit_violation;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_error;
    }
    return exit_ok;
}
