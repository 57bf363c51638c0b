#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "lozlab/experiments.hpp"
#include "lozlab/localstruct.hpp"
#include "lozlab/svg.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    return json::parse(in);
}

void write_file(const fs::path& p, const std::string& text) {
    fs::create_directories(p.parent_path().empty() ? "." : p.parent_path());
    std::ofstream out(p);
    out << text;
    std::cout << "wrote " << p.string() << "\n";
}

// shape: solve the variational problem on a scenario disk and compare with
// the closed form where available
int cmd_shape(const json& cfg, const fs::path& outdir) {
    std::string scen = cfg.value("scenario", "hexagon-in-ellipse");
    int mesh_L = cfg.value("mesh", 24);
    double radius = cfg.value("radius", 0.2);
    loz::Domain mesh = loz::discretize_domain(loz::disk_region(0, 0, radius), mesh_L);
    std::function<double(double, double)> bnd;
    if (scen == "hexagon-in-ellipse")
        bnd = [](double x, double y) { return loz::hexagon_height(1.0 / 3, 1.0 / 3, 1.0 / 3, x, y); };
    else if (scen == "affine-flat")
        bnd = [&](double x, double y) {
            return cfg.value("s", -1.0 / 3) * x + cfg.value("t", -1.0 / 3) * y;
        };
    else
        throw std::runtime_error("shape: unknown scenario " + scen);
    loz::MacroShape sh = loz::variational_solve(mesh, bnd);
    json out;
    out["config"] = cfg;
    out["min_margin"] = sh.min_margin();
    double maxres = 0, maxerr = 0;
    for (int v : mesh.interior_verts) {
        maxres = std::max(maxres, std::abs(sh.node_residual(v)));
        maxerr = std::max(maxerr, std::abs(sh.phi[v] - bnd(mesh.x_of(v), mesh.y_of(v))));
    }
    out["max_interior_residual"] = maxres;
    out["max_nodal_error_vs_boundary_fn"] = maxerr;
    std::ostringstream csv;
    csv << "# " << cfg.dump() << "\n";
    csv << "x,y,phi\n";
    for (size_t v = 0; v < mesh.verts.size(); ++v)
        csv << mesh.x_of((int)v) << "," << mesh.y_of((int)v) << "," << sh.phi[v] << "\n";
    write_file(outdir / "shape.csv", csv.str());
    write_file(outdir / "shape.json", out.dump(2));
    return 0;
}

int cmd_sample(const json& cfg, const fs::path& outdir) {
    std::string scen = cfg.value("scenario", "hexagon-in-ellipse");
    int L = cfg.value("L", 24);
    double radius = cfg.value("radius", 0.2);
    loz::Scenario sc = loz::make_scenario(scen, L, radius);
    auto [lo, hi] = loz::extremal_heights(sc.dom, sc.boundary);
    loz::Chain chain = loz::make_chain(sc.dom, sc.boundary, hi, cfg.value("seed", 1));
    double t_end = cfg.value("t_end", 10.0 * L);
    int rows = cfg.value("rows", 200);
    write_file(outdir / "trajectory.csv", loz::trajectory_csv(chain, sc, t_end, rows, cfg.dump()));
    write_file(outdir / "final_tiling.json",
               loz::tiling_to_json(sc.dom, sc.boundary, chain.h));
    write_file(outdir / "final_tiling.svg", loz::render_tiling_svg(sc.dom, chain.h));
    return 0;
}

int cmd_mix(const json& cfg, const fs::path& outdir) {
    std::vector<int> sizes = cfg.value("sizes", std::vector<int>{8, 16, 24, 32});
    auto res = loz::run_mixing_scaling(cfg.value("scenario", "hexagon-in-ellipse"), sizes,
                                       cfg.value("radius", 0.28), cfg.value("eps", 0.1),
                                       cfg.value("seeds", 5), cfg.value("horizon_factor", 50.0));
    json out;
    out["config"] = cfg;
    out["exponent"] = res.exponent;
    for (size_t k = 0; k < sizes.size(); ++k) {
        out["hits"][std::to_string(sizes[k])] = res.hit_times[k];
        out["horizon_misses"][std::to_string(sizes[k])] = res.horizon_misses[k];
    }
    write_file(outdir / "mixing.json", out.dump(2));
    std::cout << "fitted exponent: " << res.exponent << "\n";
    return 0;
}

int cmd_kernel(const json& cfg, const fs::path& outdir) {
    int A = cfg.value("A", 4), B = cfg.value("B", 4), C = cfg.value("C", 4);
    loz::HexDomain hex = loz::hexagon_domain(A, B, C);
    std::ostringstream csv;
    csv << "# " << cfg.dump() << "\n";
    csv << "X,Y,exact,pi_infinity\n";
    for (const auto& e : hex.dom.edges) {
        if (e.dir != 2) continue;
        auto lab = loz::edge_label(hex, e);
        auto exact = loz::exact_edge_prob(A, B, C, lab);
        auto [x, y] = loz::label_coords(A, B, C, lab);
        double a = double(A) / (A + C), b = double(B) / (A + C);
        auto wc = loz::critical_point(a, b, x, y);
        csv << lab.X << "," << lab.Y << "," << exact.convert_to<double>() << ","
            << (wc ? std::to_string(loz::pi_infinity(a, b, x, y)) : "frozen") << "\n";
    }
    write_file(outdir / "kernel.csv", csv.str());
    return 0;
}

int cmd_localstruct(const json& cfg, const fs::path& outdir) {
    std::array<double, 4> w = {cfg.value("a", 1.0 / 3), cfg.value("b", 1.0 / 3),
                               cfg.value("x", 0.0), cfg.value("y", 0.0)};
    loz::LocalData z = loz::forward(w);
    json out;
    out["config"] = cfg;
    out["z"] = {z.z1, z.z2, z.z11, z.z12};
    out["z22"] = loz::complete_hessian(z);
    out["det_closed"] = loz::det_closed(w);
    auto winv = loz::inverse(z);
    if (winv)
        out["inverse"] = *winv;
    else
        out["inverse"] = nullptr;
    write_file(outdir / "localstruct.json", out.dump(2));
    return 0;
}

int cmd_render(const json& cfg, const fs::path& outdir) {
    std::string what = cfg.value("what", "tiling");
    if (what == "tiling") {
        if (cfg.contains("tiling_file")) {
            std::ifstream in(cfg["tiling_file"].get<std::string>());
            std::stringstream ss;
            ss << in.rdbuf();
            auto [dom, bnd, h] = loz::tiling_from_json(ss.str());
            write_file(outdir / "tiling.svg", loz::render_tiling_svg(dom, h));
        } else {
            int A = cfg.value("A", 6), B = cfg.value("B", 6), C = cfg.value("C", 6);
            loz::HexDomain hex = loz::hexagon_domain(A, B, C);
            auto [lo, hi] = loz::extremal_heights(hex.dom, hex.boundary);
            loz::Chain chain = loz::make_chain(hex.dom, hex.boundary, hi, cfg.value("seed", 1));
            loz::step_to(chain, cfg.value("t_end", 20.0 * (A + B + C)));
            write_file(outdir / "tiling.svg", loz::render_tiling_svg(hex.dom, chain.h));
        }
        return 0;
    }
    if (what == "shape") {
        double a = cfg.value("a", 1.0 / 3), b = cfg.value("b", 1.0 / 3);
        write_file(outdir / "shape.svg", loz::render_hexagon_shape_svg(a, b, 1 - a - b));
        return 0;
    }
    throw std::runtime_error("render: unknown target " + what);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"lozlab: lozenge tiling dynamics and limit shapes"};
    app.require_subcommand(1);
    std::string config_path, out_dir = "out";

    std::map<std::string, std::function<int(const json&, const fs::path&)>> verbs = {
        {"shape", cmd_shape},   {"sample", cmd_sample},           {"mix", cmd_mix},
        {"kernel", cmd_kernel}, {"localstruct", cmd_localstruct}, {"render", cmd_render}};
    for (auto& [name, fn] : verbs) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON config file")->required();
        sub->add_option("--out", out_dir, "output directory");
    }
    CLI11_PARSE(app, argc, argv);
    try {
        auto* sub = app.get_subcommands().front();
        json cfg = load_config(config_path);
        return verbs.at(sub->get_name())(cfg, out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
