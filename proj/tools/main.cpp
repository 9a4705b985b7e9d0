// Command-line front end: synthetic cloud generation, reconstruction runs,
// and contour evaluation.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lsrec/contour.hpp"
#include "lsrec/metrics.hpp"
#include "lsrec/solver.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace lsrec;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitDivergence = 3;
constexpr int kExitEvaluation = 4;

std::array<double, 3> parse_center(const std::string& s) {
    std::array<double, 3> c{0, 0, 0};
    std::string t = s;
    for (auto& ch : t)
        if (ch == ',') ch = ' ';
    std::istringstream is(t);
    if (!(is >> c[0] >> c[1])) throw std::invalid_argument("bad --center: " + s);
    is >> c[2];
    return c;
}

// Gap syntax: explicit normalized intervals "0.1-0.2,0.6-0.7", or the sugar
// "corners:W" = a gap of half-width W (in length units) around every corner
// of the polygonal shapes.
void parse_gaps(const std::string& s, ShapeRecipe& r) {
    auto add_interval = [&](double lo, double hi) {
        if (lo < 0) {
            r.gaps.push_back({lo + 1.0, 1.0});
            lo = 0;
        }
        if (hi > 1) {
            r.gaps.push_back({0.0, hi - 1.0});
            hi = 1;
        }
        r.gaps.push_back({lo, hi});
    };
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ',')) {
        if (item.empty()) continue;
        if (item.rfind("corners:", 0) == 0) {
            double w = std::stod(item.substr(8));
            int corners;
            double perimeter;
            if (r.shape == "square") {
                corners = 4;
                perimeter = 4 * r.edge;
            } else if (r.shape == "pentagon" || r.shape == "hexagon") {
                corners = r.shape == "pentagon" ? 5 : 6;
                perimeter = corners * 2.0 * r.radius * std::sin(std::acos(-1.0) / corners);
            } else {
                throw std::invalid_argument("corners: gaps need a polygonal shape");
            }
            double half = w / perimeter;
            for (int c = 0; c < corners; ++c)
                add_interval(double(c) / corners - half, double(c) / corners + half);
        } else {
            auto dash = item.find('-', 1);
            if (dash == std::string::npos)
                throw std::invalid_argument("bad gap interval: " + item);
            add_interval(std::stod(item.substr(0, dash)), std::stod(item.substr(dash + 1)));
        }
    }
}

void apply_config_file(SolverConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string key, eq, value;
        std::istringstream ls(line);
        if (!(ls >> key)) continue;
        auto eqpos = line.find('=');
        if (eqpos == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key = value");
        if (key.find('=') != std::string::npos) key = key.substr(0, key.find('='));
        std::istringstream vs(line.substr(eqpos + 1));
        if (!(vs >> value))
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": missing value");
        cfg.set(key, value);
    }
}

void write_resolved_config(const SolverConfig& c, const std::string& path) {
    std::ofstream out(path);
    out.precision(17);
    out << "eta0 = " << c.eta0 << "\neta1 = " << c.eta1 << "\neta2 = " << c.eta2
        << "\ndt = " << c.dt << "\ngamma1 = " << c.gamma1 << "\ngamma2 = " << c.gamma2
        << "\nalpha1 = " << c.alpha1 << "\nalpha2 = " << c.alpha2 << "\nbeta1 = " << c.beta1
        << "\nbeta2 = " << c.beta2 << "\neps = " << c.eps << "\nlambda = " << c.lambda
        << "\nc_p = " << c.c_p
        << "\nr_mode = " << (c.r_mode == WeightMode::SqrtF ? "sqrt_f" : "constant")
        << "\nmax_iters = " << c.max_iters << "\nreinit_iters = " << c.reinit_iters
        << "\ntol = " << c.tol << "\npad = " << c.pad << "\nsweeps = " << c.sweeps << '\n';
    for (const auto& st : c.stages) {
        out << "# stage of " << st.iters << " iterations:";
        for (const auto& [k, v] : st.overrides) out << ' ' << k << '=' << v;
        out << '\n';
    }
}

std::vector<std::array<double, 3>> load_obj_vertices(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open mesh file: " + path);
    std::vector<std::array<double, 3>> pts;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag != "v") continue;
        std::array<double, 3> p;
        if (ls >> p[0] >> p[1] >> p[2]) pts.push_back(p);
    }
    return pts;
}

int cmd_generate(const ShapeRecipe& recipe, const std::string& out_path) {
    PointCloud cloud = generate(recipe);
    save_cloud(cloud, out_path);

    json sidecar;
    sidecar["shape"] = recipe.shape;
    sidecar["center"] = {recipe.center[0], recipe.center[1], recipe.center[2]};
    sidecar["radius"] = recipe.radius;
    sidecar["radius2"] = recipe.radius2;
    sidecar["edge"] = recipe.edge;
    sidecar["petals"] = recipe.petals;
    sidecar["petal_amp"] = recipe.petal_amp;
    sidecar["height"] = recipe.height;
    sidecar["count"] = recipe.count;
    sidecar["sigma"] = recipe.sigma;
    sidecar["seed"] = recipe.seed;
    for (auto [lo, hi] : recipe.gaps) sidecar["gaps"].push_back({lo, hi});
    std::ofstream(out_path + ".json") << sidecar.dump(2) << '\n';

    std::cout << "wrote " << cloud.size() << " points to " << out_path << '\n';
    return 0;
}

struct ReconstructArgs {
    std::string input, preset_name, config_path, out_dir, grid_str;
    std::vector<std::string> sets;
    int snapshot_every = 0;
    bool dump_psi = false;
};

int cmd_reconstruct(const ReconstructArgs& a) {
    PointCloud cloud = load_cloud(a.input);

    SolverConfig cfg;
    if (!a.preset_name.empty()) cfg = preset(a.preset_name);
    if (!a.config_path.empty()) apply_config_file(cfg, a.config_path);
    for (const auto& kv : a.sets) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got " + kv);
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    cfg.validate();

    std::vector<int> dims;
    if (!a.grid_str.empty()) {
        std::string t = a.grid_str;
        for (auto& ch : t)
            if (ch == 'x' || ch == 'X' || ch == ',') ch = ' ';
        std::istringstream is(t);
        int v;
        while (is >> v) dims.push_back(v);
        if (int(dims.size()) != cloud.dim)
            throw std::invalid_argument("--grid rank does not match the cloud dimension");
    } else {
        dims.assign(cloud.dim, cloud.dim == 2 ? 100 : 50);
    }
    GridSpec spec(dims);

    fs::create_directories(a.out_dir);
    auto in_dir = [&](const std::string& name) { return (fs::path(a.out_dir) / name).string(); };

    std::function<void(const SolverState&, int)> snap;
    if (a.snapshot_every > 0) {
        snap = [&](const SolverState& st, int iter) {
            if (iter % a.snapshot_every != 0) return;
            Contour c = extract_zero_level(st.psi);
            char name[64];
            std::snprintf(name, sizeof name, "contour_%05d.%s", iter,
                          c.dim == 2 ? "csv" : "obj");
            if (c.dim == 2) save_contour_csv(c, in_dir(name));
            else save_contour_obj(c, in_dir(name));
        };
    }

    auto t0 = std::chrono::steady_clock::now();
    RunResult res = run(cloud, spec, cfg, snap);
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::vector<std::string> artifacts;
    if (res.contour.dim == 2) {
        save_contour_csv(res.contour, in_dir("contour.csv"));
        save_contour_svg(res.contour, in_dir("contour.svg"), spec.nx(), spec.ny());
        artifacts = {"contour.csv", "contour.svg"};
    } else {
        save_contour_obj(res.contour, in_dir("surface.obj"));
        artifacts = {"surface.obj"};
    }

    {
        std::ofstream trace(in_dir("energy.csv"));
        trace.precision(17);
        trace << "iter,dist,curv,normal,total\n";
        for (std::size_t i = 0; i < res.trace.size(); ++i)
            trace << i << ',' << res.trace[i].dist << ',' << res.trace[i].curv << ','
                  << res.trace[i].normal << ',' << res.trace[i].total() << '\n';
        artifacts.push_back("energy.csv");
    }
    if (a.dump_psi) {
        std::ofstream dump(in_dir("psi.txt"));
        dump_field(res.state.psi, dump);
        artifacts.push_back("psi.txt");
    }
    write_resolved_config(cfg, in_dir("config.resolved"));
    artifacts.push_back("config.resolved");

    {
        std::ofstream man(in_dir("manifest"));
        man.precision(17);
        man << "input: " << a.input << '\n';
        man << "config: "
            << (!a.preset_name.empty() ? a.preset_name
                                       : (!a.config_path.empty() ? a.config_path : "defaults"))
            << '\n';
        man << "out: " << a.out_dir << '\n';
        man << "artifacts:";
        for (const auto& f : artifacts) man << ' ' << f;
        man << '\n';
        man << "wall_seconds: " << wall << '\n';
        man << "final_energy: " << res.trace.back().total() << '\n';
        man << "iterations: " << res.iterations << '\n';
    }

    std::cout << "converged after " << res.iterations << " iterations, final energy "
              << res.trace.back().total() << " (" << wall << " s)\n";
    return 0;
}

struct EvaluateArgs {
    std::string contour_path, ref_contour, ref_shape, center_str;
    double radius = 30, radius2 = 15, edge = 60, height = 30;
    int samples = 2000;
};

int cmd_evaluate(const EvaluateArgs& a) {
    std::vector<std::array<double, 3>> got;
    if (a.contour_path.size() > 4 && a.contour_path.substr(a.contour_path.size() - 4) == ".obj")
        got = load_obj_vertices(a.contour_path);
    else
        got = sample_contour(load_contour_csv(a.contour_path));
    if (got.empty()) {
        std::cerr << "error: empty contour: " << a.contour_path << '\n';
        return kExitEvaluation;
    }

    std::vector<std::array<double, 3>> ref;
    if (!a.ref_contour.empty()) {
        if (a.ref_contour.size() > 4 && a.ref_contour.substr(a.ref_contour.size() - 4) == ".obj")
            ref = load_obj_vertices(a.ref_contour);
        else
            ref = sample_contour(load_contour_csv(a.ref_contour));
    } else {
        ShapeRecipe r;
        r.shape = a.ref_shape;
        if (!a.center_str.empty()) r.center = parse_center(a.center_str);
        r.radius = a.radius;
        r.radius2 = a.radius2;
        r.edge = a.edge;
        r.height = a.height;
        ref = sample_shape(r, a.samples);
    }
    if (ref.empty()) {
        std::cerr << "error: empty reference\n";
        return kExitEvaluation;
    }

    PairwiseMetrics m = point_set_metrics(got, ref);
    std::cout << "hausdorff: " << m.hausdorff << '\n';
    std::cout << "chamfer: " << m.chamfer << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Point-cloud curve/surface reconstruction via a regularized level-set flow"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Write a synthetic point cloud");
    ShapeRecipe recipe;
    std::string gen_center = "50,50", gen_gaps, gen_out = "cloud.xyz";
    gen->add_option("--shape", recipe.shape, "circle|ellipse|square|hexagon|pentagon|flower|cylinder|torus|box-rail")->required();
    gen->add_option("--center", gen_center, "comma-separated coordinates");
    gen->add_option("--radius", recipe.radius);
    gen->add_option("--radius2", recipe.radius2, "ellipse minor axis / torus major radius");
    gen->add_option("--edge", recipe.edge, "square edge length");
    gen->add_option("--petals", recipe.petals);
    gen->add_option("--petal-amp", recipe.petal_amp);
    gen->add_option("--height", recipe.height, "cylinder axial extent");
    gen->add_option("--count", recipe.count);
    gen->add_option("--sigma", recipe.sigma, "Gaussian noise level");
    gen->add_option("--seed", recipe.seed);
    gen->add_option("--gaps", gen_gaps, "normalized intervals 'a-b,c-d' or 'corners:W'");
    gen->add_option("--out", gen_out);

    // reconstruct
    auto* rec = app.add_subcommand("reconstruct", "Run the reconstruction on a cloud");
    ReconstructArgs ra;
    rec->add_option("--input", ra.input)->required();
    rec->add_option("--preset", ra.preset_name, "named parameter set (see `presets`)");
    rec->add_option("--config", ra.config_path, "flat key = value file");
    rec->add_option("--set", ra.sets, "override, key=value (repeatable)");
    rec->add_option("--out", ra.out_dir)->required();
    rec->add_option("--grid", ra.grid_str, "e.g. 100x100 or 50x50x50");
    rec->add_option("--snapshot-every", ra.snapshot_every, "contour snapshot period");
    rec->add_flag("--dump-field", ra.dump_psi, "also dump the final level-set field");

    // evaluate
    auto* ev = app.add_subcommand("evaluate", "Distance metrics between a contour and a reference");
    EvaluateArgs ea;
    ev->add_option("--contour", ea.contour_path)->required();
    ev->add_option("--ref-contour", ea.ref_contour, "second contour file");
    ev->add_option("--ref-shape", ea.ref_shape, "analytic reference shape");
    ev->add_option("--center", ea.center_str);
    ev->add_option("--radius", ea.radius);
    ev->add_option("--radius2", ea.radius2);
    ev->add_option("--edge", ea.edge);
    ev->add_option("--height", ea.height);
    ev->add_option("--samples", ea.samples, "reference sampling density");

    auto* pre = app.add_subcommand("presets", "List the named parameter sets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (gen->parsed()) {
            recipe.center = parse_center(gen_center);
            if (!gen_gaps.empty()) parse_gaps(gen_gaps, recipe);
            return cmd_generate(recipe, gen_out);
        }
        if (rec->parsed()) return cmd_reconstruct(ra);
        if (ev->parsed()) return cmd_evaluate(ea);
        if (pre->parsed()) {
            for (const auto& n : preset_names()) std::cout << n << '\n';
            return 0;
        }
    } catch (const SolverDivergence& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDivergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        if (ev->parsed()) return kExitEvaluation;
        return kExitUsage;
    }
    return kExitUsage;
}
