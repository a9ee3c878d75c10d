#include "smeans/cli.hpp"

#include "smeans/io.hpp"
#include "smeans/metrics.hpp"
#include "smeans/presets.hpp"
#include "smeans/render.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace smeans {

namespace {

namespace fs = std::filesystem;
using io::Json;

std::string padded(int iteration)
{
    std::ostringstream s;
    s << std::setw(5) << std::setfill('0') << iteration;
    return s.str();
}

FitConfig make_fit_config(double s, NeighborhoodMode mode, int iters, std::optional<double> tol,
                          unsigned threads, bool accel)
{
    FitConfig cfg;
    cfg.learning_rate = s;
    cfg.mode = mode;
    cfg.max_iters = iters;
    cfg.stop_tol = tol;
    cfg.threads = threads;
    cfg.adjacent_facet_accel = accel;
    return cfg;
}

void report_warnings(const FitResult& fit, std::ostream& err)
{
    for (const auto& w : fit.warnings)
        err << "warning: " << w << '\n';
}

void write_trace(const fs::path& path, const FitResult& fit)
{
    std::ostringstream s;
    io::write_trace_csv(s, fit);
    io::write_text_file(path, s.str());
}

struct DemoRunOutput
{
    FitResult fit;
    std::optional<PruneResult> pruned;
};

// The end-to-end pipeline of one preset run, writing everything under `dir`.
DemoRunOutput run_preset(const PresetRun& run, const PointCloud& cloud, const fs::path& dir,
                         unsigned threads, std::ostream& out, std::ostream& err)
{
    const Mesh mesh = mesh_from_json(run.complex, &cloud);
    io::write_json_file(dir / "complex.json", io::complex_to_json(mesh.complex));
    io::write_json_file(dir / "positions.json", io::positions_to_json(mesh.map));

    FitConfig cfg = make_fit_config(run.fit.learning_rate, run.fit.mode, run.fit.iters,
                                    std::nullopt, threads, false);
    RenderOptions ropts;
    ropts.projection = run.projection;
    std::vector<int> saved;
    cfg.observer = [&](const IterationInfo& info) {
        if (std::find(run.fit.snapshots.begin(), run.fit.snapshots.end(), info.iteration) ==
            run.fit.snapshots.end())
            return;
        const std::string stem = "snapshot_" + padded(info.iteration);
        io::write_json_file(dir / (stem + ".json"), io::snapshot_to_json(info.iteration, info.map));
        ropts.title = run.name + ": " + std::to_string(info.iteration) + " iterations";
        io::write_text_file(dir / (stem + ".svg"), render_svg(cloud, mesh.complex, info.map, ropts));
        saved.push_back(info.iteration);
    };

    DemoRunOutput res{fit(mesh.complex, mesh.map, cloud, cfg), std::nullopt};
    report_warnings(res.fit, err);
    io::write_json_file(dir / "fit.json", io::fit_to_json(mesh.complex, cloud, res.fit, cfg));
    write_trace(dir / "trace.csv", res.fit);

    ropts.title = run.name + ": " + std::to_string(res.fit.iterations_run) + " iterations";
    io::write_text_file(dir / "fit.svg", render_svg(cloud, mesh.complex, res.fit.map, ropts));

    const HausdorffParts h = hausdorff_parts(cloud, mesh.complex, res.fit.map, 10, {}, threads);
    const double ssd = mean_ssd(cloud, mesh.complex, res.fit.map, res.fit.assignments);
    io::write_json_file(dir / "metrics.json", io::metrics_to_json(ssd, h, 10));

    out << run.name << ": " << res.fit.iterations_run << " iterations, mean SSD "
        << res.fit.ssd_trace.front() << " -> " << res.fit.ssd_trace.back() << ", hausdorff "
        << h.value() << '\n';

    if (run.prune) {
        PruneConfig pcfg;
        pcfg.alpha = run.prune->alpha;
        pcfg.mode = run.prune->mode;
        pcfg.alpha_decay = run.prune->decay;
        PruneResult pr = prune(res.fit, mesh.complex, pcfg);
        io::write_json_file(dir / "prune.json", io::prune_to_json(pr, pcfg));
        std::ostringstream codes;
        io::write_codes_jsonl(codes, pr, res.fit.map, cloud);
        io::write_text_file(dir / "codes.jsonl", codes.str());

        LinearMap reduced_map(Eigen::MatrixXd(res.fit.map.ambient_dim(),
                                              static_cast<Eigen::Index>(pr.reduced.vertex_map.size())));
        for (std::size_t v = 0; v < pr.reduced.vertex_map.size(); ++v)
            reduced_map.positions.col(static_cast<Eigen::Index>(v)) =
                res.fit.map.position(pr.reduced.vertex_map[v]);
        ropts.title = run.name + ": pruned";
        io::write_text_file(dir / "pruned.svg",
                            render_svg(cloud, pr.reduced.complex, reduced_map, ropts));
        out << run.name << ": pruned to " << pr.reduced.complex.facet_count() << " of "
            << mesh.complex.facet_count() << " facets\n";
        res.pruned = std::move(pr);
    }
    return res;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Fit linearly mapped simplicial complexes to point clouds"};
    app.require_subcommand(1);
    std::string presets_override;
    app.add_option("--presets", presets_override, "Directory with figure preset files");

    // gen-data
    auto* gen_data = app.add_subcommand("gen-data", "Sample a synthetic point cloud");
    std::string gd_preset, gd_spec, gd_out;
    std::optional<std::uint64_t> gd_seed;
    auto* gd_preset_opt = gen_data->add_option("--preset", gd_preset, "Figure preset, e.g. fig2");
    gen_data->add_option("--spec", gd_spec, "Sample spec JSON file")->excludes(gd_preset_opt);
    gen_data->add_option("--seed", gd_seed, "Override the seed");
    gen_data->add_option("--out", gd_out, "Output CSV")->required();

    // gen-complex
    auto* gen_complex = app.add_subcommand("gen-complex", "Generate a complex and its positions");
    std::string gc_spec, gc_out, gc_positions, gc_cloud;
    gen_complex->add_option("--spec", gc_spec, "Complex spec JSON file")->required();
    gen_complex->add_option("--fit-to", gc_cloud, "Cloud CSV used by fit_to_cloud placements");
    gen_complex->add_option("--out", gc_out, "Output complex JSON")->required();
    gen_complex->add_option("--positions", gc_positions, "Output positions JSON")->required();

    // fit
    auto* fit_cmd = app.add_subcommand("fit", "Fit a complex to a cloud");
    std::string f_cloud, f_complex, f_positions, f_out, f_trace, f_snapdir, f_mode = "interior";
    double f_s = 0.1;
    int f_iters = 200, f_every = 1;
    std::optional<double> f_tol;
    unsigned threads = 0;
    bool f_accel = false;
    fit_cmd->add_option("--cloud", f_cloud)->required();
    fit_cmd->add_option("--complex", f_complex)->required();
    fit_cmd->add_option("--positions", f_positions)->required();
    fit_cmd->add_option("--s", f_s, "Learning rate")->capture_default_str();
    fit_cmd->add_option("--mode", f_mode)->check(CLI::IsMember({"interior", "closed"}));
    fit_cmd->add_option("--iters", f_iters)->capture_default_str();
    fit_cmd->add_option("--tol", f_tol, "Stop when no vertex moves this far");
    fit_cmd->add_option("--out", f_out)->required();
    fit_cmd->add_option("--trace", f_trace);
    auto* snap_opt = fit_cmd->add_option("--snapshots", f_snapdir, "Directory for checkpoints");
    fit_cmd->add_option("--every", f_every)->needs(snap_opt)->check(CLI::PositiveNumber);
    fit_cmd->add_option("--threads", threads, "0 uses every hardware thread");
    fit_cmd->add_flag("--accel", f_accel, "Search only facets adjacent to the previous simplex");

    // prune
    auto* prune_cmd = app.add_subcommand("prune", "Prune a fitted complex");
    std::string p_fit, p_out, p_codes, p_mode = "euclidean";
    double p_alpha = 0.0, p_decay = 1.0;
    prune_cmd->add_option("--fit", p_fit)->required();
    prune_cmd->add_option("--alpha", p_alpha)->required();
    prune_cmd->add_option("--mode", p_mode)->check(CLI::IsMember({"euclidean", "bary-min"}));
    prune_cmd->add_option("--decay", p_decay, "Multiply alpha by this after each step");
    prune_cmd->add_option("--out", p_out)->required();
    prune_cmd->add_option("--codes", p_codes, "Per-point reduced codes (JSON lines)");

    // metrics
    auto* metrics_cmd = app.add_subcommand("metrics", "Fit-quality measures");
    std::string m_cloud, m_fit, m_out;
    int m_density = 10;
    metrics_cmd->add_option("--cloud", m_cloud, "Cloud CSV (defaults to the fit's cloud)");
    metrics_cmd->add_option("--fit", m_fit)->required();
    metrics_cmd->add_option("--out", m_out)->required();
    metrics_cmd->add_option("--density", m_density)->check(CLI::PositiveNumber);
    metrics_cmd->add_option("--threads", threads);

    // render
    auto* render_cmd = app.add_subcommand("render", "Draw a fit as SVG");
    std::string r_fit, r_cloud, r_out, r_proj = "xy";
    render_cmd->add_option("--fit", r_fit)->required();
    render_cmd->add_option("--cloud", r_cloud, "Cloud CSV (defaults to the fit's cloud)");
    render_cmd->add_option("--out", r_out)->required();
    render_cmd->add_option("--proj", r_proj)->check(CLI::IsMember({"xy", "xz", "pca2"}));

    // demo
    auto* demo_cmd = app.add_subcommand("demo", "Run a figure preset end to end");
    std::string d_figure, d_outdir;
    std::optional<std::uint64_t> d_seed;
    demo_cmd->add_option("--figure", d_figure)->required();
    demo_cmd->add_option("--seed", d_seed);
    demo_cmd->add_option("--outdir", d_outdir)->required();
    demo_cmd->add_option("--threads", threads);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }

    try {
        if (gen_data->parsed()) {
            SampleSpec spec;
            if (!gd_spec.empty())
                spec = sample_spec_from_json(io::read_json_file(gd_spec));
            else if (!gd_preset.empty())
                spec = load_preset(gd_preset, preset_dir(presets_override)).data;
            else {
                err << "error: gen-data needs --preset or --spec\n";
                return exit_usage;
            }
            if (gd_seed)
                spec.seed = *gd_seed;
            io::write_cloud_csv(fs::path(gd_out), sample(spec));
            return exit_ok;
        }

        if (gen_complex->parsed()) {
            std::optional<PointCloud> cloud;
            if (!gc_cloud.empty())
                cloud = io::read_cloud_csv(gc_cloud);
            const Mesh mesh =
                mesh_from_json(io::read_json_file(gc_spec), cloud ? &*cloud : nullptr);
            io::write_json_file(gc_out, io::complex_to_json(mesh.complex));
            io::write_json_file(gc_positions, io::positions_to_json(mesh.map));
            return exit_ok;
        }

        if (fit_cmd->parsed()) {
            const PointCloud cloud = io::read_cloud_csv(f_cloud);
            const SimplicialComplex K = io::complex_from_json(io::read_json_file(f_complex));
            const LinearMap f0 = io::positions_from_json(io::read_json_file(f_positions));
            FitConfig cfg = make_fit_config(f_s, parse_neighborhood_mode(f_mode), f_iters, f_tol,
                                            threads, f_accel);
            if (!f_snapdir.empty()) {
                cfg.observer = [&](const IterationInfo& info) {
                    if (info.iteration % f_every == 0)
                        io::write_json_file(fs::path(f_snapdir) /
                                                ("snapshot_" + padded(info.iteration) + ".json"),
                                            io::snapshot_to_json(info.iteration, info.map));
                };
            }
            const FitResult result = fit(K, f0, cloud, cfg);
            report_warnings(result, err);
            io::write_json_file(f_out, io::fit_to_json(K, cloud, result, cfg));
            if (!f_trace.empty())
                write_trace(f_trace, result);
            return exit_ok;
        }

        if (prune_cmd->parsed()) {
            const io::LoadedFit loaded = io::fit_from_json(io::read_json_file(p_fit));
            PruneConfig cfg;
            cfg.alpha = p_alpha;
            cfg.mode = parse_prune_mode(p_mode);
            cfg.alpha_decay = p_decay;
            const PruneResult result = prune(loaded.fit, loaded.complex, cfg);
            io::write_json_file(p_out, io::prune_to_json(result, cfg));
            if (!p_codes.empty()) {
                std::ostringstream codes;
                io::write_codes_jsonl(codes, result, loaded.fit.map, loaded.cloud);
                io::write_text_file(p_codes, codes.str());
            }
            return exit_ok;
        }

        if (metrics_cmd->parsed()) {
            const io::LoadedFit loaded = io::fit_from_json(io::read_json_file(m_fit));
            const PointCloud cloud = m_cloud.empty() ? loaded.cloud : io::read_cloud_csv(m_cloud);
            if (cloud.dim() != loaded.fit.map.ambient_dim())
                throw DataError("cloud dimension does not match the fit");
            const auto assignments =
                nearest_on_complex(loaded.complex, loaded.fit.map, cloud, {}, nullptr, threads);
            const double ssd = mean_ssd(cloud, loaded.complex, loaded.fit.map, assignments);
            const HausdorffParts h =
                hausdorff_parts(cloud, loaded.complex, loaded.fit.map, m_density, {}, threads);
            io::write_json_file(m_out, io::metrics_to_json(ssd, h, m_density));
            return exit_ok;
        }

        if (render_cmd->parsed()) {
            const io::LoadedFit loaded = io::fit_from_json(io::read_json_file(r_fit));
            const PointCloud cloud = r_cloud.empty() ? loaded.cloud : io::read_cloud_csv(r_cloud);
            RenderOptions opts;
            opts.projection = parse_projection(r_proj);
            io::write_text_file(r_out, render_svg(cloud, loaded.complex, loaded.fit.map, opts));
            return exit_ok;
        }

        if (demo_cmd->parsed()) {
            Preset preset = load_preset(d_figure, preset_dir(presets_override));
            if (d_seed)
                preset.data.seed = *d_seed;
            const fs::path root(d_outdir);
            const PointCloud cloud = sample(preset.data);
            io::write_cloud_csv(root / "cloud.csv", cloud);
            for (const auto& run : preset.runs)
                run_preset(run, cloud, root / run.name, threads, out, err);
            return exit_ok;
        }
    } catch (const UnknownPreset& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const DataError& e) {
        err << "data error: " << e.what() << '\n';
        return exit_data;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return exit_numerical;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const nlohmann::json::exception& e) {
        err << "data error: " << e.what() << '\n';
        return exit_data;
    } catch (const fs::filesystem_error& e) {
        err << "data error: " << e.what() << '\n';
        return exit_data;
    }
    return exit_usage;
}

} // namespace smeans
