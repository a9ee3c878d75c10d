// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line; the exit code
// is the number of failures. Tolerances are fixed here, not read from anywhere.

#include "smeans/fitting.hpp"
#include "smeans/meshgen.hpp"
#include "smeans/presets.hpp"
#include "smeans/pruning.hpp"
#include "smeans/sampling.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>

using namespace smeans;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome
{
    bool pass = true;
    std::ostringstream detail;

    // Records a failed sub-check; the first few are named in the detail line.
    void require(bool ok, const std::string& what)
    {
        if (ok)
            return;
        if (pass)
            detail << "failed: " << what << "; ";
        pass = false;
    }
};

std::vector<VertexId> iota_ids(std::size_t n)
{
    std::vector<VertexId> v(n);
    std::iota(v.begin(), v.end(), VertexId{0});
    return v;
}

SimplicialComplex vertex_complex(int n)
{
    std::vector<std::vector<VertexId>> facets;
    for (int i = 0; i < n; ++i)
        facets.push_back({static_cast<VertexId>(i)});
    return SimplicialComplex::build(facets);
}

// 1. Projection onto a single simplex against brute force.
Outcome nearest_point_oracle()
{
    constexpr int pairs = 1200;
    constexpr double grid_step = 1e-3;
    constexpr double dist_tol = 2e-3;      // times the simplex diameter
    constexpr double recon_tol = 1e-8;
    constexpr double time_limit = 60.0;

    Outcome o;
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> dim(0, 4), amb(1, 6);
    std::uniform_real_distribution<double> spread(0.2, 3.0);
    double worst_excess = 0.0, worst_recon = 0.0, algo_time = 0.0;
    int grid_checked = 0;

    const auto t0 = Clock::now();
    for (int t = 0; t < pairs; ++t) {
        const int d = dim(rng);
        const int m = amb(rng);
        Eigen::MatrixXd W = oracle::gaussian(rng, m, d + 1);
        if (t % 7 == 0 && d >= 2)
            W.col(d) = 0.5 * (W.col(0) + W.col(1)); // a degenerate simplex now and then
        const Eigen::VectorXd y = oracle::gaussian(rng, m, 1, spread(rng));

        const auto a0 = Clock::now();
        const LinearMap map(W);
        const PointCloud batch{Eigen::MatrixXd(y)};
        const Simplex sigma(iota_ids(static_cast<std::size_t>(d + 1)));
        const ProjectionResult r = nearest_on_simplex(sigma, map, batch).front();
        algo_time += seconds_since(a0);

        const double diam = std::max(oracle::diameter(W), 1e-12);
        const double exact = oracle::nearest_by_faces(W, y).distance;
        worst_excess = std::max(worst_excess, (r.distance - exact) / diam);
        o.require(r.distance <= exact + dist_tol * diam, "exact oracle distance");
        if (d <= 2) {
            const double grid = oracle::nearest_by_grid(W, y, grid_step);
            o.require(r.distance <= grid + dist_tol * diam, "grid oracle distance");
            ++grid_checked;
        }

        Eigen::VectorXd full = Eigen::VectorXd::Zero(d + 1);
        for (std::size_t i = 0; i < r.point.simplex.size(); ++i)
            full(static_cast<Eigen::Index>(r.point.simplex[i])) = r.point.lambda(static_cast<Eigen::Index>(i));
        const double recon = std::max({(W * full - r.image).norm(),
                                       std::abs((y - W * full).norm() - r.distance),
                                       std::abs(full.sum() - 1.0)});
        worst_recon = std::max(worst_recon, recon);
        o.require(recon <= recon_tol, "reconstruction");
        o.require(full.minCoeff() >= 0.0, "non-negative coordinates");
    }
    const double total = seconds_since(t0);
    o.require(total < time_limit, "runtime");
    o.detail << pairs << " pairs (" << grid_checked << " also on the 1e-3 grid), worst excess "
             << worst_excess << " x diameter, worst reconstruction " << worst_recon
             << ", projection time " << algo_time << " s, total " << total << " s";
    return o;
}

// 2. A 0-dimensional complex with s = 0 runs Lloyd's algorithm.
Outcome kmeans_equivalence()
{
    constexpr int instances = 10;
    constexpr int iterations = 20;
    constexpr double tol = 1e-12;

    Outcome o;
    std::mt19937_64 rng(202);
    double worst = 0.0;
    for (int inst = 0; inst < instances; ++inst) {
        const int n = 1 + inst % 10;
        const int m = 1 + inst % 5;
        const int count = 50 + 45 * inst;
        const auto K = vertex_complex(n);
        const PointCloud cloud(oracle::gaussian(rng, m, count));
        const Eigen::MatrixXd f0 = oracle::gaussian(rng, m, n);

        std::vector<Eigen::MatrixXd> maps;
        FitConfig cfg;
        cfg.learning_rate = 0.0;
        cfg.max_iters = iterations;
        cfg.stop_tol = 1e-300;
        cfg.observer = [&](const IterationInfo& info) { maps.push_back(info.map.positions); };
        fit(K, LinearMap(f0), cloud, cfg);

        // a fit that stopped early has reached a Lloyd fixed point; later iterates repeat it
        Eigen::MatrixXd ref = f0;
        for (int l = 0; l <= iterations; ++l) {
            const Eigen::MatrixXd& M = maps[std::min<std::size_t>(static_cast<std::size_t>(l), maps.size() - 1)];
            const double err = (M - ref).cwiseAbs().maxCoeff();
            worst = std::max(worst, err);
            o.require(err <= tol, "instance " + std::to_string(inst) + " iteration " + std::to_string(l));
            ref = oracle::lloyd_step(ref, cloud.points);
        }
    }
    o.detail << instances << " instances x " << iterations << " iterations, worst deviation " << worst;
    return o;
}

// 3. The four-vertex graph: one step keeps the embedding, plain k-means breaks it.
Outcome four_vertex_example()
{
    Outcome o;
    // v1..v4 are ids 0..3; data a, b, c, y are columns 0..3
    const auto K = SimplicialComplex::build({{0, 1}, {1, 2}, {1, 3}, {2, 3}});
    Eigen::MatrixXd f0(2, 4);
    f0 << 0, 0, -2, 2, 2, 1, 0, 0;
    Eigen::MatrixXd S(2, 4);
    S << 0, -3, 3, 0, 3, 0, 0, -1;
    const PointCloud cloud(S);

    FitConfig cfg;
    cfg.learning_rate = 0.0;
    cfg.max_iters = 1;
    const Eigen::MatrixXd g = fit(K, LinearMap(f0), cloud, cfg).map.positions;

    const auto nb = build_neighborhoods(K, nearest_on_complex(K, LinearMap(f0), cloud),
                                        NeighborhoodMode::interior);
    for (int v : {2, 3}) {
        const auto& pulls = nb[static_cast<std::size_t>(v)];
        o.require(!pulls.empty(), "v" + std::to_string(v + 1) + " has pulls");
        Eigen::Vector2d centre = Eigen::Vector2d::Zero();
        for (const Pull& p : pulls) {
            o.require(p.point >= 1, "pulls on v" + std::to_string(v + 1) + " come from b, c, y");
            centre += cloud.point(p.point);
        }
        if (pulls.empty())
            continue;
        centre /= static_cast<double>(pulls.size());
        const Eigen::Vector2d move = g.col(v) - f0.col(v);
        o.require(move.norm() > 0.0 && move.dot(centre - f0.col(v)) > 0.0,
                  "v" + std::to_string(v + 1) + " moves toward its data");
    }

    auto crossings = [](const Eigen::MatrixXd& P) {
        const std::pair<int, int> edges[] = {{0, 1}, {1, 2}, {1, 3}, {2, 3}};
        int n = 0;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = i + 1; j < 4; ++j) {
                const auto [a, b] = edges[i];
                const auto [c, d] = edges[j];
                if (a == c || a == d || b == c || b == d)
                    continue;
                n += oracle::segments_intersect(P.col(a), P.col(b), P.col(c), P.col(d));
            }
        return n;
    };
    const Eigen::MatrixXd km = oracle::lloyd_step(f0, S);
    o.require(crossings(g) == 0, "fitted edges are disjoint");
    o.require(oracle::segments_intersect(km.col(0), km.col(1), km.col(2), km.col(3)),
              "k-means edges {v1,v2} and {v3,v4} cross");
    o.detail << "fitted v3 = (" << g(0, 2) << ", " << g(1, 2) << "), v4 = (" << g(0, 3) << ", "
             << g(1, 3) << "), crossings " << crossings(g) << "; k-means crossings " << crossings(km);
    return o;
}

struct PresetFit
{
    Mesh mesh;
    PointCloud cloud;
    FitResult fit;
    double seconds = 0.0;
};

PresetFit run_preset_fit(const Preset& p, const PresetRun& run)
{
    PresetFit r{{}, sample(p.data), {}, 0.0};
    r.mesh = mesh_from_json(run.complex, &r.cloud);
    FitConfig cfg;
    cfg.learning_rate = run.fit.learning_rate;
    cfg.mode = run.fit.mode;
    cfg.max_iters = run.fit.iters;
    const auto t0 = Clock::now();
    r.fit = fit(r.mesh.complex, r.mesh.map, r.cloud, cfg);
    r.seconds = seconds_since(t0);
    return r;
}

const PresetRun& find_run(const Preset& p, const std::string& name)
{
    for (const auto& run : p.runs)
        if (run.name == name)
            return run;
    throw std::runtime_error("preset has no run " + name);
}

// 4. The 3-sphere boundary fit decreases its mean SSD between successive iterations.
Outcome fig10_monotonicity()
{
    constexpr int iterations = 100;
    constexpr double min_fraction = 0.95;
    constexpr double max_ratio = 0.10;
    constexpr double time_limit = 300.0;

    Outcome o;
    const Preset p = load_preset("fig10", preset_dir());
    const PresetRun& run = find_run(p, "boundary3x3x3x3");
    o.require(run.fit.learning_rate == 0.1 && run.fit.iters == iterations, "preset settings");
    const PresetFit r = run_preset_fit(p, run);

    const auto& tr = r.fit.ssd_trace;
    const std::size_t steps = tr.size() - 1;
    std::size_t down = 0;
    double worst_rise = 0.0;
    for (std::size_t i = 0; i < steps; ++i) {
        if (tr[i + 1] <= tr[i])
            ++down;
        else
            worst_rise = std::max(worst_rise, (tr[i + 1] - tr[i]) / tr[i]);
    }
    const double fraction = static_cast<double>(down) / static_cast<double>(steps);
    const double ratio = tr.back() / tr.front();
    o.require(static_cast<int>(steps) == iterations, "ran all iterations");
    o.require(fraction >= min_fraction, "non-increasing fraction");
    o.require(ratio < max_ratio, "final to initial SSD");
    o.require(r.seconds < time_limit, "runtime");
    o.detail << down << " of " << steps << " steps non-increasing (" << fraction
             << "), largest relative rise " << worst_rise << ", SSD " << tr.front() << " -> "
             << tr.back() << " (ratio " << ratio << "), " << r.seconds << " s";
    return o;
}

// 5. Pruning the fitted Swiss-roll grid removes edges and keeps residuals small.
Outcome fig2_pruning()
{
    constexpr double residual_factor = 2.0;

    Outcome o;
    const Preset p = load_preset("fig2", preset_dir());
    const PresetRun& run = p.runs.front();
    o.require(run.prune.has_value(), "preset prunes");
    const PresetFit r = run_preset_fit(p, run);

    PruneConfig cfg;
    cfg.alpha = run.prune ? run.prune->alpha : 0.0;
    cfg.mode = run.prune ? run.prune->mode : PruneMode::euclidean;
    cfg.alpha_decay = run.prune ? run.prune->decay : 1.0;
    const PruneResult pr = prune(r.fit, r.mesh.complex, cfg);

    const std::size_t before = r.mesh.complex.count_faces(1);
    const std::size_t after = pr.reduced.complex.count_faces(1);
    double residual = 0.0, distance = 0.0;
    for (std::size_t i = 0; i < pr.points.size(); ++i) {
        const ReducedCode code = reduced_representation(pr, r.fit.map, i);
        residual += (r.cloud.point(static_cast<Eigen::Index>(i)) - code.reconstruction).norm();
        distance += r.fit.assignments[i].distance;
    }
    residual /= static_cast<double>(pr.points.size());
    distance /= static_cast<double>(pr.points.size());
    o.require(after < before, "fewer edges");
    o.require(residual <= residual_factor * distance, "mean residual");
    o.detail << "alpha " << cfg.alpha << ", edges " << before << " -> " << after
             << ", mean residual " << residual << " vs mean fit distance " << distance << " ("
             << residual / distance << "x)";
    return o;
}

// 6. Invariants across the modules, on fresh random instances.
Outcome invariant_suite()
{
    Outcome o;
    std::mt19937_64 rng(606);
    int checks = 0;
    auto check = [&](bool ok, const std::string& what) {
        ++checks;
        o.require(ok, what);
    };

    SampleSpec spec;
    spec.kind = SampleKind::surface_fn;
    spec.count = 400;
    spec.seed = 6;
    const PointCloud cloud = sample(spec);
    Mesh mesh = freudenthal_mesh({4, 4});
    mesh.map = place(mesh.map, Placement{3, {0, 1}, {}, {0.0, 0.0, 0.0}});

    FitConfig cfg;
    cfg.max_iters = 12;
    cfg.threads = 1;
    const FitResult f1 = fit(mesh.complex, mesh.map, cloud, cfg);

    // barycentric normalization of every assignment
    for (const auto& a : f1.assignments) {
        check(std::abs(a.point.lambda.sum() - 1.0) <= 1e-12, "coordinates sum to one");
        check(a.point.lambda.minCoeff() > 0.0, "coordinates positive on the smallest simplex");
        check((a.point.evaluate(f1.map) - a.image).norm() <= 1e-12, "image matches coordinates");
    }

    // s = 0 update is the plain average of (1 - lambda) v + lambda y
    const auto res = nearest_on_complex(mesh.complex, mesh.map, cloud);
    const auto nb = build_neighborhoods(mesh.complex, res, NeighborhoodMode::interior);
    for (std::size_t j = 0; j < nb.size(); ++j) {
        const Eigen::VectorXd cur = mesh.map.position(static_cast<VertexId>(j));
        if (nb[j].empty()) {
            check(vertex_update(cur, nb[j], cloud, 0.1) == cur, "empty neighbourhood is stationary");
            continue;
        }
        Eigen::VectorXd plain = Eigen::VectorXd::Zero(3);
        Eigen::MatrixXd hull(3, static_cast<Eigen::Index>(nb[j].size()) + 1);
        hull.col(0) = cur;
        for (std::size_t k = 0; k < nb[j].size(); ++k) {
            const Eigen::VectorXd y = cloud.point(nb[j][k].point);
            plain += (1.0 - nb[j][k].lambda) * cur + nb[j][k].lambda * y;
            hull.col(static_cast<Eigen::Index>(k) + 1) = y;
        }
        plain /= static_cast<double>(nb[j].size());
        check((vertex_update(cur, nb[j], cloud, 0.0) - plain).norm() <= 1e-12, "s = 0 consistency");

        const Eigen::VectorXd next = vertex_update(cur, nb[j], cloud, 0.1);
        if (hull.cols() <= 14)
            check(oracle::nearest_by_faces(hull, next).distance <= 1e-9, "update in convex hull");
        check((next.array() >= hull.rowwise().minCoeff().array() - 1e-12).all() &&
                  (next.array() <= hull.rowwise().maxCoeff().array() + 1e-12).all(),
              "update in bounding box of its pulls");
    }

    // a vertex that no point pulls keeps its position through a whole fit
    {
        Mesh two = disjoint_union({freudenthal_mesh({2, 2}), freudenthal_mesh({1, 1})});
        Eigen::MatrixXd P = Eigen::MatrixXd::Zero(3, two.map.vertex_count());
        P.topRows(2) = two.map.positions;
        for (Eigen::Index v = 9; v < P.cols(); ++v)
            P.col(v) += Eigen::Vector3d(50.0, 50.0, 50.0);
        const FitResult far = fit(two.complex, LinearMap(P), cloud, cfg);
        check(far.map.positions.rightCols(4) == P.rightCols(4), "unreached vertices stay put");
    }

    // pruning never raises a point's dimension
    for (double alpha : {0.0, 0.02, 0.1, 1.0}) {
        PruneConfig pc;
        pc.alpha = alpha;
        const PruneResult pr = prune(f1, mesh.complex, pc);
        for (std::size_t i = 0; i < pr.points.size(); ++i)
            check(pr.points[i].simplex.is_face_of(f1.assignments[i].point.simplex),
                  "pruned simplex is a face");
        check(pr.reduced.complex.dimension() <= mesh.complex.dimension(), "prune dimension");
    }

    // Freudenthal counts and boundary Euler characteristics
    for (const auto& e : std::vector<std::vector<int>>{{5}, {3, 4}, {2, 3, 2}, {3, 3, 3}, {2, 2, 2, 2}}) {
        const Mesh fm = freudenthal_mesh(e);
        std::size_t cells = 1, verts = 1, fact = 1;
        for (std::size_t i = 0; i < e.size(); ++i) {
            cells *= static_cast<std::size_t>(e[i]);
            verts *= static_cast<std::size_t>(e[i] + 1);
            fact *= i + 1;
        }
        check(fm.complex.facet_count() == fact * cells, "Freudenthal facet count");
        check(fm.complex.vertex_count() == verts, "Freudenthal vertex count");
        if (e.size() == 3) {
            const Mesh b = boundary_complex(fm);
            const long V = static_cast<long>(b.complex.count_faces(0));
            const long E = static_cast<long>(b.complex.count_faces(1));
            const long F = static_cast<long>(b.complex.count_faces(2));
            check(V - E + F == 2, "V - E + F = 2 on a cube boundary");
        }
    }

    // thread counts do not change results
    for (unsigned threads : {2u, 3u, 8u}) {
        FitConfig tc = cfg;
        tc.threads = threads;
        const FitResult ft = fit(mesh.complex, mesh.map, cloud, tc);
        check(ft.map.positions == f1.map.positions && ft.ssd_trace == f1.ssd_trace,
              "thread determinism");
    }

    o.detail << checks << " checks";
    return o;
}

// 7. Per-iteration time grows about linearly in |S| on the surface preset.
Outcome complexity_sanity()
{
    constexpr int runs = 5;
    constexpr int iterations = 10;
    constexpr double max_ratio = 2.5;

    Outcome o;
    const Preset p = load_preset("fig4", preset_dir());
    const PresetRun& run = p.runs.front();
    const PointCloud base = sample(p.data);
    const Mesh mesh = mesh_from_json(run.complex, &base);

    auto per_iteration = [&](int count) {
        SampleSpec spec = p.data;
        spec.count = count;
        const PointCloud cloud = sample(spec);
        FitConfig cfg;
        cfg.learning_rate = run.fit.learning_rate;
        cfg.mode = run.fit.mode;
        cfg.max_iters = iterations;
        cfg.stop_tol = 1e-300;
        std::vector<double> times;
        for (int i = 0; i < runs; ++i) {
            const auto t0 = Clock::now();
            const FitResult f = fit(mesh.complex, mesh.map, cloud, cfg);
            times.push_back(seconds_since(t0) / std::max(1, f.iterations_run));
        }
        std::nth_element(times.begin(), times.begin() + runs / 2, times.end());
        return times[runs / 2];
    };
    const double t1 = per_iteration(p.data.count);
    const double t2 = per_iteration(2 * p.data.count);
    const double ratio = t2 / t1;
    o.require(ratio <= max_ratio, "time ratio");
    o.detail << "|S| = " << p.data.count << ": " << t1 * 1e3 << " ms/iteration, |S| = "
             << 2 * p.data.count << ": " << t2 * 1e3 << " ms/iteration, ratio " << ratio;
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"nearest-point oracle", nearest_point_oracle},
        {"k-means equivalence", kmeans_equivalence},
        {"four-vertex embedding example", four_vertex_example},
        {"fig10 monotonicity", fig10_monotonicity},
        {"fig2 pruning", fig2_pruning},
        {"invariant suite", invariant_suite},
        {"complexity sanity", complexity_sanity},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        failures += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << i + 1 << ". " << criteria[i].first
                  << ": " << o.detail.str() << std::endl;
    }
    std::cout << failures << " of " << criteria.size() << " criteria failed" << std::endl;
    return failures;
}
