#include "smeans/fitting.hpp"

#include <algorithm>
#include <cmath>

namespace smeans {

Eigen::VectorXd vertex_update(const Eigen::VectorXd& current, std::span<const Pull> pulls,
                              const PointCloud& cloud, double learning_rate)
{
    if (pulls.empty())
        return current;

    const double denom = 1.0 + learning_rate;
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(current.size());
    for (const Pull& p : pulls) {
        const double keep = (1.0 - p.lambda) / denom;
        const double move = (p.lambda + learning_rate) / denom;
        sum += keep * current + move * cloud.point(p.point);
    }
    return sum / static_cast<double>(pulls.size());
}

Neighborhoods build_neighborhoods(const SimplicialComplex& K,
                                  std::span<const ProjectionResult> assignments,
                                  NeighborhoodMode mode)
{
    Neighborhoods nb(K.vertex_count());
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        const ProjectionResult& a = assignments[i];
        const auto point = static_cast<Eigen::Index>(i);
        const Simplex& sigma = a.point.simplex;

        if (mode == NeighborhoodMode::interior) {
            for (std::size_t j = 0; j < sigma.size(); ++j)
                nb[sigma[j]].push_back({a.point.lambda(static_cast<Eigen::Index>(j)), point});
            continue;
        }

        if (a.facet >= K.facet_count())
            throw std::invalid_argument("closed neighborhoods need the facet of every assignment");
        for (VertexId v : K.facet(a.facet).vertices()) {
            const std::size_t pos = sigma.position_of(v);
            const double lambda =
                pos < sigma.size() ? a.point.lambda(static_cast<Eigen::Index>(pos)) : 0.0;
            nb[v].push_back({lambda, point});
        }
    }
    return nb;
}

double mean_squared_distance(std::span<const ProjectionResult> assignments)
{
    if (assignments.empty())
        return 0.0;
    double total = 0.0;
    for (const auto& a : assignments)
        total += a.distance * a.distance;
    return total / static_cast<double>(assignments.size());
}

namespace {

double bounding_diagonal(const LinearMap& f0, const PointCloud& cloud)
{
    Eigen::VectorXd lo = cloud.points.rowwise().minCoeff();
    Eigen::VectorXd hi = cloud.points.rowwise().maxCoeff();
    if (f0.vertex_count() > 0) {
        lo = lo.cwiseMin(f0.positions.rowwise().minCoeff());
        hi = hi.cwiseMax(f0.positions.rowwise().maxCoeff());
    }
    return (hi - lo).norm();
}

FacetRestriction adjacent_restriction(const SimplicialComplex& K,
                                      std::span<const ProjectionResult> previous)
{
    FacetRestriction out;
    out.reserve(previous.size());
    for (const auto& a : previous)
        out.push_back(K.adjacent_facets(a.point.simplex));
    return out;
}

} // namespace

FitResult fit(const SimplicialComplex& K, const LinearMap& f0, const PointCloud& cloud,
              const FitConfig& cfg)
{
    if (static_cast<std::size_t>(f0.vertex_count()) != K.vertex_count())
        throw DataError("initial map has " + std::to_string(f0.vertex_count()) +
                        " positions but the complex has " + std::to_string(K.vertex_count()) +
                        " vertices");
    if (cloud.empty())
        throw DataError("point cloud is empty");
    if (cloud.dim() != f0.ambient_dim())
        throw DataError("point cloud dimension does not match the initial map");
    if (!(cfg.learning_rate >= 0.0))
        throw std::invalid_argument("learning rate must be nonnegative");
    if (cfg.max_iters < 1)
        throw std::invalid_argument("max_iters must be at least 1");
    if (!f0.all_finite() || !cloud.points.allFinite())
        throw NumericalError("non-finite input coordinates");

    FitResult result;
    if (cfg.stop_tol) {
        if (!(*cfg.stop_tol > 0.0))
            throw std::invalid_argument("stop tolerance must be positive");
        result.stop_tol = *cfg.stop_tol;
    } else {
        result.stop_tol = std::max(1e-6 * bounding_diagonal(f0, cloud), 1e-300);
    }
    if (cfg.mode == NeighborhoodMode::closed && cfg.learning_rate == 0.0)
        result.warnings.emplace_back(
            "closed neighborhoods with learning rate 0 leave vertices with all-zero weights fixed");

    LinearMap map = f0;
    std::vector<ProjectionResult> assignments;
    bool converged = false;

    for (int iter = 0;; ++iter) {
        const bool last = converged || iter == cfg.max_iters;
        const bool restricted = cfg.adjacent_facet_accel && !last && !assignments.empty() &&
                                iter > cfg.accel_warmup_iters &&
                                (cfg.accel_resync_every <= 0 || iter % cfg.accel_resync_every != 0);
        if (restricted) {
            const FacetRestriction restriction = adjacent_restriction(K, assignments);
            assignments = nearest_on_complex(K, map, cloud, cfg.nearest, &restriction, cfg.threads);
        } else {
            assignments = nearest_on_complex(K, map, cloud, cfg.nearest, nullptr, cfg.threads);
        }

        const double ssd = mean_squared_distance(assignments);
        result.ssd_trace.push_back(ssd);
        if (cfg.observer)
            cfg.observer(IterationInfo{iter, map, ssd});
        if (last)
            break;

        const Neighborhoods nb = build_neighborhoods(K, assignments, cfg.mode);
        Eigen::MatrixXd next(map.positions.rows(), map.positions.cols());
        double displacement = 0.0;
        for (Eigen::Index j = 0; j < map.vertex_count(); ++j) {
            next.col(j) = vertex_update(map.positions.col(j), nb[static_cast<std::size_t>(j)],
                                        cloud, cfg.learning_rate);
            displacement = std::max(displacement, (next.col(j) - map.positions.col(j)).norm());
        }
        if (!next.allFinite())
            throw NumericalError("vertex update produced non-finite positions at iteration " +
                                 std::to_string(iter));

        map.positions = std::move(next);
        result.displacement_trace.push_back(displacement);
        ++result.iterations_run;
        converged = displacement < result.stop_tol;
    }

    result.map = std::move(map);
    result.assignments = std::move(assignments);
    return result;
}

} // namespace smeans
