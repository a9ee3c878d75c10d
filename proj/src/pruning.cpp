#include "smeans/pruning.hpp"

namespace smeans {

PruneResult prune(const FitResult& fit, const SimplicialComplex& K, const PruneConfig& cfg)
{
    if (!(cfg.alpha >= 0.0))
        throw std::invalid_argument("alpha must be nonnegative");
    if (!(cfg.alpha_decay > 0.0))
        throw std::invalid_argument("alpha decay must be positive");

    const LinearMap& g = fit.map;
    PruneResult out;
    out.points.reserve(fit.assignments.size());
    out.steps.reserve(fit.assignments.size());

    for (const ProjectionResult& a : fit.assignments) {
        if (!K.contains(a.point.simplex))
            throw DataError("assignment simplex is not part of the complex");

        BarycentricPoint z = a.point;
        Eigen::VectorXd gz = a.image;
        double alpha = cfg.alpha;
        int steps = 0;

        while (!z.simplex.is_vertex()) {
            const std::vector<Simplex> faces = boundary_faces(z.simplex);
            const ProjectionResult next = nearest_on_simplices(faces, g, gz, cfg.nearest);

            const bool accept = cfg.mode == PruneMode::euclidean
                                    ? next.distance <= alpha
                                    : z.lambda.minCoeff() <= alpha;
            if (!accept)
                break;

            z = next.point;
            gz = next.image;
            alpha *= cfg.alpha_decay;
            ++steps;
        }

        out.points.push_back(std::move(z));
        out.steps.push_back(steps);
    }

    std::vector<Simplex> kept;
    kept.reserve(out.points.size());
    for (const auto& p : out.points)
        kept.push_back(p.simplex);
    out.reduced = compact_subcomplex(kept);
    return out;
}

ReducedCode reduced_representation(const PruneResult& result, const LinearMap& g,
                                   std::size_t index)
{
    if (index >= result.points.size())
        throw std::out_of_range("point index out of range");
    const BarycentricPoint& p = result.points[index];
    return {p.simplex, p.lambda, p.evaluate(g)};
}

} // namespace smeans
