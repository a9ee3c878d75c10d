#include "smeans/metrics.hpp"

#include "parallel.hpp"

#include <limits>
#include <numeric>

namespace smeans {

double mean_ssd(const PointCloud& cloud, const SimplicialComplex& K, const LinearMap& map,
                std::span<const ProjectionResult> assignments)
{
    if (static_cast<Eigen::Index>(assignments.size()) != cloud.size())
        throw DataError("need exactly one assignment per point");
    if (static_cast<std::size_t>(map.vertex_count()) < K.vertex_count())
        throw DataError("map does not cover the complex");
    if (cloud.empty())
        return 0.0;
    double total = 0.0;
    for (Eigen::Index i = 0; i < cloud.size(); ++i)
        total += (cloud.point(i) - assignments[static_cast<std::size_t>(i)].point.evaluate(map))
                     .squaredNorm();
    return total / static_cast<double>(cloud.size());
}

namespace {

void compositions(int parts, int total, std::vector<int>& current,
                  std::vector<std::vector<int>>& out)
{
    if (static_cast<int>(current.size()) == parts - 1) {
        current.push_back(total);
        out.push_back(current);
        current.pop_back();
        return;
    }
    for (int i = 0; i <= total; ++i) {
        current.push_back(i);
        compositions(parts, total - i, current, out);
        current.pop_back();
    }
}

} // namespace

std::vector<Eigen::VectorXd> barycentric_samples(int vertices, int sample_density)
{
    if (vertices < 1)
        throw std::invalid_argument("simplex needs a vertex");
    if (sample_density < 1)
        throw std::invalid_argument("sample density must be at least 1");

    std::vector<Eigen::VectorXd> out;
    for (int D = 1; D <= sample_density; ++D) {
        std::vector<std::vector<int>> comps;
        std::vector<int> current;
        compositions(vertices, D, current, comps);
        for (const auto& c : comps) {
            // points whose coordinates reduce to a smaller denominator were already emitted
            int g = D;
            for (int x : c)
                g = std::gcd(g, x);
            if (g != 1)
                continue;
            Eigen::VectorXd lambda(vertices);
            for (int j = 0; j < vertices; ++j)
                lambda(j) = static_cast<double>(c[static_cast<std::size_t>(j)]) / D;
            out.push_back(std::move(lambda));
        }
    }
    return out;
}

HausdorffParts hausdorff_parts(const PointCloud& cloud, const SimplicialComplex& K,
                               const LinearMap& map, int sample_density,
                               const NearestOptions& opts, unsigned threads)
{
    if (sample_density < 1)
        throw std::invalid_argument("sample density must be at least 1");
    if (cloud.empty())
        throw DataError("point cloud is empty");

    HausdorffParts parts;
    for (const auto& a : nearest_on_complex(K, map, cloud, opts, nullptr, threads))
        parts.cloud_to_complex = std::max(parts.cloud_to_complex, a.distance);

    std::vector<double> facet_max(K.facet_count(), 0.0);
    detail::parallel_for(K.facet_count(), threads, [&](std::size_t f) {
        const Simplex& facet = K.facet(f);
        double worst = 0.0;
        for (const auto& lambda :
             barycentric_samples(static_cast<int>(facet.size()), sample_density)) {
            const Eigen::VectorXd x = BarycentricPoint{facet, lambda}.evaluate(map);
            const double d = (cloud.points.colwise() - x).colwise().norm().minCoeff();
            worst = std::max(worst, d);
        }
        facet_max[f] = worst;
    });
    for (double d : facet_max)
        parts.complex_to_cloud = std::max(parts.complex_to_cloud, d);
    return parts;
}

double hausdorff(const PointCloud& cloud, const SimplicialComplex& K, const LinearMap& map,
                 int sample_density, const NearestOptions& opts, unsigned threads)
{
    return hausdorff_parts(cloud, K, map, sample_density, opts, threads).value();
}

} // namespace smeans
