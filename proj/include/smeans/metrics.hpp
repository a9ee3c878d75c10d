#pragma once

#include "smeans/nearest.hpp"

#include <algorithm>
#include <span>

namespace smeans {

/// (1/|S|) sum_y ||y - g(y')||^2, with g(y') evaluated from the assignments and the map.
double mean_ssd(const PointCloud& cloud, const SimplicialComplex& K, const LinearMap& map,
                std::span<const ProjectionResult> assignments);

struct HausdorffParts
{
    double cloud_to_complex = 0.0; ///< exact: max_y dist(y, g(K))
    double complex_to_cloud = 0.0; ///< sampled lower bound: max_x dist(x, S) over facet samples
    double value() const { return std::max(cloud_to_complex, complex_to_cloud); }
};

/// Barycentric samples of a simplex with k+1 vertices: every coordinate vector with
/// entries i_j / D summing to 1 for D = 1..density, each point listed once. The set for
/// a given density contains the set for every smaller one.
std::vector<Eigen::VectorXd> barycentric_samples(int vertices, int sample_density);

HausdorffParts hausdorff_parts(const PointCloud& cloud, const SimplicialComplex& K,
                               const LinearMap& map, int sample_density = 10,
                               const NearestOptions& opts = {}, unsigned threads = 1);

double hausdorff(const PointCloud& cloud, const SimplicialComplex& K, const LinearMap& map,
                 int sample_density = 10, const NearestOptions& opts = {}, unsigned threads = 1);

} // namespace smeans
