#pragma once

#include "smeans/nearest.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace smeans {

/// Which data points pull on a vertex.
enum class NeighborhoodMode
{
    /// y pulls v_j when v_j is a vertex of the smallest simplex containing y'.
    interior,
    /// y pulls v_j when v_j is a vertex of the facet through which y' was found.
    closed,
};

/// One data point's pull on a vertex: its barycentric weight and its index in the cloud.
struct Pull
{
    double lambda;
    Eigen::Index point;
};

using Neighborhoods = std::vector<std::vector<Pull>>;

/// Snapshot handed to FitConfig::observer after every projection pass.
struct IterationInfo
{
    int iteration;          ///< index l of the map f^l that was just projected onto
    const LinearMap& map;   ///< f^l
    double mean_ssd;        ///< mean squared distance of the cloud to f^l(K)
};

struct FitConfig
{
    double learning_rate = 0.1;
    NeighborhoodMode mode = NeighborhoodMode::interior;
    /// Stop once every vertex moves less than this. Defaults to 1e-6 times the diagonal
    /// of the bounding box of the cloud and the initial vertex positions.
    std::optional<double> stop_tol;
    int max_iters = 200;

    /// Restrict each point's search to the facets around its previous simplex.
    bool adjacent_facet_accel = false;
    int accel_warmup_iters = 5;
    int accel_resync_every = 25;

    NearestOptions nearest;
    unsigned threads = 1;

    std::function<void(const IterationInfo&)> observer;
};

struct FitResult
{
    LinearMap map;                              ///< the fitted map g
    std::vector<ProjectionResult> assignments;  ///< y', sigma_y, lambda_jy against g
    int iterations_run = 0;                     ///< number of vertex updates applied
    std::vector<double> ssd_trace;              ///< mean SSD of f^0 .. f^L
    std::vector<double> displacement_trace;     ///< max vertex move from f^l to f^{l+1}
    double stop_tol = 0.0;
    std::vector<std::string> warnings;
};

/// Centroid of the blended points ((1-lambda)/(1+s)) current + ((lambda+s)/(1+s)) y over
/// all pulls; returns `current` when there are none.
Eigen::VectorXd vertex_update(const Eigen::VectorXd& current, std::span<const Pull> pulls,
                              const PointCloud& cloud, double learning_rate);

/// Per-vertex pull lists, in point order.
Neighborhoods build_neighborhoods(const SimplicialComplex& K,
                                  std::span<const ProjectionResult> assignments,
                                  NeighborhoodMode mode);

/// Fits f0 to the cloud by repeated projection and simultaneous vertex updates.
FitResult fit(const SimplicialComplex& K, const LinearMap& f0, const PointCloud& cloud,
              const FitConfig& cfg = {});

/// Mean of ||y - g(y')||^2 over a set of assignments.
double mean_squared_distance(std::span<const ProjectionResult> assignments);

} // namespace smeans
