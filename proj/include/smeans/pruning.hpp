#pragma once

#include "smeans/fitting.hpp"

namespace smeans {

enum class PruneMode
{
    euclidean,       ///< accept a step when ||g(z~) - g(z)|| <= alpha
    barycentric_min, ///< accept a step when min coordinate of z in sigma <= alpha
};

struct PruneConfig
{
    double alpha = 0.0;
    PruneMode mode = PruneMode::euclidean;
    /// alpha is multiplied by this after every accepted step (1 keeps it fixed).
    double alpha_decay = 1.0;
    NearestOptions nearest;
};

struct PruneResult
{
    /// K~ with compacted vertex ids; vertex_map sends them back to K.
    SubComplex reduced;
    /// y~ in sigma~_y, in the vertex ids of K.
    std::vector<BarycentricPoint> points;
    /// Accepted descent steps per point.
    std::vector<int> steps;
};

/// Descends every fitted point toward the boundary of its simplex while the acceptance
/// test passes, then assembles K~ from the final simplices.
PruneResult prune(const FitResult& fit, const SimplicialComplex& K, const PruneConfig& cfg);

struct ReducedCode
{
    Simplex simplex;
    Eigen::VectorXd lambda;
    Eigen::VectorXd reconstruction; ///< sum_j lambda_j g(v_j)
};

ReducedCode reduced_representation(const PruneResult& result, const LinearMap& g,
                                   std::size_t index);

} // namespace smeans
