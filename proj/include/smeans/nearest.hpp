#pragma once

#include "smeans/complex.hpp"

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace smeans {

/// How points whose affine-hull coordinates have a negative entry are sent to faces.
enum class FaceDescent
{
    /// Each point is sent only to the face opposite its first negative coordinate.
    first_negative,
    /// Each point is sent to the face opposite every negative coordinate, and the
    /// closest candidate wins. This always returns the true nearest point.
    all_negative,
};

struct NearestOptions
{
    double sv_cutoff = 1e-10; ///< relative singular value cutoff for the pseudoinverse
    double eps_lambda = kDefaultEpsLambda;
    FaceDescent descent = FaceDescent::all_negative;
};

/// Shape of the face recursion of one projection call.
struct DescentStats
{
    int max_depth = 0;
    std::vector<std::size_t> nodes_per_depth;

    void merge(const DescentStats& other);
};

inline constexpr std::size_t kNoFacet = std::numeric_limits<std::size_t>::max();

/// Nearest point y' of the mapped complex to a data point.
struct ProjectionResult
{
    BarycentricPoint point; ///< y' in its smallest containing simplex
    Eigen::VectorXd image;  ///< g(y')
    double distance = 0.0;  ///< ||y - g(y')||
    std::size_t facet = kNoFacet; ///< facet through which y' was found
};

/// Moore-Penrose pseudoinverse through the SVD. Singular values below
/// sv_cutoff * (largest singular value) are treated as zero.
Eigen::MatrixXd pseudoinverse(const Eigen::MatrixXd& M, double sv_cutoff = 1e-10);

/// Raw batch projection onto one simplex. lambda is (k+1) x r with rows aligned to the
/// simplex vertex list (zeros on dropped vertices); distance is the Euclidean distance
/// from each point to its projection.
struct SimplexProjection
{
    Eigen::MatrixXd lambda;
    Eigen::VectorXd distance;
};

/// Projects the columns `columns` of `points` onto map(simplex). Result column j
/// corresponds to points.col(columns[j]).
SimplexProjection project_onto_simplex(std::span<const VertexId> simplex, const LinearMap& map,
                                       const Eigen::MatrixXd& points,
                                       std::span<const Eigen::Index> columns,
                                       const NearestOptions& opts = {},
                                       DescentStats* stats = nullptr);

/// Nearest points on map(sigma) for a whole batch, reduced to their smallest simplices.
std::vector<ProjectionResult> nearest_on_simplex(const Simplex& sigma, const LinearMap& map,
                                                 const PointCloud& batch,
                                                 const NearestOptions& opts = {},
                                                 DescentStats* stats = nullptr);

/// Nearest point to y over a list of candidate simplices; `facet` of the result is the
/// position of the winning candidate. Ties within 1e-12 go to the earlier candidate.
ProjectionResult nearest_on_simplices(std::span<const Simplex> candidates, const LinearMap& map,
                                      const Eigen::VectorXd& y, const NearestOptions& opts = {});

/// Per-point candidate facet lists for restricted search.
using FacetRestriction = std::vector<std::vector<std::size_t>>;

/// Nearest point on map(K) for every point of the batch, searching all facets or the
/// per-point `restrict` lists. Ties within 1e-12 go to the lowest facet index. The result
/// does not depend on `threads` (0 means hardware concurrency).
std::vector<ProjectionResult> nearest_on_complex(const SimplicialComplex& K, const LinearMap& map,
                                                 const PointCloud& batch,
                                                 const NearestOptions& opts = {},
                                                 const FacetRestriction* restrict = nullptr,
                                                 unsigned threads = 1);

} // namespace smeans
