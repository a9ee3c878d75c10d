#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace smeans {

using VertexId = std::size_t;

/// Raised for malformed inputs: bad files, inconsistent sizes, invalid indices.
class DataError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a computation produces non-finite values.
class NumericalError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Ordered point set in R^m. Points are stored as the columns of an m x r matrix,
/// so index i always refers to column i.
struct PointCloud
{
    Eigen::MatrixXd points;

    PointCloud() = default;
    explicit PointCloud(Eigen::MatrixXd pts) : points(std::move(pts)) {}

    Eigen::Index dim() const { return points.rows(); }
    Eigen::Index size() const { return points.cols(); }
    auto point(Eigen::Index i) const { return points.col(i); }
    bool empty() const { return points.cols() == 0; }
};

/// A map from the vertices of a complex into R^m, extended linearly over each simplex.
/// Column j is the image of vertex j.
struct LinearMap
{
    Eigen::MatrixXd positions;

    LinearMap() = default;
    explicit LinearMap(Eigen::MatrixXd pos) : positions(std::move(pos)) {}

    Eigen::Index ambient_dim() const { return positions.rows(); }
    Eigen::Index vertex_count() const { return positions.cols(); }
    auto position(VertexId v) const { return positions.col(static_cast<Eigen::Index>(v)); }
    bool all_finite() const { return positions.allFinite(); }
};

} // namespace smeans
