#pragma once

#include "smeans/types.hpp"

#include <compare>
#include <span>
#include <vector>

namespace smeans {

/// Default tolerance below which a barycentric coordinate counts as zero.
inline constexpr double kDefaultEpsLambda = 1e-9;

/// A simplex identified by its sorted, duplicate-free vertex set.
class Simplex
{
public:
    Simplex() = default;

    /// Sorts the vertices. Throws DataError on an empty set or duplicate vertices.
    explicit Simplex(std::vector<VertexId> vertices);

    std::span<const VertexId> vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    int dimension() const { return static_cast<int>(vertices_.size()) - 1; }
    bool is_vertex() const { return vertices_.size() == 1; }
    VertexId operator[](std::size_t i) const { return vertices_[i]; }

    bool contains(VertexId v) const;
    /// Position of v in the sorted vertex list, or size() when absent.
    std::size_t position_of(VertexId v) const;
    bool is_face_of(const Simplex& other) const;
    /// The face obtained by dropping the vertex at position i.
    Simplex without(std::size_t i) const;

    auto operator<=>(const Simplex&) const = default;
    bool operator==(const Simplex&) const = default;

private:
    std::vector<VertexId> vertices_;
};

/// Faces of s obtained by removing one vertex each, ordered by the position of the
/// removed vertex. Throws std::invalid_argument if s is a single vertex.
std::vector<Simplex> boundary_faces(const Simplex& s);

/// A point of a simplex given by barycentric coordinates aligned with the simplex's
/// sorted vertex list.
struct BarycentricPoint
{
    Simplex simplex;
    Eigen::VectorXd lambda;

    /// sum_j lambda_j g(v_j)
    Eigen::VectorXd evaluate(const LinearMap& map) const;
};

/// Drops coordinates <= eps_lambda, renormalizes the rest, and re-references the point
/// to the face spanned by the surviving vertices. Coordinates in (-1e-9, 0) are treated
/// as zero; anything more negative, or a point with no surviving coordinate, is rejected
/// with std::invalid_argument.
BarycentricPoint smallest_containing_simplex(const BarycentricPoint& p,
                                             double eps_lambda = kDefaultEpsLambda);

/// Abstract simplicial complex stored by its facets (maximal simplices).
///
/// Immutable once built. Vertex ids run over [0, vertex_count()); a vertex id that
/// appears in no facet is allowed (it is simply unused).
class SimplicialComplex
{
public:
    SimplicialComplex() = default;

    /// Validates and normalizes a facet list: duplicates are merged and any declared
    /// facet that is a face of another is dropped. vertex_count is 1 + max index unless
    /// a larger count is requested.
    static SimplicialComplex build(const std::vector<std::vector<VertexId>>& facets,
                                   std::size_t min_vertex_count = 0);
    static SimplicialComplex build(const std::vector<Simplex>& facets,
                                   std::size_t min_vertex_count = 0);

    std::size_t vertex_count() const { return vertex_count_; }
    std::size_t facet_count() const { return facets_.size(); }
    std::span<const Simplex> facets() const { return facets_; }
    const Simplex& facet(std::size_t i) const { return facets_[i]; }

    /// Highest facet dimension.
    int dimension() const { return dimension_; }
    bool is_pure() const;

    /// Indices of the facets containing v, ascending.
    std::span<const std::size_t> facets_of_vertex(VertexId v) const;

    /// Facets sharing at least one vertex with s, ascending by facet index.
    std::vector<std::size_t> adjacent_facets(const Simplex& s) const;

    /// True when s is a face of some facet.
    bool contains(const Simplex& s) const;

    /// All distinct simplices of the given dimension, in lexicographic order.
    std::vector<Simplex> faces(int dim) const;
    std::size_t count_faces(int dim) const { return faces(dim).size(); }

    /// Euler characteristic sum_k (-1)^k f_k over all faces.
    long euler_characteristic() const;

private:
    std::size_t vertex_count_ = 0;
    int dimension_ = -1;
    std::vector<Simplex> facets_;
    std::vector<std::vector<std::size_t>> incidence_;
};

/// A complex with compacted vertex ids plus the map back to the ids of its parent.
struct SubComplex
{
    SimplicialComplex complex;
    std::vector<VertexId> vertex_map; ///< sub-complex vertex -> parent vertex
};

/// Re-indexes the given simplices (parent vertex ids) onto the vertices they use, in
/// ascending parent order, and builds the complex they generate.
SubComplex compact_subcomplex(const std::vector<Simplex>& simplices);

/// Boundary faces ((d-1)-faces in exactly one d-facet) of a pure complex, with vertex ids
/// kept in the parent numbering. Throws DataError when K is not pure.
std::vector<Simplex> boundary_simplices(const SimplicialComplex& K);

} // namespace smeans
