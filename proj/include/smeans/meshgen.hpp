#pragma once

#include "smeans/complex.hpp"

#include <vector>

namespace smeans {

/// A complex together with a linear map of its vertices.
struct Mesh
{
    SimplicialComplex complex;
    LinearMap map;
};

/// Path with `segments` edges on [0, 1].
Mesh line_complex(int segments);

/// Edge skeleton of a p x q vertex lattice on [0, 1]^2 (axis-aligned edges only).
Mesh grid1d_complex(int p, int q);

/// Polygon outline with `sides` corners and each side split into `subdivisions` edges.
/// A square uses the unit square; other polygons are regular, inscribed in the circle of
/// radius 1/2 around (1/2, 1/2).
Mesh cycle_complex(int sides, int subdivisions);

/// Freudenthal (Kuhn) triangulation of an n_1 x ... x n_d cell lattice on [0, 1]^d. Each
/// cell is split into d! simplices, one per ordering of the coordinate axes.
Mesh freudenthal_mesh(const std::vector<int>& extents);

/// Boundary of a pure mesh, restricted to the vertices on the boundary.
Mesh boundary_complex(const Mesh& mesh);

/// Boundary of a pure complex, compacted onto its vertices.
SubComplex boundary_complex(const SimplicialComplex& K);

/// Disjoint union; all parts must share an ambient dimension.
Mesh disjoint_union(const std::vector<Mesh>& parts);

/// Affine placement of canonical coordinates into R^m: canonical coordinate i goes to
/// output axis axes[i] as offset[axes[i]] + scale[i] * x_i; other axes get their offset.
struct Placement
{
    int ambient_dim = -1;       ///< -1 keeps the canonical dimension
    std::vector<int> axes;      ///< empty means 0, 1, ..., d-1
    std::vector<double> scale;  ///< one per canonical coordinate, or a single value; empty = 1
    std::vector<double> offset; ///< one per output axis; empty = 0
};

LinearMap place(const LinearMap& canonical, const Placement& placement);

/// Placement stretching the canonical box [0,1]^d onto the box [lo, hi] along `axes`,
/// enlarged by `margin` times its extent on every side; other axes sit at the box centre.
Placement fit_to_box(int canonical_dim, const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                     std::vector<int> axes, double margin = 0.0);

} // namespace smeans
