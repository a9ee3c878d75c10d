#include "smeans/meshgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace smeans {

Mesh line_complex(int segments)
{
    if (segments < 1)
        throw std::invalid_argument("line needs at least one segment");
    std::vector<std::vector<VertexId>> facets;
    Eigen::MatrixXd pos(1, segments + 1);
    for (int i = 0; i <= segments; ++i)
        pos(0, i) = static_cast<double>(i) / segments;
    for (int i = 0; i < segments; ++i)
        facets.push_back({static_cast<VertexId>(i), static_cast<VertexId>(i + 1)});
    return {SimplicialComplex::build(facets), LinearMap(pos)};
}

Mesh grid1d_complex(int p, int q)
{
    if (p < 2 || q < 2)
        throw std::invalid_argument("grid needs at least 2 x 2 vertices");
    auto id = [q](int i, int j) { return static_cast<VertexId>(i * q + j); };
    Eigen::MatrixXd pos(2, p * q);
    std::vector<std::vector<VertexId>> facets;
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < q; ++j) {
            pos(0, static_cast<Eigen::Index>(id(i, j))) = static_cast<double>(i) / (p - 1);
            pos(1, static_cast<Eigen::Index>(id(i, j))) = static_cast<double>(j) / (q - 1);
            if (j + 1 < q)
                facets.push_back({id(i, j), id(i, j + 1)});
            if (i + 1 < p)
                facets.push_back({id(i, j), id(i + 1, j)});
        }
    }
    return {SimplicialComplex::build(facets), LinearMap(pos)};
}

Mesh cycle_complex(int sides, int subdivisions)
{
    if (sides < 3)
        throw std::invalid_argument("polygon needs at least 3 sides");
    if (subdivisions < 1)
        throw std::invalid_argument("each side needs at least one segment");

    std::vector<Eigen::Vector2d> corners;
    if (sides == 4) {
        corners = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    } else {
        for (int k = 0; k < sides; ++k) {
            const double t = 2.0 * std::numbers::pi * k / sides;
            corners.emplace_back(0.5 + 0.5 * std::cos(t), 0.5 + 0.5 * std::sin(t));
        }
    }

    const int n = sides * subdivisions;
    Eigen::MatrixXd pos(2, n);
    std::vector<std::vector<VertexId>> facets;
    for (int k = 0; k < sides; ++k) {
        const Eigen::Vector2d& a = corners[static_cast<std::size_t>(k)];
        const Eigen::Vector2d& b = corners[static_cast<std::size_t>((k + 1) % sides)];
        for (int s = 0; s < subdivisions; ++s) {
            const double t = static_cast<double>(s) / subdivisions;
            pos.col(k * subdivisions + s) = (1.0 - t) * a + t * b;
        }
    }
    for (int i = 0; i < n; ++i)
        facets.push_back({static_cast<VertexId>(i), static_cast<VertexId>((i + 1) % n)});
    return {SimplicialComplex::build(facets), LinearMap(pos)};
}

Mesh freudenthal_mesh(const std::vector<int>& extents)
{
    const auto d = static_cast<int>(extents.size());
    if (d < 1)
        throw std::invalid_argument("mesh needs at least one dimension");
    if (std::any_of(extents.begin(), extents.end(), [](int e) { return e < 1; }))
        throw std::invalid_argument("mesh extents must be at least 1");

    std::vector<std::size_t> stride(static_cast<std::size_t>(d), 1);
    for (int k = 1; k < d; ++k)
        stride[static_cast<std::size_t>(k)] =
            stride[static_cast<std::size_t>(k - 1)] * static_cast<std::size_t>(extents[static_cast<std::size_t>(k - 1)] + 1);
    const std::size_t nverts =
        stride.back() * static_cast<std::size_t>(extents.back() + 1);

    Eigen::MatrixXd pos(d, static_cast<Eigen::Index>(nverts));
    for (std::size_t v = 0; v < nverts; ++v) {
        std::size_t rest = v;
        for (int k = 0; k < d; ++k) {
            const auto ext = static_cast<std::size_t>(extents[static_cast<std::size_t>(k)]);
            pos(k, static_cast<Eigen::Index>(v)) = static_cast<double>(rest % (ext + 1)) / static_cast<double>(ext);
            rest /= ext + 1;
        }
    }

    std::vector<Simplex> facets;
    std::vector<int> cell(static_cast<std::size_t>(d), 0);
    std::vector<int> axes(static_cast<std::size_t>(d));
    for (;;) {
        std::size_t base = 0;
        for (int k = 0; k < d; ++k)
            base += static_cast<std::size_t>(cell[static_cast<std::size_t>(k)]) * stride[static_cast<std::size_t>(k)];

        // One simplex per monotone lattice path from the cell's low corner to its high
        // corner; neighbouring cells induce the same triangulation on shared faces.
        std::iota(axes.begin(), axes.end(), 0);
        do {
            std::vector<VertexId> verts{base};
            std::size_t v = base;
            for (int axis : axes) {
                v += stride[static_cast<std::size_t>(axis)];
                verts.push_back(v);
            }
            facets.emplace_back(std::move(verts));
        } while (std::next_permutation(axes.begin(), axes.end()));

        int k = 0;
        while (k < d && ++cell[static_cast<std::size_t>(k)] == extents[static_cast<std::size_t>(k)]) {
            cell[static_cast<std::size_t>(k)] = 0;
            ++k;
        }
        if (k == d)
            break;
    }
    return {SimplicialComplex::build(facets, nverts), LinearMap(pos)};
}

SubComplex boundary_complex(const SimplicialComplex& K)
{
    return compact_subcomplex(boundary_simplices(K));
}

Mesh boundary_complex(const Mesh& mesh)
{
    SubComplex sub = boundary_complex(mesh.complex);
    Eigen::MatrixXd pos(mesh.map.ambient_dim(), static_cast<Eigen::Index>(sub.vertex_map.size()));
    for (std::size_t i = 0; i < sub.vertex_map.size(); ++i)
        pos.col(static_cast<Eigen::Index>(i)) = mesh.map.position(sub.vertex_map[i]);
    return {std::move(sub.complex), LinearMap(pos)};
}

Mesh disjoint_union(const std::vector<Mesh>& parts)
{
    if (parts.empty())
        throw std::invalid_argument("disjoint union of nothing");
    const Eigen::Index m = parts.front().map.ambient_dim();
    Eigen::Index total = 0;
    for (const auto& p : parts) {
        if (p.map.ambient_dim() != m)
            throw DataError("disjoint union parts live in different dimensions");
        if (p.complex.facet_count() == 0)
            throw std::invalid_argument("disjoint union part is empty");
        if (static_cast<std::size_t>(p.map.vertex_count()) != p.complex.vertex_count())
            throw DataError("mesh map does not match its complex");
        total += p.map.vertex_count();
    }

    Eigen::MatrixXd pos(m, total);
    std::vector<Simplex> facets;
    VertexId offset = 0;
    for (const auto& p : parts) {
        pos.middleCols(static_cast<Eigen::Index>(offset), p.map.vertex_count()) = p.map.positions;
        for (const auto& f : p.complex.facets()) {
            std::vector<VertexId> verts(f.vertices().begin(), f.vertices().end());
            for (auto& v : verts)
                v += offset;
            facets.emplace_back(std::move(verts));
        }
        offset += static_cast<VertexId>(p.map.vertex_count());
    }
    return {SimplicialComplex::build(facets, static_cast<std::size_t>(total)), LinearMap(pos)};
}

LinearMap place(const LinearMap& canonical, const Placement& placement)
{
    const auto d = static_cast<int>(canonical.ambient_dim());
    const int m = placement.ambient_dim < 0 ? d : placement.ambient_dim;

    std::vector<int> axes = placement.axes;
    if (axes.empty()) {
        axes.resize(static_cast<std::size_t>(d));
        std::iota(axes.begin(), axes.end(), 0);
    }
    if (static_cast<int>(axes.size()) != d)
        throw DataError("placement needs one target axis per canonical coordinate");
    for (int a : axes)
        if (a < 0 || a >= m)
            throw DataError("placement axis outside the ambient dimension");

    std::vector<double> scale = placement.scale;
    if (scale.empty())
        scale.assign(static_cast<std::size_t>(d), 1.0);
    else if (scale.size() == 1)
        scale.assign(static_cast<std::size_t>(d), scale.front());
    if (static_cast<int>(scale.size()) != d)
        throw DataError("placement scale needs one entry per canonical coordinate");

    std::vector<double> offset = placement.offset;
    if (offset.empty())
        offset.assign(static_cast<std::size_t>(m), 0.0);
    if (static_cast<int>(offset.size()) != m)
        throw DataError("placement offset needs one entry per ambient coordinate");

    Eigen::MatrixXd out(m, canonical.vertex_count());
    for (Eigen::Index v = 0; v < canonical.vertex_count(); ++v) {
        for (int k = 0; k < m; ++k)
            out(k, v) = offset[static_cast<std::size_t>(k)];
        for (int i = 0; i < d; ++i)
            out(axes[static_cast<std::size_t>(i)], v) += scale[static_cast<std::size_t>(i)] * canonical.positions(i, v);
    }
    return LinearMap(out);
}

Placement fit_to_box(int canonical_dim, const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                     std::vector<int> axes, double margin)
{
    const auto m = static_cast<int>(lo.size());
    if (axes.empty()) {
        axes.resize(static_cast<std::size_t>(canonical_dim));
        std::iota(axes.begin(), axes.end(), 0);
    }
    if (static_cast<int>(axes.size()) != canonical_dim)
        throw DataError("fit_to_box needs one target axis per canonical coordinate");

    Placement p;
    p.ambient_dim = m;
    p.axes = axes;
    p.offset.resize(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k)
        p.offset[static_cast<std::size_t>(k)] = 0.5 * (lo(k) + hi(k));
    for (int a : axes) {
        if (a < 0 || a >= m)
            throw DataError("fit_to_box axis outside the ambient dimension");
        const double extent = hi(a) - lo(a);
        p.scale.push_back(extent * (1.0 + 2.0 * margin));
        p.offset[static_cast<std::size_t>(a)] = lo(a) - margin * extent;
    }
    return p;
}

} // namespace smeans
