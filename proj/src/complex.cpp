#include "smeans/complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace smeans {

Simplex::Simplex(std::vector<VertexId> vertices) : vertices_(std::move(vertices))
{
    if (vertices_.empty())
        throw DataError("simplex must have at least one vertex");
    std::sort(vertices_.begin(), vertices_.end());
    if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
        throw DataError("simplex has duplicate vertices");
}

bool Simplex::contains(VertexId v) const
{
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

std::size_t Simplex::position_of(VertexId v) const
{
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end() || *it != v)
        return vertices_.size();
    return static_cast<std::size_t>(it - vertices_.begin());
}

bool Simplex::is_face_of(const Simplex& other) const
{
    return std::includes(other.vertices_.begin(), other.vertices_.end(),
                         vertices_.begin(), vertices_.end());
}

Simplex Simplex::without(std::size_t i) const
{
    Simplex face;
    face.vertices_.reserve(vertices_.size() - 1);
    for (std::size_t k = 0; k < vertices_.size(); ++k)
        if (k != i)
            face.vertices_.push_back(vertices_[k]);
    return face;
}

std::vector<Simplex> boundary_faces(const Simplex& s)
{
    if (s.size() < 2)
        throw std::invalid_argument("a vertex has no boundary faces");
    std::vector<Simplex> faces;
    faces.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        faces.push_back(s.without(i));
    return faces;
}

Eigen::VectorXd BarycentricPoint::evaluate(const LinearMap& map) const
{
    Eigen::VectorXd x = Eigen::VectorXd::Zero(map.ambient_dim());
    for (std::size_t j = 0; j < simplex.size(); ++j)
        x += lambda(static_cast<Eigen::Index>(j)) * map.position(simplex[j]);
    return x;
}

BarycentricPoint smallest_containing_simplex(const BarycentricPoint& p, double eps_lambda)
{
    if (static_cast<std::size_t>(p.lambda.size()) != p.simplex.size())
        throw std::invalid_argument("coordinate count does not match simplex size");

    std::vector<VertexId> kept;
    std::vector<double> coords;
    for (std::size_t j = 0; j < p.simplex.size(); ++j) {
        const double c = p.lambda(static_cast<Eigen::Index>(j));
        if (!(c >= -1e-9))
            throw std::invalid_argument("barycentric coordinate is negative");
        if (c > eps_lambda) {
            kept.push_back(p.simplex[j]);
            coords.push_back(c);
        }
    }
    if (kept.empty())
        throw std::invalid_argument("all barycentric coordinates vanish");

    const double total = std::accumulate(coords.begin(), coords.end(), 0.0);
    BarycentricPoint out{Simplex(std::move(kept)), Eigen::VectorXd(coords.size())};
    for (std::size_t j = 0; j < coords.size(); ++j)
        out.lambda(static_cast<Eigen::Index>(j)) = coords[j] / total;
    return out;
}

SimplicialComplex SimplicialComplex::build(const std::vector<std::vector<VertexId>>& facets,
                                           std::size_t min_vertex_count)
{
    std::vector<Simplex> simplices;
    simplices.reserve(facets.size());
    for (const auto& f : facets)
        simplices.emplace_back(f);
    return build(simplices, min_vertex_count);
}

SimplicialComplex SimplicialComplex::build(const std::vector<Simplex>& facets,
                                           std::size_t min_vertex_count)
{
    if (facets.empty())
        throw DataError("complex needs at least one facet");

    std::size_t n = min_vertex_count;
    for (const auto& f : facets) {
        if (f.size() == 0)
            throw DataError("empty facet");
        n = std::max(n, f.vertices().back() + 1);
    }

    // Visit larger simplices first so that a face only has to be checked against
    // facets already accepted; the accepted set keeps declaration order.
    std::vector<std::size_t> order(facets.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return facets[a].size() > facets[b].size();
    });

    std::vector<std::vector<std::size_t>> kept_by_vertex(n);
    std::vector<bool> keep(facets.size(), false);
    for (std::size_t idx : order) {
        const Simplex& f = facets[idx];
        bool redundant = false;
        for (std::size_t other : kept_by_vertex[f[0]]) {
            if (f.is_face_of(facets[other])) {
                redundant = true;
                break;
            }
        }
        if (redundant)
            continue;
        keep[idx] = true;
        for (VertexId v : f.vertices())
            kept_by_vertex[v].push_back(idx);
    }

    SimplicialComplex K;
    K.vertex_count_ = n;
    K.incidence_.assign(n, {});
    for (std::size_t idx = 0; idx < facets.size(); ++idx) {
        if (!keep[idx])
            continue;
        const std::size_t fi = K.facets_.size();
        K.facets_.push_back(facets[idx]);
        K.dimension_ = std::max(K.dimension_, facets[idx].dimension());
        for (VertexId v : facets[idx].vertices())
            K.incidence_[v].push_back(fi);
    }
    return K;
}

bool SimplicialComplex::is_pure() const
{
    return std::all_of(facets_.begin(), facets_.end(),
                       [&](const Simplex& f) { return f.dimension() == dimension_; });
}

std::span<const std::size_t> SimplicialComplex::facets_of_vertex(VertexId v) const
{
    if (v >= incidence_.size())
        return {};
    return incidence_[v];
}

std::vector<std::size_t> SimplicialComplex::adjacent_facets(const Simplex& s) const
{
    std::vector<std::size_t> out;
    for (VertexId v : s.vertices()) {
        auto fs = facets_of_vertex(v);
        out.insert(out.end(), fs.begin(), fs.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool SimplicialComplex::contains(const Simplex& s) const
{
    if (s.size() == 0)
        return false;
    for (std::size_t fi : facets_of_vertex(s[0]))
        if (s.is_face_of(facets_[fi]))
            return true;
    return false;
}

namespace {

void collect_subsets(std::span<const VertexId> verts, std::size_t k, std::size_t start,
                     std::vector<VertexId>& current, std::set<std::vector<VertexId>>& out)
{
    if (current.size() == k) {
        out.insert(current);
        return;
    }
    for (std::size_t i = start; i + (k - current.size()) <= verts.size(); ++i) {
        current.push_back(verts[i]);
        collect_subsets(verts, k, i + 1, current, out);
        current.pop_back();
    }
}

} // namespace

std::vector<Simplex> SimplicialComplex::faces(int dim) const
{
    if (dim < 0)
        return {};
    std::set<std::vector<VertexId>> found;
    std::vector<VertexId> current;
    for (const auto& f : facets_) {
        if (f.dimension() < dim)
            continue;
        collect_subsets(f.vertices(), static_cast<std::size_t>(dim) + 1, 0, current, found);
    }
    std::vector<Simplex> out;
    out.reserve(found.size());
    for (const auto& verts : found)
        out.emplace_back(verts);
    return out;
}

long SimplicialComplex::euler_characteristic() const
{
    long chi = 0;
    for (int k = 0; k <= dimension_; ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(count_faces(k));
    return chi;
}

SubComplex compact_subcomplex(const std::vector<Simplex>& simplices)
{
    std::vector<VertexId> used;
    for (const auto& s : simplices)
        used.insert(used.end(), s.vertices().begin(), s.vertices().end());
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());

    std::vector<Simplex> relabeled;
    relabeled.reserve(simplices.size());
    for (const auto& s : simplices) {
        std::vector<VertexId> verts;
        for (VertexId v : s.vertices())
            verts.push_back(static_cast<VertexId>(
                std::lower_bound(used.begin(), used.end(), v) - used.begin()));
        relabeled.emplace_back(std::move(verts));
    }
    return {SimplicialComplex::build(relabeled, used.size()), std::move(used)};
}

std::vector<Simplex> boundary_simplices(const SimplicialComplex& K)
{
    if (!K.is_pure())
        throw DataError("boundary requires a pure complex");
    if (K.dimension() < 1)
        throw DataError("a 0-dimensional complex has no boundary");

    // Count how many facets each codimension-1 face belongs to, keeping first-seen order.
    std::vector<Simplex> order;
    std::map<Simplex, int> counts;
    for (const auto& f : K.facets()) {
        for (auto& face : boundary_faces(f)) {
            auto [it, inserted] = counts.try_emplace(face, 0);
            if (inserted)
                order.push_back(face);
            ++it->second;
        }
    }
    std::vector<Simplex> out;
    for (auto& face : order)
        if (counts[face] == 1)
            out.push_back(face);
    return out;
}

} // namespace smeans
