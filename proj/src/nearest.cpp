#include "smeans/nearest.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>

namespace smeans {

void DescentStats::merge(const DescentStats& other)
{
    max_depth = std::max(max_depth, other.max_depth);
    if (nodes_per_depth.size() < other.nodes_per_depth.size())
        nodes_per_depth.resize(other.nodes_per_depth.size(), 0);
    for (std::size_t i = 0; i < other.nodes_per_depth.size(); ++i)
        nodes_per_depth[i] += other.nodes_per_depth[i];
}

Eigen::MatrixXd pseudoinverse(const Eigen::MatrixXd& M, double sv_cutoff)
{
    if (M.size() == 0)
        return Eigen::MatrixXd::Zero(M.cols(), M.rows());

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double largest = sv.size() > 0 ? sv(0) : 0.0;

    Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
    if (largest > 0.0) {
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) > sv_cutoff * largest)
                inv(i) = 1.0 / sv(i);
    }
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

namespace {

using Mask = std::uint64_t;

std::vector<Eigen::Index> rows_of(Mask mask)
{
    std::vector<Eigen::Index> rows;
    while (mask != 0) {
        rows.push_back(std::countr_zero(mask));
        mask &= mask - 1;
    }
    return rows;
}

} // namespace

SimplexProjection project_onto_simplex(std::span<const VertexId> simplex, const LinearMap& map,
                                       const Eigen::MatrixXd& points,
                                       std::span<const Eigen::Index> columns,
                                       const NearestOptions& opts, DescentStats* stats)
{
    const auto k1 = static_cast<Eigen::Index>(simplex.size());
    if (k1 == 0)
        throw std::invalid_argument("empty simplex");
    if (k1 > 63)
        throw std::invalid_argument("simplices above dimension 62 are not supported");
    if (points.rows() != map.ambient_dim())
        throw DataError("point dimension does not match the map's ambient dimension");

    const Eigen::Index m = points.rows();
    const auto r = static_cast<Eigen::Index>(columns.size());

    Eigen::MatrixXd W(m, k1);
    for (Eigen::Index i = 0; i < k1; ++i) {
        if (simplex[static_cast<std::size_t>(i)] >= static_cast<VertexId>(map.vertex_count()))
            throw DataError("simplex vertex has no position");
        W.col(i) = map.position(simplex[static_cast<std::size_t>(i)]);
    }

    SimplexProjection out;
    out.lambda = Eigen::MatrixXd::Zero(k1, r);
    out.distance = Eigen::VectorXd::Constant(r, std::numeric_limits<double>::infinity());

    Eigen::VectorXd image(m);
    auto offer = [&](Eigen::Index j, const std::vector<Eigen::Index>& rows,
                     const Eigen::VectorXd& coords) {
        image.setZero();
        for (std::size_t i = 0; i < rows.size(); ++i)
            image += coords(static_cast<Eigen::Index>(i)) * W.col(rows[i]);
        const double d = (points.col(columns[static_cast<std::size_t>(j)]) - image).norm();
        if (!std::isfinite(d))
            throw NumericalError("non-finite distance to a simplex");
        if (d < out.distance(j)) {
            out.distance(j) = d;
            out.lambda.col(j).setZero();
            for (std::size_t i = 0; i < rows.size(); ++i)
                out.lambda(rows[i], j) = coords(static_cast<Eigen::Index>(i));
        }
    };

    // Faces are processed one dimension at a time; a face reached from several parents
    // is solved once for the union of the points sent to it.
    std::map<Mask, std::vector<Eigen::Index>> frontier;
    {
        std::vector<Eigen::Index> all(static_cast<std::size_t>(r));
        std::iota(all.begin(), all.end(), Eigen::Index{0});
        const Mask full = (Mask{1} << k1) - 1;
        if (r > 0)
            frontier.emplace(full, std::move(all));
    }

    DescentStats local;
    for (int depth = 0; !frontier.empty(); ++depth) {
        local.max_depth = depth;
        local.nodes_per_depth.push_back(frontier.size());
        std::map<Mask, std::vector<Eigen::Index>> next;

        for (auto& [mask, batch] : frontier) {
            std::sort(batch.begin(), batch.end());
            batch.erase(std::unique(batch.begin(), batch.end()), batch.end());
            const std::vector<Eigen::Index> rows = rows_of(mask);
            const auto q = static_cast<Eigen::Index>(rows.size()) - 1;

            if (q == 0) {
                const Eigen::VectorXd one = Eigen::VectorXd::Ones(1);
                for (Eigen::Index j : batch)
                    offer(j, rows, one);
                continue;
            }

            const Eigen::VectorXd w1 = W.col(rows[0]);
            Eigen::MatrixXd M(m, q);
            for (Eigen::Index i = 0; i < q; ++i)
                M.col(i) = W.col(rows[static_cast<std::size_t>(i) + 1]) - w1;
            const Eigen::MatrixXd P = pseudoinverse(M, opts.sv_cutoff);

            Eigen::VectorXd coords(q + 1);
            Eigen::VectorXd diff(m);
            for (Eigen::Index j : batch) {
                diff = points.col(columns[static_cast<std::size_t>(j)]) - w1;
                double total = 0.0;
                for (Eigen::Index i = 0; i < q; ++i) {
                    double b = 0.0;
                    for (Eigen::Index k = 0; k < m; ++k)
                        b += P(i, k) * diff(k);
                    coords(i + 1) = b;
                    total += b;
                }
                coords(0) = 1.0 - total;

                bool interior = true;
                for (Eigen::Index k = 0; k <= q; ++k) {
                    if (coords(k) < 0.0) {
                        interior = false;
                        next[mask & ~(Mask{1} << rows[static_cast<std::size_t>(k)])].push_back(j);
                        if (opts.descent == FaceDescent::first_negative)
                            break;
                    }
                }
                if (interior)
                    offer(j, rows, coords);
            }
        }
        frontier = std::move(next);
    }

    if (stats)
        stats->merge(local);
    return out;
}

namespace {

ProjectionResult make_result(std::span<const VertexId> simplex, const LinearMap& map,
                             const Eigen::VectorXd& y, const Eigen::VectorXd& lambda,
                             std::size_t facet, double eps_lambda)
{
    BarycentricPoint raw{Simplex(std::vector<VertexId>(simplex.begin(), simplex.end())), lambda};
    ProjectionResult res;
    res.point = smallest_containing_simplex(raw, eps_lambda);
    res.image = res.point.evaluate(map);
    res.distance = (y - res.image).norm();
    res.facet = facet;
    return res;
}

} // namespace

std::vector<ProjectionResult> nearest_on_simplex(const Simplex& sigma, const LinearMap& map,
                                                 const PointCloud& batch,
                                                 const NearestOptions& opts, DescentStats* stats)
{
    std::vector<Eigen::Index> cols(static_cast<std::size_t>(batch.size()));
    std::iota(cols.begin(), cols.end(), Eigen::Index{0});
    const SimplexProjection proj =
        project_onto_simplex(sigma.vertices(), map, batch.points, cols, opts, stats);

    std::vector<ProjectionResult> out;
    out.reserve(cols.size());
    for (Eigen::Index j = 0; j < batch.size(); ++j)
        out.push_back(make_result(sigma.vertices(), map, batch.point(j), proj.lambda.col(j),
                                  kNoFacet, opts.eps_lambda));
    return out;
}

ProjectionResult nearest_on_simplices(std::span<const Simplex> candidates, const LinearMap& map,
                                      const Eigen::VectorXd& y, const NearestOptions& opts)
{
    if (candidates.empty())
        throw std::invalid_argument("no candidate simplices");
    const Eigen::MatrixXd pts = y;
    const Eigen::Index col = 0;
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_lambda;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        const auto proj = project_onto_simplex(candidates[c].vertices(), map, pts,
                                               std::span(&col, 1), opts);
        if (c == 0 || proj.distance(0) < best_d - 1e-12) {
            best = c;
            best_d = proj.distance(0);
            best_lambda = proj.lambda.col(0);
        }
    }
    return make_result(candidates[best].vertices(), map, y, best_lambda, best, opts.eps_lambda);
}

std::vector<ProjectionResult> nearest_on_complex(const SimplicialComplex& K, const LinearMap& map,
                                                 const PointCloud& batch,
                                                 const NearestOptions& opts,
                                                 const FacetRestriction* restrict,
                                                 unsigned threads)
{
    if (static_cast<std::size_t>(map.vertex_count()) < K.vertex_count())
        throw DataError("map does not cover every vertex of the complex");
    if (batch.dim() != map.ambient_dim())
        throw DataError("point dimension does not match the map's ambient dimension");

    const std::size_t N = K.facet_count();
    const auto r = static_cast<std::size_t>(batch.size());

    std::vector<std::vector<Eigen::Index>> cols(N);
    if (restrict) {
        if (restrict->size() != r)
            throw std::invalid_argument("restriction must list facets for every point");
        for (std::size_t p = 0; p < r; ++p) {
            std::vector<std::size_t> list = (*restrict)[p];
            if (list.empty())
                throw std::invalid_argument("empty facet restriction for a point");
            std::sort(list.begin(), list.end());
            list.erase(std::unique(list.begin(), list.end()), list.end());
            for (std::size_t f : list) {
                if (f >= N)
                    throw std::invalid_argument("restricted facet index out of range");
                cols[f].push_back(static_cast<Eigen::Index>(p));
            }
        }
    } else {
        std::vector<Eigen::Index> all(r);
        std::iota(all.begin(), all.end(), Eigen::Index{0});
        cols.assign(N, all);
    }

    // Distances per facet may be computed concurrently; the minimum is then taken
    // serially in facet order so that the choice never depends on scheduling.
    std::vector<Eigen::VectorXd> dist(N);
    detail::parallel_for(N, threads, [&](std::size_t f) {
        if (!cols[f].empty())
            dist[f] = project_onto_simplex(K.facet(f).vertices(), map, batch.points, cols[f], opts)
                          .distance;
    });

    std::vector<std::size_t> winner(r, kNoFacet);
    std::vector<double> best(r, std::numeric_limits<double>::infinity());
    for (std::size_t f = 0; f < N; ++f) {
        for (std::size_t j = 0; j < cols[f].size(); ++j) {
            const auto p = static_cast<std::size_t>(cols[f][j]);
            const double d = dist[f](static_cast<Eigen::Index>(j));
            if (winner[p] == kNoFacet || d < best[p] - 1e-12) {
                winner[p] = f;
                best[p] = d;
            }
        }
    }

    std::vector<std::vector<Eigen::Index>> won(N);
    for (std::size_t p = 0; p < r; ++p)
        won[winner[p]].push_back(static_cast<Eigen::Index>(p));

    std::vector<ProjectionResult> out(r);
    detail::parallel_for(N, threads, [&](std::size_t f) {
        if (won[f].empty())
            return;
        const auto verts = K.facet(f).vertices();
        const auto proj = project_onto_simplex(verts, map, batch.points, won[f], opts);
        for (std::size_t j = 0; j < won[f].size(); ++j) {
            const Eigen::Index p = won[f][j];
            out[static_cast<std::size_t>(p)] =
                make_result(verts, map, batch.point(p), proj.lambda.col(static_cast<Eigen::Index>(j)),
                            f, opts.eps_lambda);
        }
    });
    return out;
}

} // namespace smeans
