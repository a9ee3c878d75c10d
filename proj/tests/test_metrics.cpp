#include "smeans/fitting.hpp"
#include "smeans/meshgen.hpp"
#include "smeans/metrics.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace smeans;

TEST_CASE("mean SSD")
{
    const auto K = SimplicialComplex::build({{0, 1}});
    Eigen::MatrixXd P(2, 2);
    P << 0, 1, 0, 0;
    Eigen::MatrixXd on(2, 2);
    on << 0.2, 0.7, 0, 0;
    const LinearMap g(P);
    CHECK(mean_ssd(PointCloud(on), K, g, nearest_on_complex(K, g, PointCloud(on))) == 0.0);

    const auto V = SimplicialComplex::build(std::vector<std::vector<VertexId>>{{0}});
    const LinearMap origin(Eigen::MatrixXd::Zero(2, 1));
    Eigen::MatrixXd y(2, 1);
    y << 2, 0;
    CHECK(mean_ssd(PointCloud(y), V, origin, nearest_on_complex(V, origin, PointCloud(y))) ==
          doctest::Approx(4.0));

    std::mt19937_64 rng(1);
    const Mesh mesh = freudenthal_mesh({2, 2});
    const PointCloud cloud(oracle::gaussian(rng, 2, 100));
    const auto a = nearest_on_complex(mesh.complex, mesh.map, cloud);
    double direct = 0.0;
    for (Eigen::Index i = 0; i < cloud.size(); ++i)
        direct += std::pow(oracle::nearest_by_faces(
                               [&] {
                                   // the whole mesh is the unit square; its hull is exact
                                   Eigen::MatrixXd sq(2, 4);
                                   sq << 0, 1, 0, 1, 0, 0, 1, 1;
                                   return sq;
                               }(),
                               cloud.point(i))
                               .distance,
                           2);
    CHECK(mean_ssd(cloud, mesh.complex, mesh.map, a) ==
          doctest::Approx(direct / cloud.size()).epsilon(1e-12));
    CHECK_THROWS_AS(mean_ssd(cloud, mesh.complex, mesh.map, {}), DataError);
}

TEST_CASE("mean SSD equals the last trace entry of a fit")
{
    std::mt19937_64 rng(2);
    const Mesh mesh = freudenthal_mesh({2, 2});
    const PointCloud cloud(oracle::gaussian(rng, 2, 80, 0.6));
    FitConfig cfg;
    cfg.max_iters = 6;
    const auto f = fit(mesh.complex, mesh.map, cloud, cfg);
    CHECK(std::abs(mean_ssd(cloud, mesh.complex, f.map, f.assignments) - f.ssd_trace.back()) <=
          1e-12);
}

TEST_CASE("barycentric samples are nested and counted once")
{
    CHECK(barycentric_samples(1, 5).size() == 1);
    CHECK(barycentric_samples(2, 1).size() == 2);
    CHECK(barycentric_samples(2, 2).size() == 3);
    // on an edge, the union over D = 1..4 of the grids i/D is {0, 1/4, 1/3, 1/2, 2/3, 3/4, 1}
    CHECK(barycentric_samples(2, 4).size() == 7);
    for (const auto& l : barycentric_samples(3, 6)) {
        CHECK(std::abs(l.sum() - 1.0) <= 1e-15);
        CHECK(l.minCoeff() >= 0.0);
    }
    CHECK_THROWS_AS(barycentric_samples(2, 0), std::invalid_argument);
}

TEST_CASE("Hausdorff distance")
{
    Eigen::MatrixXd P(2, 3);
    P << 0, 1, 5, 0, 2, 1;
    const auto V = SimplicialComplex::build({{0}, {1}, {2}});
    CHECK(hausdorff(PointCloud(P), V, LinearMap(P)) == 0.0);

    const auto one = SimplicialComplex::build(std::vector<std::vector<VertexId>>{{0}});
    Eigen::MatrixXd y(2, 1);
    y << 3, 4;
    CHECK(hausdorff(PointCloud(y), one, LinearMap(Eigen::MatrixXd::Zero(2, 1))) ==
          doctest::Approx(5.0));

    // edge vs two points, against a dense brute force on both sides
    const auto E = SimplicialComplex::build({{0, 1}});
    Eigen::MatrixXd e(2, 2);
    e << 0, 2, 0, 0;
    Eigen::MatrixXd s(2, 2);
    s << 0.3, 1.0, 0.5, -0.2;
    double brute = 0.0;
    const int N = 20000;
    for (int i = 0; i <= N; ++i) {
        const Eigen::Vector2d x(2.0 * i / N, 0.0);
        brute = std::max(brute, std::min((s.col(0) - x).norm(), (s.col(1) - x).norm()));
    }
    for (int j = 0; j < 2; ++j) {
        double best = 1e300;
        for (int i = 0; i <= N; ++i)
            best = std::min(best, (s.col(j) - Eigen::Vector2d(2.0 * i / N, 0.0)).norm());
        brute = std::max(brute, best);
    }
    for (int density : {5, 10, 40}) {
        const double h = hausdorff(PointCloud(s), E, LinearMap(e), density);
        CHECK(h <= brute + 1e-9);
        CHECK(h >= brute - 2.0 / density);
    }

    // more samples never lower the sampled direction
    std::mt19937_64 rng(3);
    const Mesh mesh = freudenthal_mesh({2, 1, 1});
    const PointCloud cloud(oracle::gaussian(rng, 3, 40));
    double prev = 0.0;
    for (int density = 1; density <= 8; ++density) {
        const auto parts = hausdorff_parts(cloud, mesh.complex, mesh.map, density);
        CHECK(parts.complex_to_cloud >= prev);
        prev = parts.complex_to_cloud;
        CHECK(parts.value() == std::max(parts.cloud_to_complex, parts.complex_to_cloud));
    }
    CHECK(hausdorff_parts(cloud, mesh.complex, mesh.map, 6, {}, 1).complex_to_cloud ==
          hausdorff_parts(cloud, mesh.complex, mesh.map, 6, {}, 4).complex_to_cloud);
}
