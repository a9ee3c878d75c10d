#include "smeans/render.hpp"

#include <Eigen/Eigenvalues>

#include <charconv>
#include <sstream>

namespace smeans {

Projection parse_projection(std::string_view name)
{
    if (name == "xy")
        return Projection::xy;
    if (name == "xz")
        return Projection::xz;
    if (name == "pca2")
        return Projection::pca2;
    throw std::invalid_argument("unknown projection '" + std::string(name) + "'");
}

namespace {

// 2 x m matrix taking ambient points to the drawing plane (before centring).
Eigen::MatrixXd projection_matrix(Projection p, const PointCloud& cloud, Eigen::Index m)
{
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(2, m);
    switch (p) {
    case Projection::xy:
        P(0, 0) = 1.0;
        if (m > 1)
            P(1, 1) = 1.0;
        break;
    case Projection::xz:
        if (m < 3)
            throw DataError("xz projection needs at least 3 ambient dimensions");
        P(0, 0) = 1.0;
        P(1, 2) = 1.0;
        break;
    case Projection::pca2: {
        if (cloud.size() < 2 || m < 2) {
            P(0, 0) = 1.0;
            if (m > 1)
                P(1, 1) = 1.0;
            break;
        }
        const Eigen::VectorXd mean = cloud.points.rowwise().mean();
        const Eigen::MatrixXd centred = cloud.points.colwise() - mean;
        const Eigen::MatrixXd cov = centred * centred.transpose();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
        // eigenvalues ascend; take the last two, fixing signs so the output is stable
        for (int r = 0; r < 2; ++r) {
            Eigen::VectorXd axis = eig.eigenvectors().col(m - 1 - r);
            Eigen::Index big = 0;
            axis.cwiseAbs().maxCoeff(&big);
            if (axis(big) < 0)
                axis = -axis;
            P.row(r) = axis.transpose();
        }
        break;
    }
    }
    return P;
}

std::string num(double x)
{
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, 2);
    return std::string(buf, res.ptr);
}

} // namespace

std::string render_svg(const PointCloud& cloud, const SimplicialComplex& K, const LinearMap& map,
                       const RenderOptions& opts)
{
    const Eigen::Index m = map.ambient_dim();
    if (!cloud.empty() && cloud.dim() != m)
        throw DataError("cloud and map have different ambient dimensions");

    const Eigen::MatrixXd P = projection_matrix(opts.projection, cloud, m);
    const Eigen::MatrixXd pts = P * cloud.points;
    const Eigen::MatrixXd verts = P * map.positions;

    Eigen::Vector2d lo = Eigen::Vector2d::Constant(std::numeric_limits<double>::infinity());
    Eigen::Vector2d hi = -lo;
    for (const Eigen::MatrixXd* M : {&pts, &verts}) {
        if (M->cols() == 0)
            continue;
        lo = lo.cwiseMin(M->rowwise().minCoeff());
        hi = hi.cwiseMax(M->rowwise().maxCoeff());
    }
    if (!lo.allFinite() || !hi.allFinite()) {
        lo.setZero();
        hi.setOnes();
    }
    const double extent = std::max({hi(0) - lo(0), hi(1) - lo(1), 1e-9});
    const double pad = 20.0;
    const double scale = (opts.size - 2 * pad) / extent;
    const Eigen::Vector2d centre = 0.5 * (lo + hi);
    auto sx = [&](double x) { return num(opts.size / 2.0 + scale * (x - centre(0))); };
    auto sy = [&](double y) { return num(opts.size / 2.0 - scale * (y - centre(1))); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.size << "\" height=\""
        << opts.size << "\" viewBox=\"0 0 " << opts.size << ' ' << opts.size << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!opts.title.empty())
        svg << "<text x=\"8\" y=\"16\" font-family=\"sans-serif\" font-size=\"12\">" << opts.title
            << "</text>\n";

    svg << "<g fill=\"#1f77b4\" fill-opacity=\"0.6\">\n";
    for (Eigen::Index i = 0; i < pts.cols(); ++i)
        svg << "<circle cx=\"" << sx(pts(0, i)) << "\" cy=\"" << sy(pts(1, i)) << "\" r=\"2\"/>\n";
    svg << "</g>\n";

    svg << "<g stroke=\"#d62728\" stroke-width=\"1\">\n";
    if (K.dimension() >= 1) {
        for (const Simplex& e : K.faces(1)) {
            const auto a = static_cast<Eigen::Index>(e[0]);
            const auto b = static_cast<Eigen::Index>(e[1]);
            svg << "<line x1=\"" << sx(verts(0, a)) << "\" y1=\"" << sy(verts(1, a)) << "\" x2=\""
                << sx(verts(0, b)) << "\" y2=\"" << sy(verts(1, b)) << "\"/>\n";
        }
    }
    svg << "</g>\n";

    svg << "<g fill=\"black\">\n";
    for (Eigen::Index v = 0; v < verts.cols(); ++v)
        svg << "<circle cx=\"" << sx(verts(0, v)) << "\" cy=\"" << sy(verts(1, v))
            << "\" r=\"2.5\"/>\n";
    svg << "</g>\n</svg>\n";
    return svg.str();
}

} // namespace smeans
