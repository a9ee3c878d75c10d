#include "smeans/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace smeans {

namespace {

struct KindName
{
    SampleKind kind;
    std::string_view name;
};

constexpr KindName kKindNames[] = {
    {SampleKind::swiss_roll, "swiss-roll"},
    {SampleKind::circle, "circle"},
    {SampleKind::circle_plus_line, "circle-plus-line"},
    {SampleKind::sphere2, "sphere2"},
    {SampleKind::sphere2_plus_line, "sphere2-plus-line"},
    {SampleKind::surface_fn, "surface-fn"},
    {SampleKind::sphere3, "sphere3"},
};

Eigen::VectorXd on_unit_sphere(Rng& rng, int ambient)
{
    Eigen::VectorXd v(ambient);
    double norm = 0.0;
    do {
        for (int k = 0; k < ambient; ++k)
            v(k) = rng.normal();
        norm = v.norm();
    } while (norm < 1e-12);
    return v / norm;
}

Eigen::VectorXd line_end(const std::vector<double>& given, int ambient, double x0)
{
    Eigen::VectorXd v = Eigen::VectorXd::Zero(ambient);
    if (given.empty()) {
        v(0) = x0;
        return v;
    }
    if (static_cast<int>(given.size()) != ambient)
        throw DataError("line end point has the wrong dimension");
    for (int k = 0; k < ambient; ++k)
        v(k) = given[static_cast<std::size_t>(k)];
    return v;
}

} // namespace

SampleKind parse_sample_kind(std::string_view name)
{
    for (const auto& k : kKindNames)
        if (k.name == name)
            return k.kind;
    throw DataError("unknown sample kind '" + std::string(name) + "'");
}

std::string_view to_string(SampleKind kind)
{
    for (const auto& k : kKindNames)
        if (k.kind == kind)
            return k.name;
    return "unknown";
}

double Rng::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal()
{
    const double u1 = 1.0 - uniform(); // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double surface_height(double x, double y)
{
    return std::cos(5.0 * x) * std::sin(5.0 * y) / 3.0 + (x - y) / 5.0;
}

PointCloud sample(const SampleSpec& spec)
{
    if (spec.count < 1)
        throw DataError("sample count must be at least 1");
    if (!(spec.noise_sigma >= 0.0))
        throw DataError("noise sigma must be nonnegative");

    Rng rng(spec.seed);
    const double pi = std::numbers::pi;
    int m = 0;
    switch (spec.kind) {
    case SampleKind::swiss_roll: m = spec.planar ? 2 : 3; break;
    case SampleKind::circle:
    case SampleKind::circle_plus_line: m = 2; break;
    case SampleKind::sphere2:
    case SampleKind::sphere2_plus_line:
    case SampleKind::surface_fn: m = 3; break;
    case SampleKind::sphere3: m = 4; break;
    }

    const int n = spec.count;
    const int on_primary =
        static_cast<int>(std::lround(std::clamp(spec.primary_fraction, 0.0, 1.0) * n));
    Eigen::MatrixXd pts(m, n);

    for (int i = 0; i < n; ++i) {
        switch (spec.kind) {
        case SampleKind::swiss_roll: {
            // t in [1.5 pi, 4.5 pi], scaled so that the roll has radius at most 1
            const double t = 1.5 * pi * (1.0 + 2.0 * rng.uniform());
            const double h = spec.roll_height * (rng.uniform() - 0.5);
            const double scale = 1.0 / (4.5 * pi);
            if (spec.planar)
                pts.col(i) << scale * t * std::cos(t), scale * t * std::sin(t);
            else
                pts.col(i) << scale * t * std::cos(t), h, scale * t * std::sin(t);
            break;
        }
        case SampleKind::circle:
            pts.col(i) = on_unit_sphere(rng, 2);
            break;
        case SampleKind::sphere2:
            pts.col(i) = on_unit_sphere(rng, 3);
            break;
        case SampleKind::sphere3:
            pts.col(i) = on_unit_sphere(rng, 4);
            break;
        case SampleKind::circle_plus_line:
        case SampleKind::sphere2_plus_line: {
            const int sphere_dim = spec.kind == SampleKind::circle_plus_line ? 2 : 3;
            if (i < on_primary) {
                pts.col(i) = on_unit_sphere(rng, sphere_dim);
            } else {
                const Eigen::VectorXd a = line_end(spec.line_from, m, -1.5);
                const Eigen::VectorXd b = line_end(spec.line_to, m, 1.5);
                const double t = rng.uniform();
                pts.col(i) = (1.0 - t) * a + t * b;
            }
            break;
        }
        case SampleKind::surface_fn: {
            const double x = rng.uniform();
            const double y = rng.uniform();
            pts.col(i) << x, y, surface_height(x, y);
            break;
        }
        }
    }

    if (spec.noise_sigma > 0.0)
        for (Eigen::Index i = 0; i < pts.cols(); ++i)
            for (Eigen::Index k = 0; k < pts.rows(); ++k)
                pts(k, i) += spec.noise_sigma * rng.normal();
    return PointCloud(pts);
}

} // namespace smeans
