#pragma once

#include "smeans/types.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace smeans {

enum class SampleKind
{
    swiss_roll,
    circle,
    circle_plus_line,
    sphere2,
    sphere2_plus_line,
    surface_fn,
    sphere3,
};

SampleKind parse_sample_kind(std::string_view name);
std::string_view to_string(SampleKind kind);

struct SampleSpec
{
    SampleKind kind = SampleKind::circle;
    int count = 100;
    double noise_sigma = 0.0;
    std::uint64_t seed = 42;

    // swiss roll
    bool planar = false;      ///< (x, z) in R^2 instead of (x, h, z) in R^3
    double roll_height = 1.0; ///< h is uniform on [-height/2, height/2]

    // *-plus-line kinds; empty line ends select the defaults (a diameter of length 3
    // along the first axis).
    std::vector<double> line_from;
    std::vector<double> line_to;
    double primary_fraction = 2.0 / 3.0; ///< share of points on the circle/sphere
};

/// Portable random source: std::mt19937_64 (fully specified by the standard) with
/// explicit conversions, so a seed yields the same cloud on every platform.
/// uniform() takes the top 53 bits; normal() is Box-Muller using the cosine branch.
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal();

private:
    std::mt19937_64 engine_;
};

/// The surface sampled for the surface-fn kind.
double surface_height(double x, double y);

PointCloud sample(const SampleSpec& spec);

} // namespace smeans
