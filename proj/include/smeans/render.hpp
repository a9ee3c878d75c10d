#pragma once

#include "smeans/complex.hpp"

#include <string>
#include <string_view>

namespace smeans {

enum class Projection
{
    xy,
    xz,
    pca2, ///< the two leading principal axes of the cloud
};

Projection parse_projection(std::string_view name);

struct RenderOptions
{
    Projection projection = Projection::xy;
    int size = 640;
    std::string title;
};

/// SVG drawing of the cloud, the mapped edges of K and the mapped vertices.
std::string render_svg(const PointCloud& cloud, const SimplicialComplex& K, const LinearMap& map,
                       const RenderOptions& opts = {});

} // namespace smeans
