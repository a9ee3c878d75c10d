#pragma once

#include "smeans/io.hpp"
#include "smeans/meshgen.hpp"
#include "smeans/render.hpp"
#include "smeans/sampling.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace smeans {

/// Raised for a preset name with no matching file.
class UnknownPreset : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

SampleSpec sample_spec_from_json(const io::Json& j);

/// Builds a mesh from a JSON description. Kinds: line {segments}, cycle {sides,
/// subdivisions}, grid1d {p, q}, tri-mesh {extents}, boundary-of {of}, disjoint-union
/// {parts}. An optional "placement" {ambient_dim, axes, scale, offset} positions it; an
/// optional "fit_to_cloud" {axes, margin} stretches it over the bounding box of `cloud`.
Mesh mesh_from_json(const io::Json& j, const PointCloud* cloud = nullptr);

struct FitStage
{
    double learning_rate = 0.1;
    NeighborhoodMode mode = NeighborhoodMode::interior;
    int iters = 150;
    std::vector<int> snapshots; ///< iterations whose maps are saved
};

struct PruneStage
{
    double alpha = 0.0;
    PruneMode mode = PruneMode::euclidean;
    double decay = 1.0;
};

struct PresetRun
{
    std::string name;
    io::Json complex;
    FitStage fit;
    std::optional<PruneStage> prune;
    Projection projection = Projection::xy;
};

struct Preset
{
    int version = 1;
    int figure = 0;
    std::string description;
    SampleSpec data;
    std::vector<PresetRun> runs;
};

NeighborhoodMode parse_neighborhood_mode(std::string_view name);
PruneMode parse_prune_mode(std::string_view name);

Preset preset_from_json(const io::Json& j);

/// Directory searched for fig<N>.json: the explicit override, else $SMEANS_PRESETS, else
/// the directory configured at build time.
std::filesystem::path preset_dir(const std::string& override_dir = {});

/// Loads "fig2" (or "2") from `dir`.
Preset load_preset(const std::string& name, const std::filesystem::path& dir);

} // namespace smeans
