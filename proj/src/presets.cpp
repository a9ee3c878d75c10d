#include "smeans/presets.hpp"

#include <cstdlib>

namespace smeans {

namespace {

using io::Json;

template <class T>
T get(const Json& j, const char* key, T fallback)
{
    if (!j.contains(key))
        return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw DataError(std::string("field '") + key + "' has the wrong type");
    }
}

const Json& need(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw DataError(std::string("missing field '") + key + "'");
    return j.at(key);
}

Mesh base_mesh(const Json& j, const PointCloud* cloud)
{
    const std::string kind = get<std::string>(j, "kind", "");
    if (kind == "line")
        return line_complex(get<int>(j, "segments", 1));
    if (kind == "cycle")
        return cycle_complex(get<int>(j, "sides", 4), get<int>(j, "subdivisions", 1));
    if (kind == "grid1d")
        return grid1d_complex(get<int>(j, "p", 2), get<int>(j, "q", 2));
    if (kind == "tri-mesh")
        return freudenthal_mesh(get<std::vector<int>>(j, "extents", {}));
    if (kind == "boundary-of")
        return boundary_complex(mesh_from_json(need(j, "of"), cloud));
    if (kind == "disjoint-union") {
        std::vector<Mesh> parts;
        for (const auto& p : need(j, "parts"))
            parts.push_back(mesh_from_json(p, cloud));
        return disjoint_union(parts);
    }
    throw DataError("unknown complex kind '" + kind + "'");
}

} // namespace

SampleSpec sample_spec_from_json(const Json& j)
{
    if (!j.is_object())
        throw DataError("sample spec must be an object");
    SampleSpec s;
    s.kind = parse_sample_kind(get<std::string>(j, "kind", ""));
    s.count = get<int>(j, "count", s.count);
    s.noise_sigma = get<double>(j, "noise_sigma", s.noise_sigma);
    s.seed = get<std::uint64_t>(j, "seed", s.seed);
    s.planar = get<bool>(j, "planar", s.planar);
    s.roll_height = get<double>(j, "roll_height", s.roll_height);
    s.line_from = get<std::vector<double>>(j, "line_from", {});
    s.line_to = get<std::vector<double>>(j, "line_to", {});
    s.primary_fraction = get<double>(j, "primary_fraction", s.primary_fraction);
    if (s.count < 1)
        throw DataError("sample count must be at least 1");
    if (!(s.noise_sigma >= 0.0))
        throw DataError("noise sigma must be nonnegative");
    return s;
}

Mesh mesh_from_json(const Json& j, const PointCloud* cloud)
{
    if (!j.is_object())
        throw DataError("complex spec must be an object");
    Mesh mesh;
    try {
        mesh = base_mesh(j, cloud);
    } catch (const std::invalid_argument& e) {
        throw DataError(e.what());
    }

    if (j.contains("placement")) {
        const Json& p = j.at("placement");
        Placement pl;
        pl.ambient_dim = get<int>(p, "ambient_dim", -1);
        pl.axes = get<std::vector<int>>(p, "axes", {});
        pl.scale = get<std::vector<double>>(p, "scale", {});
        pl.offset = get<std::vector<double>>(p, "offset", {});
        try {
            mesh.map = place(mesh.map, pl);
        } catch (const std::invalid_argument& e) {
            throw DataError(e.what());
        }
    } else if (j.contains("fit_to_cloud")) {
        if (cloud == nullptr)
            throw DataError("complex spec wants a cloud to fit to, but none was given");
        const Json& f = j.at("fit_to_cloud");
        const Eigen::VectorXd lo = cloud->points.rowwise().minCoeff();
        const Eigen::VectorXd hi = cloud->points.rowwise().maxCoeff();
        try {
            mesh.map = place(mesh.map, fit_to_box(static_cast<int>(mesh.map.ambient_dim()), lo, hi,
                                                  get<std::vector<int>>(f, "axes", {}),
                                                  get<double>(f, "margin", 0.0)));
        } catch (const std::invalid_argument& e) {
            throw DataError(e.what());
        }
    }
    return mesh;
}

NeighborhoodMode parse_neighborhood_mode(std::string_view name)
{
    if (name == "interior")
        return NeighborhoodMode::interior;
    if (name == "closed")
        return NeighborhoodMode::closed;
    throw std::invalid_argument("unknown neighborhood mode '" + std::string(name) + "'");
}

PruneMode parse_prune_mode(std::string_view name)
{
    if (name == "euclidean")
        return PruneMode::euclidean;
    if (name == "bary-min")
        return PruneMode::barycentric_min;
    throw std::invalid_argument("unknown prune mode '" + std::string(name) + "'");
}

Preset preset_from_json(const Json& j)
{
    Preset p;
    p.version = get<int>(j, "version", 0);
    if (p.version != 1)
        throw DataError("unsupported preset version " + std::to_string(p.version));
    p.figure = get<int>(j, "figure", 0);
    p.description = get<std::string>(j, "description", "");
    p.data = sample_spec_from_json(need(j, "data"));

    for (const auto& r : need(j, "runs")) {
        PresetRun run;
        run.name = get<std::string>(r, "name", "run" + std::to_string(p.runs.size()));
        run.complex = need(r, "complex");
        try {
            if (r.contains("fit")) {
                const Json& f = r.at("fit");
                run.fit.learning_rate = get<double>(f, "s", run.fit.learning_rate);
                run.fit.mode = parse_neighborhood_mode(get<std::string>(f, "mode", "interior"));
                run.fit.iters = get<int>(f, "iters", run.fit.iters);
                run.fit.snapshots = get<std::vector<int>>(f, "snapshots", {});
            }
            if (r.contains("prune")) {
                const Json& q = r.at("prune");
                PruneStage stage;
                stage.alpha = get<double>(q, "alpha", 0.0);
                stage.mode = parse_prune_mode(get<std::string>(q, "mode", "euclidean"));
                stage.decay = get<double>(q, "decay", 1.0);
                run.prune = stage;
            }
            run.projection = parse_projection(get<std::string>(r, "projection", "xy"));
        } catch (const std::invalid_argument& e) {
            throw DataError(e.what());
        }
        p.runs.push_back(std::move(run));
    }
    if (p.runs.empty())
        throw DataError("preset has no runs");
    return p;
}

std::filesystem::path preset_dir(const std::string& override_dir)
{
    if (!override_dir.empty())
        return override_dir;
    if (const char* env = std::getenv("SMEANS_PRESETS"); env != nullptr && *env != '\0')
        return env;
    return SMEANS_PRESET_DIR;
}

Preset load_preset(const std::string& name, const std::filesystem::path& dir)
{
    std::string stem = name;
    if (!stem.empty() && stem.find_first_not_of("0123456789") == std::string::npos)
        stem = "fig" + stem;
    const bool plain = !stem.empty() && stem.find_first_of("/\\.") == std::string::npos;
    const std::filesystem::path path = dir / (stem + ".json");
    if (!plain || !std::filesystem::is_regular_file(path))
        throw UnknownPreset("unknown preset '" + name + "'");
    try {
        return preset_from_json(io::read_json_file(path));
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

} // namespace smeans
