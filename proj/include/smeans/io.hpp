#pragma once

#include "smeans/fitting.hpp"
#include "smeans/metrics.hpp"
#include "smeans/pruning.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>

namespace smeans::io {

using Json = nlohmann::ordered_json;

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

// Point clouds: CSV with header x0,...,x{m-1} and one row per point.
PointCloud parse_cloud_csv(std::istream& in);
void write_cloud_csv(std::ostream& out, const PointCloud& cloud);
PointCloud read_cloud_csv(const std::filesystem::path& path);
void write_cloud_csv(const std::filesystem::path& path, const PointCloud& cloud);

// {"vertices": n, "facets": [[...], ...]}; facets are written sorted.
Json complex_to_json(const SimplicialComplex& K);
SimplicialComplex complex_from_json(const Json& j);

// {"positions": [[x, y, ...], ...]}, one row per vertex.
Json positions_to_json(const LinearMap& map);
LinearMap positions_from_json(const Json& j);

Json matrix_columns_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_columns_from_json(const Json& j, const char* what);

/// Everything a later prune/metrics/render step needs: complex, cloud, fitted map,
/// assignments and traces.
Json fit_to_json(const SimplicialComplex& K, const PointCloud& cloud, const FitResult& fit,
                 const FitConfig& cfg);

struct LoadedFit
{
    SimplicialComplex complex;
    PointCloud cloud;
    FitResult fit;
};
LoadedFit fit_from_json(const Json& j);

/// Fit trace: iter,mean_ssd,max_displacement (displacement of the last row is 0).
void write_trace_csv(std::ostream& out, const FitResult& fit);

/// Checkpoint of one iteration's vertex positions.
Json snapshot_to_json(int iteration, const LinearMap& map);

Json prune_to_json(const PruneResult& result, const PruneConfig& cfg);

/// One JSON-lines record per data point.
void write_codes_jsonl(std::ostream& out, const PruneResult& result, const LinearMap& g,
                       const PointCloud& cloud);

Json metrics_to_json(double mean_ssd, const HausdorffParts& hausdorff, int sample_density);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);
void write_text_file(const std::filesystem::path& path, const std::string& text);

} // namespace smeans::io
